#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gman/scenario.hpp"

using namespace gman;
using nlohmann::json;

namespace {

std::string bundled(const std::string& name) { return std::string(GMAN_SOURCE_DIR) + "/scenarios/" + name + ".json"; }

json line_doc() {
    return json::parse(R"({
        "name": "t", "dim_g": 1, "dim_m": 1, "coordinate_weights": [1],
        "structure_constants": [], "action": [[[[2, "1/1"]]]],
        "christoffel": [[[[]]]],
        "caps": {"max_weight": 6, "max_order": 4, "max_arity": 4}})");
}

ScenarioError::Kind rejection(const json& doc) {
    try {
        load_scenario(doc.dump());
    } catch (const ScenarioError& e) {
        return e.kind();
    }
    FAIL("scenario accepted");
    return ScenarioError::Kind::parse;
}

}  // namespace

TEST_CASE("bundled files match the built-in instances") {
    CHECK(load_scenario_file(bundled("paper_sec4")).to_json() == builtin::paper_sec4().to_json());
    CHECK(load_scenario_file(bundled("sl2_linear")).to_json() == builtin::sl2_linear().to_json());
    CHECK(load_scenario_file(bundled("abelian_trivial")).to_json() == builtin::abelian_trivial().to_json());
}

TEST_CASE("paper_sec4 fields") {
    Scenario s = builtin::paper_sec4();
    CHECK(s.n() == 1);
    CHECK(s.m() == 1);
    Poly x2 = Poly::monomial(MultiIndex{2});
    CHECK(s.action(0)[0] == x2);
    CHECK(s.basis_weight(0) == 1);
    CHECK(s.dual_weight(0) == -1);
    CHECK(s.connection().is_zero());
    CHECK(s.caps().max_weight == 6);
    CHECK(s.max_ce_degree() == 1);
}

TEST_CASE("sl2_linear is a Lie algebra morphism with weight-zero basis") {
    Scenario s = builtin::sl2_linear();
    for (std::size_t a = 0; a < 3; ++a) CHECK(s.basis_weight(a) == 0);
    // [phi(h), phi(e)] = 2 phi(e)
    CHECK(vf_bracket(s.action(0), s.action(1)) == s.action(1) * Rational(2));
    CHECK(vf_bracket(s.action(1), s.action(2)) == s.action(0));
}

TEST_CASE("inhomogeneous action x^2 d + d is rejected") {
    json doc = line_doc();
    doc["action"] = json::parse(R"([[[[2, "1/1"], [0, "1/1"]]]])");
    CHECK(rejection(doc) == ScenarioError::Kind::inhomogeneous_action);
}

TEST_CASE("other validation failures") {
    SUBCASE("not a morphism") {
        std::ifstream in(std::string(GMAN_SOURCE_DIR) + "/tests/data/not_a_morphism.json");
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            load_scenario(ss.str());
            FAIL("accepted");
        } catch (const ScenarioError& e) {
            CHECK(e.kind() == ScenarioError::Kind::morphism);
            CHECK(e.witness().find("d1") != std::string::npos);
        }
    }
    SUBCASE("asymmetric christoffel") {
        json doc = line_doc();
        doc["dim_m"] = 2;
        doc["coordinate_weights"] = {1, 1};
        doc["action"] = json::parse(R"([[[[2, 0, "1/1"]], []]])");
        // G^0_01 = 1 but G^0_10 = 0; the shift makes the constant homogeneous
        doc["connection_weight_shift"] = 1;
        doc["christoffel"] = json::parse(R"([[[[], [[0, 0, "1/1"]]], [[], []]], [[[], []], [[], []]]])");
        CHECK(rejection(doc) == ScenarioError::Kind::asymmetric_christoffel);
    }
    SUBCASE("inhomogeneous christoffel") {
        json doc = line_doc();
        doc["christoffel"] = json::parse(R"([[[[[1, "1/1"], [2, "1/1"]]]]])");
        CHECK(rejection(doc) == ScenarioError::Kind::inhomogeneous_christoffel);
    }
    SUBCASE("schema") {
        json doc = line_doc();
        doc.erase("dim_g");
        CHECK(rejection(doc) == ScenarioError::Kind::schema);
        doc = line_doc();
        doc["coordinate_weights"] = {0};
        CHECK(rejection(doc) == ScenarioError::Kind::schema);
        doc = line_doc();
        doc["action"] = json::parse(R"([[[[2, "1/0"]]]])");
        CHECK(rejection(doc) == ScenarioError::Kind::parse);
    }
    SUBCASE("parse") { CHECK_THROWS_AS(load_scenario("{\"dim_g\": "), ScenarioError); }
    SUBCASE("caps") {
        json doc = line_doc();
        doc["caps"]["max_order"] = -1;
        CHECK(rejection(doc) == ScenarioError::Kind::caps);
    }
}

TEST_CASE("polynomial encodings") {
    Poly p = Poly::monomial(MultiIndex{2, 1}, Rational(3, 2)) + Poly::monomial(MultiIndex{0, 0}, Rational(-1));
    json file = poly_to_scenario_json(p);
    json report = poly_to_json(p);
    CHECK(poly_from_json(file, 2) == p);
    CHECK(poly_from_json(report, 2) == p);
    CHECK(report.dump() == R"([["-1/1",[0,0]],["3/2",[2,1]]])");
    CHECK_THROWS_AS(poly_from_json(json::parse(R"([[1, "1/1"]])"), 2), ScenarioError);
}

TEST_CASE("JSON round trip and cap overrides") {
    for (const Scenario& s : {builtin::paper_sec4(), builtin::sl2_linear(), builtin::abelian_trivial()}) {
        Scenario t = load_scenario(s.to_json().dump());
        CHECK(t.to_json() == s.to_json());
    }
    Scenario s = builtin::paper_sec4();
    Caps c = s.caps();
    c.max_order = 2;
    CHECK(s.with_caps(c).caps().max_order == 2);
    CHECK(s.with_caps(c).to_json() != s.to_json());
}
