#include <doctest.h>

#include "gman/axioms.hpp"
#include "gman/random.hpp"

using namespace gman;

TEST_CASE("axioms hold on the bundled scenarios") {
    for (const Scenario& s : {builtin::paper_sec4(), builtin::sl2_linear(), builtin::abelian_trivial()}) {
        AxiomsReport rep = run_axioms(s, 200, 7);
        CHECK(rep.passed());
        CHECK(rep.cases_passed == 200);
        for (const auto& c : rep.checks) {
            INFO(s.name(), " ", c.family, "/", c.name);
            CHECK(c.passed == c.cases);
            CHECK(c.cases == 200);
            CHECK_FALSE(c.witness.has_value());
        }
    }
}

TEST_CASE("the checks are not vacuous") {
    for (const Scenario& s : {builtin::paper_sec4(), builtin::sl2_linear()}) {
        AxiomsReport rep = run_axioms(s, 200, 7);
        std::size_t families[2] = {0, 0};
        for (const auto& c : rep.checks) {
            INFO(s.name(), " ", c.family, "/", c.name);
            CHECK(c.nontrivial > 0);
            ++families[c.family == "tpoly" ? 0 : 1];
        }
        CHECK(families[0] >= 7);
        CHECK(families[1] >= 6);
    }
}

TEST_CASE("family selection and seeds") {
    Scenario s = builtin::sl2_linear();
    AxiomsReport t = run_axioms(s, 20, 3, AxiomFamily::tpoly);
    for (const auto& c : t.checks) CHECK(c.family == "tpoly");
    AxiomsReport d = run_axioms(s, 20, 3, AxiomFamily::dpoly, 3, 3);
    for (const auto& c : d.checks) CHECK(c.family == "dpoly");
    CHECK(d.max_order == 3);

    AxiomsReport a = run_axioms(s, 30, 11);
    AxiomsReport b = run_axioms(s, 30, 11);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].nontrivial == b.checks[i].nontrivial);
}

TEST_CASE("generators are reproducible and homogeneous") {
    Scenario s = builtin::sl2_linear();
    Generator g1(5);
    Generator g2(5);
    for (int t = 0; t < 50; ++t) {
        TpolyCochain a = g1.tpoly(s, 3);
        CHECK(a == g2.tpoly(s, 3));
        CHECK(tpoly_weight(s, a).has_value());
        DpolyCochain d = g1.dpoly(s, 3, 3);
        CHECK(d == g2.dpoly(s, 3, 3));
        if (!d.is_zero()) CHECK(dpoly_weight(s, d).has_value());
    }
}
