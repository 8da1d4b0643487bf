#include "gman/scenario.hpp"

#include <fstream>
#include <sstream>

namespace gman {

using nlohmann::json;

VectorField::VectorField(std::vector<Poly> components) : comps_(std::move(components)) {}

VectorField VectorField::coordinate(std::size_t n, std::size_t i) {
    VectorField v(n);
    v.comps_[i] = Poly::constant(n, 1);
    return v;
}

bool VectorField::is_zero() const {
    for (const auto& c : comps_) {
        if (!c.is_zero()) return false;
    }
    return true;
}

Poly VectorField::apply(const Poly& f) const {
    Poly r(f.dim());
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (comps_[j].is_zero()) continue;
        r += comps_[j] * f.partial(j);
    }
    return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (comps_.empty()) comps_.assign(o.dim(), Poly(o.dim()));
    if (o.dim() != dim() && !o.comps_.empty()) throw DimensionError("vector field dimension mismatch");
    for (std::size_t j = 0; j < o.comps_.size(); ++j) comps_[j] += o.comps_[j];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    if (comps_.empty()) comps_.assign(o.dim(), Poly(o.dim()));
    if (o.dim() != dim() && !o.comps_.empty()) throw DimensionError("vector field dimension mismatch");
    for (std::size_t j = 0; j < o.comps_.size(); ++j) comps_[j] -= o.comps_[j];
    return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
    for (auto& p : comps_) p *= c;
    return *this;
}

VectorField& VectorField::operator*=(const Poly& f) {
    for (auto& p : comps_) p = f * p;
    return *this;
}

std::optional<long> VectorField::homogeneous_weight(std::span<const int> weights) const {
    std::optional<long> w;
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        for (const auto& [mono, c] : comps_[j].terms()) {
            long mw = mono.weight(weights) - weights[j];
            if (w && *w != mw) return std::nullopt;
            w = mw;
        }
    }
    return w;
}

std::string VectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (comps_[j].is_zero()) continue;
        os << (first ? "" : " + ") << "(" << comps_[j].to_string() << ")*d" << j;
        first = false;
    }
    return first ? "0" : os.str();
}

VectorField vf_bracket(const VectorField& x, const VectorField& y) {
    if (x.dim() != y.dim()) throw DimensionError("vector field dimension mismatch");
    VectorField r(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) r[j] = x.apply(y[j]) - y.apply(x[j]);
    return r;
}

bool Connection::is_zero() const {
    for (const auto& g : gamma_) {
        if (!g.is_zero()) return false;
    }
    return true;
}

bool Connection::is_symmetric() const {
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (!((*this)(k, i, j) == (*this)(k, j, i))) return false;
            }
        }
    }
    return true;
}

VectorField Connection::covariant_derivative(const VectorField& x, const VectorField& y) const {
    VectorField r(n_);
    for (std::size_t k = 0; k < n_; ++k) r[k] = x.apply(y[k]);
    for (std::size_t i = 0; i < n_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (y[j].is_zero()) continue;
            Poly xy = x[i] * y[j];
            for (std::size_t k = 0; k < n_; ++k) {
                const Poly& g = (*this)(k, i, j);
                if (!g.is_zero()) r[k] += xy * g;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail(ScenarioError::Kind kind, const std::string& msg, const std::string& witness = {}) {
    throw ScenarioError(kind, msg, witness);
}

}  // namespace

Scenario::Scenario(ScenarioData data) : data_(std::move(data)) {
    const std::size_t n = data_.dim_m;
    const std::size_t m = data_.dim_g;
    using K = ScenarioError::Kind;
    if (n == 0 || n > kMaxCoords) fail(K::schema, "dim_m must be in 1..8");
    if (m == 0 || m > 16) fail(K::schema, "dim_g must be in 1..16");
    if (data_.coordinate_weights.size() != n) fail(K::schema, "coordinate_weights must have dim_m entries");
    for (std::size_t i = 0; i < n; ++i) {
        if (data_.coordinate_weights[i] <= 0) {
            fail(K::schema, "coordinate weights must be positive", "w(x" + std::to_string(i) + ") = " +
                                                                      std::to_string(data_.coordinate_weights[i]));
        }
    }
    if (data_.action.size() != m) fail(K::schema, "action must list dim_g vector fields");
    for (auto& v : data_.action) {
        if (v.dim() != n) fail(K::schema, "each action vector field needs dim_m components");
    }
    if (data_.christoffel.dim() == 0) data_.christoffel = Connection(n);
    if (data_.christoffel.dim() != n) fail(K::schema, "christoffel must be dim_m^3 polynomials");
    if (data_.basis_weights.empty()) data_.basis_weights.assign(m, std::nullopt);
    if (data_.basis_weights.size() != m) fail(K::schema, "basis_weights must have dim_g entries");

    const Caps& caps = data_.caps;
    if (caps.max_order < 0 || caps.max_arity < 0) fail(K::caps, "caps must be non-negative");
    if (caps.max_ce_degree > static_cast<int>(m)) fail(K::caps, "max_ce_degree exceeds dim g");

    lie_ = LieAlgebra(m, data_.structure_constants);

    auto weights = coordinate_weights();
    basis_weights_.assign(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        const VectorField& v = data_.action[a];
        auto w = v.homogeneous_weight(weights);
        if (!v.is_zero() && !w) {
            // report one offending monomial: the first whose weight differs
            std::optional<long> ref;
            std::string witness;
            for (std::size_t j = 0; j < n && witness.empty(); ++j) {
                for (const auto& [mono, c] : v[j].terms()) {
                    long mw = mono.weight(weights) - weights[j];
                    if (!ref) {
                        ref = mw;
                    } else if (*ref != mw) {
                        witness = "phi(e" + std::to_string(a) + "): monomial " + mono.to_string() + " in component " +
                                  std::to_string(j) + " has field weight " + std::to_string(mw) + ", expected " +
                                  std::to_string(*ref);
                        break;
                    }
                }
            }
            fail(K::inhomogeneous_action, "action vector field is not weight-homogeneous", witness);
        }
        basis_weights_[a] = w ? *w : data_.basis_weights[a].value_or(0);
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                if (!gman::is_zero(lie_.c(i, j, k)) && basis_weights_[k] != basis_weights_[i] + basis_weights_[j]) {
                    fail(K::inhomogeneous_structure, "structure constants are not weight-homogeneous",
                         "c(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                             ") != 0 but w(e" + std::to_string(k) + ") != w(e" + std::to_string(i) + ") + w(e" +
                             std::to_string(j) + ")");
                }
            }
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            VectorField lhs(n);
            for (std::size_t k = 0; k < m; ++k) {
                if (!gman::is_zero(lie_.c(i, j, k))) lhs += data_.action[k] * lie_.c(i, j, k);
            }
            VectorField residual = lhs - vf_bracket(data_.action[i], data_.action[j]);
            if (!residual.is_zero()) {
                fail(K::morphism, "action is not a Lie algebra morphism",
                     "phi([e" + std::to_string(i) + ",e" + std::to_string(j) + "]) - [phi(e" + std::to_string(i) +
                         "),phi(e" + std::to_string(j) + ")] = " + residual.to_string());
            }
        }
    }

    const Connection& g = data_.christoffel;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!(g(k, i, j) == g(k, j, i))) {
                    fail(K::asymmetric_christoffel, "connection has torsion (Christoffel symbols not symmetric)",
                         "G^" + std::to_string(k) + "_" + std::to_string(i) + std::to_string(j) + " != G^" +
                             std::to_string(k) + "_" + std::to_string(j) + std::to_string(i));
                }
                long expected = static_cast<long>(weights[k]) - weights[i] - weights[j] + data_.connection_weight_shift;
                for (const auto& [mono, c] : g(k, i, j).terms()) {
                    if (mono.weight(weights) != expected) {
                        fail(K::inhomogeneous_christoffel, "Christoffel symbol is not weight-homogeneous",
                             "G^" + std::to_string(k) + "_" + std::to_string(i) + std::to_string(j) + ": monomial " +
                                 mono.to_string() + " has weight " + std::to_string(mono.weight(weights)) +
                                 ", expected " + std::to_string(expected));
                    }
                }
            }
        }
    }
}

long Scenario::ext_weight(Mask monomial) const {
    long w = 0;
    for (auto a : mask_indices(monomial)) w += dual_weight(a);
    return w;
}

int Scenario::max_ce_degree() const {
    return data_.caps.max_ce_degree < 0 ? static_cast<int>(m()) : data_.caps.max_ce_degree;
}

Scenario Scenario::with_caps(const Caps& caps) const {
    ScenarioData d = data_;
    d.caps = caps;
    return Scenario(std::move(d));
}

Scenario Scenario::with_connection(const Connection& c) const {
    ScenarioData d = data_;
    d.christoffel = c;
    return Scenario(std::move(d));
}

// ---------------------------------------------------------------------------

Poly poly_from_json(const json& j, std::size_t n) {
    using K = ScenarioError::Kind;
    if (!j.is_array()) fail(K::schema, "polynomial must be a list of terms");
    Poly p(n);
    for (const auto& term : j) {
        if (!term.is_array()) fail(K::schema, "polynomial term must be a list");
        std::vector<int> exps;
        std::string coef;
        if (term.size() == 2 && term[0].is_string() && term[1].is_array()) {
            coef = term[0].get<std::string>();
            for (const auto& e : term[1]) exps.push_back(e.get<int>());
        } else {
            if (term.size() != n + 1 || !term[n].is_string()) {
                fail(K::schema, "polynomial term must be [e_1..e_n, \"num/den\"]", term.dump());
            }
            for (std::size_t i = 0; i < n; ++i) exps.push_back(term[i].get<int>());
            coef = term[n].get<std::string>();
        }
        if (exps.size() != n) fail(K::schema, "exponent list has wrong length", term.dump());
        for (int e : exps) {
            if (e < 0) fail(K::schema, "negative exponent", term.dump());
        }
        Rational c;
        try {
            c = parse_rational(coef);
        } catch (const std::invalid_argument& e) {
            fail(K::parse, e.what(), term.dump());
        }
        p.add_term(MultiIndex(std::span<const int>(exps)), c);
    }
    return p;
}

json poly_to_json(const Poly& p) {
    json out = json::array();
    for (const auto& [mono, c] : p.terms()) out.push_back(json::array({to_string(c), mono.to_vector()}));
    return out;
}

json poly_to_scenario_json(const Poly& p) {
    json out = json::array();
    for (const auto& [mono, c] : p.terms()) {
        json t = mono.to_vector();
        t.push_back(to_string(c));
        out.push_back(t);
    }
    return out;
}

namespace {

int get_int(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number_integer()) {
        fail(ScenarioError::Kind::schema, std::string("missing or non-integer key \"") + key + "\"");
    }
    return obj[key].get<int>();
}

}  // namespace

Scenario load_scenario(std::string_view document) {
    using K = ScenarioError::Kind;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        fail(K::parse, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(K::schema, "scenario must be a JSON object");

    try {
        ScenarioData d;
        d.name = doc.value("name", std::string{});
        int m = get_int(doc, "dim_g");
        int n = get_int(doc, "dim_m");
        if (m <= 0 || m > 16) fail(K::schema, "dim_g must be in 1..16");
        if (n <= 0 || n > static_cast<int>(kMaxCoords)) fail(K::schema, "dim_m must be in 1..8");
        d.dim_g = static_cast<std::size_t>(m);
        d.dim_m = static_cast<std::size_t>(n);
        const std::size_t mm = d.dim_g;
        const std::size_t nn = d.dim_m;

        if (!doc.contains("coordinate_weights")) fail(K::schema, "missing key \"coordinate_weights\"");
        d.coordinate_weights = doc["coordinate_weights"].get<std::vector<int>>();

        d.structure_constants.assign(mm * mm * mm, Rational(0));
        std::vector<bool> seen(mm * mm * mm, false);
        if (!doc.contains("structure_constants")) fail(K::schema, "missing key \"structure_constants\"");
        for (const auto& entry : doc["structure_constants"]) {
            if (!entry.is_array() || entry.size() != 3) fail(K::schema, "structure constant entry must be [i,j,[[k,c]..]]");
            int i = entry[0].get<int>();
            int j = entry[1].get<int>();
            if (i < 0 || j < 0 || i >= m || j >= m) fail(K::schema, "structure constant index out of range", entry.dump());
            for (const auto& kc : entry[2]) {
                int k = kc.at(0).get<int>();
                if (k < 0 || k >= m) fail(K::schema, "structure constant index out of range", entry.dump());
                Rational c;
                try {
                    c = parse_rational(kc.at(1).get<std::string>());
                } catch (const std::invalid_argument& e) {
                    fail(K::parse, e.what(), entry.dump());
                }
                auto idx = [&](int a, int b) { return (static_cast<std::size_t>(a) * mm + b) * mm + k; };
                if (i == j && !gman::is_zero(c)) {
                    fail(K::antisymmetry, "structure constants not antisymmetric", "c(" + std::to_string(i) + "," +
                                                                                      std::to_string(i) + "," +
                                                                                      std::to_string(k) + ") != 0");
                }
                d.structure_constants[idx(i, j)] += c;
                seen[idx(i, j)] = true;
            }
        }
        // pairs given only once are completed by antisymmetry
        for (std::size_t i = 0; i < mm; ++i) {
            for (std::size_t j = 0; j < mm; ++j) {
                for (std::size_t k = 0; k < mm; ++k) {
                    std::size_t ij = (i * mm + j) * mm + k;
                    std::size_t ji = (j * mm + i) * mm + k;
                    if (seen[ij] && !seen[ji]) d.structure_constants[ji] = -d.structure_constants[ij];
                }
            }
        }

        if (!doc.contains("action")) fail(K::schema, "missing key \"action\"");
        const json& action = doc["action"];
        if (!action.is_array() || action.size() != mm) fail(K::schema, "action must have dim_g entries");
        for (std::size_t a = 0; a < mm; ++a) {
            if (!action[a].is_array() || action[a].size() != nn) {
                fail(K::schema, "action entry must have dim_m polynomials", "basis " + std::to_string(a));
            }
            std::vector<Poly> comps;
            for (std::size_t j = 0; j < nn; ++j) comps.push_back(poly_from_json(action[a][j], nn));
            d.action.emplace_back(std::move(comps));
        }

        d.christoffel = Connection(nn);
        if (doc.contains("christoffel")) {
            const json& ch = doc["christoffel"];
            if (!ch.is_array() || ch.size() != nn) fail(K::schema, "christoffel must be indexed [k][i][j]");
            for (std::size_t k = 0; k < nn; ++k) {
                if (!ch[k].is_array() || ch[k].size() != nn) fail(K::schema, "christoffel must be indexed [k][i][j]");
                for (std::size_t i = 0; i < nn; ++i) {
                    if (!ch[k][i].is_array() || ch[k][i].size() != nn) {
                        fail(K::schema, "christoffel must be indexed [k][i][j]");
                    }
                    for (std::size_t j = 0; j < nn; ++j) d.christoffel(k, i, j) = poly_from_json(ch[k][i][j], nn);
                }
            }
        }

        if (doc.contains("caps")) {
            const json& caps = doc["caps"];
            if (!caps.is_object()) fail(K::schema, "caps must be an object");
            if (caps.contains("max_weight")) d.caps.max_weight = get_int(caps, "max_weight");
            if (caps.contains("max_order")) d.caps.max_order = get_int(caps, "max_order");
            if (caps.contains("max_arity")) d.caps.max_arity = get_int(caps, "max_arity");
            if (caps.contains("max_ce_degree")) d.caps.max_ce_degree = get_int(caps, "max_ce_degree");
        }
        if (doc.contains("connection_weight_shift")) d.connection_weight_shift = get_int(doc, "connection_weight_shift");
        if (doc.contains("basis_weights")) {
            for (const auto& w : doc["basis_weights"]) {
                d.basis_weights.push_back(w.is_null() ? std::nullopt : std::optional<int>(w.get<int>()));
            }
        }
        return Scenario(std::move(d));
    } catch (const json::exception& e) {
        fail(K::schema, std::string("malformed scenario: ") + e.what());
    }
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ScenarioError::Kind::parse, "cannot open scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

json Scenario::to_json() const {
    json j;
    if (!data_.name.empty()) j["name"] = data_.name;
    j["dim_g"] = m();
    j["dim_m"] = n();
    j["coordinate_weights"] = data_.coordinate_weights;
    json sc = json::array();
    for (std::size_t i = 0; i < m(); ++i) {
        for (std::size_t jj = i + 1; jj < m(); ++jj) {
            json ks = json::array();
            for (std::size_t k = 0; k < m(); ++k) {
                if (!gman::is_zero(lie_.c(i, jj, k))) ks.push_back(json::array({k, to_string(lie_.c(i, jj, k))}));
            }
            if (!ks.empty()) sc.push_back(json::array({i, jj, ks}));
        }
    }
    j["structure_constants"] = sc;
    json act = json::array();
    for (const auto& v : data_.action) {
        json comps = json::array();
        for (const auto& p : v.components()) comps.push_back(poly_to_scenario_json(p));
        act.push_back(comps);
    }
    j["action"] = act;
    json ch = json::array();
    for (std::size_t k = 0; k < n(); ++k) {
        json rows = json::array();
        for (std::size_t i = 0; i < n(); ++i) {
            json row = json::array();
            for (std::size_t jj = 0; jj < n(); ++jj) row.push_back(poly_to_scenario_json(data_.christoffel(k, i, jj)));
            rows.push_back(row);
        }
        ch.push_back(rows);
    }
    j["christoffel"] = ch;
    json caps = {{"max_weight", data_.caps.max_weight},
                 {"max_order", data_.caps.max_order},
                 {"max_arity", data_.caps.max_arity}};
    if (data_.caps.max_ce_degree >= 0) caps["max_ce_degree"] = data_.caps.max_ce_degree;
    j["caps"] = caps;
    if (data_.connection_weight_shift != 0) j["connection_weight_shift"] = data_.connection_weight_shift;
    return j;
}

// ---------------------------------------------------------------------------

namespace builtin {

Scenario line_action(const Poly& q) {
    ScenarioData d;
    d.name = "line_action";
    d.dim_g = 1;
    d.dim_m = 1;
    d.coordinate_weights = {1};
    d.structure_constants = {Rational(0)};
    d.action = {VectorField({q})};
    d.christoffel = Connection(1);
    return Scenario(std::move(d));
}

Scenario paper_sec4() {
    ScenarioData d;
    d.name = "paper_sec4";
    d.dim_g = 1;
    d.dim_m = 1;
    d.coordinate_weights = {1};
    d.structure_constants = {Rational(0)};
    d.action = {VectorField({Poly::monomial(MultiIndex{2})})};
    d.christoffel = Connection(1);
    d.caps = Caps{6, 4, 4, -1};
    return Scenario(std::move(d));
}

Scenario sl2_linear() {
    ScenarioData d;
    d.name = "sl2_linear";
    d.dim_g = 3;
    d.dim_m = 2;
    d.coordinate_weights = {1, 1};
    LieAlgebra sl2 = LieAlgebra::sl2();
    d.structure_constants.resize(27);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) d.structure_constants[(i * 3 + j) * 3 + k] = sl2.c(i, j, k);
        }
    }
    Poly x = Poly::variable(2, 0);
    Poly y = Poly::variable(2, 1);
    d.action = {VectorField({x, -y}), VectorField({Poly(2), x}), VectorField({y, Poly(2)})};
    d.christoffel = Connection(2);
    d.caps = Caps{6, 4, 4, -1};
    return Scenario(std::move(d));
}

Scenario abelian_trivial() {
    ScenarioData d;
    d.name = "abelian_trivial";
    d.dim_g = 2;
    d.dim_m = 2;
    d.coordinate_weights = {1, 1};
    d.structure_constants.assign(8, Rational(0));
    d.action = {VectorField(2), VectorField(2)};
    d.christoffel = Connection(2);
    d.caps = Caps{4, 3, 3, -1};
    return Scenario(std::move(d));
}

}  // namespace builtin

}  // namespace gman
