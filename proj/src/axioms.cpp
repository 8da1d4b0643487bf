#include "gman/axioms.hpp"

#include <functional>

#include "gman/calculus.hpp"
#include "gman/dpoly.hpp"
#include "gman/random.hpp"

namespace gman {

namespace {

template <class V>
std::string cochain_string(const CECochain<V>& c) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& [m, v] : c.terms()) {
        if (!out.empty()) out += " + ";
        out += "e" + mask_to_string(m) + "(x)[" + v.to_string() + "]";
    }
    constexpr std::size_t limit = 600;
    if (out.size() > limit) out = out.substr(0, limit) + "...";
    return out;
}

template <class C>
struct Identity {
    const char* name;
    /// Signed summands; the identity says they add up to zero.
    std::function<std::vector<C>(const C&, const C&, const C&)> terms;
    /// Overrides the nonzero-summand test when set (used for d^2, whose
    /// only summand is the residual itself).
    std::function<bool(const C&)> probe = nullptr;
};

template <class C>
bool run_identities(const std::vector<Identity<C>>& ids, const C& a, const C& b, const C& c,
                    std::vector<AxiomCheck>& checks, std::size_t offset) {
    bool all = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        AxiomCheck& chk = checks[offset + i];
        ++chk.cases;
        C r;
        bool nontrivial = false;
        for (const C& t : ids[i].terms(a, b, c)) {
            nontrivial = nontrivial || !t.is_zero();
            r += t;
        }
        if (ids[i].probe) nontrivial = ids[i].probe(a);
        if (nontrivial) ++chk.nontrivial;
        if (r.is_zero()) {
            ++chk.passed;
            continue;
        }
        all = false;
        if (!chk.witness) {
            chk.witness = "A = " + cochain_string(a) + "; B = " + cochain_string(b) + "; C = " + cochain_string(c) +
                          "; residual = " + cochain_string(r);
        }
    }
    return all;
}

template <class C>
C neg(C x) {
    return x * Rational(-1);
}

template <class C>
C signed_by(long e, C x) {
    return x * Rational(parity_sign(e));
}

std::vector<Identity<TpolyCochain>> tpoly_identities(const Scenario& s) {
    // |A| = p + q is the bracket degree, ||A|| = |A| + 1 the product degree.
    auto deg = [](const TpolyCochain& x) {
        auto [p, q] = bidegree(x);
        return p + q;
    };
    auto d = [&s](const TpolyCochain& x) { return tpoly_differential(s, x); };
    using T = TpolyCochain;
    using V = std::vector<T>;
    std::vector<Identity<T>> ids;
    ids.push_back({"d_squared", [d](const T& a, const T&, const T&) { return V{d(d(a))}; },
                   [d](const T& a) { return !d(a).is_zero(); }});
    ids.push_back({"d_derivation_product", [=](const T& a, const T& b, const T&) {
                       return V{d(ext_wedge(a, b)), neg(ext_wedge(d(a), b)),
                                neg(signed_by(deg(a) + 1, ext_wedge(a, d(b))))};
                   }});
    ids.push_back({"d_derivation_bracket", [=](const T& a, const T& b, const T&) {
                       return V{d(ext_schouten(a, b)), neg(ext_schouten(d(a), b)),
                                neg(signed_by(deg(a), ext_schouten(a, d(b))))};
                   }});
    ids.push_back({"graded_commutativity", [=](const T& a, const T& b, const T&) {
                       return V{ext_wedge(a, b), neg(signed_by((deg(a) + 1) * (deg(b) + 1), ext_wedge(b, a)))};
                   }});
    ids.push_back({"product_associativity", [](const T& a, const T& b, const T& c) {
                       return V{ext_wedge(ext_wedge(a, b), c), neg(ext_wedge(a, ext_wedge(b, c)))};
                   }});
    ids.push_back({"bracket_antisymmetry", [=](const T& a, const T& b, const T&) {
                       return V{ext_schouten(a, b), signed_by(deg(a) * deg(b), ext_schouten(b, a))};
                   }});
    ids.push_back({"graded_jacobi", [=](const T& a, const T& b, const T& c) {
                       return V{ext_schouten(a, ext_schouten(b, c)), neg(ext_schouten(ext_schouten(a, b), c)),
                                neg(signed_by(deg(a) * deg(b), ext_schouten(b, ext_schouten(a, c))))};
                   }});
    ids.push_back({"graded_leibniz", [=](const T& a, const T& b, const T& c) {
                       return V{ext_schouten(a, ext_wedge(b, c)), neg(ext_wedge(ext_schouten(a, b), c)),
                                neg(signed_by(deg(a) * (deg(b) + 1), ext_wedge(b, ext_schouten(a, c))))};
                   }});
    return ids;
}

std::vector<Identity<DpolyCochain>> dpoly_identities(const Scenario& s) {
    auto deg = [](const DpolyCochain& x) {
        auto [p, q] = bidegree(x);
        return p + q;
    };
    auto d = [&s](const DpolyCochain& x) { return dpoly_total_differential(s, x); };
    using D = DpolyCochain;
    using V = std::vector<D>;
    std::vector<Identity<D>> ids;
    ids.push_back({"d_squared", [d](const D& a, const D&, const D&) { return V{d(d(a))}; },
                   [d](const D& a) { return !d(a).is_zero(); }});
    ids.push_back({"ce_squared",
                   [&s](const D& a, const D&, const D&) {
                       return V{dpoly_ce_differential(s, dpoly_ce_differential(s, a))};
                   },
                   [&s](const D& a) { return !dpoly_ce_differential(s, a).is_zero(); }});
    ids.push_back({"bracket_antisymmetry", [=](const D& a, const D& b, const D&) {
                       return V{ext_gerstenhaber(a, b), signed_by(deg(a) * deg(b), ext_gerstenhaber(b, a))};
                   }});
    ids.push_back({"graded_jacobi", [=](const D& a, const D& b, const D& c) {
                       return V{ext_gerstenhaber(a, ext_gerstenhaber(b, c)),
                                neg(ext_gerstenhaber(ext_gerstenhaber(a, b), c)),
                                neg(signed_by(deg(a) * deg(b), ext_gerstenhaber(b, ext_gerstenhaber(a, c))))};
                   }});
    ids.push_back({"d_derivation_bracket", [=](const D& a, const D& b, const D&) {
                       return V{d(ext_gerstenhaber(a, b)), neg(ext_gerstenhaber(d(a), b)),
                                neg(signed_by(deg(a), ext_gerstenhaber(a, d(b))))};
                   }});
    ids.push_back({"d_derivation_cup", [=](const D& a, const D& b, const D&) {
                       return V{d(ext_cup(a, b)), neg(ext_cup(d(a), b)), neg(signed_by(deg(a) + 1, ext_cup(a, d(b))))};
                   }});
    ids.push_back({"cup_associativity", [](const D& a, const D& b, const D& c) {
                       return V{ext_cup(ext_cup(a, b), c), neg(ext_cup(a, ext_cup(b, c)))};
                   }});
    return ids;
}

template <class C>
void register_checks(const char* family, const std::vector<Identity<C>>& ids, std::vector<AxiomCheck>& checks) {
    for (const auto& id : ids) checks.push_back({family, id.name, 0, 0, 0, std::nullopt});
}

}  // namespace

AxiomsReport run_axioms(const Scenario& s, std::size_t cases, std::uint64_t seed, AxiomFamily family, int max_order,
                        int max_arity) {
    AxiomsReport rep;
    rep.seed = seed;
    rep.cases = cases;
    rep.max_order = max_order;
    rep.max_arity = max_arity;
    const bool do_t = family != AxiomFamily::dpoly;
    const bool do_d = family != AxiomFamily::tpoly;
    auto tids = tpoly_identities(s);
    auto dids = dpoly_identities(s);
    if (do_t) register_checks("tpoly", tids, rep.checks);
    const std::size_t d_offset = rep.checks.size();
    if (do_d) register_checks("dpoly", dids, rep.checks);

    Generator gen(seed);
    const int max_weight = 2;
    for (std::size_t i = 0; i < cases; ++i) {
        bool ok = true;
        if (do_t) {
            auto a = gen.tpoly(s, max_weight);
            auto b = gen.tpoly(s, max_weight);
            auto c = gen.tpoly(s, max_weight);
            ok = run_identities(tids, a, b, c, rep.checks, 0) && ok;
        }
        if (do_d) {
            // arity of [A,[B,C]] is r_a + r_b + r_c - 2; cups need r_a + r_b.
            int r[3];
            int o[3];
            do {
                for (auto& x : r) x = static_cast<int>(gen.uniform(0, std::min(max_arity, 3)));
            } while (r[0] + r[1] + r[2] - 2 > max_arity || r[0] + r[1] > max_arity || r[1] + r[2] > max_arity ||
                     r[0] + r[2] > max_arity);
            int budget = max_order;
            for (int k = 0; k < 3; ++k) {
                o[k] = r[k] == 0 ? 0 : static_cast<int>(gen.uniform(0, std::min(budget, 2)));
                budget -= o[k];
            }
            DpolyCochain x[3];
            for (int k = 0; k < 3; ++k) {
                int p = static_cast<int>(gen.uniform(0, static_cast<long>(s.m())));
                do {
                    x[k] = gen.dpoly(s, p, r[k], o[k], max_weight, 2);
                } while (x[k].is_zero());
            }
            ok = run_identities(dids, x[0], x[1], x[2], rep.checks, d_offset) && ok;
        }
        if (ok) ++rep.cases_passed;
    }
    return rep;
}

}  // namespace gman
