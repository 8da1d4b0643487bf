#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gman/error.hpp"
#include "gman/mask.hpp"
#include "gman/rational.hpp"

namespace gman {

/// Element of the exterior algebra on the dual basis e_i^v of g.
class ExtForm {
  public:
    using Terms = std::map<Mask, Rational>;

    ExtForm() = default;
    static ExtForm basis(Mask m, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(Mask m, const Rational& c);

    ExtForm& operator+=(const ExtForm& o);
    ExtForm& operator-=(const ExtForm& o);
    ExtForm& operator*=(const Rational& c);
    friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
    friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
    friend ExtForm operator*(ExtForm a, const Rational& c) { return a *= c; }
    friend bool operator==(const ExtForm&, const ExtForm&) = default;

  private:
    Terms terms_;
};

ExtForm wedge(const ExtForm& a, const ExtForm& b);

/// Finite-dimensional Lie algebra [e_i, e_j] = sum_k c(i,j,k) e_k.
/// Antisymmetry and the Jacobi identity are verified exactly on
/// construction; failures throw ScenarioError with the witness triple.
class LieAlgebra {
  public:
    LieAlgebra() = default;
    /// `constants` is dense, indexed (i * dim + j) * dim + k.
    LieAlgebra(std::size_t dim, std::vector<Rational> constants);

    static LieAlgebra abelian(std::size_t dim);
    /// Basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    static LieAlgebra sl2();

    std::size_t dim() const { return dim_; }
    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
        return constants_[(i * dim_ + j) * dim_ + k];
    }
    bool is_abelian() const;

    /// Chevalley-Eilenberg differential of the trivial module on the
    /// exterior monomial e_I^v, extended as a degree +1 derivation from
    /// d(e_k^v) = -sum_{i<j} c(i,j,k) e_i^v ^ e_j^v.
    ExtForm trivial_differential(Mask monomial) const;

  private:
    std::size_t dim_ = 0;
    std::vector<Rational> constants_;
};

/// Element of Lambda^* g^v (x) V: exterior monomial -> value in V.
/// V must provide is_zero(), +=, -= and *= Rational.
template <class V>
class CECochain {
  public:
    using Terms = std::map<Mask, V>;
    using value_type = V;

    CECochain() = default;
    static CECochain single(Mask m, V v) {
        CECochain c;
        c.add(m, v);
        return c;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(Mask m, const V& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_scaled(Mask m, V v, const Rational& c) {
        if (gman::is_zero(c)) return;
        v *= c;
        add(m, v);
    }

    /// Value at the exterior monomial m (zero if absent).
    V at(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? V{} : it->second;
    }

    /// Part of exterior degree p.
    CECochain ext_degree_part(int p) const {
        CECochain r;
        for (const auto& [m, v] : terms_) {
            if (popcount(m) == p) r.terms_.emplace(m, v);
        }
        return r;
    }

    CECochain& operator+=(const CECochain& o) {
        for (const auto& [m, v] : o.terms_) add(m, v);
        return *this;
    }
    CECochain& operator-=(const CECochain& o) {
        for (const auto& [m, v] : o.terms_) add_scaled(m, v, Rational(-1));
        return *this;
    }
    CECochain& operator*=(const Rational& c) {
        if (gman::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend CECochain operator+(CECochain a, const CECochain& b) { return a += b; }
    friend CECochain operator-(CECochain a, const CECochain& b) { return a -= b; }
    friend CECochain operator*(CECochain a, const Rational& c) { return a *= c; }
    friend CECochain operator*(const Rational& c, CECochain a) { return a *= c; }
    friend bool operator==(const CECochain& a, const CECochain& b) { return a.terms_ == b.terms_; }

  private:
    Terms terms_;
};

/// Action of the basis element e_i on a module value.
template <class V>
using ModuleAction = std::function<V(std::size_t, const V&)>;

/// d_CE(alpha (x) v) = d(alpha) (x) v + sum_k (e_k^v ^ alpha) (x) (e_k . v),
/// which is the alternating-map formula
///   (d c)(a_0..a_p) = sum_i (-1)^i a_i.c(..^a_i..)
///                   + sum_{i<j} (-1)^{i+j} c([a_i,a_j], ..^a_i..^a_j..).
template <class V>
CECochain<V> ce_differential(const CECochain<V>& c, const LieAlgebra& g, const ModuleAction<V>& action) {
    CECochain<V> out;
    for (const auto& [m, v] : c.terms()) {
        ExtForm dm_form = g.trivial_differential(m);
        for (const auto& [dm, coef] : dm_form.terms()) out.add_scaled(dm, v, coef);
        for (std::size_t k = 0; k < g.dim(); ++k) {
            int s = wedge_sign(bit(k), m);
            if (s == 0) continue;
            V acted = action(k, v);
            if (acted.is_zero()) continue;
            out.add_scaled(m | bit(k), std::move(acted), Rational(s));
        }
    }
    return out;
}

/// D = d_CE + (-1)^p id (x) d_V on the total complex.
template <class V>
CECochain<V> total_differential(const CECochain<V>& c, const LieAlgebra& g, const ModuleAction<V>& action,
                                const std::function<V(const V&)>& d_vertical) {
    CECochain<V> out = ce_differential(c, g, action);
    for (const auto& [m, v] : c.terms()) {
        out.add_scaled(m, d_vertical(v), Rational(parity_sign(popcount(m))));
    }
    return out;
}

/// Evaluates the cochain as an alternating map on basis tuples
/// (a_0..a_{p-1}) with a_i = e_{idx[i]}; the value is sum over terms of
/// the determinant-style pairing of e_I^v with the tuple.
template <class V>
V evaluate_on_basis(const CECochain<V>& c, const std::vector<std::size_t>& idx) {
    V out{};
    Mask target = 0;
    for (auto i : idx) {
        if (target & bit(i)) return out;
        target |= bit(i);
    }
    // sign of the permutation sorting idx
    int inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) inversions += idx[a] > idx[b];
    }
    auto it = c.terms().find(target);
    if (it == c.terms().end()) return out;
    out = it->second;
    out *= Rational(parity_sign(inversions));
    return out;
}

}  // namespace gman
