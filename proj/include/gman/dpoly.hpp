#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gman/calculus.hpp"
#include "gman/lie.hpp"
#include "gman/poly.hpp"
#include "gman/scenario.hpp"

namespace gman {

/// Derivative multi-indices of the argument slots, in order.
using SlotKey = std::vector<MultiIndex>;

/// Polydifferential operator in normal form
///   (f_0..f_k) -> sum p(x) d^{a_0} f_0 ... d^{a_k} f_k,
/// one Poly coefficient per slot key. Arity-0 terms are functions, so an
/// element may mix arities; the degree of an arity-r term is r - 1.
class PolyDiffOp {
  public:
    using Terms = std::map<SlotKey, Poly>;

    PolyDiffOp() = default;
    explicit PolyDiffOp(std::size_t n) : n_(n) {}

    static PolyDiffOp single(SlotKey key, Poly coefficient);
    static PolyDiffOp function(const Poly& f);
    /// m(f,g) = fg.
    static PolyDiffOp multiplication(std::size_t n);
    static PolyDiffOp from_field(const VectorField& v);
    /// 1-ary operator d^alpha with coefficient c.
    static PolyDiffOp derivative(const MultiIndex& alpha, const Poly& c);

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const SlotKey& key, const Poly& p);
    Poly coefficient(const SlotKey& key) const;

    PolyDiffOp arity_part(std::size_t r) const;
    /// Largest total order sum |a_i| over the terms (-1 for zero).
    int max_order() const;
    /// Every slot carries a nonzero multi-index.
    bool is_normalized() const;
    /// Drops terms of total order above cap.
    PolyDiffOp truncated(int cap) const;

    /// Applies the operator to concrete arguments (arity must match).
    Poly apply(std::span<const Poly> args) const;

    static long term_weight(const SlotKey& key, const MultiIndex& mono, std::span<const int> weights);
    std::optional<long> homogeneous_weight(std::span<const int> weights) const;

    PolyDiffOp& operator+=(const PolyDiffOp& o);
    PolyDiffOp& operator-=(const PolyDiffOp& o);
    PolyDiffOp& operator*=(const Rational& c);
    friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
    friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
    friend PolyDiffOp operator*(PolyDiffOp a, const Rational& c) { return a *= c; }
    friend PolyDiffOp operator*(const Rational& c, PolyDiffOp a) { return a *= c; }
    friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

  private:
    void adopt(std::size_t n);

    Terms terms_;
    std::size_t n_ = 0;
};

/// D1 o_i D2: the output of D2 substituted into slot i of D1, expanded by
/// the multivariate Leibniz rule. Terms of D1 with arity <= i drop out.
PolyDiffOp dp_insert(const PolyDiffOp& d1, std::size_t slot, const PolyDiffOp& d2);

/// D1 o D2 = sum_i (-1)^{(k-i) l} D1 o_i D2 for degrees k, l, applied
/// per arity component.
PolyDiffOp dp_compose(const PolyDiffOp& d1, const PolyDiffOp& d2);

/// [D1,D2] = D1 o D2 - (-1)^{kl} D2 o D1.
PolyDiffOp gerstenhaber(const PolyDiffOp& d1, const PolyDiffOp& d2);

/// d_H D = [m, D].
PolyDiffOp hochschild(const PolyDiffOp& d);

/// (D1 u D2)(f_0..f_{k+l+1}) = D1(f_0..f_k) D2(f_{k+1}..).
PolyDiffOp cup(const PolyDiffOp& d1, const PolyDiffOp& d2);

/// p d_{j1}^...^d_{jk} -> (p/k!) sum_sigma sgn(sigma) d_{j_sigma1} (x) ... .
PolyDiffOp hkr(const PolyVector& p);

using DpolyCochain = CECochain<PolyDiffOp>;

/// Action a.D = [phi(a), D].
ModuleAction<PolyDiffOp> dpoly_action(const Scenario& s);

DpolyCochain dpoly_ce_differential(const Scenario& s, const DpolyCochain& a);
/// D = d_CE + (-1)^p id (x) d_H.
DpolyCochain dpoly_total_differential(const Scenario& s, const DpolyCochain& a);

/// (a (x) X) u (b (x) Y) = (-1)^{(q1+1) p2} (a ^ b) (x) (X u Y).
DpolyCochain ext_cup(const DpolyCochain& a, const DpolyCochain& b);
/// [a (x) X, b (x) Y] = (-1)^{q1 p2} (a ^ b) (x) [X,Y].
DpolyCochain ext_gerstenhaber(const DpolyCochain& a, const DpolyCochain& b);
/// id (x) hkr.
DpolyCochain ext_hkr(const TpolyCochain& a);

long dpoly_term_weight(const Scenario& s, Mask ext, const SlotKey& key, const MultiIndex& mono);
std::optional<long> dpoly_weight(const Scenario& s, const DpolyCochain& a);

}  // namespace gman
