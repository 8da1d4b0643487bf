#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "gman/lie.hpp"
#include "gman/mask.hpp"
#include "gman/poly.hpp"
#include "gman/scenario.hpp"

namespace gman {

/// Sparse map (coordinate subset J) -> Poly. With Sign = -1 it is a
/// polyvector sum p_J d_{j1}^...^d_{jr}; with Sign = +1 a differential form
/// sum p_J dx^{j1}^...^dx^{jr}. Sign is the weight carried by each slot
/// relative to the coordinate weight.
template <int Sign>
class MaskField {
  public:
    using Terms = std::map<Mask, Poly>;

    MaskField() = default;
    explicit MaskField(std::size_t n) : n_(n) {}
    static MaskField single(Mask m, Poly p) {
        MaskField r(p.dim());
        r.add(m, p);
        return r;
    }

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(Mask m, const Poly& p) {
        if (p.is_zero()) return;
        adopt(p.dim());
        auto [it, inserted] = terms_.try_emplace(m, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly coefficient(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Poly(n_) : it->second;
    }

    /// Terms with exactly r slots.
    MaskField slots_part(int r) const {
        MaskField out(n_);
        for (const auto& [m, p] : terms_) {
            if (popcount(m) == r) out.terms_.emplace(m, p);
        }
        return out;
    }

    /// Weight of a single term.
    static long term_weight(Mask m, const MultiIndex& mono, std::span<const int> weights) {
        long w = mono.weight(weights);
        for (auto j : mask_indices(m)) w += Sign * weights[j];
        return w;
    }

    std::optional<long> homogeneous_weight(std::span<const int> weights) const {
        std::optional<long> w;
        for (const auto& [m, p] : terms_) {
            for (const auto& [mono, c] : p.terms()) {
                long tw = term_weight(m, mono, weights);
                if (w && *w != tw) return std::nullopt;
                w = tw;
            }
        }
        return w;
    }

    MaskField& operator+=(const MaskField& o) {
        for (const auto& [m, p] : o.terms_) add(m, p);
        return *this;
    }
    MaskField& operator-=(const MaskField& o) {
        for (const auto& [m, p] : o.terms_) add(m, -p);
        return *this;
    }
    MaskField& operator*=(const Rational& c) {
        if (gman::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, p] : terms_) p *= c;
        return *this;
    }
    /// Multiplication by a function.
    MaskField& operator*=(const Poly& f) {
        Terms next;
        for (auto& [m, p] : terms_) {
            Poly q = f * p;
            if (!q.is_zero()) next.emplace(m, std::move(q));
        }
        terms_ = std::move(next);
        adopt(f.dim());
        return *this;
    }
    friend MaskField operator+(MaskField a, const MaskField& b) { return a += b; }
    friend MaskField operator-(MaskField a, const MaskField& b) { return a -= b; }
    friend MaskField operator-(MaskField a) { return a *= Rational(-1); }
    friend MaskField operator*(MaskField a, const Rational& c) { return a *= c; }
    friend MaskField operator*(const Rational& c, MaskField a) { return a *= c; }
    friend MaskField operator*(const Poly& f, MaskField a) { return a *= f; }
    friend bool operator==(const MaskField& a, const MaskField& b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, p] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += "(" + p.to_string() + ")";
            for (auto j : mask_indices(m)) s += (Sign < 0 ? "*d" : "*dx") + std::to_string(j);
        }
        return s;
    }

  private:
    void adopt(std::size_t n) {
        if (n == 0) return;
        if (n_ == 0) {
            n_ = n;
        } else if (n_ != n) {
            throw DimensionError("coordinate dimension mismatch");
        }
    }

    Terms terms_;
    std::size_t n_ = 0;
};

/// Polyvector field. A term with r slots has degree r - 1, so functions
/// have degree -1 and vector fields degree 0.
using PolyVector = MaskField<-1>;
/// Polynomial differential form; a term with r slots has degree r.
using DiffForm = MaskField<1>;

/// Lambda g^v (x) T_poly with the CE differential of the Schouten action.
using TpolyCochain = CECochain<PolyVector>;
/// Lambda g^v (x) Omega; the balanced part (equal degrees) is where the
/// Todd cocycle lives.
using MixedForm = CECochain<DiffForm>;

PolyVector pv_function(const Poly& f);
PolyVector pv_from_field(const VectorField& v);
/// Degree-0 part as a vector field.
VectorField pv_to_field(const PolyVector& p, std::size_t n);

PolyVector pv_wedge(const PolyVector& p, const PolyVector& q);

/// Schouten bracket, with d_i (x) as an odd variable xi_i:
///   [P,Q] = sum_i (P <-d/dxi_i)(d_i Q) - (-1)^{(a-1)(b-1)} (Q <-d/dxi_i)(d_i P)
/// for a, b the number of slots of P, Q. It gives [X,f] = X(f) and the
/// Lie bracket on vector fields.
PolyVector schouten(const PolyVector& p, const PolyVector& q);

DiffForm form_wedge(const DiffForm& a, const DiffForm& b);
/// de Rham differential d(p dx^J) = sum_i d_i p dx^i ^ dx^J.
DiffForm d_rham(const DiffForm& w);
/// iota_X on forms, contracting the first slot.
DiffForm interior(const VectorField& x, const DiffForm& w);
/// Cartan formula L_X = iota_X d + d iota_X.
DiffForm lie_derivative_form(const VectorField& x, const DiffForm& w);

/// iota_{dx^i} on a polyvector: pairs dx^i with the first slot, so
/// iota_{dx}(d_x ^ d_y) = d_y.
PolyVector interior_covector(std::size_t i, const PolyVector& p);
/// iota_theta with iota_{a ^ b} = iota_b o iota_a.
PolyVector interior_form(const DiffForm& theta, const PolyVector& p);

/// Action a.P = [phi(a), P].
ModuleAction<PolyVector> tpoly_action(const Scenario& s);
/// Action a.w = L_{phi(a)} w.
ModuleAction<DiffForm> form_action(const Scenario& s);

TpolyCochain tpoly_differential(const Scenario& s, const TpolyCochain& a);
MixedForm mixed_differential(const Scenario& s, const MixedForm& a);

/// (a (x) X) ^ (b (x) Y) = (-1)^{(q1+1) p2} (a ^ b) (x) (X ^ Y) with q1 the
/// shifted degree of X and p2 the exterior degree of b.
TpolyCochain ext_wedge(const TpolyCochain& a, const TpolyCochain& b);
/// [a (x) X, b (x) Y] = (-1)^{q1 p2} (a ^ b) (x) [X,Y].
TpolyCochain ext_schouten(const TpolyCochain& a, const TpolyCochain& b);

/// (w1 (x) t1)(w2 (x) t2) = (w1 ^ w2) (x) (t1 ^ t2); commutative on the
/// balanced part.
MixedForm mixed_product(const MixedForm& a, const MixedForm& b);

/// (w (x) t) . (a (x) X) = (-1)^{k p} (w ^ a) (x) iota_t X for w of
/// exterior degree k and a of exterior degree p.
TpolyCochain contract(const MixedForm& eta, const TpolyCochain& a);

/// Lift of a scalar exterior form times a polyvector.
TpolyCochain tpoly_single(Mask ext, const PolyVector& p);

/// Weight of the cochain term e_I^v (x) mono * slots on the tpoly side.
long tpoly_term_weight(const Scenario& s, Mask ext, Mask slots, const MultiIndex& mono);
/// Weight if homogeneous (nullopt for zero or inhomogeneous).
std::optional<long> tpoly_weight(const Scenario& s, const TpolyCochain& a);
std::optional<long> mixed_weight(const Scenario& s, const MixedForm& a);

}  // namespace gman
