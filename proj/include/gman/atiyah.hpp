#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gman/calculus.hpp"
#include "gman/lie.hpp"
#include "gman/linalg.hpp"
#include "gman/scenario.hpp"

namespace gman {

/// Section A of T^v (x) End T: A(d_i) d_j = sum_k A(i,j,k) d_k.
class EndForm {
  public:
    EndForm() = default;
    explicit EndForm(std::size_t n) : n_(n), entries_(n * n * n, Poly(n)) {}
    /// The difference-tensor view of a connection: A(i,j,k) = G^k_ij.
    static EndForm from_connection(const Connection& c);
    Connection to_connection() const;

    std::size_t dim() const { return n_; }
    const Poly& operator()(std::size_t i, std::size_t j, std::size_t k) const { return entries_[(i * n_ + j) * n_ + k]; }
    Poly& operator()(std::size_t i, std::size_t j, std::size_t k) { return entries_[(i * n_ + j) * n_ + k]; }
    bool is_zero() const;

    /// A(X) Y for vector fields.
    VectorField apply(const VectorField& x, const VectorField& y) const;

    EndForm& operator+=(const EndForm& o);
    EndForm& operator-=(const EndForm& o);
    EndForm& operator*=(const Rational& c);
    friend EndForm operator+(EndForm a, const EndForm& b) { return a += b; }
    friend EndForm operator-(EndForm a, const EndForm& b) { return a -= b; }
    friend EndForm operator*(EndForm a, const Rational& c) { return a *= c; }
    friend bool operator==(const EndForm& a, const EndForm& b);

    std::string to_string() const;

  private:
    std::size_t n_ = 0;
    std::vector<Poly> entries_;
};

/// (L_v A)(i,j,k) = v(A^k_ij) - A^l_ij d_l v^k + A^k_lj d_i v^l + A^k_il d_j v^l.
EndForm lie_derivative_end(const VectorField& v, const EndForm& a);

using EndCochain = CECochain<EndForm>;

ModuleAction<EndForm> end_action(const Scenario& s);
EndCochain end_ce_differential(const Scenario& s, const EndCochain& c);

/// R(a, X) Y = [v_a, nabla_X Y] - nabla_X [v_a, Y] - nabla_{[v_a, X]} Y on
/// coordinate fields, as the degree-1 cochain sum_a e_a^v (x) R_a.
EndCochain atiyah_cocycle(const std::vector<VectorField>& action, const Connection& nabla);
EndCochain atiyah_cocycle(const Scenario& s);

/// Entry R(e_a, d_i) d_j, component k.
Poly atiyah_entry(const EndCochain& r, std::size_t a, std::size_t i, std::size_t j, std::size_t k);

struct IndependenceReport {
    EndCochain difference;  // R - R'
    EndCochain coboundary;  // d_CE(nabla - nabla')
    EndCochain residual;    // difference - coboundary
    bool ok() const { return residual.is_zero(); }
};
IndependenceReport check_connection_independence(const Scenario& s, const Connection& other);

struct SliceSolve {
    long weight = 0;          // coefficient weight (or cap, when cumulative)
    std::size_t unknowns = 0;
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
    bool solvable() const { return rank == augmented_rank; }
};

struct ObstructionReport {
    bool solvable = false;
    /// Unknown A restricted to coefficients of one weight each.
    std::vector<SliceSolve> slices;
    /// Unknown A with all coefficients of weight <= W', W' = 0..W.
    std::vector<SliceSolve> truncations;
    /// Set when solvable: A with d_CE A = R, the invariant connection
    /// nabla - A, and the Atiyah cocycle of that connection (zero).
    std::optional<EndForm> correction;
    std::optional<Connection> invariant_connection;
    bool invariance_verified = false;
    /// Instantiated equation when the scenario is one-dimensional.
    std::string equation;
};

/// Solves L_{v_a} A = R_a for all a within coefficient weights [0, W].
ObstructionReport invariant_connection_obstruction(const Scenario& s, int max_weight);

/// Truncated power series over Q with coefficients c_0..c_N.
class FormalSeries {
  public:
    explicit FormalSeries(std::size_t order) : c_(order + 1, Rational(0)) {}
    FormalSeries(std::size_t order, std::vector<Rational> coefficients);

    std::size_t order() const { return c_.size() - 1; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rational>& coefficients() const { return c_; }

    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
    FormalSeries scaled(const Rational& c) const;
    FormalSeries derivative() const;
    FormalSeries integral() const;
    /// Requires c_0 != 0.
    FormalSeries inverse() const;
    /// Requires c_0 = 1.
    FormalSeries log() const;
    /// Requires c_0 = 0.
    FormalSeries exp() const;

    friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

  private:
    std::vector<Rational> c_;
};

/// x / (1 - e^{-x}) through x^order.
FormalSeries todd_generating_series(std::size_t order);
/// log(x / (1 - e^{-x})) through x^order.
FormalSeries log_todd_series(std::size_t order);

struct ToddCocycle {
    std::size_t nilpotency = 0;  // min(dim g, n)
    FormalSeries log_series{0};
    /// tr(M^j), j = 1..nilpotency, with M_{kj} = sum R(a,i,j,k) e_a^v dx^i.
    std::vector<MixedForm> traces;
    MixedForm td;
    MixedForm td_sqrt;
};

MixedForm mixed_unit(std::size_t n);
/// M_{kj} = sum_{a,i} R(e_a, d_i) d_j |_k e_a^v (x) dx^i; row = output.
std::vector<std::vector<MixedForm>> atiyah_matrix(const EndCochain& r, std::size_t m, std::size_t n);
/// td = exp(sum_j c_j tr M^j), td^{1/2} = exp(1/2 sum ...), c_j from
/// log_todd_series.
ToddCocycle todd_cocycle(const EndCochain& r, std::size_t m, std::size_t n);
ToddCocycle todd_cocycle(const Scenario& s);

/// exp of a mixed form without constant term, truncated by nilpotency.
MixedForm mixed_exp(const MixedForm& t, std::size_t max_power, std::size_t n);

}  // namespace gman
