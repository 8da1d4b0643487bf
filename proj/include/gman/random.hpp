#pragma once

#include <cstdint>
#include <random>

#include "gman/atiyah.hpp"
#include "gman/calculus.hpp"
#include "gman/dpoly.hpp"
#include "gman/scenario.hpp"

namespace gman {

/// Seeded generator of small homogeneous test objects. Draws use plain
/// modular reduction of mt19937_64 output so sequences do not depend on
/// the standard library's distribution implementations.
class Generator {
  public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    bool coin() { return uniform(0, 1) == 1; }
    /// Nonzero rational with small numerator and denominator.
    Rational rational();

    /// Random polynomial in n variables with at most `terms` terms of
    /// degree <= max_degree.
    Poly poly(std::size_t n, int max_degree, int terms = 3);
    /// Weight-homogeneous polynomial (zero if no monomial has weight w).
    Poly homogeneous_poly(std::span<const int> weights, long w, int terms = 2);
    VectorField vector_field(std::size_t n, int max_degree);
    PolyVector polyvector(std::size_t n, int slots, int max_degree, int terms = 2);
    DiffForm form(std::size_t n, int degree, int max_degree, int terms = 2);

    /// Nonzero tpoly cochain of bidegree (p, q) and a single weight drawn with
    /// it; weights of the coefficient monomials stay below max_coef_weight.
    TpolyCochain tpoly(const Scenario& s, int p, int q, int max_coef_weight, int terms = 2);
    /// Tpoly cochain with random bidegree.
    TpolyCochain tpoly(const Scenario& s, int max_coef_weight = 3);

    /// Dpoly cochain of exterior degree p and arity r (slots may carry the
    /// zero multi-index), total order <= max_order.
    DpolyCochain dpoly(const Scenario& s, int p, int r, int max_order, int max_coef_weight, int terms = 2);
    DpolyCochain dpoly(const Scenario& s, int max_arity, int max_order, int max_coef_weight = 3);

    /// Balanced mixed form sum e_I^v (x) w_I with |I| = deg w_I = k.
    MixedForm balanced_form(const Scenario& s, int k, int max_degree, int terms = 2);

    /// Torsion-free connection whose symbols are homogeneous of the shift
    /// of s (possibly zero in some entries).
    Connection connection(const Scenario& s, int density = 2);
    /// Torsion-free connection with arbitrary polynomial symbols of degree
    /// <= max_degree; never flat.
    Connection free_connection(std::size_t n, int max_degree = 2);

  private:
    std::mt19937_64 rng_;
};

/// Exterior degree and shifted internal degree of the first term (the
/// generators produce bihomogeneous cochains).
std::pair<int, int> bidegree(const TpolyCochain& c);
std::pair<int, int> bidegree(const DpolyCochain& c);

}  // namespace gman
