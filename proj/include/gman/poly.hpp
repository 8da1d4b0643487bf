#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gman/rational.hpp"

namespace gman {

inline constexpr std::size_t kMaxCoords = 8;

/// Raised when objects built over different coordinate spaces meet.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Exponent vector x^a (or derivative multi-index d^a) over n coordinates.
/// Ordered graded-lexicographically: total degree first, then exponents.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n);
    MultiIndex(std::initializer_list<int> exponents);
    explicit MultiIndex(std::span<const int> exponents);

    static MultiIndex unit(std::size_t n, std::size_t i);

    std::size_t size() const { return n_; }
    int operator[](std::size_t i) const { return exps_[i]; }
    void set(std::size_t i, int value);
    int total_degree() const;
    bool is_zero() const { return total_degree() == 0; }

    /// Sum of exponent_i * weight_i.
    long weight(std::span<const int> weights) const;

    /// Componentwise a <= b.
    bool divides(const MultiIndex& other) const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

    std::vector<int> to_vector() const;
    std::string to_string() const;

  private:
    std::array<std::uint16_t, kMaxCoords> exps_{};
    std::uint8_t n_ = 0;
};

/// Sparse polynomial in Q[x_1..x_n]. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
///
/// A default-constructed Poly has dimension 0 and acts as a zero that is
/// compatible with any dimension.
class Poly {
  public:
    using Terms = std::map<MultiIndex, Rational>;

    Poly() = default;
    explicit Poly(std::size_t n) : n_(n) {}

    static Poly constant(std::size_t n, const Rational& c);
    static Poly monomial(const MultiIndex& exps, const Rational& c = 1);
    static Poly variable(std::size_t n, std::size_t i);

    std::size_t dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of x^exps (zero if absent).
    Rational coefficient(const MultiIndex& exps) const;

    /// Adds c * x^exps in place.
    void add_term(const MultiIndex& exps, const Rational& c);

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b);

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    /// Partial derivative in coordinate i.
    Poly partial(std::size_t i) const;
    /// d^alpha applied to the polynomial.
    Poly derivative(const MultiIndex& alpha) const;

    /// Weight of the polynomial if every monomial has the same weight.
    /// Zero polynomials return std::nullopt.
    std::optional<long> homogeneous_weight(std::span<const int> weights) const;

    /// Keeps only the monomials of the given weight.
    Poly weight_component(std::span<const int> weights, long weight) const;

    int degree() const;
    std::string to_string() const;

  private:
    void check_dim(const Poly& other) const;
    void adopt_dim(const Poly& other);

    Terms terms_;
    std::size_t n_ = 0;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_partial(const Poly& p, std::size_t i);

/// All multi-indices over n coordinates with the given weight
/// (weights must be positive), in increasing MultiIndex order.
std::vector<MultiIndex> monomials_of_weight(std::span<const int> weights, long weight);

/// All multi-indices over n coordinates with total degree exactly d.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int d);

/// Product over coordinates of binomial(alpha_i, beta_i).
Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace gman
