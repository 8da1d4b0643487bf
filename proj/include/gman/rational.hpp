#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gman {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den" or "num". Throws std::invalid_argument on malformed
/// text or a zero denominator. The result is canonical.
Rational parse_rational(std::string_view text);

/// Always "num/den", with den > 0 (so 2 prints as "2/1").
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

/// (-1)^e for any integer e, including negative exponents.
constexpr int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

/// Koszul sign (-1)^(deg_a * deg_b).
constexpr int koszul_sign(long deg_a, long deg_b) { return parity_sign(deg_a * deg_b); }

Rational factorial(unsigned n);

}  // namespace gman
