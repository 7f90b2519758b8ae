#pragma once

// Generating series sum_{m >= 1} c_m X^m of hyperbolic and anisotropic plane
// counts, stored as an explicit initial polynomial plus a reduced rational tail
// N(X)/D(X) with D(0) = 1. The tail has no terms of degree <= initial.size().

#include "locdens/padic.hpp"

#include <string>
#include <vector>

namespace locdens {

/// Dense polynomial over Q, ascending degree, no trailing zeros (zero is empty).
using Poly = std::vector<Rational>;

Poly poly_trim(Poly a);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Euclidean division; throws ArithmeticError for b = 0.
void poly_divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
/// Monic gcd (empty when both are zero).
Poly poly_gcd(Poly a, Poly b);
std::string to_string(const Poly& a, char var = 'X');

struct RationalSeries {
  /// Coefficients of X^1 .. X^k.
  std::vector<Rational> initial;
  Poly numerator;
  Poly denominator{Rational(1)};

  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;
};

/// Divides out gcd(N, D) and scales so D(0) = 1.
RationalSeries normalize(RationalSeries s);

/// True when gcd(N, D) is constant and D(0) = 1.
bool is_reduced(const RationalSeries& s);

/// sum_m M^{(e)}_{p,m}(s) X^m. Coefficients with m <= e come from the oracle.
RationalSeries series_h0(std::uint64_t p, unsigned e, const BigInt& s);

/// sum_m A_m(t) X^m for H1.
RationalSeries series_h1(const BigInt& t);
/// Scaled anisotropic plane 2^e H1.
RationalSeries series_h1(unsigned e, const BigInt& t);

/// Coefficient of X^m, m >= 1.
Rational coefficient(const RationalSeries& s, unsigned m);

/// "c1 X + c2 X^2 + (N)/(D)" with empty parts left out.
std::string to_string(const RationalSeries& s);

}  // namespace locdens
