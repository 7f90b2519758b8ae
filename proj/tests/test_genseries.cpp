#include <doctest.h>

#include "locdens/closed_counts.hpp"
#include "locdens/genseries.hpp"

using namespace locdens;

TEST_SUITE("genseries") {

TEST_CASE("polynomial arithmetic") {
  const Poly a{1, -2};  // 1 - 2X
  const Poly sq = poly_mul(a, a);
  CHECK(sq == Poly{1, -4, 4});
  Poly q, r;
  poly_divmod(sq, a, q, r);
  CHECK(q == a);
  CHECK(r.empty());
  CHECK(poly_gcd(poly_mul(a, Poly{0, 1}), sq) == Poly{make_rational(-1, 2), 1});
  CHECK(poly_sub(a, a).empty());
  CHECK(to_string(Poly{0, 4, -4}) == "4X - 4X^2");
  CHECK(to_string(Poly{make_rational(1, 2), 0, -1}) == "1/2 - X^2");
  CHECK_THROWS_AS(poly_divmod(a, Poly{}, q, r), ArithmeticError);
}

TEST_CASE("hyperbolic closed forms") {
  const RationalSeries s = series_h0(2, 0, 0);
  CHECK(s.initial.empty());
  CHECK(s.numerator == Poly{0, 4, -4});
  CHECK(s.denominator == Poly{1, -4, 4});
  CHECK(is_reduced(s));
  CHECK(to_string(s) == "(4X - 4X^2)/(1 - 4X + 4X^2)");

  const RationalSeries v1 = series_h0(2, 0, 2);
  CHECK(v1.initial == std::vector<Rational>{4});
  CHECK(v1.numerator == Poly{0, 0, 4});
  CHECK(v1.denominator == Poly{1, -2});

  CHECK(coefficient(series_h0(3, 0, 3), 2) == 12);
  CHECK(coefficient(s, 3) == 32);

  // odd p, s = 0: X(2p - 1 - p^2 X)/(1 - pX)^2
  const RationalSeries odd = series_h0(5, 0, 0);
  CHECK(odd.numerator == Poly{0, 9, -25});
  CHECK(odd.denominator == Poly{1, -10, 25});

  CHECK(series_h0(2, 0, 1).numerator.empty());
}

TEST_CASE("anisotropic closed forms") {
  const RationalSeries s = series_h1(0);
  CHECK(s.numerator == Poly{0, 4, 4});
  CHECK(s.denominator == Poly{1, 0, -4});
  CHECK(is_reduced(s));
  CHECK(coefficient(s, 4) == 16);
  CHECK(coefficient(series_h1(2), 3) == 24);
  const RationalSeries four = series_h1(4);
  for (unsigned m = 3; m <= 20; ++m) CHECK(coefficient(four, m) == 0);
}

TEST_CASE("coefficients equal counts") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned e = 0; e <= 2; ++e) {
      for (long s : {0L, 1L, 2L, 3L, 4L, 5L, 8L, 9L, 25L, 50L, 54L, 96L, 250L, -12L}) {
        const RationalSeries series = series_h0(p, e, s);
        CHECK(is_reduced(series));
        for (unsigned m = 1; m <= 12; ++m) {
          CAPTURE(p);
          CAPTURE(e);
          CAPTURE(s);
          CAPTURE(m);
          CHECK(coefficient(series, m) == Rational(count_h0(p, e, m, s)));
        }
      }
    }
  }
  for (unsigned e = 0; e <= 3; ++e) {
    for (long t : {0L, 1L, 2L, 4L, 6L, 8L, 24L, 32L, 96L, -2L}) {
      const RationalSeries series = series_h1(e, t);
      CHECK(is_reduced(series));
      for (unsigned m = 1; m <= 12; ++m) {
        CHECK(coefficient(series, m) == Rational(count_h1(e, m, Target(2, t))));
      }
    }
  }
}

TEST_CASE("tail ratio is p past v + e + 1") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned e = 0; e <= 2; ++e) {
      for (unsigned v = (p == 2 ? 1 : 0); v <= 3; ++v) {
        const BigInt s = ipow(p, v + e);
        const RationalSeries series = series_h0(p, e, s);
        // symbolic: a single geometric factor 1 - pX
        CHECK(series.denominator == Poly{1, Rational(-BigInt(static_cast<unsigned long>(p)))});
        for (unsigned m = v + e + 2; m <= 14; ++m) {
          CHECK(coefficient(series, m + 1) == coefficient(series, m) * static_cast<unsigned long>(p));
        }
      }
    }
  }
}

TEST_CASE("normalisation divides out common factors") {
  RationalSeries s;
  s.numerator = poly_mul(Poly{0, 4}, Poly{1, -2});
  s.denominator = poly_mul(Poly{2, -4}, Poly{1, 3});
  const RationalSeries n = normalize(s);
  CHECK(n.numerator == Poly{0, 2});
  CHECK(n.denominator == Poly{1, 3});
  CHECK(is_reduced(n));
  CHECK_FALSE(is_reduced(s));
  for (unsigned m = 1; m <= 8; ++m) CHECK(coefficient(n, m) == coefficient(s, m));
}

}
