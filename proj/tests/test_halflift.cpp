#include <doctest.h>

#include "locdens/halflift.hpp"

using namespace locdens;

TEST_SUITE("halflift") {

TEST_CASE("fibre invariance") {
  const HalfLiftCertificate a = verify_fibre_invariance(3, 3, 3);
  CHECK(a.fibre_sizes_seen == std::set<unsigned>{0, 8});
  CHECK(a.holds);
  const HalfLiftCertificate b = verify_fibre_invariance(1, 2, 1);
  for (unsigned k : b.fibre_sizes_seen) CHECK((k == 0 || k == 2));
  const HalfLiftCertificate c = verify_fibre_invariance(3, 3, 7);
  CHECK(c.fibre_sizes_seen.empty());
  CHECK(c.solutions_n == 0);
  CHECK_FALSE(c.ratio.has_value());
}

TEST_CASE("half-lift certificates") {
  const HalfLiftCertificate c = verify_half_lift(3, 3, 3);
  CHECK(c.solutions_n == 64);
  CHECK(c.lifting_classes == 32);
  CHECK(c.orbit_pairs == 32);
  CHECK(c.solutions_next == 256);
  CHECK(c.ratio == Rational(4));
  CHECK(c.holds);
  CHECK(verify_half_lift(2, 3, 1).ratio == Rational(2));
}

TEST_CASE("hypotheses are enforced") {
  try {
    verify_half_lift(4, 3, 8);
    FAIL("expected a refusal");
  } catch (const HypothesisError& e) {
    CHECK(e.hypothesis() == "4 | a");
  }
  CHECK_THROWS_AS(verify_half_lift(3, 2, 1), HypothesisError);
}

TEST_CASE("the d = 4, a = 8 failure is reported, not corrected") {
  const HalfLiftCertificate c = half_lift_census(4, 3, 8);
  CHECK(c.solutions_n == 128);
  CHECK(c.solutions_next == 1536);
  CHECK(c.ratio == Rational(12));
  CHECK_FALSE(c.hypotheses_ok);
  CHECK_FALSE(c.holds);
}

TEST_CASE("every primitive target for small d") {
  for (unsigned d = 1; d <= 3; ++d) {
    for (unsigned n = 3; n <= 5; ++n) {
      for (long a = 0; a < (1L << (n + 1)); ++a) {
        if (a % 4 == 0) continue;
        const HalfLiftCertificate c = verify_half_lift(d, n, a);
        CAPTURE(d);
        CAPTURE(n);
        CAPTURE(a);
        CHECK(c.holds);
        CHECK(2 * c.lifting_classes == c.solutions_n);
        CHECK(c.lifting_classes * ipow(2, d) == c.solutions_next);
      }
    }
  }
}

TEST_CASE("descent") {
  const DescentReport a = verify_descent(5, 12);
  CHECK(a.lhs == 512);
  CHECK(a.rhs == 512);
  CHECK(a.holds);
  const DescentReport b = verify_descent(3, 4);
  CHECK(b.lhs == 32);
  CHECK(b.holds);
  const DescentReport c = verify_descent(3, 8);
  CHECK(c.all_even);
  CHECK(c.holds);
  CHECK_THROWS_AS(verify_descent(3, 6), HypothesisError);
}

TEST_CASE("serial and parallel census agree") {
  for (long a : {1, 2, 3, 5, 8}) {
    CHECK(kernels::half_lift_census_serial(3, 4, a) == kernels::half_lift_census_parallel(3, 4, a));
  }
  CHECK(half_lift_census(2, 4, 5, {}, Execution::serial).lifting_classes ==
        half_lift_census(2, 4, 5, {}, Execution::parallel).lifting_classes);
}

TEST_CASE("census budget") {
  CHECK_THROWS_AS(half_lift_census(3, 6, 1, EnumBudget{1000}), BudgetExceeded);
}

}
