#include "locdens/halflift.hpp"

namespace locdens {

namespace {

std::vector<std::string> hypothesis_failures(unsigned n, const BigInt& a) {
  std::vector<std::string> failed;
  if (n < 3) failed.emplace_back("n < 3");
  if (mpz_divisible_2exp_p(a.get_mpz_t(), 2)) failed.emplace_back("4 | a");
  return failed;
}

}  // namespace

HypothesisError::HypothesisError(const std::string& hypothesis)
    : std::domain_error("hypothesis violated: " + hypothesis), hypothesis_(hypothesis) {}

HalfLiftCertificate half_lift_census(unsigned d, unsigned n, const BigInt& a,
                                     const EnumBudget& budget, Execution exec) {
  if (d < 1 || n < 1) throw std::invalid_argument("half-lift census needs d >= 1 and n >= 1");
  check_budget(ipow(2, (n + 1) * d), budget);
  const std::uint64_t a_next = mod_floor(a, ipow(2, n + 1)).get_ui();
  const kernels::HalfLiftCensus c = exec == Execution::serial
                                        ? kernels::half_lift_census_serial(d, n, a_next)
                                        : kernels::half_lift_census_parallel(d, n, a_next);

  HalfLiftCertificate cert;
  cert.d = d;
  cert.n = n;
  cert.a = a;
  cert.solutions_n = BigCount(static_cast<unsigned long>(c.solutions));
  cert.lifting_classes = BigCount(static_cast<unsigned long>(c.lifting_classes));
  cert.orbit_pairs = BigCount(static_cast<unsigned long>(c.orbit_pairs));
  cert.solutions_next = count_sum_squares_enumerate(d, n + 1, a, budget);
  for (std::size_t k = 0; k < c.fibre_histogram.size(); ++k) {
    if (c.fibre_histogram[k] != 0) cert.fibre_sizes_seen.insert(static_cast<unsigned>(k));
  }
  if (sgn(cert.solutions_n) != 0) cert.ratio = make_rational(cert.solutions_next, cert.solutions_n);

  cert.failed_hypotheses = hypothesis_failures(n, a);
  cert.hypotheses_ok = cert.failed_hypotheses.empty();
  cert.involution_ok = c.involution_failures == 0 && 2 * c.orbit_pairs == c.solutions;
  cert.toggle_ok = c.toggle_failures == 0;
  const unsigned full = 1u << d;
  cert.fibres_ok = std::all_of(cert.fibre_sizes_seen.begin(), cert.fibre_sizes_seen.end(),
                               [&](unsigned k) { return k == 0 || k == full; });
  cert.holds = cert.hypotheses_ok && cert.involution_ok && cert.toggle_ok && cert.fibres_ok &&
               2 * cert.lifting_classes == cert.solutions_n &&
               cert.solutions_next == ipow(2, d - 1) * cert.solutions_n;
  return cert;
}

HalfLiftCertificate verify_fibre_invariance(unsigned d, unsigned n, const BigInt& a,
                                            const EnumBudget& budget) {
  HalfLiftCertificate cert = half_lift_census(d, n, a, budget);
  cert.holds = cert.fibres_ok;
  return cert;
}

HalfLiftCertificate verify_half_lift(unsigned d, unsigned n, const BigInt& a,
                                     const EnumBudget& budget) {
  const auto failed = hypothesis_failures(n, a);
  if (!failed.empty()) throw HypothesisError(failed.front());
  return half_lift_census(d, n, a, budget);
}

DescentReport verify_descent(unsigned n, const BigInt& a, const EnumBudget& budget) {
  if (n < 3) throw HypothesisError("n < 3");
  if (!mpz_divisible_2exp_p(a.get_mpz_t(), 2)) throw HypothesisError("4 does not divide a");
  DescentReport r;
  r.n = n;
  r.a = a;
  r.lhs = count_sum_squares_enumerate(3, n, a, budget);
  r.rhs = 8 * count_sum_squares_enumerate(3, n - 2, a / 4, budget);
  check_budget(ipow(2, (n + 1) * 3), budget);
  const kernels::HalfLiftCensus c =
      kernels::half_lift_census_parallel(3, n, mod_floor(a, ipow(2, n + 1)).get_ui());
  r.all_even = c.all_even_solutions == c.solutions;
  r.holds = r.lhs == r.rhs && r.all_even;
  return r;
}

}  // namespace locdens
