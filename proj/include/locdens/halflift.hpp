#pragma once

// The half-lift involution on x_1^2 + ... + x_d^2 = a (mod 2^n), run as an
// enumeration that produces a checkable certificate. Nothing here uses the
// closed-form counts.
//
// tau(x) = x + 2^{n-1} e_i, i the first odd coordinate of x. For n >= 3 and
// 4 not dividing a, tau is a free involution on solutions and each orbit has
// exactly one member that still solves mod 2^{n+1}.

#include "locdens/kernels.hpp"
#include "locdens/oracle.hpp"
#include "locdens/padic.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace locdens {

struct HalfLiftCertificate {
  unsigned d = 0;
  unsigned n = 0;
  BigInt a;
  BigCount solutions_n;
  BigCount lifting_classes;
  BigCount orbit_pairs;
  /// N_{d,n+1}(a), counted separately by the oracle.
  BigCount solutions_next;
  /// Number of lifts mod 2^{n+1} (out of 2^d) observed per solution class.
  std::set<unsigned> fibre_sizes_seen;
  /// N_{d,n+1} / N_{d,n}; absent when N_{d,n} = 0.
  std::optional<Rational> ratio;
  /// n >= 3 and 4 does not divide a.
  bool hypotheses_ok = false;
  std::vector<std::string> failed_hypotheses;
  bool involution_ok = false;
  bool toggle_ok = false;
  bool fibres_ok = false;
  /// Everything the half-lift principle asserts, checked on this instance.
  bool holds = false;
};

class HypothesisError : public std::domain_error {
 public:
  explicit HypothesisError(const std::string& hypothesis);
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// The raw certificate, whatever the hypotheses. Budget: 2^{(n+1)d} states.
HalfLiftCertificate half_lift_census(unsigned d, unsigned n, const BigInt& a,
                                     const EnumBudget& budget = {},
                                     Execution exec = Execution::parallel);

/// Certificate whose `holds` is fibre invariance only: lift counts in {0, 2^d}.
HalfLiftCertificate verify_fibre_invariance(unsigned d, unsigned n, const BigInt& a,
                                            const EnumBudget& budget = {});

/// Throws HypothesisError("n < 3") or HypothesisError("4 | a").
HalfLiftCertificate verify_half_lift(unsigned d, unsigned n, const BigInt& a,
                                     const EnumBudget& budget = {});

struct DescentReport {
  unsigned n = 0;
  BigInt a;
  BigCount lhs;  // N_{3,n}(a)
  BigCount rhs;  // 8 N_{3,n-2}(a/4)
  bool all_even = false;
  bool holds = false;
};

/// N_{3,n}(a) = 8 N_{3,n-2}(a/4) for 4 | a, n >= 3, both sides by enumeration.
DescentReport verify_descent(unsigned n, const BigInt& a, const EnumBudget& budget = {});

}  // namespace locdens
