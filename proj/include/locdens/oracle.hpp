#pragma once

// Brute-force enumeration of Q(v) = t (mod p^m). This is the ground truth the
// closed forms are checked against, so it stays deliberately simple: each
// block's value histogram is built by evaluating its form on every coordinate
// vector, and orthogonal sums convolve those histograms.

#include "locdens/kernels.hpp"
#include "locdens/lattice.hpp"
#include "locdens/padic.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace locdens {

inline constexpr std::uint64_t default_max_states = std::uint64_t{1} << 26;

struct EnumBudget {
  std::uint64_t max_states = default_max_states;
};

/// Hard failure: the oracle never truncates.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const BigInt& required, std::uint64_t max_states);
  const BigInt& required() const { return required_; }

 private:
  BigInt required_;
};

/// States visited by value_histogram: sum over blocks of p^{m rank(B)},
/// plus p^{2m} per histogram convolution.
BigInt enumeration_cost(const LatticeSpec& lattice, unsigned m);

/// r_m(s; L) for every s in [0, p^m).
std::vector<BigCount> value_histogram(const LatticeSpec& lattice, unsigned m,
                                      const EnumBudget& budget = {},
                                      Execution exec = Execution::parallel);

/// r^{(q)}_m(s; L) = #{v mod 2^m : Q(v)/2 = s (mod 2^m)} for an even lattice at p = 2.
std::vector<BigCount> half_value_histogram(const LatticeSpec& lattice, unsigned m,
                                           const EnumBudget& budget = {},
                                           Execution exec = Execution::parallel);

BigCount count_enumerate(const LatticeSpec& lattice, unsigned m, const Target& t,
                         const EnumBudget& budget = {});

/// N_{d,n}(a) for every a in [0, 2^n), by visiting all of (Z/2^n)^d.
std::vector<BigCount> sum_squares_histogram(unsigned d, unsigned n, const EnumBudget& budget = {},
                                            Execution exec = Execution::parallel);

/// N_{d,n}(a); equals 1 when n = 0.
BigCount count_sum_squares_enumerate(unsigned d, unsigned n, const BigInt& a,
                                     const EnumBudget& budget = {});

/// Throws BudgetExceeded when cost > budget.max_states.
void check_budget(const BigInt& cost, const EnumBudget& budget);

}  // namespace locdens
