#pragma once

// Counts for orthogonal sums L1 + L2:
//   r_m(t; L1 + L2) = sum_{s mod p^m} r_m(s; L1) r_m(t - s; L2).
//
// The naive engine runs that sum directly. The stratified engine groups s by
// a residue key (valuation, unit class) on which per-residue counts are
// constant, so the sum has O(m) terms instead of p^m.
//
// Multi-block lattices fold left: ((B1 + B2) + B3) + ...

#include "locdens/closed_counts.hpp"
#include "locdens/kernels.hpp"
#include "locdens/lattice.hpp"
#include "locdens/oracle.hpp"
#include "locdens/padic.hpp"

#include <compare>
#include <stdexcept>
#include <vector>

namespace locdens {

/// Square class of a residue s mod p^m: v = min(v_p(s), m) and the unit part
/// of s reduced mod 2^{min(3, m - v)} (p = 2) or mod p (odd p). For v = m the
/// unit class is 0. r_m(s; L) depends on s only through this key.
struct ResidueKey {
  unsigned valuation = 0;
  std::uint64_t unit_class = 0;
  friend auto operator<=>(const ResidueKey&, const ResidueKey&) = default;
};

ResidueKey residue_key(std::uint64_t p, unsigned m, const BigInt& s);

/// p^v * unit_class, the canonical member of the key's class.
BigInt key_representative(std::uint64_t p, const ResidueKey& key);

/// Every key at level m with the number of residues mod p^m carrying it.
std::vector<std::pair<ResidueKey, BigCount>> residue_keys(std::uint64_t p, unsigned m);

struct Stratum {
  /// Tail strata are indexed by u in s = t + p^{w+1} u, w = v_p(t).
  bool tail = false;
  unsigned valuation = 0;
  std::uint64_t unit_class = 0;
  unsigned partner_valuation = 0;
  std::uint64_t partner_unit_class = 0;
  BigCount class_count;
  BigInt representative;
  BigCount per_residue_count_L;
  BigCount per_residue_count_M;
};

struct StratifiedCount {
  BigCount value;
  std::vector<Stratum> strata;
};

class ThresholdRefusal : public std::domain_error {
 public:
  ThresholdRefusal(const std::string& what, unsigned required_level);
  unsigned required_level() const { return required_; }

 private:
  unsigned required_;
};

/// r_m(s; L) for all s in [0, p^m).
std::vector<BigCount> count_vector(const LatticeSpec& lattice, unsigned m,
                                   const EnumBudget& budget = {},
                                   Execution exec = Execution::parallel);

/// Budget applies to the s-loop (p^m) and to any nested full convolution.
BigCount convolve_naive(const LatticeSpec& l1, const LatticeSpec& l2, unsigned m, const Target& t,
                        const EnumBudget& budget = {}, Execution exec = Execution::parallel);

/// Refuses (ThresholdRefusal) for t = 0 or m below stable_threshold(l1 + l2, t).
StratifiedCount convolve_stratified(const LatticeSpec& l1, const LatticeSpec& l2, unsigned m,
                                    const Target& t, const EnumBudget& budget = {});

/// r_m(t; L) for a multi-block L: stratified at or above the stable threshold,
/// naive below it, stratified again if the naive s-loop would not fit the budget.
Counted count_orthogonal_sum(const LatticeSpec& lattice, unsigned m, const Target& t,
                             const EnumBudget& budget = {});

/// sum_{u mod 2^k} v_2(u) with v_2(0) := k; equals 2^k - 1.
BigCount tail_valuation_sum(unsigned k);

namespace detail {
/// The stratified sum without the threshold gate. Exact at every level.
StratifiedCount stratified_sum(const LatticeSpec& l1, const LatticeSpec& l2, unsigned m,
                               const Target& t, const EnumBudget& budget, bool keep_strata);
}  // namespace detail

}  // namespace locdens
