#include "locdens/compose.hpp"

#include "locdens/densities.hpp"

#include <map>
#include <memory>
#include <variant>

namespace locdens {

namespace {

std::uint64_t unit_modulus(std::uint64_t p, unsigned m, unsigned v) {
  if (p == 2) {
    return std::uint64_t{1} << std::min(3u, m - v);
  }
  return p;
}

// Below these levels a single block has no closed form and is read from a histogram.
bool has_closed_form(const BlockSpec& block, std::uint64_t p, unsigned m) {
  if (const auto* h0 = std::get_if<ScaledH0>(&block)) return m > h0->e;
  if (const auto* h1 = std::get_if<ScaledH1>(&block)) return m > h1->e;
  if (const auto* ti = std::get_if<TypeI>(&block)) return p == 2 && m > ti->a;
  return true;
}

// r_m(s; L) memoised on the residue key of s.
class KeyedCounter {
 public:
  KeyedCounter(const LatticeSpec& lattice, unsigned m, const EnumBudget& budget)
      : lattice_(lattice), m_(m), budget_(budget) {}

  BigCount at(const BigInt& s) {
    const std::uint64_t p = lattice_.prime();
    const ResidueKey key = residue_key(p, m_, s);
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    const BigInt rep = key_representative(p, key);
    BigCount value;
    if (!lattice_.is_single_block()) {
      value = detail::stratified_sum(lattice_.without_last(), lattice_.last_block(), m_,
                                     Target(p, rep), budget_, false)
                  .value;
    } else if (has_closed_form(lattice_.blocks().front(), p, m_)) {
      value = count_lattice(lattice_, m_, Target(p, rep), budget_).value;
    } else {
      if (histogram_.empty()) {
        histogram_ = value_histogram(lattice_, m_, budget_);
      }
      value = histogram_[rep.get_ui()];
    }
    memo_.emplace(key, value);
    return value;
  }

 private:
  LatticeSpec lattice_;
  unsigned m_;
  EnumBudget budget_;
  std::map<ResidueKey, BigCount> memo_;
  std::vector<BigCount> histogram_;
};

}  // namespace

ThresholdRefusal::ThresholdRefusal(const std::string& what, unsigned required_level)
    : std::domain_error(what), required_(required_level) {}

ResidueKey residue_key(std::uint64_t p, unsigned m, const BigInt& s) {
  const BigInt r = mod_floor(s, ipow(p, m));
  const unsigned v = residue_valuation(p, m, r);
  if (v == m) {
    return {m, 0};
  }
  BigInt unit = r;
  for (unsigned i = 0; i < v; ++i) unit /= static_cast<unsigned long>(p);
  const BigInt c = mod_floor(unit, BigInt(static_cast<unsigned long>(unit_modulus(p, m, v))));
  return {v, c.get_ui()};
}

BigInt key_representative(std::uint64_t p, const ResidueKey& key) {
  if (key.unit_class == 0) {
    return 0;
  }
  return ipow(p, key.valuation) * BigInt(static_cast<unsigned long>(key.unit_class));
}

std::vector<std::pair<ResidueKey, BigCount>> residue_keys(std::uint64_t p, unsigned m) {
  std::vector<std::pair<ResidueKey, BigCount>> keys;
  for (unsigned v = 0; v < m; ++v) {
    const std::uint64_t mod = unit_modulus(p, m, v);
    // residues with valuation v: (p - 1) p^{m - v - 1}, split evenly across the unit classes
    const BigCount per_class = p == 2 ? ipow(2, m - v) / BigCount(static_cast<unsigned long>(mod))
                                      : ipow(p, m - v - 1);
    for (std::uint64_t c = 1; c < mod; ++c) {
      if (c % p == 0) continue;
      keys.push_back({{v, c}, per_class});
    }
  }
  keys.push_back({{m, 0}, 1});
  return keys;
}

std::vector<BigCount> count_vector(const LatticeSpec& lattice, unsigned m,
                                   const EnumBudget& budget, Execution exec) {
  const std::uint64_t p = lattice.prime();
  const std::uint64_t modulus = modulus_u64(p, m);
  check_budget(BigInt(static_cast<unsigned long>(modulus)), budget);
  if (!lattice.is_single_block()) {
    std::vector<BigCount> acc = count_vector(lattice.without_last(), m, budget, exec);
    std::vector<BigCount> last = count_vector(lattice.last_block(), m, budget, exec);
    check_budget(BigInt(static_cast<unsigned long>(modulus)) * modulus, budget);
    return exec == Execution::serial ? kernels::cyclic_convolve_serial(acc, last)
                                     : kernels::cyclic_convolve_parallel(acc, last);
  }
  if (!has_closed_form(lattice.blocks().front(), p, m)) {
    return value_histogram(lattice, m, budget, exec);
  }
  std::vector<BigCount> out(modulus);
  const auto n = static_cast<std::int64_t>(modulus);
#pragma omp parallel for schedule(dynamic, 64) if (exec == Execution::parallel)
  for (std::int64_t s = 0; s < n; ++s) {
    out[s] = count_lattice(lattice, m, Target(p, BigInt(static_cast<long>(s))), budget).value;
  }
  return out;
}

BigCount convolve_naive(const LatticeSpec& l1, const LatticeSpec& l2, unsigned m, const Target& t,
                        const EnumBudget& budget, Execution exec) {
  if (l1.prime() != l2.prime() || t.prime() != l1.prime()) {
    throw std::invalid_argument("lattices and target use different primes");
  }
  const std::vector<BigCount> a = count_vector(l1, m, budget, exec);
  const std::vector<BigCount> b = count_vector(l2, m, budget, exec);
  const std::uint64_t tr = t.residue(m).get_ui();
  return exec == Execution::serial ? kernels::convolution_at_serial(a, b, tr)
                                   : kernels::convolution_at_parallel(a, b, tr);
}

namespace detail {

StratifiedCount stratified_sum(const LatticeSpec& l1, const LatticeSpec& l2, unsigned m,
                               const Target& t, const EnumBudget& budget, bool keep_strata) {
  const std::uint64_t p = l1.prime();
  if (l2.prime() != p || t.prime() != p) {
    throw std::invalid_argument("lattices and target use different primes");
  }
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
  const BigInt modulus = ipow(p, m);
  const BigInt tr = t.residue(m);
  const unsigned w = t.residue_valuation(m);
  const ResidueKey t_key = residue_key(p, m, tr);

  KeyedCounter left(l1, m, budget);
  KeyedCounter right(l2, m, budget);
  StratifiedCount result{0, {}};

  auto add = [&](bool tail, const ResidueKey& index, const BigCount& count, const BigInt& s) {
    const BigInt partner = mod_floor(tr - s, modulus);
    const BigCount a = left.at(s);
    const BigCount b = right.at(partner);
    result.value += count * a * b;
    if (keep_strata) {
      const ResidueKey pk = residue_key(p, m, partner);
      result.strata.push_back(
          {tail, index.valuation, index.unit_class, pk.valuation, pk.unit_class, count, s, a, b});
    }
  };

  // Main strata: s with v(s) != w, plus (odd p) v(s) = w with a unit class other than t's.
  for (const auto& [key, count] : residue_keys(p, m)) {
    if (key.valuation == w && (p == 2 || w == m || key.unit_class == t_key.unit_class % p)) {
      continue;
    }
    add(false, key, count, key_representative(p, key));
  }

  // Tail: s = t + p^{w+1} u, u mod p^{m-w-1}. When t = 0 mod p^m this is s = 0 alone.
  const unsigned shift = std::min(w + 1, m);
  const BigInt step = ipow(p, shift);
  for (const auto& [key, count] : residue_keys(p, m - shift)) {
    add(true, key, count, mod_floor(tr + step * key_representative(p, key), modulus));
  }
  return result;
}

}  // namespace detail

StratifiedCount convolve_stratified(const LatticeSpec& l1, const LatticeSpec& l2, unsigned m,
                                    const Target& t, const EnumBudget& budget) {
  if (t.is_zero()) {
    throw ThresholdRefusal("no stable threshold for singular target; use convolve_naive", 0);
  }
  const unsigned threshold = stable_threshold(l1 + l2, t).stable_m;
  if (m < threshold) {
    throw ThresholdRefusal("level " + std::to_string(m) + " is below the stable threshold " +
                               std::to_string(threshold) + "; use convolve_naive",
                           threshold);
  }
  return detail::stratified_sum(l1, l2, m, t, budget, true);
}

Counted count_orthogonal_sum(const LatticeSpec& lattice, unsigned m, const Target& t,
                             const EnumBudget& budget) {
  if (lattice.is_single_block()) {
    return count_lattice(lattice, m, t, budget);
  }
  const LatticeSpec head = lattice.without_last();
  const LatticeSpec last = lattice.last_block();
  const bool stable = !t.is_zero() && m >= stable_threshold(lattice, t).stable_m;
  const BigInt s_loop = ipow(lattice.prime(), m);
  if (!stable && s_loop <= budget.max_states) {
    try {
      return {convolve_naive(head, last, m, t, budget), Route::convolution_naive};
    } catch (const BudgetExceeded&) {
      // nested convolutions did not fit; the stratified sum is exact at any level
    }
  }
  return {detail::stratified_sum(head, last, m, t, budget, false).value,
          Route::convolution_stratified};
}

BigCount tail_valuation_sum(unsigned k) {
  // 2^{k-j-1} residues of valuation j < k, and u = 0 contributing k
  BigCount total = k;
  for (unsigned j = 0; j < k; ++j) {
    total += BigCount(j) * ipow(2, k - j - 1);
  }
  return total;
}

}  // namespace locdens
