#include "locdens/oracle.hpp"

namespace locdens {

namespace {

std::vector<BigCount> widen(const kernels::Histogram& h) {
  std::vector<BigCount> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    mpz_set_ui(out[i].get_mpz_t(), static_cast<unsigned long>(h[i]));
  }
  return out;
}

kernels::Histogram run_block(const BlockForm& form, std::uint64_t coords, unsigned shift,
                             Execution exec) {
  return exec == Execution::parallel ? kernels::block_histogram_parallel(form, coords, shift)
                                     : kernels::block_histogram_serial(form, coords, shift);
}

std::vector<BigCount> convolve(const std::vector<BigCount>& a, const std::vector<BigCount>& b,
                               Execution exec) {
  return exec == Execution::parallel ? kernels::cyclic_convolve_parallel(a, b)
                                     : kernels::cyclic_convolve_serial(a, b);
}

void require_level(unsigned m) {
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
}

}  // namespace

BudgetExceeded::BudgetExceeded(const BigInt& required, std::uint64_t max_states)
    : std::runtime_error("enumeration budget exceeded: needs " + required.get_str() +
                         " states, budget is " + std::to_string(max_states)),
      required_(required) {}

void check_budget(const BigInt& cost, const EnumBudget& budget) {
  if (cost > BigInt(std::to_string(budget.max_states))) {
    throw BudgetExceeded(cost, budget.max_states);
  }
}

BigInt enumeration_cost(const LatticeSpec& lattice, unsigned m) {
  BigInt cost = 0;
  for (const auto& b : lattice.blocks()) {
    cost += ipow(lattice.prime(), m * block_rank(b));
  }
  cost += BigInt(static_cast<unsigned long>(lattice.blocks().size() - 1)) *
          ipow(lattice.prime(), 2 * m);
  return cost;
}

std::vector<BigCount> value_histogram(const LatticeSpec& lattice, unsigned m,
                                      const EnumBudget& budget, Execution exec) {
  require_level(m);
  check_budget(enumeration_cost(lattice, m), budget);
  const std::uint64_t modulus = modulus_u64(lattice.prime(), m);
  std::vector<BigCount> acc;
  for (const auto& b : lattice.blocks()) {
    BlockForm form(b, lattice.prime(), m);
    auto hist = widen(run_block(form, modulus, 0, exec));
    acc = acc.empty() ? std::move(hist) : convolve(acc, hist, exec);
  }
  return acc;
}

std::vector<BigCount> half_value_histogram(const LatticeSpec& lattice, unsigned m,
                                           const EnumBudget& budget, Execution exec) {
  require_level(m);
  if (!lattice.is_even()) {
    throw std::invalid_argument("q-normalisation requires an even lattice");
  }
  check_budget(enumeration_cost(lattice, m), budget);
  // Q is even, so Q mod 2^{m+1} on coordinates mod 2^m determines q = Q/2 mod 2^m.
  const std::uint64_t coords = modulus_u64(2, m);
  std::vector<BigCount> acc;
  for (const auto& b : lattice.blocks()) {
    BlockForm form(b, 2, m + 1);
    auto hist = widen(run_block(form, coords, 1, exec));
    acc = acc.empty() ? std::move(hist) : convolve(acc, hist, exec);
  }
  return acc;
}

BigCount count_enumerate(const LatticeSpec& lattice, unsigned m, const Target& t,
                         const EnumBudget& budget) {
  if (t.prime() != lattice.prime()) {
    throw std::invalid_argument("target and lattice use different primes");
  }
  auto hist = value_histogram(lattice, m, budget);
  return hist[t.residue(m).get_ui()];
}

std::vector<BigCount> sum_squares_histogram(unsigned d, unsigned n, const EnumBudget& budget,
                                            Execution exec) {
  if (d < 1) throw std::invalid_argument("dimension d must be at least 1");
  check_budget(ipow(2, n * d), budget);
  if (n == 0) {
    return {BigCount(1)};
  }
  return widen(exec == Execution::parallel ? kernels::sum_squares_histogram_parallel(d, n)
                                           : kernels::sum_squares_histogram_serial(d, n));
}

BigCount count_sum_squares_enumerate(unsigned d, unsigned n, const BigInt& a,
                                     const EnumBudget& budget) {
  auto hist = sum_squares_histogram(d, n, budget);
  return hist[mod_floor(a, ipow(2, n)).get_ui()];
}

}  // namespace locdens
