#pragma once

// Data-parallel enumeration kernels. Every kernel has a serial reference and
// an OpenMP version that splits the outermost coordinate; the two must agree
// exactly (integer sums are order-independent).

#include "locdens/lattice.hpp"
#include "locdens/padic.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace locdens {

enum class Execution { serial, parallel };

namespace kernels {

using Histogram = std::vector<std::uint64_t>;

/// Histogram of form(x) >> shift over x in [0, coord_modulus)^rank.
Histogram block_histogram_serial(const BlockForm& form, std::uint64_t coord_modulus,
                                 unsigned shift = 0);
Histogram block_histogram_parallel(const BlockForm& form, std::uint64_t coord_modulus,
                                   unsigned shift = 0);

/// Histogram of x_1^2 + ... + x_d^2 mod 2^n over (Z/2^n)^d.
Histogram sum_squares_histogram_serial(unsigned d, unsigned n);
Histogram sum_squares_histogram_parallel(unsigned d, unsigned n);

/// c[t] = sum_s a[s] b[t - s] with indices mod a.size().
std::vector<BigCount> cyclic_convolve_serial(std::span<const BigCount> a,
                                             std::span<const BigCount> b);
std::vector<BigCount> cyclic_convolve_parallel(std::span<const BigCount> a,
                                               std::span<const BigCount> b);

/// sum_s a[s] b[t - s] for a single t.
BigCount convolution_at_serial(std::span<const BigCount> a, std::span<const BigCount> b,
                               std::uint64_t t);
BigCount convolution_at_parallel(std::span<const BigCount> a, std::span<const BigCount> b,
                                 std::uint64_t t);

/// Raw tallies over the solutions x of x_1^2 + ... + x_d^2 = a (mod 2^n).
/// The pairing is x -> x + 2^{n-1} e_i, i the first odd coordinate of x.
struct HalfLiftCensus {
  std::uint64_t solutions = 0;
  /// Solutions whose canonical lift also solves mod 2^{n+1}.
  std::uint64_t lifting_classes = 0;
  /// Orbits {x, tau x}, counted once from the member with x_i < 2^{n-1}.
  std::uint64_t orbit_pairs = 0;
  /// Orbits in which not exactly one member lifts.
  std::uint64_t toggle_failures = 0;
  /// Solutions where the pairing is undefined or not a free involution on solutions.
  std::uint64_t involution_failures = 0;
  std::uint64_t all_even_solutions = 0;
  /// fibre_histogram[k]: solution classes with exactly k of their 2^d lifts solving mod 2^{n+1}.
  std::vector<std::uint64_t> fibre_histogram;

  friend bool operator==(const HalfLiftCensus&, const HalfLiftCensus&) = default;
};

/// Requires n >= 1; a_residue is a mod 2^{n+1}.
HalfLiftCensus half_lift_census_serial(unsigned d, unsigned n, std::uint64_t a_residue);
HalfLiftCensus half_lift_census_parallel(unsigned d, unsigned n, std::uint64_t a_residue);

}  // namespace kernels
}  // namespace locdens
