#include <doctest.h>

#include "locdens/kernels.hpp"

#include <random>

using namespace locdens;

TEST_SUITE("kernels") {

TEST_CASE("block histograms") {
  for (const char* spec : {"H0", "2^1*H1", "<5>", "L3"}) {
    const LatticeSpec l = parse_lattice(spec, 2);
    const BlockForm form(l.blocks().front(), 2, 5);
    const auto s = kernels::block_histogram_serial(form, 32);
    CHECK(s == kernels::block_histogram_parallel(form, 32));
    std::uint64_t total = 0;
    for (auto x : s) total += x;
    CHECK(total == (std::uint64_t{1} << (5 * l.rank())));
  }
  const BlockForm odd(ScaledH0{1}, 3, 3);
  CHECK(kernels::block_histogram_serial(odd, 27) == kernels::block_histogram_parallel(odd, 27));
}

TEST_CASE("convolutions") {
  std::mt19937_64 rng(23);
  std::vector<BigCount> a(64), b(64);
  for (auto& x : a) x = static_cast<unsigned long>(rng() % 1000);
  for (auto& x : b) x = static_cast<unsigned long>(rng() % 1000);
  const auto c = kernels::cyclic_convolve_serial(a, b);
  CHECK(c == kernels::cyclic_convolve_parallel(a, b));
  for (std::uint64_t t = 0; t < 64; ++t) {
    CHECK(kernels::convolution_at_serial(a, b, t) == c[t]);
    CHECK(kernels::convolution_at_parallel(a, b, t) == c[t]);
  }
}

TEST_CASE("sum of squares histogram") {
  for (unsigned d = 1; d <= 4; ++d) {
    CHECK(kernels::sum_squares_histogram_serial(d, 4) == kernels::sum_squares_histogram_parallel(d, 4));
  }
}

}
