#include "locdens/kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace locdens::kernels {

namespace {

// Visits every x with x[0..from) fixed and x[from..) ranging over [0, modulus).
template <class Visit>
void for_each_tail(std::vector<std::uint64_t>& x, std::size_t from, std::uint64_t modulus,
                   Visit&& visit) {
  for (std::size_t i = from; i < x.size(); ++i) x[i] = 0;
  while (true) {
    visit(x);
    std::size_t i = x.size();
    while (i > from) {
      --i;
      if (++x[i] < modulus) break;
      x[i] = 0;
      if (i == from) return;
    }
    if (i == from && x.size() == from) return;
  }
}

void merge_into(Histogram& total, const Histogram& part) {
  for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
}

std::uint64_t sum_of_squares(const std::vector<std::uint64_t>& x) {
  std::uint64_t s = 0;
  for (auto xi : x) s += xi * xi;
  return s;
}

struct CensusParams {
  unsigned d;
  unsigned n;
  std::uint64_t a;
  std::uint64_t mod_n;
  std::uint64_t mod_next;
  std::uint64_t half;
};

CensusParams census_params(unsigned d, unsigned n, std::uint64_t a_residue) {
  if (n < 1 || d < 1) {
    throw std::invalid_argument("half-lift census needs d >= 1 and n >= 1");
  }
  if ((n + 1) * 2 + 8 > 64) {
    throw std::overflow_error("level too large for the half-lift census");
  }
  CensusParams c{d, n, 0, std::uint64_t{1} << n, std::uint64_t{1} << (n + 1),
                 std::uint64_t{1} << (n - 1)};
  c.a = a_residue % c.mod_next;
  return c;
}

void census_visit(const CensusParams& c, const std::vector<std::uint64_t>& x,
                  std::vector<std::uint64_t>& scratch, HalfLiftCensus& out) {
  const std::uint64_t q = sum_of_squares(x);
  if (((q - c.a) & (c.mod_n - 1)) != 0) return;
  ++out.solutions;
  const bool lifts = q % c.mod_next == c.a;
  if (lifts) ++out.lifting_classes;

  unsigned lift_count = 0;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << c.d); ++z) {
    std::uint64_t s = 0;
    for (unsigned i = 0; i < c.d; ++i) {
      std::uint64_t xi = x[i] + (((z >> i) & 1u) ? c.mod_n : 0);
      s += xi * xi;
    }
    if (s % c.mod_next == c.a) ++lift_count;
  }
  ++out.fibre_histogram[lift_count];

  std::size_t first_odd = c.d;
  for (std::size_t i = 0; i < c.d; ++i) {
    if (x[i] & 1u) {
      first_odd = i;
      break;
    }
  }
  if (first_odd == c.d) {
    ++out.all_even_solutions;
    ++out.involution_failures;
    return;
  }
  scratch = x;
  scratch[first_odd] = (x[first_odd] + c.half) % c.mod_n;
  const std::uint64_t qy = sum_of_squares(scratch);
  std::size_t first_odd_image = c.d;
  for (std::size_t i = 0; i < c.d; ++i) {
    if (scratch[i] & 1u) {
      first_odd_image = i;
      break;
    }
  }
  if (((qy - c.a) & (c.mod_n - 1)) != 0 || first_odd_image != first_odd || scratch == x) {
    ++out.involution_failures;
    return;
  }
  if (x[first_odd] < c.half) {
    ++out.orbit_pairs;
    const bool image_lifts = qy % c.mod_next == c.a;
    if (lifts == image_lifts) ++out.toggle_failures;
  }
}

void merge_census(HalfLiftCensus& total, const HalfLiftCensus& part) {
  total.solutions += part.solutions;
  total.lifting_classes += part.lifting_classes;
  total.orbit_pairs += part.orbit_pairs;
  total.toggle_failures += part.toggle_failures;
  total.involution_failures += part.involution_failures;
  total.all_even_solutions += part.all_even_solutions;
  merge_into(total.fibre_histogram, part.fibre_histogram);
}

HalfLiftCensus empty_census(unsigned d) {
  HalfLiftCensus c;
  c.fibre_histogram.assign((std::size_t{1} << d) + 1, 0);
  return c;
}

}  // namespace

Histogram block_histogram_serial(const BlockForm& form, std::uint64_t coord_modulus,
                                 unsigned shift) {
  Histogram hist(form.modulus() >> shift, 0);
  std::vector<std::uint64_t> x(form.rank(), 0);
  for_each_tail(x, 0, coord_modulus, [&](const std::vector<std::uint64_t>& v) {
    ++hist[form(v) >> shift];
  });
  return hist;
}

Histogram block_histogram_parallel(const BlockForm& form, std::uint64_t coord_modulus,
                                   unsigned shift) {
  const std::size_t size = form.modulus() >> shift;
  Histogram hist(size, 0);
  const auto outer = static_cast<std::int64_t>(coord_modulus);
#pragma omp parallel
  {
    Histogram local(size, 0);
    std::vector<std::uint64_t> x(form.rank(), 0);
#pragma omp for schedule(static)
    for (std::int64_t x0 = 0; x0 < outer; ++x0) {
      x[0] = static_cast<std::uint64_t>(x0);
      for_each_tail(x, 1, coord_modulus, [&](const std::vector<std::uint64_t>& v) {
        ++local[form(v) >> shift];
      });
    }
#pragma omp critical
    merge_into(hist, local);
  }
  return hist;
}

Histogram sum_squares_histogram_serial(unsigned d, unsigned n) {
  const std::uint64_t modulus = std::uint64_t{1} << n;
  Histogram hist(modulus, 0);
  std::vector<std::uint64_t> x(d, 0);
  for_each_tail(x, 0, modulus, [&](const std::vector<std::uint64_t>& v) {
    ++hist[sum_of_squares(v) & (modulus - 1)];
  });
  return hist;
}

Histogram sum_squares_histogram_parallel(unsigned d, unsigned n) {
  const std::uint64_t modulus = std::uint64_t{1} << n;
  Histogram hist(modulus, 0);
  const auto outer = static_cast<std::int64_t>(modulus);
#pragma omp parallel
  {
    Histogram local(modulus, 0);
    std::vector<std::uint64_t> x(d, 0);
#pragma omp for schedule(static)
    for (std::int64_t x0 = 0; x0 < outer; ++x0) {
      x[0] = static_cast<std::uint64_t>(x0);
      for_each_tail(x, 1, modulus, [&](const std::vector<std::uint64_t>& v) {
        ++local[sum_of_squares(v) & (modulus - 1)];
      });
    }
#pragma omp critical
    merge_into(hist, local);
  }
  return hist;
}

std::vector<BigCount> cyclic_convolve_serial(std::span<const BigCount> a,
                                             std::span<const BigCount> b) {
  const std::size_t n = a.size();
  std::vector<BigCount> c(n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    c[t] = convolution_at_serial(a, b, t);
  }
  return c;
}

std::vector<BigCount> cyclic_convolve_parallel(std::span<const BigCount> a,
                                               std::span<const BigCount> b) {
  const auto n = static_cast<std::int64_t>(a.size());
  std::vector<BigCount> c(a.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    c[t] = convolution_at_serial(a, b, static_cast<std::uint64_t>(t));
  }
  return c;
}

BigCount convolution_at_serial(std::span<const BigCount> a, std::span<const BigCount> b,
                               std::uint64_t t) {
  const std::size_t n = a.size();
  BigCount sum = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (sgn(a[s]) == 0) continue;
    const std::size_t partner = (t + n - s) % n;
    if (sgn(b[partner]) == 0) continue;
    mpz_addmul(sum.get_mpz_t(), a[s].get_mpz_t(), b[partner].get_mpz_t());
  }
  return sum;
}

BigCount convolution_at_parallel(std::span<const BigCount> a, std::span<const BigCount> b,
                                 std::uint64_t t) {
  const auto n = static_cast<std::int64_t>(a.size());
  BigCount total = 0;
#pragma omp parallel
  {
    BigCount local = 0;
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < n; ++s) {
      const std::uint64_t size = a.size();
      const std::uint64_t partner = (t % size + size - static_cast<std::uint64_t>(s)) % size;
      mpz_addmul(local.get_mpz_t(), a[s].get_mpz_t(), b[partner].get_mpz_t());
    }
#pragma omp critical
    total += local;
  }
  return total;
}

HalfLiftCensus half_lift_census_serial(unsigned d, unsigned n, std::uint64_t a_residue) {
  const CensusParams c = census_params(d, n, a_residue);
  HalfLiftCensus out = empty_census(d);
  std::vector<std::uint64_t> x(d, 0);
  std::vector<std::uint64_t> scratch;
  for_each_tail(x, 0, c.mod_n, [&](const std::vector<std::uint64_t>& v) {
    census_visit(c, v, scratch, out);
  });
  return out;
}

HalfLiftCensus half_lift_census_parallel(unsigned d, unsigned n, std::uint64_t a_residue) {
  const CensusParams c = census_params(d, n, a_residue);
  HalfLiftCensus out = empty_census(d);
  const auto outer = static_cast<std::int64_t>(c.mod_n);
#pragma omp parallel
  {
    HalfLiftCensus local = empty_census(d);
    std::vector<std::uint64_t> x(d, 0);
    std::vector<std::uint64_t> scratch;
#pragma omp for schedule(static)
    for (std::int64_t x0 = 0; x0 < outer; ++x0) {
      x[0] = static_cast<std::uint64_t>(x0);
      for_each_tail(x, 1, c.mod_n, [&](const std::vector<std::uint64_t>& v) {
        census_visit(c, v, scratch, local);
      });
    }
#pragma omp critical
    merge_census(out, local);
  }
  return out;
}

}  // namespace locdens::kernels
