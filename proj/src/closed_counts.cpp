#include "locdens/closed_counts.hpp"

#include "locdens/compose.hpp"

#include <variant>

namespace locdens {

namespace {

void require_dyadic(const Target& t) {
  if (t.prime() != 2) throw std::invalid_argument("target must be taken at p = 2");
}

BigCount pow2(unsigned e) { return ipow(2, e); }

BigCount enumerate_block(const BlockSpec& block, std::uint64_t p, unsigned m, const BigInt& t) {
  return count_enumerate(LatticeSpec(p, {block}), m, Target(p, t));
}

}  // namespace

std::string_view to_string(Route route) {
  switch (route) {
    case Route::closed_form:
      return "closed-form";
    case Route::recursion:
      return "recursion";
    case Route::enumeration:
      return "enumeration";
    case Route::convolution_naive:
      return "convolution-naive";
    case Route::convolution_stratified:
      return "convolution-stratified";
  }
  return "unknown";
}

BigCount count_h0(std::uint64_t p, unsigned e, unsigned m, const BigInt& s) {
  require_prime(p);
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
  if (m <= e) {
    return enumerate_block(ScaledH0{e}, p, m, s);
  }
  const unsigned w = residue_valuation(p, m, s);
  if (w < e) {
    return 0;
  }
  const unsigned level = m - e;
  const unsigned v = w - e;
  BigCount base;
  if (p == 2) {
    if (v == 0) {
      base = 0;
    } else if (v < level) {
      base = BigCount(v) * pow2(level);
    } else {
      base = BigCount(level + 1) * pow2(level);
    }
  } else {
    const BigCount pm1 = ipow(p, level - 1);
    if (v < level) {
      base = BigCount(v + 1) * BigCount(static_cast<unsigned long>(p - 1)) * pm1;
    } else {
      base = (BigCount(level) * BigCount(static_cast<unsigned long>(p - 1)) +
              BigCount(static_cast<unsigned long>(p))) *
             pm1;
    }
  }
  return ipow(p, 2 * e) * base;
}

BigCount count_h1(unsigned e, unsigned m, const Target& t) {
  require_dyadic(t);
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
  if (m <= e) {
    return enumerate_block(ScaledH1{e}, 2, m, t.value());
  }
  const unsigned w = t.residue_valuation(m);
  if (w < e) {
    return 0;
  }
  const unsigned level = m - e;
  const unsigned v = w - e;
  BigCount base;
  if (v == level) {
    base = ipow(4, (level + 1) / 2);
  } else if (v % 2 == 1) {
    base = 3 * pow2(level);
  } else {
    base = 0;
  }
  return ipow(4, e) * base;
}

BigCount sqrt_count_mod2(unsigned m, const BigInt& b) {
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
  const BigInt r = mod_floor(b, pow2(m));
  if (sgn(r) == 0) {
    return pow2(m / 2);
  }
  const unsigned v = valuation(2, r).finite();
  if (v % 2 == 1) {
    return 0;
  }
  const unsigned j = v / 2;
  const unsigned k = m - 2 * j;
  const unsigned long c8 = mod_floor(r >> v, 8).get_ui();
  switch (k) {
    case 1:
      return pow2(j);
    case 2:
      return c8 % 4 == 1 ? pow2(j + 1) : BigCount(0);
    default:
      return c8 == 1 ? pow2(j + 2) : BigCount(0);
  }
}

BigCount count_typeI(unsigned a, const BigInt& u, unsigned m, const Target& t) {
  require_dyadic(t);
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
  if (mpz_even_p(u.get_mpz_t())) {
    throw std::invalid_argument("Type I unit must be odd");
  }
  if (m <= a) {
    return enumerate_block(TypeI{a, u}, 2, m, t.value());
  }
  const unsigned w = t.residue_valuation(m);
  if (w < a) {
    return 0;
  }
  const BigInt level_mod = pow2(m - a);
  const BigInt ta = mod_floor(t.residue(m) >> a, level_mod);
  BigInt u_inv;
  const BigInt u_red = mod_floor(u, level_mod);
  if (level_mod == 1) {
    u_inv = 0;
  } else {
    mpz_invert(u_inv.get_mpz_t(), u_red.get_mpz_t(), level_mod.get_mpz_t());
  }
  return pow2(a) * sqrt_count_mod2(m - a, mod_floor(u_inv * ta, level_mod));
}

BigCount n3_mod8(const BigInt& a) {
  switch (mod_floor(a, 8).get_ui()) {
    case 0:
    case 4:
      return 32;
    case 1:
    case 2:
    case 5:
    case 6:
      return 96;
    case 3:
      return 64;
    default:
      return 0;
  }
}

SumSquaresDecomp decompose_four_power(const BigInt& a) {
  if (sgn(a) == 0) {
    throw ArithmeticError("zero has no 4-power decomposition");
  }
  const unsigned v = valuation(2, a).finite();
  const unsigned k = v / 2;
  return {k, a >> (2 * k)};
}

Counted count_sum_squares(unsigned d, unsigned n, const BigInt& a, const EnumBudget& budget) {
  if (d < 1) throw std::invalid_argument("dimension d must be at least 1");
  if (n == 0) {
    return {1, Route::closed_form};
  }
  const bool four_divides = mpz_divisible_2exp_p(a.get_mpz_t(), 2) != 0;
  if (d == 3) {
    if (sgn(a) != 0) {
      const auto [k, a0] = decompose_four_power(a);
      if (n >= 2 * k + 3) {
        return {ipow(8, k) * n3_mod8(a0) * ipow(4, n - 2 * k - 3), Route::closed_form};
      }
    }
    if (n >= 3 && four_divides) {
      Counted inner = count_sum_squares(3, n - 2, a / 4, budget);
      return {8 * inner.value, Route::recursion};
    }
    return {count_sum_squares_enumerate(3, n, a, budget), Route::enumeration};
  }
  if (!four_divides && n >= 3) {
    BigCount base = count_sum_squares_enumerate(d, 3, a, budget);
    return {base * pow2((d - 1) * (n - 3)), n == 3 ? Route::enumeration : Route::recursion};
  }
  return {count_sum_squares_enumerate(d, n, a, budget), Route::enumeration};
}

BigCount count_l3(unsigned m, const Target& t, const EnumBudget& budget) {
  require_dyadic(t);
  if (m < 1) throw std::invalid_argument("level m must be at least 1");
  if (mpz_odd_p(t.value().get_mpz_t())) {
    return 0;
  }
  return 8 * count_sum_squares(3, m - 1, t.value() / 2, budget).value;
}

Counted count_lattice(const LatticeSpec& lattice, unsigned m, const Target& t,
                      const EnumBudget& budget) {
  if (t.prime() != lattice.prime()) {
    throw std::invalid_argument("target and lattice use different primes");
  }
  if (!lattice.is_single_block()) {
    return count_orthogonal_sum(lattice, m, t, budget);
  }
  const std::uint64_t p = lattice.prime();
  const BlockSpec& block = lattice.blocks().front();
  if (const auto* h0 = std::get_if<ScaledH0>(&block)) {
    return {count_h0(p, h0->e, m, t.value()), m > h0->e ? Route::closed_form : Route::enumeration};
  }
  if (const auto* h1 = std::get_if<ScaledH1>(&block)) {
    return {count_h1(h1->e, m, t), m > h1->e ? Route::closed_form : Route::enumeration};
  }
  if (const auto* ti = std::get_if<TypeI>(&block)) {
    if (p == 2) {
      return {count_typeI(ti->a, ti->u, m, t), m > ti->a ? Route::closed_form : Route::enumeration};
    }
    return {count_enumerate(lattice, m, t, budget), Route::enumeration};
  }
  if (mpz_odd_p(t.value().get_mpz_t())) {
    return {0, Route::closed_form};
  }
  Counted inner = count_sum_squares(3, m - 1, t.value() / 2, budget);
  return {8 * inner.value, inner.route};
}

}  // namespace locdens
