#include "locdens/densities.hpp"

#include "locdens/closed_counts.hpp"

#include <algorithm>
#include <sstream>

namespace locdens {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

unsigned block_threshold(const BlockSpec& block, unsigned v) {
  if (std::holds_alternative<ScaledH0>(block) || std::holds_alternative<ScaledH1>(block)) {
    return v + 1;
  }
  return v + 3;
}

BigInt unit_mod8(const BigInt& x) { return mod_floor(x, 8); }

/// 2^k as a rational for any integer k.
Rational pow2q(long k) {
  if (k >= 0) return Rational(ipow(2, static_cast<unsigned>(k)));
  return make_rational(1, ipow(2, static_cast<unsigned>(-k)));
}

Rational p_power(std::uint64_t p, long k) {
  if (k >= 0) return Rational(ipow(p, static_cast<unsigned>(k)));
  return make_rational(1, ipow(p, static_cast<unsigned>(-k)));
}

// Exact density of a single block at a nonzero target; nullopt where only
// stabilisation is available (Type I at odd p).
std::optional<Rational> closed_density(const BlockSpec& block, std::uint64_t p, const Target& t) {
  const unsigned v = t.valuation().finite();
  if (const auto* h0 = std::get_if<ScaledH0>(&block)) {
    const unsigned e = h0->e;
    if (p == 2) {
      if (v < e + 1) return Rational(0);
      return Rational(ipow(2, e) * (v - e));
    }
    if (v < e) return Rational(0);
    return Rational(BigInt(v - e + 1) * static_cast<unsigned long>(p - 1)) *
           p_power(p, static_cast<long>(e) - 1);
  }
  if (const auto* h1 = std::get_if<ScaledH1>(&block)) {
    const unsigned e = h1->e;
    if (v >= e + 1 && (v - e) % 2 == 1) return Rational(3 * ipow(2, e));
    return Rational(0);
  }
  if (const auto* ti = std::get_if<TypeI>(&block)) {
    if (p != 2) return std::nullopt;
    if (v < ti->a || (v - ti->a) % 2 != 0) return Rational(0);
    const unsigned j = (v - ti->a) / 2;
    BigInt u_inv;
    const BigInt eight = 8;
    const BigInt u8 = unit_mod8(ti->u);
    mpz_invert(u_inv.get_mpz_t(), u8.get_mpz_t(), eight.get_mpz_t());
    if (unit_mod8(u_inv * t.unit()) != 1) return Rational(0);
    return Rational(ipow(2, ti->a + j + 2));
  }
  if (mpz_odd_p(t.value().get_mpz_t())) return Rational(0);
  const auto [k, a0] = decompose_four_power(t.value() / 2);
  return Rational(n3_mod8(a0)) * pow2q(-static_cast<long>(k) - 5);
}

std::optional<DensityResult> singular(const LatticeSpec& lattice) {
  if (!lattice.is_single_block()) return std::nullopt;
  const std::uint64_t p = lattice.prime();
  const BlockSpec& block = lattice.blocks().front();
  if (const auto* h0 = std::get_if<ScaledH0>(&block)) {
    std::ostringstream os;
    os << "normalised counts grow without bound: " << p << "^{-m} r_m(0) = ";
    if (p == 2 && h0->e == 0) {
      os << "m + 1";
    } else if (p == 2) {
      os << "2^" << h0->e << " (m - " << h0->e << " + 1)";
    } else {
      os << p << "^" << static_cast<long>(h0->e) - 1 << " ((m - " << h0->e << ")(" << p - 1
         << ") + " << p << ")";
    }
    if (h0->e > 0) os << " for m > " << h0->e;
    return DensityResult{Diverges{os.str()}, Normalization::Q};
  }
  if (const auto* h1 = std::get_if<ScaledH1>(&block)) {
    return DensityResult{Oscillates{{Rational(ipow(2, h1->e)), Rational(ipow(2, h1->e + 1))}},
                         Normalization::Q};
  }
  return std::nullopt;
}

bool admits_one(const Constraint& c, const BigInt& t) {
  const unsigned v = valuation(2, t).finite();
  return std::visit(
      overloaded{
          [&](const ValuationAtLeast& x) { return v >= x.bound; },
          [&](const ValuationParity& x) { return v >= x.offset && (v - x.offset) % 2 == x.parity; },
          [&](const UnitSquareClass& x) {
            BigInt u_inv;
            const BigInt eight = 8;
            const BigInt u8 = unit_mod8(x.u);
            mpz_invert(u_inv.get_mpz_t(), u8.get_mpz_t(), eight.get_mpz_t());
            return unit_mod8(u_inv * unit_part(2, t)) == 1;
          },
          [&](const ThreeSquareClass& x) {
            if (v < x.shift) return false;
            const unsigned rest = v - x.shift;
            if (rest % 2 == 1) return true;
            return unit_mod8(unit_part(2, t)) != 7;
          },
      },
      c);
}

}  // namespace

std::string_view to_string(Normalization n) { return n == Normalization::Q ? "Q" : "q"; }

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form:
      return "closed-form";
    case Provenance::structural_zero:
      return "structural-zero";
    case Provenance::stabilized:
      return "stabilized";
  }
  return "unknown";
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::automatic:
      return "auto";
    case Engine::naive:
      return "naive";
    case Engine::stratified:
      return "stratified";
  }
  return "unknown";
}

std::string to_string(const Constraint& c) {
  return std::visit(
      overloaded{
          [](const ValuationAtLeast& x) { return "v >= " + std::to_string(x.bound); },
          [](const ValuationParity& x) {
            std::string lhs = x.offset == 0 ? "v" : "v - " + std::to_string(x.offset);
            return lhs + (x.parity ? " odd" : " even");
          },
          [](const UnitSquareClass& x) {
            return "u^-1 c = 1 mod 8 (u = " + unit_mod8(x.u).get_str() + " mod 8)";
          },
          [](const ThreeSquareClass& x) {
            std::string what = x.shift == 0 ? "t" : "t/2^" + std::to_string(x.shift);
            return what + " not of the form 4^k(8j+7)";
          },
      },
      c);
}

bool admits(const std::vector<Constraint>& constraints, const BigInt& t) {
  if (sgn(t) == 0) throw SingularTargetError("constraints are stated for nonzero targets");
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const Constraint& c) { return admits_one(c, t); });
}

ThresholdInfo stable_threshold(const LatticeSpec& lattice, const Target& t) {
  if (t.is_zero()) {
    throw SingularTargetError("no stable threshold for singular target");
  }
  if (t.prime() != lattice.prime()) {
    throw std::invalid_argument("target and lattice use different primes");
  }
  const unsigned v = t.valuation().finite();
  ThresholdInfo info;
  unsigned worst = 0;
  for (const BlockSpec& b : lattice.blocks()) worst = std::max(worst, block_threshold(b, v));
  info.stable_m = lattice.is_single_block() ? worst : worst + 1;
  if (lattice.is_single_block() && lattice.prime() == 2) {
    info.vanishing = vanishing_constraints(lattice);
  }
  return info;
}

VanishingConstraints vanishing_constraints(const LatticeSpec& lattice) {
  if (!lattice.is_single_block() || lattice.prime() != 2) {
    throw LatticeError("vanishing constraints are defined for a single dyadic block");
  }
  const BlockSpec& block = lattice.blocks().front();
  VanishingConstraints out;
  if (const auto* h0 = std::get_if<ScaledH0>(&block)) {
    out.Q = {ValuationAtLeast{h0->e + 1}};
    out.q = std::vector<Constraint>{ValuationAtLeast{h0->e}};
  } else if (const auto* h1 = std::get_if<ScaledH1>(&block)) {
    out.Q = {ValuationAtLeast{h1->e + 1}, ValuationParity{h1->e, 1}};
    out.q = std::vector<Constraint>{ValuationAtLeast{h1->e}, ValuationParity{h1->e, 0}};
  } else if (const auto* ti = std::get_if<TypeI>(&block)) {
    out.Q = {ValuationAtLeast{ti->a}, ValuationParity{ti->a, 0}, UnitSquareClass{ti->u}};
    if (ti->a >= 1) {
      out.q = std::vector<Constraint>{ValuationAtLeast{ti->a - 1}, ValuationParity{ti->a - 1, 0},
                                      UnitSquareClass{ti->u}};
    }
  } else {
    out.Q = {ValuationAtLeast{1}, ThreeSquareClass{1}};
    out.q = std::vector<Constraint>{ThreeSquareClass{0}};
  }
  return out;
}

Rational normalized_count(const LatticeSpec& lattice, unsigned m, const Target& t,
                          const EnumBudget& budget, Engine engine) {
  BigCount r;
  if (lattice.is_single_block() || engine == Engine::automatic) {
    r = count_lattice(lattice, m, t, budget).value;
  } else if (engine == Engine::naive) {
    r = convolve_naive(lattice.without_last(), lattice.last_block(), m, t, budget);
  } else {
    r = convolve_stratified(lattice.without_last(), lattice.last_block(), m, t, budget).value;
  }
  return make_rational(r, ipow(lattice.prime(), m * (lattice.rank() - 1)));
}

DensityResult density(const LatticeSpec& lattice, const Target& t, const DensityOptions& options) {
  if (t.prime() != lattice.prime()) {
    throw std::invalid_argument("target and lattice use different primes");
  }
  if (t.is_zero()) {
    if (auto s = singular(lattice)) return *s;
    throw SingularTargetError("unsupported singular target");
  }
  const unsigned start = stable_threshold(lattice, t).stable_m;
  if (lattice.is_single_block()) {
    if (auto alpha = closed_density(lattice.blocks().front(), lattice.prime(), t)) {
      const Provenance prov = *alpha == 0 ? Provenance::structural_zero : Provenance::closed_form;
      return DensityResult{DensityValue{*alpha, start, prov}, Normalization::Q};
    }
  }
  std::vector<Rational> seen;
  for (unsigned m = start; m <= start + options.extra_levels; ++m) {
    seen.push_back(normalized_count(lattice, m, t, options.budget, options.engine));
    const std::size_t n = seen.size();
    if (n >= 3 && seen[n - 1] == seen[n - 2] && seen[n - 2] == seen[n - 3]) {
      return DensityResult{DensityValue{seen.back(), m - 2, Provenance::stabilized},
                           Normalization::Q};
    }
  }
  throw StabilizationError("normalised counts did not stabilise by level " +
                           std::to_string(start + options.extra_levels));
}

DensityResult density_q(const LatticeSpec& lattice, const Target& t_prime,
                        const DensityOptions& options) {
  const std::uint64_t p = lattice.prime();
  if (p == 2 && !lattice.is_even()) {
    throw LatticeError("q-normalisation requires an even lattice");
  }
  DensityResult r = density(lattice, Target(p, 2 * t_prime.value()), options);
  r.normalization = Normalization::q;
  if (p != 2) return r;
  // r_m(2t') = 2^n r^{(q)}_{m-1}(t'), so every normalised value halves and levels drop by one.
  std::visit(overloaded{
                 [](DensityValue& d) {
                   d.alpha /= 2;
                   if (d.stabilized_at > 0) --d.stabilized_at;
                 },
                 [](Diverges& d) {
                   d.description = "normalised q-counts grow without bound: 2^{-m} r^(q)_m(0) is "
                                   "half the Q-normalised value at level m + 1";
                 },
                 [](Oscillates& o) {
                   for (Rational& x : o.values) x /= 2;
                 },
             },
             r.outcome);
  return r;
}

}  // namespace locdens
