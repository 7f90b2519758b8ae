// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "locdens/closed_counts.hpp"
#include "locdens/compose.hpp"
#include "locdens/densities.hpp"
#include "locdens/genseries.hpp"
#include "locdens/halflift.hpp"
#include "locdens/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <array>
#include <string>

using namespace locdens;

namespace {

const EnumBudget big_budget{std::uint64_t{1} << 26};

struct Outcome {
  bool ok = true;
  std::string note;
};

// Remembers the first failure only; later ones are usually the same cause.
struct Check {
  Outcome out;
  std::size_t checks = 0;
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && out.ok) {
      out.ok = false;
      out.note = what;
    }
  }
};

std::string str(const Rational& q) { return q.get_str(); }

// --- 1 -------------------------------------------------------------------
Outcome oracle_sweep() {
  Check c;
  std::vector<LatticeSpec> blocks;
  for (unsigned e = 0; e <= 2; ++e) blocks.emplace_back(2, std::vector<BlockSpec>{ScaledH0{e}});
  for (unsigned e = 0; e <= 2; ++e) blocks.emplace_back(2, std::vector<BlockSpec>{ScaledH1{e}});
  for (unsigned a = 0; a <= 2; ++a)
    for (long u : {1, 3, 5, 7}) blocks.emplace_back(2, std::vector<BlockSpec>{TypeI{a, u}});
  blocks.emplace_back(2, std::vector<BlockSpec>{L3Block{}});
  for (std::uint64_t p : {3, 5})
    for (unsigned e = 0; e <= 1; ++e) blocks.emplace_back(p, std::vector<BlockSpec>{ScaledH0{e}});

  const BigInt cap = ipow(2, 22);
  std::size_t residues = 0;
  for (const LatticeSpec& l : blocks) {
    for (unsigned m = 1; ipow(l.prime(), m * l.rank()) <= cap; ++m) {
      const auto oracle = value_histogram(l, m, big_budget);
      const auto closed = count_vector(l, m, big_budget);
      residues += oracle.size();
      bool same = oracle.size() == closed.size();
      for (std::size_t s = 0; same && s < oracle.size(); ++s) same = oracle[s] == closed[s];
      c.expect(same, to_string(l) + " at p=" + std::to_string(l.prime()) + ", m=" + std::to_string(m));
    }
  }
  if (c.out.ok) c.out.note = std::to_string(residues) + " residues";
  return c.out;
}

// --- 2 -------------------------------------------------------------------
// The density table written out directly.
Rational table_density(const LatticeSpec& l, const BigInt& t) {
  const std::uint64_t p = l.prime();
  const Valuation val = valuation(p, t);
  const unsigned v = val.finite();
  const BlockSpec& b = l.blocks().front();
  if (const auto* h = std::get_if<ScaledH0>(&b); h && h->e == 0) {
    if (p != 2) return Rational(BigInt(v + 1) * static_cast<unsigned long>(p - 1)) / Rational(BigInt(p));
    return Rational(BigInt(v));
  }
  if (const auto* h = std::get_if<ScaledH1>(&b); h && h->e == 0) {
    return v % 2 ? Rational(3) : Rational(0);
  }
  if (const auto* ti = std::get_if<TypeI>(&b)) {
    const unsigned a = ti->a;
    if (v < a || (v - a) % 2) return 0;
    const unsigned j = (v - a) / 2;
    const BigInt c = t / ipow(2, v);
    BigInt uinv;
    mpz_invert(uinv.get_mpz_t(), BigInt(ti->u).get_mpz_t(), BigInt(8).get_mpz_t());
    BigInt r = (uinv * c) % 8;
    if (r < 0) r += 8;
    return r == 1 ? Rational(ipow(2, a + j + 2)) : Rational(0);
  }
  if (std::holds_alternative<L3Block>(b)) {
    if (v == 0) return 0;
    BigInt half = t / 2;
    unsigned k = 0;
    while (half % 4 == 0) {
      half /= 4;
      ++k;
    }
    BigInt a0 = half % 8;
    if (a0 < 0) a0 += 8;
    Rational base = a0 == 3 ? Rational(2) : a0 == 7 ? Rational(0) : Rational(3);
    return base / Rational(ipow(2, k));
  }
  throw std::logic_error("not a table row");
}

Outcome table_rows() {
  Check c;
  std::vector<LatticeSpec> rows;
  rows.emplace_back(2, std::vector<BlockSpec>{ScaledH0{0}});
  rows.emplace_back(2, std::vector<BlockSpec>{ScaledH1{0}});
  for (unsigned a = 0; a <= 3; ++a)
    for (long u : {1, 3, 5, 7}) rows.emplace_back(2, std::vector<BlockSpec>{TypeI{a, u}});
  rows.emplace_back(2, std::vector<BlockSpec>{L3Block{}});
  rows.emplace_back(3, std::vector<BlockSpec>{ScaledH0{0}});
  rows.emplace_back(5, std::vector<BlockSpec>{ScaledH0{0}});

  for (const LatticeSpec& l : rows) {
    const std::uint64_t p = l.prime();
    for (unsigned v = 0; v <= 6; ++v) {
      for (unsigned long unit = 1; unit < (p == 2 ? 8 : p); unit += (p == 2 ? 2 : 1)) {
        const BigInt t = ipow(p, v) * unit;
        const Target target(p, t);
        const Rational expected = table_density(l, t);
        const DensityResult d = density(l, target, {big_budget});
        const std::string where = to_string(l) + " t=" + t.get_str();
        c.expect(d.has_value() && d.alpha() == expected,
                 where + ": got " + (d.has_value() ? str(d.alpha()) : "singular") + ", table " +
                     str(expected));
        // an independent look at the oracle, one level past the threshold
        const unsigned m = stable_threshold(l, target).stable_m + 1;
        if (enumeration_cost(l, m) <= BigInt(big_budget.max_states)) {
          const BigCount r = count_enumerate(l, m, target, big_budget);
          const Rational emp = Rational(r) / Rational(ipow(p, m * (l.rank() - 1)));
          c.expect(emp == expected, where + ": oracle gives " + str(emp));
        }
      }
    }
  }
  // the L3 row for k <= 2 by itself
  for (unsigned k = 0; k <= 2; ++k) {
    for (long a0 : {1, 2, 3, 5, 6, 7}) {
      const BigInt t = 2 * ipow(4, k) * a0;
      const Rational base = a0 == 3 ? Rational(2) : a0 == 7 ? Rational(0) : Rational(3);
      const DensityResult d = density(parse_lattice("L3", 2), Target(2, t));
      c.expect(d.alpha() == base / Rational(ipow(2, k)), "L3 t=" + t.get_str());
    }
  }
  if (c.out.ok) c.out.note = std::to_string(c.checks) + " cells";
  return c.out;
}

// --- 3 -------------------------------------------------------------------
Outcome half_lift() {
  Check c;
  std::size_t certs = 0;
  for (unsigned d = 1; d <= 3; ++d) {
    for (unsigned n = 3; n <= 4; ++n) {
      for (long a = 0; a < (1L << (n + 1)); ++a) {
        if (a % 4 == 0) continue;
        const HalfLiftCertificate cert = verify_half_lift(d, n, BigInt(a), big_budget);
        const std::string where =
            "d=" + std::to_string(d) + " n=" + std::to_string(n) + " a=" + std::to_string(a);
        c.expect(cert.holds, where + ": certificate does not hold");
        c.expect(2 * cert.lifting_classes == cert.solutions_n, where + ": lifting is not exactly half");
        bool sizes = true;
        for (unsigned f : cert.fibre_sizes_seen) sizes = sizes && (f == 0 || f == (1u << d));
        c.expect(sizes, where + ": fibre sizes outside {0, 2^d}");
        c.expect(cert.solutions_next == BigCount(1u << (d - 1)) * cert.solutions_n,
                 where + ": N_{n+1} != 2^{d-1} N_n");
        ++certs;
      }
    }
  }
  const HalfLiftCertificate control = half_lift_census(4, 3, BigInt(8), big_budget);
  c.expect(!control.hypotheses_ok, "control (4,3,8) should violate the hypotheses");
  c.expect(control.solutions_n == 128, "control N_{4,3}(8) = " + control.solutions_n.get_str());
  c.expect(control.solutions_next == 1536, "control N_{4,4}(8) = " + control.solutions_next.get_str());
  c.expect(control.ratio && *control.ratio == 12, "control ratio is not 12");
  if (c.out.ok) c.out.note = std::to_string(certs) + " certificates, control 1536/128 = 12";
  return c.out;
}

// --- 4 -------------------------------------------------------------------
Outcome three_squares() {
  Check c;
  // N_3(a0) mod 8, counted here by hand
  std::array<long, 8> base{};
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      for (int z = 0; z < 8; ++z) ++base[(x * x + y * y + z * z) % 8];
  std::size_t pairs = 0;
  for (long a = -64; a <= 64; ++a) {
    if (a == 0) continue;
    long a0 = a;
    unsigned k = 0;
    while (a0 % 4 == 0) {
      a0 /= 4;
      ++k;
    }
    for (unsigned n = 2 * k + 3; n <= 7; ++n) {
      const BigCount expected =
          ipow(8, k) * base[((a0 % 8) + 8) % 8] * ipow(4, n - 2 * k - 3);
      const BigCount enumerated = count_sum_squares_enumerate(3, n, BigInt(a), big_budget);
      const BigCount closed = count_sum_squares(3, n, BigInt(a), big_budget).value;
      const std::string where = "a=" + std::to_string(a) + " n=" + std::to_string(n);
      c.expect(enumerated == expected, where + ": enumeration " + enumerated.get_str() +
                                           ", formula " + expected.get_str());
      c.expect(closed == expected, where + ": library " + closed.get_str());
      ++pairs;
    }
  }
  if (c.out.ok) c.out.note = std::to_string(pairs) + " (a, n) pairs";
  return c.out;
}

// --- 5 -------------------------------------------------------------------
Outcome dictionary_uniformity() {
  Check c;
  std::vector<LatticeSpec> even;
  for (unsigned e = 0; e <= 2; ++e) even.emplace_back(2, std::vector<BlockSpec>{ScaledH0{e}});
  for (unsigned e = 0; e <= 2; ++e) even.emplace_back(2, std::vector<BlockSpec>{ScaledH1{e}});
  for (unsigned a = 1; a <= 2; ++a)
    for (long u : {1, 3, 5, 7}) even.emplace_back(2, std::vector<BlockSpec>{TypeI{a, u}});
  even.emplace_back(2, std::vector<BlockSpec>{L3Block{}});
  for (const LatticeSpec& l : even) {
    for (unsigned m = 2; m <= 8; ++m) {
      const auto r = value_histogram(l, m, big_budget);
      const auto q = half_value_histogram(l, m - 1, big_budget);
      const BigCount scale = ipow(2, l.rank());
      bool ok = true;
      for (std::size_t tp = 0; tp < q.size(); ++tp) ok = ok && r[2 * tp] == scale * q[tp];
      c.expect(ok, "dictionary fails on " + to_string(l) + " m=" + std::to_string(m));
    }
  }
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned e = 0; e <= 2; ++e) {
      const LatticeSpec l(p, {ScaledH0{e}});
      for (unsigned v = e; v <= e + 3; ++v) {
        for (unsigned long unit = 1; unit < (p == 2 ? 8 : p); unit += (p == 2 ? 2 : 1)) {
          const BigInt tp = ipow(p, v) * unit;
          Rational expected(BigInt(v - e + 1) * static_cast<unsigned long>(p - 1));
          expected *= e >= 1 ? Rational(ipow(p, e - 1)) : Rational(1, static_cast<unsigned long>(p));
          expected.canonicalize();
          const DensityResult got = density_q(l, Target(p, tp), {big_budget});
          c.expect(got.has_value() && got.alpha() == expected,
                   to_string(l) + " p=" + std::to_string(p) + " t'=" + tp.get_str() + ": got " +
                       (got.has_value() ? str(got.alpha()) : "singular"));
        }
      }
    }
  }
  const DensityResult anchor = density_q(parse_lattice("H1", 2), Target(2, 1L));
  c.expect(anchor.has_value() && anchor.alpha() == Rational(3, 2), "anchor q-density of H1 at 1");
  if (c.out.ok) c.out.note = std::to_string(c.checks) + " checks, anchor 3/2";
  return c.out;
}

// --- 6 -------------------------------------------------------------------
// Walks m upward until three consecutive normalised values agree.
std::optional<Rational> stabilise(const std::function<std::optional<BigCount>(unsigned)>& count,
                                  unsigned rank, unsigned mmax) {
  std::vector<Rational> seen;
  for (unsigned m = 1; m <= mmax; ++m) {
    const auto r = count(m);
    if (!r) {
      seen.clear();
      continue;
    }
    seen.push_back(Rational(*r) / Rational(ipow(2, m * (rank - 1))));
    const std::size_t k = seen.size();
    if (k >= 3 && seen[k - 1] == seen[k - 2] && seen[k - 2] == seen[k - 3]) return seen.back();
  }
  return std::nullopt;
}

Outcome convolution_example() {
  Check c;
  const LatticeSpec h0 = parse_lattice("H0", 2);
  const LatticeSpec one = parse_lattice("<1>", 2);
  for (long t = 1; t < 32; t += 2) {
    const Target target(2, t);
    const Rational expected = t % 8 == 1 ? Rational(2) : t % 8 == 5 ? Rational(1) : Rational(1, 2);
    const auto naive = stabilise([&](unsigned m) -> std::optional<BigCount> {
      return convolve_naive(h0, one, m, target, big_budget);
    }, 3, 16);
    const auto strat = stabilise([&](unsigned m) -> std::optional<BigCount> {
      try {
        return convolve_stratified(h0, one, m, target, big_budget).value;
      } catch (const ThresholdRefusal&) {
        return std::nullopt;
      }
    }, 3, 16);
    const std::string where = "t=" + std::to_string(t);
    c.expect(naive && *naive == expected, where + ": naive " + (naive ? str(*naive) : "unstable"));
    c.expect(strat && *strat == expected, where + ": stratified " + (strat ? str(*strat) : "unstable"));
    c.expect(naive == strat, where + ": engines disagree");
    const DensityResult d = density(parse_lattice("H0 + <1>", 2), target);
    c.expect(d.alpha() == expected, where + ": density() gives " + str(d.alpha()));
  }
  if (c.out.ok) c.out.note = "2, 1, 1/2 for t = 1, 5, 3/7 mod 8 on both engines";
  return c.out;
}

// --- 7 -------------------------------------------------------------------
Outcome l3_cross() {
  Check c;
  const LatticeSpec l3 = parse_lattice("L3", 2);
  const LatticeSpec diag = parse_lattice("<2> + <2> + <2>", 2);
  std::string values;
  for (long t : {2, 4, 6, 8, 10, 12, 16, 24}) {
    const DensityResult closed = density(l3, Target(2, t));
    const DensityResult conv = density(diag, Target(2, t));
    const auto* v = std::get_if<DensityValue>(&conv.outcome);
    c.expect(v && v->provenance == Provenance::stabilized, "t=" + std::to_string(t) + ": not a convolution");
    c.expect(closed.alpha() == conv.alpha(), "t=" + std::to_string(t) + ": " + str(closed.alpha()) +
                                                 " vs " + str(conv.alpha()));
    values += (values.empty() ? "" : " ") + str(closed.alpha());
  }
  if (c.out.ok) c.out.note = values;
  return c.out;
}

// --- 8 -------------------------------------------------------------------
Outcome generating_series() {
  Check c;
  std::vector<std::vector<BigCount>> oracle_h0(13), oracle_h1(13);
  for (unsigned m = 1; m <= 12; ++m) {
    oracle_h0[m] = value_histogram(parse_lattice("H0", 2), m, big_budget);
    oracle_h1[m] = value_histogram(parse_lattice("H1", 2), m, big_budget);
  }
  for (long t : {0L, 1L, 2L, 3L, 4L, 6L, 12L, 40L, 96L, -5L}) {
    const RationalSeries s0 = series_h0(2, 0, BigInt(t));
    const RationalSeries s1 = series_h1(BigInt(t));
    c.expect(is_reduced(s0) && is_reduced(s1), "t=" + std::to_string(t) + ": not reduced");
    for (unsigned m = 1; m <= 12; ++m) {
      BigInt res = BigInt(t) % ipow(2, m);
      if (res < 0) res += ipow(2, m);
      const std::size_t idx = res.get_ui();
      c.expect(coefficient(s0, m) == Rational(oracle_h0[m][idx]),
               "H0 t=" + std::to_string(t) + " m=" + std::to_string(m));
      c.expect(coefficient(s1, m) == Rational(oracle_h1[m][idx]),
               "H1 t=" + std::to_string(t) + " m=" + std::to_string(m));
    }
  }
  // odd primes and scaled planes against the closed counts
  for (std::uint64_t p : {3, 5}) {
    for (unsigned e = 0; e <= 1; ++e) {
      for (long t : {0L, 1L, 2L, 9L, 75L}) {
        const RationalSeries s = series_h0(p, e, BigInt(t));
        for (unsigned m = 1; m <= 12; ++m)
          c.expect(coefficient(s, m) == Rational(count_h0(p, e, m, BigInt(t))),
                   "H0 p=" + std::to_string(p) + " t=" + std::to_string(t));
      }
    }
  }
  const std::string h0 = to_string(series_h0(2, 0, BigInt(0)));
  const std::string h1 = to_string(series_h1(BigInt(0)));
  c.expect(h0 == "(4X - 4X^2)/(1 - 4X + 4X^2)", "H0 series printed as " + h0);
  c.expect(h1 == "(4X + 4X^2)/(1 - 4X^2)", "H1 series printed as " + h1);
  if (c.out.ok) c.out.note = h0 + " and " + h1;
  return c.out;
}

// --- 9 -------------------------------------------------------------------
Outcome singular_targets() {
  Check c;
  Rational prev_h1 = 0;
  for (unsigned m = 1; m <= 12; ++m) {
    const Rational scale(ipow(2, m));
    const Rational h0 = Rational(value_histogram(parse_lattice("H0", 2), m, big_budget)[0]) / scale;
    const Rational h1 = Rational(value_histogram(parse_lattice("H1", 2), m, big_budget)[0]) / scale;
    c.expect(h0 == Rational(m + 1), "H0 m=" + std::to_string(m) + ": " + str(h0));
    c.expect(h1 == 1 || h1 == 2, "H1 m=" + std::to_string(m) + ": " + str(h1));
    if (m > 1) c.expect(h1 != prev_h1, "H1 does not alternate at m=" + std::to_string(m));
    prev_h1 = h1;
    c.expect(Rational(count_h0(2, 0, m, BigInt(0))) / scale == h0, "closed H0 count at 0");
    c.expect(Rational(count_h1(0, m, Target(2, 0L))) / scale == h1, "closed H1 count at 0");
  }
  const DensityResult d0 = density(parse_lattice("H0", 2), Target(2, 0L));
  const DensityResult d1 = density(parse_lattice("H1", 2), Target(2, 0L));
  c.expect(std::holds_alternative<Diverges>(d0.outcome), "H0 at 0 should diverge");
  c.expect(std::holds_alternative<Oscillates>(d1.outcome), "H1 at 0 should oscillate");
  if (c.out.ok) c.out.note = "m + 1 and 1, 2 alternating for m <= 12";
  return c.out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence sweep", oracle_sweep},
      {"2 density table", table_rows},
      {"3 half-lift certificates", half_lift},
      {"4 three-squares closed form", three_squares},
      {"5 q-dictionary and prime uniformity", dictionary_uniformity},
      {"6 convolution example H0 + <1>", convolution_example},
      {"7 L3 against <2>^3", l3_cross},
      {"8 generating series", generating_series},
      {"9 singular targets", singular_targets},
  };
  int failed = 0;
  for (const auto& [label, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-38s %6.1fs  %s\n", o.ok ? "PASS" : "FAIL", label.c_str(), secs, o.note.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
