#pragma once

// Exact p-adic bookkeeping on integers: valuations (with a real infinity),
// unit parts, and the Target value type used by every counting routine.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace locdens {

using BigInt = mpz_class;
/// Nonnegative by construction; every count in the library is one of these.
using BigCount = mpz_class;
/// GMP keeps mpq_class canonical after arithmetic; use make_rational() to build one.
using Rational = mpq_class;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime(std::uint64_t n);

/// Throws ArithmeticError("invalid prime") unless p is prime.
void require_prime(std::uint64_t p);

/// A p-adic valuation: a nonnegative integer or infinity (the valuation of 0).
class Valuation {
 public:
  static constexpr Valuation infinity() { return Valuation(); }
  constexpr explicit Valuation(unsigned v) : value_(v), infinite_(false) {}

  constexpr bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error on infinity.
  unsigned finite() const;
  /// min(v, cap); infinity caps to `cap`.
  constexpr unsigned capped(unsigned cap) const {
    return infinite_ || value_ > cap ? cap : value_;
  }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) {
      return a.infinite_ <=> b.infinite_;
    }
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  constexpr Valuation() : value_(0), infinite_(true) {}
  unsigned value_;
  bool infinite_;
};

Valuation valuation(std::uint64_t p, const BigInt& x);

/// Valuation of a residue class s mod p^m, with v(0 mod p^m) = m.
unsigned residue_valuation(std::uint64_t p, unsigned m, const BigInt& s);

/// x / p^{v_p(x)}; sign is kept. Throws ArithmeticError for x = 0.
BigInt unit_part(std::uint64_t p, const BigInt& x);

BigInt ipow(std::uint64_t base, unsigned exponent);

/// p^m as a machine word; throws std::overflow_error when p^m >= 2^63.
std::uint64_t modulus_u64(std::uint64_t p, unsigned m);

/// x mod n in [0, n).
BigInt mod_floor(const BigInt& x, const BigInt& n);

/// Canonical rational num/den; throws ArithmeticError when den = 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

/// An integer target t at a fixed prime, with its valuation and unit part cached.
/// t = p^v * unit with p not dividing unit; v is infinite exactly when t = 0.
class Target {
 public:
  Target(std::uint64_t p, BigInt t);
  Target(std::uint64_t p, long t) : Target(p, BigInt(t)) {}

  std::uint64_t prime() const { return p_; }
  const BigInt& value() const { return t_; }
  const Valuation& valuation() const { return v_; }
  bool is_zero() const { return v_.is_infinite(); }
  /// Throws ArithmeticError for t = 0.
  const BigInt& unit() const;

  /// v_p(t mod p^m) with the residue convention.
  unsigned residue_valuation(unsigned m) const { return v_.capped(m); }
  /// t mod p^m in [0, p^m).
  BigInt residue(unsigned m) const;

 private:
  std::uint64_t p_;
  BigInt t_;
  Valuation v_;
  BigInt unit_;
};

}  // namespace locdens
