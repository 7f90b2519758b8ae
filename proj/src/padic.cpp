#include "locdens/padic.hpp"

#include <limits>

namespace locdens {

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw ArithmeticError("invalid prime");
  }
}

unsigned Valuation::finite() const {
  if (infinite_) {
    throw std::logic_error("valuation is infinite");
  }
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

Valuation valuation(std::uint64_t p, const BigInt& x) {
  require_prime(p);
  if (sgn(x) == 0) {
    return Valuation::infinity();
  }
  if (p == 2) {
    return Valuation(static_cast<unsigned>(mpz_scan1(x.get_mpz_t(), 0)));
  }
  BigInt rest;
  BigInt prime(static_cast<unsigned long>(p));
  return Valuation(static_cast<unsigned>(
      mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t())));
}

unsigned residue_valuation(std::uint64_t p, unsigned m, const BigInt& s) {
  return valuation(p, s).capped(m);
}

BigInt unit_part(std::uint64_t p, const BigInt& x) {
  require_prime(p);
  if (sgn(x) == 0) {
    throw ArithmeticError("zero has no unit part");
  }
  BigInt rest;
  BigInt prime(static_cast<unsigned long>(p));
  mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
  return rest;
}

BigInt ipow(std::uint64_t base, unsigned exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exponent);
  return r;
}

std::uint64_t modulus_u64(std::uint64_t p, unsigned m) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (n > (std::numeric_limits<std::uint64_t>::max() >> 1) / p) {
      throw std::overflow_error("p^m does not fit a machine word");
    }
    n *= p;
  }
  return n;
}

BigInt mod_floor(const BigInt& x, const BigInt& n) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) {
    throw ArithmeticError("zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Target::Target(std::uint64_t p, BigInt t)
    : p_(p), t_(std::move(t)), v_(locdens::valuation(p, t_)) {
  if (!v_.is_infinite()) {
    unit_ = unit_part(p_, t_);
  }
}

const BigInt& Target::unit() const {
  if (is_zero()) {
    throw ArithmeticError("zero has no unit part");
  }
  return unit_;
}

BigInt Target::residue(unsigned m) const { return mod_floor(t_, ipow(p_, m)); }

}  // namespace locdens
