#include "locdens/genseries.hpp"

#include "locdens/closed_counts.hpp"

#include <sstream>

namespace locdens {

namespace {

Poly scale(Poly a, const Rational& c) {
  for (Rational& x : a) x *= c;
  return poly_trim(std::move(a));
}

Poly shift(const Poly& a, unsigned k) {
  if (a.empty()) return a;
  Poly out(k, Rational(0));
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

Poly monomial(const Rational& c, unsigned k) { return shift(poly_trim({c}), k); }

std::string term(const Rational& c, unsigned k, char var) {
  std::string mono;
  if (k >= 1) mono += var;
  if (k >= 2) mono += "^" + std::to_string(k);
  if (k == 0) return to_string(c);
  if (c == 1) return mono;
  if (c.get_den() != 1) return "(" + to_string(c) + ")" + mono;
  return to_string(c) + mono;
}

// Unscaled hyperbolic series.
RationalSeries base_h0(std::uint64_t p, const BigInt& s) {
  RationalSeries out;
  const Rational pq(ipow(p, 1));
  if (sgn(s) == 0) {
    if (p == 2) {
      out.numerator = {0, 4, -4};
      out.denominator = {1, -4, 4};
    } else {
      out.numerator = {0, Rational(2 * ipow(p, 1) - 1), Rational(-ipow(p, 2))};
      out.denominator = {1, Rational(-2 * ipow(p, 1)), Rational(ipow(p, 2))};
    }
    return out;
  }
  const unsigned v = valuation(p, s).finite();
  for (unsigned m = 1; m <= v; ++m) {
    if (p == 2) {
      out.initial.push_back(Rational(BigInt(m + 1) * ipow(2, m)));
    } else {
      out.initial.push_back(
          Rational((BigInt(m) * static_cast<unsigned long>(p - 1) + static_cast<unsigned long>(p)) *
                   ipow(p, m - 1)));
    }
  }
  const BigInt lead = p == 2 ? BigInt(BigInt(v) * ipow(2, v + 1))
                             : BigInt(BigInt(v + 1) * static_cast<unsigned long>(p - 1) * ipow(p, v));
  out.numerator = monomial(Rational(lead), v + 1);
  out.denominator = out.numerator.empty() ? Poly{1} : Poly{1, -pq};
  return out;
}

RationalSeries base_h1(const BigInt& t) {
  RationalSeries out;
  if (sgn(t) == 0) {
    out.numerator = {0, 4, 4};
    out.denominator = {1, 0, -4};
    return out;
  }
  const unsigned v = valuation(2, t).finite();
  for (unsigned m = 1; m <= v; ++m) {
    out.initial.push_back(Rational(ipow(4, (m + 1) / 2)));
  }
  if (v % 2 == 1) {
    out.numerator = monomial(Rational(3 * ipow(2, v + 1)), v + 1);
    out.denominator = {1, -2};
  }
  return out;
}

// head coefficients at m = 1..e, then factor * X^e * base.
RationalSeries splice(std::vector<Rational> head, const RationalSeries& base, const BigInt& factor,
                      unsigned e) {
  RationalSeries out;
  out.initial = std::move(head);
  const Rational f(factor);
  for (const Rational& c : base.initial) out.initial.push_back(c * f);
  out.numerator = shift(scale(base.numerator, f), e);
  out.denominator = base.denominator;
  return normalize(out);
}

}  // namespace

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, scale(b, Rational(-1))); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(std::move(out));
}

void poly_divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
  const Poly d = poly_trim(b);
  if (d.empty()) throw ArithmeticError("polynomial division by zero");
  remainder = poly_trim(a);
  quotient.assign(remainder.size() >= d.size() ? remainder.size() - d.size() + 1 : 0, Rational(0));
  while (remainder.size() >= d.size()) {
    const std::size_t k = remainder.size() - d.size();
    const Rational c = remainder.back() / d.back();
    quotient[k] = c;
    for (std::size_t i = 0; i < d.size(); ++i) remainder[i + k] -= c * d[i];
    remainder = poly_trim(std::move(remainder));
  }
  quotient = poly_trim(std::move(quotient));
}

Poly poly_gcd(Poly a, Poly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return scale(a, 1 / a.back());
}

std::string to_string(const Poly& a, char var) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (out.empty()) {
      out = term(a[k], static_cast<unsigned>(k), var);
    } else if (a[k] < 0) {
      out += " - " + term(-a[k], static_cast<unsigned>(k), var);
    } else {
      out += " + " + term(a[k], static_cast<unsigned>(k), var);
    }
  }
  return out;
}

RationalSeries normalize(RationalSeries s) {
  s.numerator = poly_trim(std::move(s.numerator));
  s.denominator = poly_trim(std::move(s.denominator));
  if (s.denominator.empty() || s.denominator.front() == 0) {
    throw ArithmeticError("series denominator must have a nonzero constant term");
  }
  if (s.numerator.empty()) {
    s.denominator = {1};
    return s;
  }
  const Poly g = poly_gcd(s.numerator, s.denominator);
  if (g.size() > 1) {
    Poly q, r;
    poly_divmod(s.numerator, g, q, r);
    s.numerator = q;
    poly_divmod(s.denominator, g, q, r);
    s.denominator = q;
  }
  const Rational d0 = s.denominator.front();
  s.numerator = scale(s.numerator, 1 / d0);
  s.denominator = scale(s.denominator, 1 / d0);
  return s;
}

bool is_reduced(const RationalSeries& s) {
  if (s.denominator.empty() || s.denominator.front() != 1) return false;
  if (s.numerator.empty()) return s.denominator == Poly{1};
  return poly_gcd(s.numerator, s.denominator).size() == 1;
}

RationalSeries series_h0(std::uint64_t p, unsigned e, const BigInt& s) {
  require_prime(p);
  if (e == 0) return normalize(base_h0(p, s));
  std::vector<Rational> head;
  for (unsigned m = 1; m <= e; ++m) head.push_back(Rational(count_h0(p, e, m, s)));
  if (sgn(s) != 0 && valuation(p, s).finite() < e) {
    RationalSeries out;
    out.initial = std::move(head);
    return out;
  }
  return splice(std::move(head), base_h0(p, s / ipow(p, e)), ipow(p, 2 * e), e);
}

RationalSeries series_h1(const BigInt& t) { return normalize(base_h1(t)); }

RationalSeries series_h1(unsigned e, const BigInt& t) {
  if (e == 0) return series_h1(t);
  std::vector<Rational> head;
  for (unsigned m = 1; m <= e; ++m) head.push_back(Rational(count_h1(e, m, Target(2, t))));
  if (sgn(t) != 0 && valuation(2, t).finite() < e) {
    RationalSeries out;
    out.initial = std::move(head);
    return out;
  }
  return splice(std::move(head), base_h1(t / ipow(2, e)), ipow(4, e), e);
}

Rational coefficient(const RationalSeries& s, unsigned m) {
  if (m < 1) throw std::invalid_argument("series coefficients start at m = 1");
  if (s.denominator.empty() || s.denominator.front() == 0) {
    throw ArithmeticError("series denominator must have a nonzero constant term");
  }
  // power-series division N/D up to degree m
  std::vector<Rational> c(m + 1, Rational(0));
  for (unsigned k = 0; k <= m; ++k) {
    Rational acc = k < s.numerator.size() ? s.numerator[k] : Rational(0);
    for (unsigned i = 1; i <= k && i < s.denominator.size(); ++i) acc -= s.denominator[i] * c[k - i];
    c[k] = acc / s.denominator.front();
  }
  Rational out = c[m];
  if (m <= s.initial.size()) out += s.initial[m - 1];
  return out;
}

std::string to_string(const RationalSeries& s) {
  Poly head(1, Rational(0));
  head.insert(head.end(), s.initial.begin(), s.initial.end());
  head = poly_trim(std::move(head));
  std::string tail;
  if (!s.numerator.empty()) {
    if (s.denominator == Poly{1}) {
      tail = to_string(s.numerator);
    } else {
      tail = "(" + to_string(s.numerator) + ")/(" + to_string(s.denominator) + ")";
    }
  }
  if (head.empty()) return tail.empty() ? "0" : tail;
  if (tail.empty()) return to_string(head);
  return to_string(head) + " + " + tail;
}

}  // namespace locdens
