#include "locdens/lattice.hpp"

#include <cctype>
#include <limits>

namespace locdens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_block(const BlockSpec& block, std::uint64_t p) {
  std::visit(overloaded{
                 [](const ScaledH0&) {},
                 [p](const ScaledH1&) {
                   if (p != 2) throw LatticeError("block not valid at this prime");
                 },
                 [p](const TypeI& b) {
                   if (sgn(b.u) == 0) throw LatticeError("degenerate block");
                   if (valuation(p, b.u) != Valuation(0)) {
                     throw LatticeError("Type I unit must be coprime to the prime");
                   }
                 },
                 [p](const L3Block&) {
                   if (p != 2) throw LatticeError("block not valid at this prime");
                 },
             },
             block);
}

class Parser {
 public:
  Parser(std::string_view text, std::uint64_t p) : text_(text), p_(p) {}

  LatticeSpec parse() {
    std::vector<BlockSpec> blocks;
    blocks.push_back(block());
    skip_space();
    while (pos_ < text_.size()) {
      expect('+');
      blocks.push_back(block());
      skip_space();
    }
    return LatticeSpec(p_, std::move(blocks));
  }

 private:
  BlockSpec block() {
    skip_space();
    unsigned scale = 0;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t at = pos_;
      BigInt base = integer(false);
      expect('^');
      BigInt exponent = integer(false);
      expect('*');
      if (base != static_cast<unsigned long>(p_)) {
        throw ParseError("scale base must equal the prime " + std::to_string(p_), at);
      }
      if (exponent > 4096) {
        throw ParseError("scale exponent too large", at);
      }
      scale = static_cast<unsigned>(exponent.get_ui());
    }
    skip_space();
    std::size_t at = pos_;
    if (consume("H0")) {
      return ScaledH0{scale};
    }
    if (consume("H1")) {
      if (p_ != 2) throw LatticeError("block not valid at this prime");
      return ScaledH1{scale};
    }
    if (consume("L3")) {
      if (p_ != 2) throw LatticeError("block not valid at this prime");
      if (scale != 0) throw LatticeError("scaled L3 is not a supported block");
      return L3Block{};
    }
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ++pos_;
      BigInt c = integer(true);
      expect('>');
      if (sgn(c) == 0) {
        throw LatticeError("degenerate block");
      }
      unsigned a = valuation(p_, c).finite();
      return TypeI{scale + a, unit_part(p_, c)};
    }
    throw ParseError("expected H0, H1, L3 or <integer>", at);
  }

  BigInt integer(bool allow_sign) {
    skip_space();
    std::size_t start = pos_;
    std::string digits;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      if (text_[pos_] == '-') digits.push_back('-');
      ++pos_;
      skip_space();
    }
    std::size_t first_digit = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits.push_back(text_[pos_++]);
    }
    if (pos_ == first_digit) {
      throw ParseError("expected integer", start);
    }
    return BigInt(digits, 10);
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  bool consume(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view text_;
  std::uint64_t p_;
  std::size_t pos_ = 0;
};

std::uint64_t coefficient_mod(std::uint64_t p, unsigned exponent, const BigInt& factor,
                              std::uint64_t modulus) {
  BigInt c = ipow(p, exponent) * factor;
  return mod_floor(c, BigInt(static_cast<unsigned long>(modulus))).get_ui();
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

unsigned block_rank(const BlockSpec& block) {
  return std::visit(overloaded{
                        [](const ScaledH0&) { return 2u; },
                        [](const ScaledH1&) { return 2u; },
                        [](const TypeI&) { return 1u; },
                        [](const L3Block&) { return 3u; },
                    },
                    block);
}

bool block_is_even(const BlockSpec& block) {
  if (const auto* b = std::get_if<TypeI>(&block)) {
    return b->a >= 1;
  }
  return true;
}

LatticeSpec::LatticeSpec(std::uint64_t p, std::vector<BlockSpec> blocks)
    : p_(p), blocks_(std::move(blocks)), rank_(0) {
  require_prime(p_);
  if (blocks_.empty()) {
    throw LatticeError("lattice needs at least one block");
  }
  for (const auto& b : blocks_) {
    validate_block(b, p_);
    rank_ += block_rank(b);
  }
}

bool LatticeSpec::is_even() const {
  if (p_ != 2) {
    return false;
  }
  for (const auto& b : blocks_) {
    if (!block_is_even(b)) return false;
  }
  return true;
}

LatticeSpec LatticeSpec::without_last() const {
  if (blocks_.size() < 2) {
    throw LatticeError("lattice has a single block");
  }
  return LatticeSpec(p_, {blocks_.begin(), blocks_.end() - 1});
}

LatticeSpec LatticeSpec::last_block() const { return LatticeSpec(p_, {blocks_.back()}); }

LatticeSpec LatticeSpec::operator+(const LatticeSpec& other) const {
  if (other.p_ != p_) {
    throw LatticeError("orthogonal sum of lattices at different primes");
  }
  std::vector<BlockSpec> joined = blocks_;
  joined.insert(joined.end(), other.blocks_.begin(), other.blocks_.end());
  return LatticeSpec(p_, std::move(joined));
}

LatticeSpec parse_lattice(std::string_view text, std::uint64_t p) {
  require_prime(p);
  return Parser(text, p).parse();
}

std::string to_string(const BlockSpec& block, std::uint64_t p) {
  auto scaled = [p](unsigned e, const char* base) {
    return e == 0 ? std::string(base)
                  : std::to_string(p) + "^" + std::to_string(e) + "*" + base;
  };
  return std::visit(overloaded{
                        [&](const ScaledH0& b) { return scaled(b.e, "H0"); },
                        [&](const ScaledH1& b) { return scaled(b.e, "H1"); },
                        [&](const TypeI& b) {
                          BigInt c = ipow(p, b.a) * b.u;
                          return "<" + c.get_str() + ">";
                        },
                        [](const L3Block&) { return std::string("L3"); },
                    },
                    block);
}

std::string to_string(const LatticeSpec& lattice) {
  std::string out;
  for (const auto& b : lattice.blocks()) {
    if (!out.empty()) out += " + ";
    out += to_string(b, lattice.prime());
  }
  return out;
}

BlockForm::BlockForm(const BlockSpec& block, std::uint64_t p, unsigned m)
    : rank_(block_rank(block)), modulus_(modulus_u64(p, m)) {
  std::visit(overloaded{
                 [&](const ScaledH0& b) {
                   kind_ = Kind::hyperbolic;
                   coefficient_ = coefficient_mod(p, b.e, 2, modulus_);
                 },
                 [&](const ScaledH1& b) {
                   kind_ = Kind::anisotropic;
                   coefficient_ = coefficient_mod(2, b.e + 1, 1, modulus_);
                 },
                 [&](const TypeI& b) {
                   kind_ = Kind::diagonal;
                   coefficient_ = coefficient_mod(p, b.a, b.u, modulus_);
                 },
                 [&](const L3Block&) {
                   kind_ = Kind::ternary;
                   coefficient_ = coefficient_mod(2, 1, 1, modulus_);
                 },
             },
             block);
}

std::uint64_t BlockForm::operator()(std::span<const std::uint64_t> x) const {
  switch (kind_) {
    case Kind::hyperbolic:
      return mul(coefficient_, mul(x[0], x[1]));
    case Kind::anisotropic: {
      std::uint64_t s = (mul(x[0], x[0]) + mul(x[0], x[1])) % modulus_;
      s = (s + mul(x[1], x[1])) % modulus_;
      return mul(coefficient_, s);
    }
    case Kind::diagonal:
      return mul(coefficient_, mul(x[0], x[0]));
    case Kind::ternary: {
      std::uint64_t s = (mul(x[0], x[0]) + mul(x[1], x[1])) % modulus_;
      s = (s + mul(x[2], x[2])) % modulus_;
      return mul(coefficient_, s);
    }
  }
  return 0;
}

std::uint64_t q_value(const LatticeSpec& lattice, unsigned m, std::span<const std::uint64_t> v) {
  if (v.size() != lattice.rank()) {
    throw std::invalid_argument("dimension mismatch: vector has " + std::to_string(v.size()) +
                                " coordinates, lattice rank is " +
                                std::to_string(lattice.rank()));
  }
  std::uint64_t total = 0;
  std::size_t offset = 0;
  for (const auto& b : lattice.blocks()) {
    BlockForm form(b, lattice.prime(), m);
    total = (total + form(v.subspan(offset, form.rank()))) % form.modulus();
    offset += form.rank();
  }
  return total;
}

}  // namespace locdens
