#pragma once

// Quadratic lattices as ordered orthogonal sums of basic blocks at a fixed prime.
//
// Quadratic forms (Q(v) = <v, v>):
//   p^e H0            2 p^e x y
//   2^e H1            2^{e+1} (x^2 + x y + y^2)       p = 2 only
//   <p^a u>           p^a u x^2                       p does not divide u
//   L3                2 (x1^2 + x2^2 + x3^2)           p = 2 only
//
// Text grammar (whitespace insignificant):
//   lattice := block ("+" block)*
//   block   := [INT "^" INT "*"] base        the scale base must equal p
//   base    := "H0" | "H1" | "L3" | "<" SIGNED_INT ">"

#include "locdens/padic.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace locdens {

struct ScaledH0 {
  unsigned e = 0;
  friend bool operator==(const ScaledH0&, const ScaledH0&) = default;
};

struct ScaledH1 {
  unsigned e = 0;
  friend bool operator==(const ScaledH1&, const ScaledH1&) = default;
};

struct TypeI {
  unsigned a = 0;
  BigInt u = 1;
  friend bool operator==(const TypeI& x, const TypeI& y) { return x.a == y.a && x.u == y.u; }
};

struct L3Block {
  friend bool operator==(const L3Block&, const L3Block&) = default;
};

using BlockSpec = std::variant<ScaledH0, ScaledH1, TypeI, L3Block>;

unsigned block_rank(const BlockSpec& block);

/// Even at p = 2: Q takes only even values.
bool block_is_even(const BlockSpec& block);

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class LatticeSpec {
 public:
  /// Validates the block menu at p; throws LatticeError.
  LatticeSpec(std::uint64_t p, std::vector<BlockSpec> blocks);

  std::uint64_t prime() const { return p_; }
  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  unsigned rank() const { return rank_; }
  bool is_single_block() const { return blocks_.size() == 1; }
  bool is_even() const;

  /// All blocks but the last; requires at least two blocks.
  LatticeSpec without_last() const;
  LatticeSpec last_block() const;
  /// Orthogonal sum, blocks of `other` appended after ours.
  LatticeSpec operator+(const LatticeSpec& other) const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  std::uint64_t p_;
  std::vector<BlockSpec> blocks_;
  unsigned rank_;
};

LatticeSpec parse_lattice(std::string_view text, std::uint64_t p);

/// Canonical text form; parse_lattice(to_string(L), p) == L.
std::string to_string(const BlockSpec& block, std::uint64_t p);
std::string to_string(const LatticeSpec& lattice);

/// One block's quadratic form reduced modulo p^m, ready for repeated evaluation.
class BlockForm {
 public:
  BlockForm(const BlockSpec& block, std::uint64_t p, unsigned m);

  unsigned rank() const { return rank_; }
  std::uint64_t modulus() const { return modulus_; }
  /// Coordinates must already be reduced mod p^m.
  std::uint64_t operator()(std::span<const std::uint64_t> x) const;

 private:
  enum class Kind { hyperbolic, anisotropic, diagonal, ternary };
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus_);
  }
  Kind kind_;
  unsigned rank_;
  std::uint64_t modulus_;
  std::uint64_t coefficient_;
};

/// Q(v) mod p^m for v in (Z/p^m)^rank, evaluated block by block.
std::uint64_t q_value(const LatticeSpec& lattice, unsigned m, std::span<const std::uint64_t> v);

}  // namespace locdens
