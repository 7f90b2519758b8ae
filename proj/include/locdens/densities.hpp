#pragma once

// Local densities alpha_p(t; L) = lim p^{-m(n-1)} r_m(t; L).
//
// Single blocks use exact closed forms. Orthogonal sums are read off the
// normalised counts once three consecutive levels agree, starting at the
// stable threshold. t = 0 is classified (diverges / oscillates) only for
// single H0 and H1 blocks; anything else is a SingularTargetError.

#include "locdens/compose.hpp"
#include "locdens/lattice.hpp"
#include "locdens/oracle.hpp"
#include "locdens/padic.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace locdens {

/// Q: the form Q(v) = <v, v>. q: q = Q/2 on an even lattice.
enum class Normalization { Q, q };
enum class Provenance { closed_form, structural_zero, stabilized };
enum class Engine { automatic, naive, stratified };

std::string_view to_string(Normalization n);
std::string_view to_string(Provenance p);
std::string_view to_string(Engine e);

struct DensityValue {
  Rational alpha;
  unsigned stabilized_at = 0;
  Provenance provenance = Provenance::closed_form;
};

struct Diverges {
  std::string description;
};

/// The normalised counts cycle through these values forever.
struct Oscillates {
  std::vector<Rational> values;
};

struct DensityResult {
  std::variant<DensityValue, Diverges, Oscillates> outcome;
  Normalization normalization = Normalization::Q;

  bool has_value() const { return std::holds_alternative<DensityValue>(outcome); }
  /// Throws std::bad_variant_access for singular outcomes.
  const Rational& alpha() const { return std::get<DensityValue>(outcome).alpha; }
};

// Dyadic vanishing constraints on a target t = 2^v c (c odd).
struct ValuationAtLeast {
  unsigned bound;
};
/// (v - offset) = parity mod 2.
struct ValuationParity {
  unsigned offset;
  unsigned parity;
};
/// u^{-1} c = 1 mod 8.
struct UnitSquareClass {
  BigInt u;
};
/// t / 2^shift is a sum of three 2-adic squares: not of the form 4^k (8j + 7).
struct ThreeSquareClass {
  unsigned shift;
};
using Constraint = std::variant<ValuationAtLeast, ValuationParity, UnitSquareClass, ThreeSquareClass>;

std::string to_string(const Constraint& c);

/// Whether the nonzero target t (at p = 2) meets every constraint.
bool admits(const std::vector<Constraint>& constraints, const BigInt& t);

struct VanishingConstraints {
  std::vector<Constraint> Q;
  /// Absent for odd blocks, where the q-normalisation is undefined.
  std::optional<std::vector<Constraint>> q;
};

struct ThresholdInfo {
  unsigned stable_m = 0;
  std::optional<VanishingConstraints> vanishing;
};

class SingularTargetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class StabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DensityOptions {
  EnumBudget budget{};
  /// Levels tried past the threshold before giving up on stabilisation.
  unsigned extra_levels = 16;
  Engine engine = Engine::automatic;
};

/// Planes: v + 1. Type I and L3: v + 3. Sums: max over blocks, plus 1.
ThresholdInfo stable_threshold(const LatticeSpec& lattice, const Target& t);

/// Single block at p = 2 only; throws LatticeError otherwise.
VanishingConstraints vanishing_constraints(const LatticeSpec& lattice);

/// p^{-m(n-1)} r_m(t; L), with the count taken by the requested engine.
Rational normalized_count(const LatticeSpec& lattice, unsigned m, const Target& t,
                          const EnumBudget& budget = {}, Engine engine = Engine::automatic);

DensityResult density(const LatticeSpec& lattice, const Target& t,
                      const DensityOptions& options = {});

/// q-normalised density of t'. At p = 2, requires an even lattice and equals
/// density(L, 2t') / 2. At odd p, q = t' is the same congruence as Q = 2t'.
DensityResult density_q(const LatticeSpec& lattice, const Target& t_prime,
                        const DensityOptions& options = {});

}  // namespace locdens
