#pragma once

// Closed-form finite-level counts r_m(t; B) for every block on the menu, the
// three-squares counts N_{d,n}(a), and the dispatcher count_lattice.
//
// Levels below a block's closed-form range (m <= e for scaled planes, m <= a
// for Type I) are answered by the enumeration oracle.

#include "locdens/lattice.hpp"
#include "locdens/oracle.hpp"
#include "locdens/padic.hpp"

#include <string_view>

namespace locdens {

enum class Route { closed_form, recursion, enumeration, convolution_naive, convolution_stratified };

std::string_view to_string(Route route);

struct Counted {
  BigCount value;
  Route route;
};

/// M^{(e)}_{p,m}(s) = #{(x, y) mod p^m : 2 p^e x y = s}.
BigCount count_h0(std::uint64_t p, unsigned e, unsigned m, const BigInt& s);

/// A^{(e)}_m(t) = #{(x, y) mod 2^m : 2^{e+1}(x^2 + x y + y^2) = t}.
BigCount count_h1(unsigned e, unsigned m, const Target& t);

/// #{x mod 2^m : x^2 = b}.
BigCount sqrt_count_mod2(unsigned m, const BigInt& b);

/// #{x mod 2^m : 2^a u x^2 = t}, u odd.
BigCount count_typeI(unsigned a, const BigInt& u, unsigned m, const Target& t);

/// N_3(a) = #{x mod 8 : x_1^2 + x_2^2 + x_3^2 = a}, read off a mod 8.
BigCount n3_mod8(const BigInt& a);

/// a = 4^k a0 with 4 not dividing a0.
struct SumSquaresDecomp {
  unsigned k;
  BigInt a0;
};

/// Throws ArithmeticError for a = 0.
SumSquaresDecomp decompose_four_power(const BigInt& a);

/// N_{d,n}(a). The route records how it was obtained:
///   closed_form  d = 3, a = 4^k a0 != 0, n >= 2k + 3: 8^k N_3(a0) 4^{n-2k-3}
///   recursion    d = 3 and 4 | a: N_n(a) = 8 N_{n-2}(a/4);
///                general d, 4 does not divide a, n >= 3: 2^{(d-1)(n-3)} N_{d,3}(a)
///   enumeration  everything else
Counted count_sum_squares(unsigned d, unsigned n, const BigInt& a, const EnumBudget& budget = {});

/// r_m(t; L3): 0 for odd t, 8 N_{m-1}(t/2) for even t.
BigCount count_l3(unsigned m, const Target& t, const EnumBudget& budget = {});

/// r_m(t; L). Single blocks dispatch to their closed form; sums go through compose.
Counted count_lattice(const LatticeSpec& lattice, unsigned m, const Target& t,
                      const EnumBudget& budget = {});

}  // namespace locdens
