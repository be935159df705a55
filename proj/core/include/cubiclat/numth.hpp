#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubiclat {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

bool is_prime(const Int& n);

// Floor of sqrt(n), n >= 0.
Int isqrt_floor(const Int& n);

// Largest integer m with m <= c + sqrt(r); r >= 0.
Int floor_c_plus_sqrt(const Rat& c, const Rat& r);
// Smallest integer m with m >= c - sqrt(r); r >= 0.
Int ceil_c_minus_sqrt(const Rat& c, const Rat& r);

// p-adic valuation; n != 0 (r != 0).
long valuation(const Int& n, const Int& p);
long valuation(const Rat& r, const Int& p);
// n / p^v(n) for integers, numerator/denominator-wise for rationals.
Int unit_part(const Int& n, const Int& p);

Int mod_inverse(const Int& a, const Int& m);

// Odd unit part of a rational with v_2 = 0, reduced mod 8 into {1,3,5,7}.
int odd_unit_mod8(const Rat& u);
// Same after stripping the 2-power: unit_part as a class mod 8.
int odd_unit_mod8(const Int& u);

// Legendre symbol (a/p), p an odd prime; returns 0 when p | a.
int legendre(const Int& a, const Int& p);
// Jacobi-style class of a p-adic unit u (rational, v_p(u) = 0).
int legendre_unit(const Rat& u, const Int& p);

// Hilbert symbol (a,b)_p for nonzero rationals, p prime; and at the real place.
int hilbert(const Rat& a, const Rat& b, const Int& p);
int hilbert_infinity(const Rat& a, const Rat& b);

Int smallest_nonresidue(const Int& p);

// Prime factorization of n > 0, ascending.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// Canonical representatives: x mod 2Z into [0,2), x mod Z into [0,1).
Rat normalize_mod2(const Rat& x);
Rat normalize_mod1(const Rat& x);

// Solutions t of t^2 = a mod p^k (p odd prime, a a unit), empty if none.
std::vector<Int> sqrt_mod_pk(const Int& a, const Int& p, unsigned k);
// t with t^2 = a mod 2^k (a odd), empty if none.
std::vector<Int> sqrt_mod_2k(const Int& a, unsigned k);

}  // namespace cubiclat
