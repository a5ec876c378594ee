#pragma once

#include "dyn/arith.hpp"
#include "dyn/quad.hpp"

namespace dyn {

enum class PrimeType { Split, Inert, Ramified };

/// Decomposition type of the rational prime p in K.
PrimeType prime_type(const QuadField& K, const Int& p);

/// Roots of the minimal polynomial of w (the second O_K basis element)
/// modulo p^k: two roots when p splits, the double root (mod p) when p ramifies.
std::vector<Int> omega_roots(const QuadField& K, const Int& p, unsigned k);

/// Norm of A + B w.
Int omega_norm(const QuadField& K, const Int& A, const Int& B);

/// Every preperiodic point x of z^2 + c in K satisfies y = T x in O_K with
/// y = A + B w, B = M2 j, A = M1 i - R M2 j for integers i, j.
struct PreperLattice {
  bool empty = false;  // some prime has odd negative valuation of c
  Int T = 1, M1 = 1, M2 = 1, R = 0;
};

PreperLattice preper_lattice(const QuadElem& c);

/// Square root of n modulo the odd prime p (n a nonzero square mod p).
Int sqrt_mod_prime(const Int& n, const Int& p);

}  // namespace dyn
