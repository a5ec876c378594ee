#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dyn {

using Int = mpz_class;
using Rat = mpq_class;

/// Valuation of zero.
inline constexpr long kValInf = LONG_MAX;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int mobius(std::uint64_t n);

bool is_prime(const Int& p);

/// v_p(x); kValInf for x = 0. Throws std::invalid_argument unless p is prime.
long padic_val(const Int& x, const Int& p);
long padic_val(const Rat& x, const Int& p);

std::optional<Int> is_perfect_square(const Int& n);
Int isqrt(const Int& n);

/// max(|num|, den) of the reduced fraction.
Int height_rational(const Rat& c);

/// Trial-division factorisation. Throws if a cofactor above limit^2 remains
/// whose primality cannot be settled.
std::vector<std::pair<Int, int>> factor(const Int& n, unsigned long limit = 1000000);

/// Sign-preserving squarefree kernel, e.g. -12 -> -3, 8 -> 2.
Int squarefree_part(const Int& n);
bool is_squarefree(const Int& n);

Rat parse_rat(std::string_view s);
std::string to_string(const Rat& x);
std::string to_string(const Int& x);

Rat make_rat(const Int& num, const Int& den);

/// Integer power p^e as Int.
Int ipow(const Int& p, unsigned long e);

/// Checked conversion to int64 / __int128.
bool fits_i64(const Int& x);
std::int64_t to_i64(const Int& x);
Int from_i128(__int128 x);
__int128 to_i128(const Int& x);

}  // namespace dyn
