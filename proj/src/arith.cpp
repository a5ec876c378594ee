#include "dyn/arith.hpp"

#include <algorithm>
#include <cctype>

namespace dyn {

int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

bool is_prime(const Int& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

long padic_val(const Int& x, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("padic_val: modulus is not prime");
  if (x == 0) return kValInf;
  Int t = abs(x);
  if (p == 2) return static_cast<long>(mpz_scan1(t.get_mpz_t(), 0));
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

long padic_val(const Rat& x, const Int& p) {
  if (x == 0) {
    if (!is_prime(p)) throw std::invalid_argument("padic_val: modulus is not prime");
    return kValInf;
  }
  return padic_val(Int(x.get_num()), p) - padic_val(Int(x.get_den()), p);
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Int> is_perfect_square(const Int& n) {
  if (n < 0) throw std::invalid_argument("is_perfect_square: negative input");
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  return isqrt(n);
}

Int height_rational(const Rat& c) {
  Int a = abs(c.get_num());
  Int b = c.get_den();
  return a > b ? a : b;
}

std::vector<std::pair<Int, int>> factor(const Int& n0, unsigned long limit) {
  std::vector<std::pair<Int, int>> out;
  Int n = abs(n0);
  if (n == 0) throw std::invalid_argument("factor: zero");
  for (unsigned long p = 2; p <= limit; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out.emplace_back(Int(p), e);
    }
  }
  if (n > 1) {
    if (!is_prime(n) && n <= Int(limit) * limit) {
      // cannot happen: trial division covered all primes up to sqrt(n)
      throw std::logic_error("factor: inconsistent trial division");
    }
    if (!is_prime(n)) throw std::runtime_error("factor: cofactor too large to factor");
    out.emplace_back(n, 1);
  }
  return out;
}

Int squarefree_part(const Int& n) {
  if (n == 0) throw std::invalid_argument("squarefree_part: zero");
  Int r = 1;
  for (auto& [p, e] : factor(n))
    if (e % 2) r *= p;
  return n < 0 ? Int(-r) : r;
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (auto& pe : factor(n))
    if (pe.second > 1) return false;
  return true;
}

static Int parse_int(std::string_view s) {
  std::string t(s);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }),
          t.end());
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || t == "-") throw ParseError("empty integer");
  for (std::size_t i = (t[0] == '-'); i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw ParseError("bad integer '" + std::string(s) + "'");
  return Int(t);
}

Rat parse_rat(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator");
  return make_rat(num, den);
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int ipow(const Int& p, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
  return r;
}

bool fits_i64(const Int& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }

std::int64_t to_i64(const Int& x) {
  if (!fits_i64(x)) throw std::overflow_error("value exceeds int64");
  return x.get_si();
}

Int from_i128(__int128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  Int hi(static_cast<unsigned long>(u >> 64));
  Int lo(static_cast<unsigned long>(u & ~0UL));
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

__int128 to_i128(const Int& x) {
  if (mpz_sizeinbase(x.get_mpz_t(), 2) > 126) throw std::overflow_error("value exceeds int128");
  Int a = abs(x);
  Int lo = a & Int("18446744073709551615");
  Int hi = a >> 64;
  unsigned __int128 u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  return x < 0 ? -static_cast<__int128>(u) : static_cast<__int128>(u);
}

}  // namespace dyn
