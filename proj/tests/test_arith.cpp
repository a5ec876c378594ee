#include <doctest.h>

#include <cmath>
#include <random>

#include "dyn/arith.hpp"
#include "dyn/quad.hpp"

using namespace dyn;

TEST_CASE("height of rationals") {
  CHECK(height_rational(Rat(0)) == 1);
  CHECK(height_rational(make_rat(-91, 36)) == 91);
  CHECK(height_rational(make_rat(3, -7)) == 7);
  CHECK(height_rational(make_rat(10, 4)) == 5);
}

TEST_CASE("parse_rat round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    long a = static_cast<long>(rng() % 20001) - 10000;
    long b = static_cast<long>(rng() % 999) + 1;
    Rat q = make_rat(a, b);
    CHECK(parse_rat(to_string(q)) == q);
  }
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("x"), ParseError);
}

TEST_CASE("mobius agrees with a factorisation count") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    int expect = 1;
    for (const auto& [p, e] : factor(Int(n))) expect = e > 1 ? 0 : -expect;
    if (n == 1) expect = 1;
    CHECK(mobius(n) == expect);
  }
}

TEST_CASE("factor multiplies back") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Int n = Int(static_cast<unsigned long>(rng() % 100000000)) + 2;
    Int prod = 1;
    for (const auto& [p, e] : factor(n)) {
      CHECK(is_prime(p));
      prod *= ipow(p, e);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("squarefree part and squares") {
  CHECK(squarefree_part(Int(-12)) == -3);
  CHECK(squarefree_part(Int(8)) == 2);
  CHECK(squarefree_part(Int(49)) == 1);
  CHECK(is_perfect_square(Int(144)).value() == 12);
  CHECK_THROWS(is_perfect_square(Int(-4)));
  CHECK_FALSE(is_perfect_square(Int(2)));
  for (long n = 0; n < 5000; ++n) {
    Int r = isqrt(Int(n));
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("p-adic valuation") {
  CHECK(padic_val(Int(48), Int(2)) == 4);
  CHECK(padic_val(make_rat(5, 72), Int(3)) == -2);
  CHECK(padic_val(Int(0), Int(5)) == kValInf);
}

TEST_CASE("128-bit conversions") {
  Int big = ipow(Int(3), 70);
  CHECK(from_i128(to_i128(big)) == big);
  CHECK(from_i128(to_i128(-big)) == -big);
  CHECK(fits_i64(Int(1) << 62));
  CHECK_FALSE(fits_i64(Int(1) << 64));
}

TEST_CASE("quadratic fields and heights") {
  QuadElem x = parse_quad("1/2+3/2*sqrt(5)");
  CHECK(x.field().D() == 5);
  CHECK(x.norm() == Rat(1, 4) - Rat(9, 4) * 5);
  CHECK(minimal_polynomial(x).c == std::vector<Int>{-11, -1, 1});
  // H(sqrt 2)^2 = M(t^2 - 2) = 2.
  CHECK(height_le(parse_quad("sqrt(2)"), Rat(15, 10)));
  CHECK_FALSE(height_le(parse_quad("sqrt(2)"), Rat(14, 10)));
  // Mahler measure of a quadratic against its roots.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    long a = static_cast<long>(rng() % 40) + 1, b = static_cast<long>(rng() % 81) - 40,
         c = static_cast<long>(rng() % 81) - 40;
    double disc = double(b) * b - 4.0 * a * c;
    double m;
    if (disc < 0) {
      m = a * std::max(1.0, std::sqrt(double(c) / a)) * std::max(1.0, std::sqrt(double(c) / a));
    } else {
      double r1 = (-b + std::sqrt(disc)) / (2.0 * a), r2 = (-b - std::sqrt(disc)) / (2.0 * a);
      m = a * std::max(1.0, std::fabs(r1)) * std::max(1.0, std::fabs(r2));
    }
    Enclosure e = mahler_quadratic(a, b, c);
    CHECK(e.lo <= m * (1 + 1e-12));
    CHECK(e.hi >= m * (1 - 1e-12));
  }
}
