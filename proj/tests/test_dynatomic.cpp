#include <doctest.h>

#include <random>

#include "dyn/dynatomic.hpp"

using namespace dyn;

namespace {

BivarPoly compose_iterate(const BivarPoly& p, int m) {
  return m == 0 ? p : p.compose_z(fc_iterate(m));
}

}  // namespace

TEST_CASE("small dynatomic polynomials") {
  const BivarPoly z = BivarPoly::var_z(), c = BivarPoly::var_c(), one = BivarPoly::constant(1);
  CHECK(dynatomic(1) == z * z - z + c);
  CHECK(dynatomic(2) == z * z + z + c + one);
}

TEST_CASE("product over divisors is the iterate minus z") {
  for (int N = 1; N <= 6; ++N) {
    BivarPoly prod = BivarPoly::constant(1);
    for (int n = 1; n <= N; ++n)
      if (N % n == 0) prod = prod * dynatomic(n);
    CHECK_MESSAGE(prod == fc_iterate(N) - BivarPoly::var_z(), "N = " << N);
  }
}

TEST_CASE("degrees follow the Mobius sum") {
  const long expect[] = {0, 2, 2, 6, 12, 30, 54, 126, 240};
  for (int N = 1; N <= 8; ++N) {
    CHECK(degree_D(N) == expect[N]);
    CHECK(dynatomic(N).deg_z() == expect[N]);
  }
  CHECK(cycle_bound_R(1) == 2);
  CHECK(cycle_bound_R(6) == 9);
}

TEST_CASE("generalised dynatomic polynomials telescope") {
  // Phi_{M,N}(z) * Phi_N(f^{M-1}(z)) = Phi_N(f^M(z)).
  for (int M = 1; M <= 3; ++M)
    for (int N = 1; N <= 4; ++N) {
      BivarPoly g = gen_dynatomic(M, N);
      CHECK_MESSAGE(g * compose_iterate(dynatomic(N), M - 1) == compose_iterate(dynatomic(N), M),
                    "M = " << M << ", N = " << N);
      CHECK(g.deg_z() == degree_D(N) * (1L << (M - 1)));
    }
}

TEST_CASE("specialisation at rational c") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Rat c = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
    for (int N = 1; N <= 4; ++N) CHECK(dynatomic_at(N, c) == specialize(dynatomic(N), c));
    for (int M = 1; M <= 2; ++M)
      for (int N = 1; N <= 3; ++N) CHECK(gen_dynatomic_at(M, N, c) == specialize(gen_dynatomic(M, N), c));
  }
}

TEST_CASE("roots of Phi_1 and Phi_2 at c = -3/4 and c = -2") {
  // c = -3/4: the fixed points are 3/2 and -1/2; -1/2 is also the degenerate
  // two-cycle, so Phi_2(-1/2) = 0.
  QPoly p2 = dynatomic_at(2, Rat(-3, 4));
  CHECK(p2.eval(Rat(-1, 2)) == 0);
  QPoly p1 = dynatomic_at(1, Rat(-2));
  CHECK(p1.eval(Rat(2)) == 0);
  CHECK(p1.eval(Rat(-1)) == 0);
}

TEST_CASE("caps are enforced") {
  CHECK_THROWS(dynatomic(kPeriodCap + 1));
  CHECK_THROWS(gen_dynatomic(kPreperiodCap + 1, 1));
}
