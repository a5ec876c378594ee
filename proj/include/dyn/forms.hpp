#pragma once

#include <array>
#include <string>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/poly.hpp"

namespace dyn {

/// Homogeneous integer form in n variables, stored as sparse terms.
struct Form {
  struct Term {
    std::vector<int> e;
    Int c;
  };
  int nvars = 0;
  int degree = 0;
  std::vector<Term> terms;

  Int eval(const std::vector<Int>& x) const;
  double eval(const std::vector<double>& x) const;
  /// Sum over terms of |c| * degree; bounds the gradient 1-norm on the unit cube.
  double lipschitz_bound() const;
  Form scaled(const Int& s) const;
  std::string to_string(const char* vars = "xyz") const;
};

/// Binary form of degree k from its dehomogenisation: sum f_i x^i y^(k-i).
Form homogenize(const IntPoly& f, int k);

/// Coprime pair of binary forms of equal degree (a map P^1 -> P^1).
struct HomPair {
  Form G0, G1;
  int k = 0;
};
HomPair hom_pair(const IntPoly& g0, const IntPoly& g1);

/// Three ternary forms of equal degree (a map Sym^2 P^1 -> Sym^2 P^1).
struct HomTriple {
  std::array<Form, 3> H;
  int k = 0;
  std::array<Int, 3> eval(const std::array<Int, 3>& x) const;
};

/// Symmetric-square coordinates of the pair {[a1:b1], [a2:b2]}:
/// [a1 a2, a1 b2 + a2 b1, b1 b2].
std::array<Int, 3> sym2_coords(const Int& a1, const Int& b1, const Int& a2, const Int& b2);

/// Sym^2 of a binary map in the coordinates above:
/// E(sym2_coords(P, Q)) = sym2_coords(G(P), G(Q)), computed by reducing the
/// symmetric products G_i(P) G_j(Q) to elementary symmetric functions.
HomTriple sym2_reduce(const HomPair& g);

/// Coordinates of a quadratic irrationality with minimal polynomial
/// A t^2 + B t + C: [C, -B, A].
inline std::array<Int, 3> sym2_of_minpoly(const Int& A, const Int& B, const Int& C) {
  return {C, Int(-B), A};
}

Int gcd3(const std::array<Int, 3>& v);

/// Lower bound for min over max(|x_i|) = 1 of max_i w_i |F_i(x)| by branch and
/// bound with second-order cell bounds.  Returns a certified lower bound, 0.9
/// of the observed minimum when the search converges within its cell budget.
double min_sup_sphere(const std::vector<Form>& forms, const std::vector<double>& weights);

}  // namespace dyn
