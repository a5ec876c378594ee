#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/catalog.hpp"
#include "dyn/forms.hpp"
#include "dyn/poly.hpp"

namespace dyn {

/// A real number with an absolute error bound (certified unless the
/// producing function says it is a statistical standard error).
struct Approx {
  double value = 0;
  double err = 0;
};

/// Requested combination is outside what the library computes.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// zeta(2) or zeta(3) by Euler-Maclaurin with an explicit tail bound.
Approx zeta_val(int s);

/// |lead| * prod max(1, |root|).  Degree <= 2 uses the exact enclosure;
/// higher degree uses companion-matrix roots with Newton refinement and
/// per-root inclusion radii n |f(z)| / |f'(z)|.
Approx mahler_inf(const IntPoly& f);
double mahler_inf_real(double a, double b, double c);  // a z^2 + b z + c
/// max_i |a_i|_p as an exact power of p.
Rat mahler_p(const IntPoly& f, const Int& p);

/// Integral over R of max(|g0(u)|, |g1(u)|)^(-e/k), split into |u| <= 1 and
/// |u| > 1 (via u = 1/t) and at the kinks of the integrand.
Approx arch_volume_p1(const IntPoly& g0, const IntPoly& g1, int k, int e);

/// Area of {max(|G0|, |G1|) <= 1} by dyadic cells with interval bounds;
/// err is the remaining undecided area.
Approx area_R1(const HomPair& G, double tol = 1e-4);

// --- p-adic -----------------------------------------------------------------

/// Distribution of V(x) = min_i v_p(F_i(x)) over primitive x in Z_p^n, with
/// Haar measure normalised by vol(Z_p^n) = 1.
struct ValuationDistribution {
  Int p;
  int nvars = 0;
  int degree = 0;
  std::map<long, Rat> mass;
  std::uint64_t classes = 0;  // residue classes visited
  long max_v() const { return mass.empty() ? 0 : mass.rbegin()->first; }
  Rat total() const;
};

/// Recursive residue-class subdivision.  workers <= 1 runs the serial
/// reference; otherwise OpenMP over top-level classes.  Both give identical
/// results.  Throws std::runtime_error if the depth guard is hit (forms with
/// a common p-adic zero).
ValuationDistribution valuation_distribution(const std::vector<Form>& forms, const Int& p,
                                             int workers = 1);

enum class Chart { AffineBox, FullQp };
Chart parse_chart(const std::string& s);

/// Volume of {x in Q_p^n : max_i |F_i(x)|_p <= 1}.  AffineBox restricts to
/// Z_p^n.
Rat padic_region_volume(const std::vector<Form>& forms, const Int& p, Chart chart = Chart::FullQp,
                        int workers = 1);
Rat padic_region_volume(const ValuationDistribution& d, Chart chart);

/// w_p / lambda_p for the local Tamagawa integral with exponent s = e/k:
/// (1 - p^-n)^-1 * sum_v mass(v) p^(s v).  Exact when every s v is an integer.
struct LocalFactor {
  double value = 0;
  std::optional<Rat> exact;
};
LocalFactor weighted_local_factor(const ValuationDistribution& d, int e, int k);

/// Primes dividing the homogeneous resultant of the pair or the contents of
/// the forms.
std::vector<Int> bad_primes(const HomPair& G);

// --- volumes ---------------------------------------------------------------

/// Volume of {x in R^3 : M(H0 z^2 - H1 z + H2) <= 1} by randomly shifted
/// Kronecker lattices; err is the standard error over the shifts.
/// Deterministic in (seed, samples); independent of workers.
Approx vol_S1(const HomTriple& H, std::uint64_t seed = 0, std::size_t samples = 1u << 22,
              int workers = 1);
/// Half-width of a cube containing S(1).
double vol_S1_box_radius(const HomTriple& H);

// --- leading constants -----------------------------------------------------

struct LocalVolume {
  std::string place;        // "infinity" or the prime
  double value = 0;         // w_v (infinity) or w_p
  double err = 0;
  std::optional<Rat> exact; // w_p when rational
  Rat lambda = 1;
  std::optional<Rat> region_volume;  // exact region volume, for comparison
};

struct LeadingConstant {
  Label label = Label::Other;
  int degree = 1;
  Rat a = 0, b = 0;
  Approx c;
  std::vector<LocalVolume> decomposition;
  double zeta = 0;       // zeta(2) or zeta(3) used
  int aut = 1;
  Rat prefactor = 1;     // 1/(2|Aut|), 2/(3|Aut|), 1/|Aut| or |tors|/|Aut|
  std::optional<Approx> closed_form;  // 8(2,1,1) degree 2: Vol(S(1)) / (8 zeta(3))
  std::optional<Approx> vol_S1;
  std::vector<std::string> notes;
  /// prefactor / zeta * prod value / lambda, recomputed from the parts.
  double remultiplied() const;
};

struct ConstantsOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 1u << 22;
  int workers = 1;
  std::optional<int> rank;  // genus-1 labels
};

LeadingConstant leading_constant_deg1(Label l, const ConstantsOptions& opt = {});
LeadingConstant leading_constant_deg2(Label l, const ConstantsOptions& opt = {});

/// Number of rational points on y^2 = h(x) (including points at infinity)
/// with H(x) <= bound.
std::uint64_t count_curve_points(const IntPoly& h, const Int& bound);

std::string constants_json(const LeadingConstant& c);

}  // namespace dyn
