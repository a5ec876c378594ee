#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/catalog.hpp"
#include "dyn/forms.hpp"
#include "dyn/poly.hpp"
#include "dyn/quad.hpp"

namespace dyn {

/// pi(x) = g0(x) / g1(x); k = max(deg g0, deg g1).
struct RationalMap1D {
  IntPoly g0, g1;
  int k = 0;
};

/// Polynomial in x, y: y[j] is the coefficient of y^j.
struct PolyXY {
  std::vector<IntPoly> y;
};

struct RatXY {
  PolyXY num, den;
};

/// One element of Aut(pi): x -> X(x, y), y -> Y(x, y) (Y absent in genus 0).
struct AutElement {
  RatXY X;
  std::optional<RatXY> Y;
  std::string text;  // catalog line, for diagnostics
};

struct CurveRecord {
  Label label = Label::Other;
  int genus = 0;
  std::optional<IntPoly> h;  // y^2 = h(x) for genus >= 1
  RationalMap1D pi;
  int aut_order = 1;
  std::vector<AutElement> aut;
  std::string lmfdb;
  /// Degree of pi as a map on the curve (twice the x-degree when genus >= 1).
  int curve_degree() const { return genus == 0 ? pi.k : 2 * pi.k; }
};

/// Parses catalog text; throws std::runtime_error on malformed records or
/// checksum mismatch.
std::vector<CurveRecord> parse_catalog(std::string_view text);
/// Built-in catalog, one record per named label in table order.
const std::vector<CurveRecord>& curve_catalog();
const CurveRecord& curve_record(Label l);
/// 64-bit FNV-1a, as used by the catalog checksums.
std::uint64_t fnv1a(std::string_view s);

/// pi(x), absent when g1(x) = 0.
std::optional<Rat> eval_pi(Label l, const Rat& x);
/// pi at the projective point [a:b]; absent at poles.
std::optional<Rat> eval_pi_hom(Label l, const Int& a, const Int& b);
std::optional<QuadElem> eval_pi(Label l, const QuadElem& x);

/// Rational roots of g0(x) - c g1(x) (finite part of the fibre), ascending.
std::vector<Rat> solve_fiber(Label l, const Rat& c);
/// True when x = infinity lies over c.
bool fiber_contains_infinity(Label l, const Rat& c);

struct AutReport {
  Label label = Label::Other;
  bool ok = true;
  int group_order = 0;
  std::vector<std::string> failures;
};
/// Exact identities in the function field of the curve: pi o sigma = pi,
/// sigma maps the curve to itself, the elements are distinct and closed
/// under composition, and their number is |Aut|.
AutReport verify_aut(Label l);

/// (G0, G1) homogenised from the catalog map of l.
HomPair hom_pair_of(Label l);

/// The transcribed Sym^2 triple for 8(2,1,1).
HomTriple sym2_map_8211();

/// Coordinate conventions tried when matching Sym^2 images: bit 0 reverses
/// the input triple, bit 1 negates its middle entry, bits 2 and 3 do the same
/// for the output.
std::array<Int, 3> apply_sym2_convention(int variant, bool output, std::array<Int, 3> v);
std::string sym2_convention_name(int variant);

struct Sym2Report {
  bool ok = false;
  int samples = 0;
  int variant = -1;                 // pinned convention, first matching variant
  std::vector<int> matching;        // all variants matching every sample
  bool reduction_agrees = false;    // transcription equals our own reduction
  std::array<Int, 3> image_101{};   // H(1, 0, 1)
  std::string diagnostics;
};
Sym2Report verify_sym2(int samples, std::uint64_t seed = 0);

/// Rational x with H(x) <= hbound and g1(x) != 0; for genus >= 1 only x with
/// h(x) a square.  Emits (x, pi(x)) in order of denominator, then numerator.
void generate_c_degree1(Label l, const Int& hbound,
                        const std::function<void(const Rat& x, const Rat& c)>& emit);

/// Quadratic points: genus 0 gives quadratic x with H(x) <= hbound mapped
/// through pi (K = Q(x)); genus >= 1 gives rational x with H(x) <= hbound and
/// h(x) not a square (K = Q(sqrt h(x))).
void generate_cK_degree2(
    Label l, const Int& hbound,
    const std::function<void(const QuadElem& x, const QuadElem& c, const QuadField& K)>& emit);

/// The first `count` distinct c = pi(x) from rational x with h(x) not a
/// square, ordered by H(x), with K = Q(sqrt h(x)).  Genus >= 1 labels only.
std::vector<std::pair<Rat, QuadField>> nabla_exemplars(Label l, int count);

/// Tab-separated x, c pairs with a header line.
std::string xc_tsv(const std::vector<std::pair<Rat, Rat>>& rows);

}  // namespace dyn
