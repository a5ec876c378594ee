#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dyn/catalog.hpp"
#include "dyn/graph.hpp"

using namespace dyn;

namespace {

FunctionalGraph random_graph(std::mt19937_64& rng, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = static_cast<int>(rng() % n);
  return FunctionalGraph(s);
}

std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Isomorphism by trying every bijection; only for tiny graphs.
bool brute_isomorphic(const FunctionalGraph& a, const FunctionalGraph& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < a.size() && ok; ++v) ok = p[a.succ[v]] == b.succ[p[v]];
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST_CASE("canonical code is invariant under relabelling") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    int n = 1 + static_cast<int>(rng() % 12);
    FunctionalGraph g = random_graph(rng, n);
    CHECK(canonical_code(g) == canonical_code(g.permuted(random_perm(rng, n))));
  }
}

TEST_CASE("canonical code separates exactly the isomorphism classes") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 400; ++i) {
    int n = 1 + static_cast<int>(rng() % 6);
    FunctionalGraph a = random_graph(rng, n), b = random_graph(rng, n);
    CHECK((canonical_code(a) == canonical_code(b)) == brute_isomorphic(a, b));
  }
}

TEST_CASE("cycles and in-degrees") {
  FunctionalGraph g({1, 0, 2, 2});
  CHECK(g.cycles().size() == 2);
  CHECK(g.in_degrees() == std::vector<int>{1, 1, 2, 0});
  CHECK_THROWS(FunctionalGraph({3}).validate());
}

TEST_CASE("embedding") {
  FunctionalGraph two_fixed({0, 1}), two_cycle({1, 0});
  FunctionalGraph big({0, 1, 0, 1});  // two fixed points with one preimage each
  CHECK(embeds(two_fixed, big));
  CHECK_FALSE(embeds(two_cycle, big));
  CHECK(embeds(FunctionalGraph{}, two_cycle));
  CHECK_FALSE(embeds(big, two_fixed));
}

TEST_CASE("catalog graphs") {
  for (Label l : named_labels()) {
    const FunctionalGraph& g = catalog_graph(l);
    CHECK(g.size() == label_vertex_count(l));
    CHECK(classify(g).id == l);
    if (l != Label::Empty) CHECK_MESSAGE(is_strongly_admissible(g), label_name(l));
  }
  CHECK(catalog_contains(Label::P8_211, Label::P4_11));
  CHECK(catalog_contains(Label::P8_211, Label::P4_2));
  CHECK_FALSE(catalog_contains(Label::P4_11, Label::P4_2));
  CHECK(classify(FunctionalGraph({0, 1, 2})).id == Label::Other);
}

TEST_CASE("label names") {
  for (Label l : named_labels()) {
    CHECK(parse_label(label_name(l)) == l);
    CHECK(parse_label(label_cli_name(l)) == l);
  }
  CHECK(label_cli_name(Label::P10_211a) == "10_2_1_1a");
  CHECK_THROWS_AS(parse_label("8_2_1"), std::invalid_argument);
}

TEST_CASE("admissible completion") {
  // One fixed point: a second one is added, then every in-degree-1 vertex
  // receives a leaf.
  FunctionalGraph g = admissible_completion(FunctionalGraph({0}));
  CHECK(is_strongly_admissible(g));
  CHECK(g.size() == 4);
}
