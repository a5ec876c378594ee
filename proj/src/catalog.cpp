#include "dyn/catalog.hpp"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dyn/curves.hpp"
#include "dyn/preper.hpp"

namespace dyn {

namespace {

struct LabelInfo {
  Label id;
  const char* name;
  const char* cli;
  int genus;
  int aut;
  int vertices;
};

constexpr std::array<LabelInfo, kNamedLabelCount + 1> kInfo{{
    {Label::Empty, "∅", "empty", 0, 1, 0},
    {Label::P4_11, "4(1,1)", "4_1_1", 0, 2, 4},
    {Label::P4_2, "4(2)", "4_2", 0, 2, 4},
    {Label::P6_11, "6(1,1)", "6_1_1", 0, 2, 6},
    {Label::P6_2, "6(2)", "6_2", 0, 2, 6},
    {Label::P6_3, "6(3)", "6_3", 0, 3, 6},
    {Label::P8_211, "8(2,1,1)", "8_2_1_1", 0, 4, 8},
    {Label::P8_11a, "8(1,1)a", "8_1_1a", 1, 8, 8},
    {Label::P8_11b, "8(1,1)b", "8_1_1b", 1, 2, 8},
    {Label::P8_2a, "8(2)a", "8_2a", 1, 8, 8},
    {Label::P8_2b, "8(2)b", "8_2b", 1, 2, 8},
    {Label::P10_211a, "10(2,1,1)a", "10_2_1_1a", 1, 4, 10},
    {Label::P10_211b, "10(2,1,1)b", "10_2_1_1b", 1, 4, 10},
    {Label::P8_3, "8(3)", "8_3", 2, 2, 8},
    {Label::P8_4, "8(4)", "8_4", 2, 4, 8},
    {Label::P10_311, "10(3,1,1)", "10_3_1_1", 2, 6, 10},
    {Label::P10_32, "10(3,2)", "10_3_2", 2, 6, 10},
    {Label::Other, "Other", "other", -1, 0, -1},
}};

const LabelInfo& info(Label l) { return kInfo.at(static_cast<int>(l)); }

// Small builder: every cycle vertex gets its leaf (the other preimage), and
// grow() hangs two preimages on a vertex.
struct Builder {
  FunctionalGraph g;
  std::vector<int> cycle_leaves;  // leaf attached to each cycle vertex, in creation order
  void cycle(int len) {
    int first = g.size();
    for (int i = 0; i < len; ++i) g.add_vertex(first + (i + 1) % len);
    for (int i = 0; i < len; ++i) cycle_leaves.push_back(g.add_vertex(first + i));
  }
  std::pair<int, int> grow(int v) {
    int a = g.add_vertex(v);
    int b = g.add_vertex(v);
    return {a, b};
  }
};

FunctionalGraph shape(std::initializer_list<int> cycles) {
  Builder b;
  for (int len : cycles) b.cycle(len);
  return b.g;
}

FunctionalGraph shape_grown(std::initializer_list<int> cycles, std::initializer_list<int> leaves) {
  Builder b;
  for (int len : cycles) b.cycle(len);
  for (int i : leaves) b.grow(b.cycle_leaves.at(i));
  return b.g;
}

FunctionalGraph shape_chain(std::initializer_list<int> cycles) {
  Builder b;
  for (int len : cycles) b.cycle(len);
  auto [p, q] = b.grow(b.cycle_leaves.at(0));
  (void)q;
  b.grow(p);
  return b.g;
}

// Graphs determined by (vertex count, cycle multiset).
const std::map<Label, FunctionalGraph>& fixed_shapes() {
  static const std::map<Label, FunctionalGraph> m = {
      {Label::Empty, FunctionalGraph()},
      {Label::P4_11, shape({1, 1})},
      {Label::P4_2, shape({2})},
      {Label::P6_11, shape_grown({1, 1}, {0})},
      {Label::P6_2, shape_grown({2}, {0})},
      {Label::P6_3, shape({3})},
      {Label::P8_211, shape({2, 1, 1})},
      {Label::P8_3, shape_grown({3}, {0})},
      {Label::P8_4, shape({4})},
      {Label::P10_311, shape({3, 1, 1})},
      {Label::P10_32, shape({3, 2})},
  };
  return m;
}

bool is_pair_label(Label l) {
  return l == Label::P8_11a || l == Label::P8_11b || l == Label::P8_2a || l == Label::P8_2b ||
         l == Label::P10_211a || l == Label::P10_211b;
}

Label pair_partner(Label l) {
  switch (l) {
    case Label::P8_11a: return Label::P8_11b;
    case Label::P8_11b: return Label::P8_11a;
    case Label::P8_2a: return Label::P8_2b;
    case Label::P8_2b: return Label::P8_2a;
    case Label::P10_211a: return Label::P10_211b;
    case Label::P10_211b: return Label::P10_211a;
    default: throw std::invalid_argument("not an a/b label");
  }
}

struct Pinned {
  std::map<Label, FunctionalGraph> graphs;
  std::vector<PinningRecord> records;
};

constexpr int kExemplars = 12;

const Pinned& pinned() {
  static Pinned p;
  static std::once_flag once;
  std::call_once(once, [] {
    for (Label a : {Label::P8_11a, Label::P8_2a, Label::P10_211a}) {
      Label b = pair_partner(a);
      auto shapes = ab_candidate_shapes(a);
      std::string code0 = canonical_code(shapes[0].second);
      std::string code1 = canonical_code(shapes[1].second);
      // votes[label][shape]
      std::map<Label, std::array<int, 2>> votes;
      for (Label l : {a, b}) {
        votes[l] = {0, 0};
        for (const auto& [c, K] : nabla_exemplars(l, kExemplars)) {
          PreperSet s = preper_points_quad(QuadElem(K, c, 0));
          std::string code = canonical_code(s.graph);
          if (code == code0) ++votes[l][0];
          if (code == code1) ++votes[l][1];
        }
      }
      // a takes the shape with the larger net support; ties fall back to the
      // listed order (symmetric / fixed-leaf shape first).
      int score0 = votes[a][0] - votes[a][1] + votes[b][1] - votes[b][0];
      int ia = score0 >= 0 ? 0 : 1;
      p.graphs[a] = shapes[ia].second;
      p.graphs[b] = shapes[1 - ia].second;
      p.records.push_back({a, shapes[ia].first, votes[a][ia], votes[a][1 - ia]});
      p.records.push_back({b, shapes[1 - ia].first, votes[b][1 - ia], votes[b][ia]});
    }
  });
  return p;
}

}  // namespace

const std::vector<Label>& named_labels() {
  static const std::vector<Label> v = [] {
    std::vector<Label> out;
    for (int i = 0; i < kNamedLabelCount; ++i) out.push_back(static_cast<Label>(i));
    return out;
  }();
  return v;
}

std::string label_name(Label l) { return info(l).name; }
std::string label_cli_name(Label l) { return info(l).cli; }

Label parse_label(std::string_view s) {
  for (const auto& i : kInfo)
    if (s == i.name || s == i.cli) return i.id;
  if (s == "0" || s == "empty_set") return Label::Empty;
  throw std::invalid_argument("unknown portrait label '" + std::string(s) + "'");
}

int label_genus(Label l) {
  if (l == Label::Other) throw std::invalid_argument("label_genus: Other");
  return info(l).genus;
}
int label_aut_order(Label l) {
  if (l == Label::Other) throw std::invalid_argument("label_aut_order: Other");
  return info(l).aut;
}
int label_vertex_count(Label l) {
  if (l == Label::Other) throw std::invalid_argument("label_vertex_count: Other");
  return info(l).vertices;
}

std::vector<std::pair<std::string, FunctionalGraph>> ab_candidate_shapes(Label l) {
  switch (l) {
    case Label::P8_11a:
    case Label::P8_11b:
      return {{"sym", shape_grown({1, 1}, {0, 1})}, {"chain", shape_chain({1, 1})}};
    case Label::P8_2a:
    case Label::P8_2b:
      return {{"sym", shape_grown({2}, {0, 1})}, {"chain", shape_chain({2})}};
    case Label::P10_211a:
    case Label::P10_211b:
      // cycle({2,1,1}) creates leaves for the 2-cycle at 0,1 and fixed points at 2,3.
      return {{"fixed-leaf", shape_grown({2, 1, 1}, {2})},
              {"cycle-leaf", shape_grown({2, 1, 1}, {0})}};
    default:
      throw std::invalid_argument("ab_candidate_shapes: not an a/b label");
  }
}

const std::vector<PinningRecord>& ab_pinning() { return pinned().records; }

const FunctionalGraph& catalog_graph(Label l) {
  if (l == Label::Other) throw std::invalid_argument("catalog_graph: Other");
  if (is_pair_label(l)) return pinned().graphs.at(l);
  return fixed_shapes().at(l);
}

PortraitLabel classify(const FunctionalGraph& g) {
  static const std::map<std::string, Label> fixed = [] {
    std::map<std::string, Label> m;
    for (const auto& [l, gr] : fixed_shapes()) m.emplace(canonical_code(gr), l);
    return m;
  }();
  static const std::map<std::string, bool> pair_codes = [] {
    std::map<std::string, bool> m;
    for (Label l : {Label::P8_11a, Label::P8_2a, Label::P10_211a})
      for (const auto& s : ab_candidate_shapes(l)) m.emplace(canonical_code(s.second), true);
    return m;
  }();
  std::string code = canonical_code(g);
  if (auto it = fixed.find(code); it != fixed.end()) return {it->second, code};
  if (pair_codes.count(code)) {
    for (Label l : {Label::P8_11a, Label::P8_11b, Label::P8_2a, Label::P8_2b, Label::P10_211a,
                    Label::P10_211b})
      if (canonical_code(catalog_graph(l)) == code) return {l, code};
  }
  return {Label::Other, code};
}

bool catalog_contains(Label outer, Label inner) {
  if (outer == Label::Other || inner == Label::Other)
    throw std::invalid_argument("catalog_contains: Other labels are not catalog graphs");
  static std::mutex mu;
  static std::map<std::pair<Label, Label>, bool> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(outer, inner);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  bool r = embeds(catalog_graph(inner), catalog_graph(outer));
  cache.emplace(key, r);
  return r;
}

}  // namespace dyn
