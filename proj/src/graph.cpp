#include "dyn/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "dyn/dynatomic.hpp"

namespace dyn {

int FunctionalGraph::add_vertex(int target, std::string name) {
  succ.push_back(target < 0 ? size() : target);
  if (!names.empty() || !name.empty()) {
    names.resize(succ.size() - 1);
    names.push_back(std::move(name));
  }
  return size() - 1;
}

void FunctionalGraph::validate() const {
  for (int v : succ)
    if (v < 0 || v >= size()) throw std::invalid_argument("FunctionalGraph: edge out of range");
}

std::vector<int> FunctionalGraph::in_degrees() const {
  std::vector<int> d(size(), 0);
  for (int v : succ) ++d[v];
  return d;
}

std::vector<std::vector<int>> FunctionalGraph::cycles() const {
  validate();
  std::vector<int> state(size(), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < size(); ++s) {
    if (state[s]) continue;
    std::vector<int> path;
    int v = s;
    while (!state[v]) {
      state[v] = 1;
      path.push_back(v);
      v = succ[v];
    }
    if (state[v] == 1) {
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<int> cyc(it, path.end());
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      out.push_back(std::move(cyc));
    }
    for (int u : path) state[u] = 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FunctionalGraph FunctionalGraph::permuted(const std::vector<int>& perm) const {
  FunctionalGraph h;
  h.succ.assign(size(), 0);
  if (!names.empty()) h.names.assign(size(), {});
  for (int i = 0; i < size(); ++i) {
    h.succ[perm[i]] = perm[succ[i]];
    if (!names.empty()) h.names[perm[i]] = names[i];
  }
  return h;
}

std::string canonical_code(const FunctionalGraph& g) {
  auto cycles = g.cycles();
  std::vector<char> on_cycle(g.size(), 0);
  for (const auto& c : cycles)
    for (int v : c) on_cycle[v] = 1;
  std::vector<std::vector<int>> children(g.size());
  for (int u = 0; u < g.size(); ++u)
    if (!on_cycle[u]) children[g.succ[u]].push_back(u);

  std::function<std::string(int)> tree = [&](int v) {
    std::vector<std::string> parts;
    for (int u : children[v]) parts.push_back(tree(u));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    return s + ")";
  };

  std::vector<std::string> codes;
  for (const auto& c : cycles) {
    std::vector<std::string> seq;
    for (int v : c) seq.push_back(tree(v));
    std::vector<std::string> best = seq;
    for (std::size_t r = 1; r < seq.size(); ++r) {
      std::rotate(seq.begin(), seq.begin() + 1, seq.end());
      if (seq < best) best = seq;
    }
    std::string s = "[";
    for (auto& t : best) s += t;
    codes.push_back(s + "]");
  }
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (auto& s : codes) out += s;
  return out;
}

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string h;
  h.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    h += digits[b >> 4];
    h += digits[b & 15];
  }
  return h;
}

AdmissibilityReport check_strongly_admissible(const FunctionalGraph& g) {
  AdmissibilityReport rep;
  auto deg = g.in_degrees();
  for (int v = 0; v < g.size(); ++v)
    if (deg[v] != 0 && deg[v] != 2)
      rep.violations.push_back("vertex " + std::to_string(v) + " has in-degree " +
                               std::to_string(deg[v]));
  std::map<int, int> by_len;
  for (const auto& c : g.cycles()) ++by_len[static_cast<int>(c.size())];
  for (auto [len, count] : by_len) {
    if (len == 1) {
      if (count != 2)
        rep.violations.push_back(std::to_string(count) + " fixed points (need 0 or 2)");
    } else if (Int(count) > cycle_bound_R(len)) {
      rep.violations.push_back(std::to_string(count) + " cycles of length " +
                               std::to_string(len) + " exceed R(N)");
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

FunctionalGraph admissible_completion(const FunctionalGraph& g0) {
  FunctionalGraph g = g0;
  std::map<int, int> by_len;
  for (const auto& c : g.cycles()) ++by_len[static_cast<int>(c.size())];
  for (auto [len, count] : by_len)
    if (Int(count) > cycle_bound_R(len))
      throw std::invalid_argument("admissible_completion: too many cycles of length " +
                                  std::to_string(len));
  auto deg = g.in_degrees();
  for (int v = 0; v < g.size(); ++v)
    if (deg[v] > 2) throw std::invalid_argument("admissible_completion: in-degree above 2");
  if (by_len[1] == 1) g.add_vertex(-1, g.names.empty() ? "" : "*");
  deg = g.in_degrees();
  const int n = g.size();
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) g.add_vertex(v, g.names.empty() ? "" : "*");
  return g;
}

bool embeds(const FunctionalGraph& inner, const FunctionalGraph& outer) {
  if (inner.size() > outer.size()) return false;
  auto in_cycles = inner.cycles();
  std::vector<char> on_cycle(inner.size(), 0);
  for (const auto& c : in_cycles)
    for (int v : c) on_cycle[v] = 1;
  // Tree vertices ordered so that succ[v] precedes v.
  std::vector<int> order;
  {
    std::vector<std::vector<int>> children(inner.size());
    for (int u = 0; u < inner.size(); ++u)
      if (!on_cycle[u]) children[inner.succ[u]].push_back(u);
    std::vector<int> frontier;
    for (const auto& c : in_cycles) frontier.insert(frontier.end(), c.begin(), c.end());
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (int u : children[frontier[i]]) {
        frontier.push_back(u);
        order.push_back(u);
      }
  }
  std::vector<std::vector<int>> preds(outer.size());
  for (int u = 0; u < outer.size(); ++u) preds[outer.succ[u]].push_back(u);

  std::vector<int> phi(inner.size(), -1);
  std::vector<char> used(outer.size(), 0);

  std::function<bool(std::size_t)> place_tree = [&](std::size_t i) -> bool {
    if (i == order.size()) return true;
    int v = order[i];
    for (int x : preds[phi[inner.succ[v]]]) {
      if (used[x]) continue;
      used[x] = 1;
      phi[v] = x;
      if (place_tree(i + 1)) return true;
      used[x] = 0;
    }
    phi[v] = -1;
    return false;
  };

  std::function<bool(std::size_t)> place_cycle = [&](std::size_t ci) -> bool {
    if (ci == in_cycles.size()) return place_tree(0);
    const auto& c = in_cycles[ci];
    for (int x = 0; x < outer.size(); ++x) {
      std::vector<int> taken;
      bool ok = true;
      int y = x;
      for (int v : c) {
        if (used[y]) {
          ok = false;
          break;
        }
        used[y] = 1;
        taken.push_back(y);
        phi[v] = y;
        y = outer.succ[y];
      }
      if (ok && y == x && place_cycle(ci + 1)) return true;
      for (int t : taken) used[t] = 0;
    }
    return false;
  };
  return place_cycle(0);
}

}  // namespace dyn
