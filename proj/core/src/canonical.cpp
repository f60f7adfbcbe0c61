#include "wallrig/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

namespace wallrig {

namespace {

using EdgeKey = std::tuple<int, int, GroupElement>;

EdgeKey oriented(const GainEdge& e) {
  GroupElement inv = inverse(e.gain);
  if (e.gain < inv || (e.gain == inv && e.tail <= e.head)) return {e.tail, e.head, e.gain};
  return {e.head, e.tail, inv};
}

std::int64_t floor_div2(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

// Each maximal forest of the non-loop edges, as edge id lists.
void forests(const GainGraph& g, std::vector<std::vector<int>>& out) {
  std::vector<int> cand;
  for (int id = 0; id < g.n_edges(); ++id) {
    if (!g.edges[id].is_loop()) cand.push_back(id);
  }
  const int target = static_cast<int>(spanning_forest(g).size());
  std::vector<int> pick;
  auto acyclic = [&](const std::vector<int>& ids) {
    std::vector<int> comp(g.n_vertices);
    std::iota(comp.begin(), comp.end(), 0);
    auto root = [&](int x) {
      while (comp[x] != x) x = comp[x];
      return x;
    };
    for (int id : ids) {
      int a = root(g.edges[id].tail), b = root(g.edges[id].head);
      if (a == b) return false;
      comp[b] = a;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(pick.size()) == target) {
      out.push_back(pick);
      return;
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
      pick.push_back(cand[i]);
      if (acyclic(pick)) self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

std::vector<int> component_labels(const GainGraph& g, int& count) {
  std::vector<int> label(g.n_vertices, -1);
  count = 0;
  for (int s = 0; s < g.n_vertices; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{s};
    label[s] = count;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges) {
        int y = e.tail == x ? e.head : (e.head == x ? e.tail : -1);
        if (y >= 0 && label[y] < 0) {
          label[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  return label;
}

}  // namespace

GainGraph canonical_form(const GainGraph& g, int max_vertices) {
  if (g.n_vertices > max_vertices) {
    throw Error(ErrorCode::TooLarge, "canonical form limited to " + std::to_string(max_vertices) + " vertices");
  }
  std::optional<std::vector<EdgeKey>> best;
  std::vector<int> perm(g.n_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    GainGraph h = g;
    for (auto& e : h.edges) {
      e.tail = perm[e.tail];
      e.head = perm[e.head];
    }
    int n_comp = 0;
    auto label = component_labels(h, n_comp);
    std::vector<std::vector<int>> all_forests;
    forests(h, all_forests);
    for (const auto& forest : all_forests) {
      const GainGraph base = normalize_tree(h, forest).graph;
      for (std::uint32_t flips = 0; flips < (1u << n_comp); ++flips) {
        GainGraph t = base;
        std::vector<std::optional<std::int64_t>> low(n_comp);
        for (auto& e : t.edges) {
          int c = label[e.tail];
          if (flips >> c & 1) e.gain.ty = -e.gain.ty;
          if (e.gain.refl && (!low[c] || e.gain.ty < *low[c])) low[c] = e.gain.ty;
        }
        for (auto& e : t.edges) {
          auto& lc = low[label[e.tail]];
          if (e.gain.refl && lc) e.gain.ty -= 2 * floor_div2(*lc);
        }
        std::vector<EdgeKey> key;
        key.reserve(t.edges.size());
        for (const auto& e : t.edges) key.push_back(oriented(e));
        std::sort(key.begin(), key.end());
        if (!best || key < *best) best = std::move(key);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  GainGraph out{g.group, g.n_vertices, {}};
  for (const auto& [t, h, gain] : *best) out.edges.push_back({t, h, gain});
  return out;
}

}  // namespace wallrig
