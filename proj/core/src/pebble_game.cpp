#include "wallrig/pebble_game.hpp"

#include <algorithm>

#include "wallrig/error.hpp"

namespace wallrig {

PebbleGame::PebbleGame(int n_vertices, int k, int l)
    : k_(k), l_(l), pebbles_(n_vertices, k), out_(n_vertices) {
  if (k < 1 || l < 0 || l >= 2 * k) throw Error(ErrorCode::InvalidArgument, "pebble game needs 0 <= l < 2k");
}

int PebbleGame::free_pebbles() const {
  int s = 0;
  for (int p : pebbles_) s += p;
  return s;
}

// Depth-first search from `target` along arcs for a vertex other than
// `target` and `frozen` holding a free pebble; the path is then reversed,
// moving one pebble to `target`.
bool PebbleGame::pull_pebble(int target, int frozen) {
  const int n = n_vertices();
  std::vector<int> via(n, -1);
  std::vector<char> seen(n, 0);
  seen[target] = 1;
  if (frozen >= 0) seen[frozen] = 1;
  std::vector<int> stack{target};
  int found = -1;
  while (!stack.empty() && found < 0) {
    int x = stack.back();
    stack.pop_back();
    for (int a : out_[x]) {
      int y = arcs_[a].to;
      if (seen[y]) continue;
      seen[y] = 1;
      via[y] = a;
      if (pebbles_[y] > 0) {
        found = y;
        break;
      }
      stack.push_back(y);
    }
  }
  if (found < 0) return false;
  --pebbles_[found];
  ++pebbles_[target];
  for (int y = found; y != target;) {
    int a = via[y];
    int x = arcs_[a].from;
    auto& from_list = out_[x];
    from_list.erase(std::find(from_list.begin(), from_list.end(), a));
    arcs_[a] = {y, x};
    out_[y].push_back(a);
    y = x;
  }
  return true;
}

int PebbleGame::gather(int u, int v, int want) {
  if (u == v) {
    while (pebbles_[u] < want && pull_pebble(u, -1)) {
    }
    return pebbles_[u];
  }
  while (pebbles_[u] + pebbles_[v] < want) {
    if (pebbles_[u] < k_ && pull_pebble(u, v)) continue;
    if (pebbles_[v] < k_ && pull_pebble(v, u)) continue;
    break;
  }
  return pebbles_[u] + pebbles_[v];
}

bool PebbleGame::try_insert(int u, int v, int id) {
  if (gather(u, v, l_ + 1) < l_ + 1) return false;
  int from = pebbles_[u] > 0 ? u : v;
  int to = from == u ? v : u;
  --pebbles_[from];
  out_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, to});
  accepted_.push_back(id);
  return true;
}

std::vector<int> PebbleGame::reach(int u, int v) const {
  std::vector<char> seen(n_vertices(), 0);
  std::vector<int> stack{u, v}, out;
  seen[u] = seen[v] = 1;
  out.push_back(u);
  if (v != u) out.push_back(v);
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int a : out_[x]) {
      int y = arcs_[a].to;
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> PebbleGame::induced_edges(const std::vector<int>& region) const {
  std::vector<char> in(n_vertices(), 0);
  for (int x : region) in[x] = 1;
  std::vector<int> ids;
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (in[arcs_[a].from] && in[arcs_[a].to]) ids.push_back(accepted_[a]);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace wallrig
