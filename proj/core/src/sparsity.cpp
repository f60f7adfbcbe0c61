#include "wallrig/sparsity.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "wallrig/pebble_game.hpp"

namespace wallrig {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::count_21: return "count_21";
    case Condition::purely_periodic_22: return "purely_periodic_22";
    case Condition::balanced_23: return "balanced_23";
  }
  return "?";
}

namespace {

std::vector<int> support_of(const GainGraph& g, std::span<const int> edges) {
  std::vector<int> s;
  for (int id : edges) {
    s.push_back(g.edges.at(id).tail);
    s.push_back(g.edges.at(id).head);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Witness make_witness(const GainGraph& g, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Witness w;
  w.support = support_of(g, edges);
  w.cls = classify(g, edges);
  w.edges = std::move(edges);
  return w;
}

bool violates_counts(int n_edges, int n_support, GainClass cls, Condition c) {
  switch (c) {
    case Condition::count_21: return n_edges > 2 * n_support - 1;
    case Condition::purely_periodic_22: return cls != GainClass::mixed && n_edges > 2 * n_support - 2;
    case Condition::balanced_23: return cls == GainClass::balanced && n_edges > 2 * n_support - 3;
  }
  return false;
}

SparsityVerdict independent_verdict(const GainGraph& g) {
  SparsityVerdict v;
  v.independent = true;
  v.tight = g.n_edges() == 2 * g.n_vertices - 1;
  if (!v.tight) v.failed_condition = Condition::count_21;
  return v;
}

SparsityVerdict violation(Condition c, Witness w) {
  SparsityVerdict v;
  v.failed_condition = c;
  v.witness = std::move(w);
  return v;
}

// ---- fast engine, stage 1: (2,1) pebble game ------------------------------

std::optional<Witness> count_violation(const GainGraph& g) {
  PebbleGame game(g.n_vertices, 2, 1);
  for (int id = 0; id < g.n_edges(); ++id) {
    const auto& e = g.edges[id];
    if (game.try_insert(e.tail, e.head, id)) continue;
    auto edges = game.induced_edges(game.reach(e.tail, e.head));
    edges.push_back(id);
    return make_witness(g, std::move(edges));
  }
  return std::nullopt;
}

// ---- stage 2: (2,2) game on the reflection double cover ---------------------
//
// Vertex (v, sheet) is 2v + sheet; edge (t, h; m) lifts to (t,0)-(h,r) and
// (t,1)-(h,1-r) with r = refl(m). For a (2,1)-sparse graph, the cover is
// (2,2)-sparse exactly when no balanced or purely periodic subgraph breaks
// the (2,2) count, and a minimal dependent set of lifts projects onto such
// a subgraph.

struct Lift {
  int a;
  int b;
};

Lift lift(const GainEdge& e, int sheet) {
  int r = e.gain.refl ? 1 : 0;
  return sheet == 0 ? Lift{2 * e.tail, 2 * e.head + r} : Lift{2 * e.tail + 1, 2 * e.head + 1 - r};
}

bool cover_sparse(const GainGraph& g, const std::vector<int>& lifts) {
  PebbleGame game(2 * g.n_vertices, 2, 2);
  for (int c : lifts) {
    Lift l = lift(g.edges[c / 2], c % 2);
    if (!game.try_insert(l.a, l.b, c)) return false;
  }
  return true;
}

std::optional<Witness> periodic_violation(const GainGraph& g) {
  PebbleGame game(2 * g.n_vertices, 2, 2);
  for (int id = 0; id < g.n_edges(); ++id) {
    for (int sheet = 0; sheet < 2; ++sheet) {
      int c = 2 * id + sheet;
      Lift l = lift(g.edges[id], sheet);
      if (game.try_insert(l.a, l.b, c)) continue;
      auto circuit = game.induced_edges(game.reach(l.a, l.b));
      circuit.push_back(c);
      // Shrink to a circuit by deletion.
      for (std::size_t i = 0; i < circuit.size();) {
        auto trial = circuit;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (!cover_sparse(g, trial)) {
          circuit = std::move(trial);
        } else {
          ++i;
        }
      }
      std::vector<int> edges;
      for (int x : circuit) edges.push_back(x / 2);
      Witness w = make_witness(g, std::move(edges));
      if (!violates(g, w.edges, Condition::purely_periodic_22)) {
        throw Error(ErrorCode::InternalError, "double-cover circuit does not project to a periodic violation");
      }
      return w;
    }
  }
  return std::nullopt;
}

// ---- stage 3: balanced (2,3) violations --------------------------------------
//
// Edges are added one at a time to a (2,1) game. A minimal balanced violator
// F containing the new edge e = (u, v; m) is a simple (2,3)-circuit: at least
// four vertices, each with three or more neighbours in F, and F - e lies in
// the prefix. We search switching potentials phi with phi(u) = id,
// phi(v) = m: a frontier vertex either takes a value induced by an edge to
// the assigned set or is deferred (those values are then barred for it).
//
// Every node first tests the edges consistent with phi, then prunes with an
// over-approximation P of F - e (edges that some completion could keep): P is
// cut down to its 3-core around u, and the branch dies unless e lies in the
// (2,3)-closure of P.

class BalancedSearch {
 public:
  BalancedSearch(const GainGraph& g, int e, int prefix_end, std::vector<char> allowed)
      : g_(g), e_(e), prefix_end_(prefix_end), allowed_(std::move(allowed)), phi_(g.n_vertices),
        barred_(g.n_vertices) {
    const auto& edge = g.edges[e];
    phi_[edge.tail] = GroupElement{};
    phi_[edge.head] = edge.gain;
  }

  std::optional<Witness> run() {
    search();
    return found_;
  }

 private:
  // Value forced on the far end of f when `from` is assigned.
  GroupElement induced(const GainEdge& f, int from) const {
    return from == f.tail ? *phi_[f.tail] * f.gain : *phi_[f.head] * inverse(f.gain);
  }

  bool possible(const GainEdge& f) const {
    if (f.is_loop() || !allowed_[f.tail] || !allowed_[f.head]) return false;
    bool a = phi_[f.tail].has_value(), b = phi_[f.head].has_value();
    if (a && b) return *phi_[f.tail] * f.gain == *phi_[f.head];
    if (a) return barred_[f.head].count(induced(f, f.tail)) == 0;
    if (b) return barred_[f.tail].count(induced(f, f.head)) == 0;
    return true;
  }

  // Over-approximation of F - e, reduced to the 3-core and to the component
  // of u. Empty when u or v drops out.
  std::vector<int> pruned_candidates() const {
    const auto& e = g_.edges[e_];
    const int n = g_.n_vertices;
    std::vector<int> ids;
    for (int id = 0; id < prefix_end_; ++id)
      if (possible(g_.edges[id])) ids.push_back(id);
    std::vector<std::set<int>> nbr(n);
    for (int id : ids) {
      nbr[g_.edges[id].tail].insert(g_.edges[id].head);
      nbr[g_.edges[id].head].insert(g_.edges[id].tail);
    }
    nbr[e.tail].insert(e.head);
    nbr[e.head].insert(e.tail);
    std::vector<char> alive(n, 1);
    std::vector<int> queue;
    for (int w = 0; w < n; ++w)
      if (nbr[w].size() < 3) queue.push_back(w);
    while (!queue.empty()) {
      int w = queue.back();
      queue.pop_back();
      if (!alive[w]) continue;
      alive[w] = 0;
      if (w == e.tail || w == e.head) return {};
      for (int x : nbr[w]) {
        nbr[x].erase(w);
        if (alive[x] && nbr[x].size() < 3) queue.push_back(x);
      }
    }
    std::vector<char> reached(n, 0);
    std::vector<int> stack{e.tail};
    reached[e.tail] = 1;
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int x : nbr[w])
        if (alive[x] && !reached[x]) reached[x] = 1, stack.push_back(x);
    }
    std::vector<int> out;
    for (int id : ids)
      if (reached[g_.edges[id].tail] && reached[g_.edges[id].head]) out.push_back(id);
    return out;
  }

  void search() {
    if (found_) return;
    if (check_consistent()) return;
    auto cand = pruned_candidates();
    if (cand.empty() || !in_closure(cand)) return;

    int best = -1;
    std::vector<GroupElement> best_values;
    std::map<int, std::vector<GroupElement>> values;
    for (int id : cand) {
      const auto& f = g_.edges[id];
      for (int w : {f.tail, f.head}) {
        int other = w == f.tail ? f.head : f.tail;
        if (phi_[w] || !phi_[other]) continue;
        auto& vs = values[w];
        auto x = induced(f, other);
        if (std::find(vs.begin(), vs.end(), x) == vs.end()) vs.push_back(x);
      }
    }
    for (auto& [w, vs] : values) {
      if (best < 0 || vs.size() < best_values.size()) {
        best = w;
        best_values = vs;
      }
    }
    if (best < 0) return;
    std::sort(best_values.begin(), best_values.end());
    for (const auto& x : best_values) {
      phi_[best] = x;
      search();
      phi_[best].reset();
      if (found_) return;
    }
    auto saved = barred_[best];
    barred_[best].insert(best_values.begin(), best_values.end());
    search();
    barred_[best] = std::move(saved);
  }

  bool in_closure(const std::vector<int>& ids) const {
    const auto& e = g_.edges[e_];
    PebbleGame game(g_.n_vertices, 2, 3);
    for (int id : ids) game.try_insert(g_.edges[id].tail, g_.edges[id].head, id);
    return game.gather(e.tail, e.head, 4) < 4;
  }

  bool check_consistent() {
    const auto& e = g_.edges[e_];
    PebbleGame game(g_.n_vertices, 2, 3);
    for (int id = 0; id < prefix_end_; ++id) {
      const auto& f = g_.edges[id];
      if (f.is_loop() || !phi_[f.tail] || !phi_[f.head]) continue;
      if (*phi_[f.tail] * f.gain != *phi_[f.head]) continue;
      game.try_insert(f.tail, f.head, id);
    }
    if (game.gather(e.tail, e.head, 4) >= 4) return false;
    auto edges = game.induced_edges(game.reach(e.tail, e.head));
    edges.push_back(e_);
    found_ = make_witness(g_, std::move(edges));
    return true;
  }

  const GainGraph& g_;
  int e_;
  int prefix_end_;
  std::vector<char> allowed_;
  std::vector<std::optional<GroupElement>> phi_;
  std::vector<std::set<GroupElement>> barred_;
  std::optional<Witness> found_;
};

std::optional<Witness> balanced_violation(const GainGraph& g) {
  PebbleGame game(g.n_vertices, 2, 1);
  for (int id = 0; id < g.n_edges(); ++id) {
    const auto& e = g.edges[id];
    if (!e.is_loop()) {
      PebbleGame probe = game;
      int got = probe.gather(e.tail, e.head, 4);
      if (got < 4) {
        // The support of a violator together with reach(u, v) is closed
        // under arcs and holds no free pebble besides those on {u, v}.
        std::vector<char> allowed(g.n_vertices, 1);
        for (int w = 0; w < g.n_vertices; ++w) {
          for (int x : probe.reach(w, w)) {
            if (x != e.tail && x != e.head && probe.pebbles(x) > 0) allowed[w] = 0;
          }
        }
        auto found = BalancedSearch(g, id, id, std::move(allowed)).run();
        if (found) {
          if (!violates(g, found->edges, Condition::balanced_23)) {
            throw Error(ErrorCode::InternalError, "balanced search produced an invalid witness");
          }
          return found;
        }
      }
    }
    game.try_insert(e.tail, e.head, id);
  }
  return std::nullopt;
}

}  // namespace

bool count_ok(const GainGraph& g, std::span<const int> subset, SparsityParams params) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "count_ok needs a nonempty subset");
  auto support = support_of(g, subset);
  return static_cast<long>(subset.size()) <= params.k * static_cast<long>(support.size()) - params.l;
}

bool violates(const GainGraph& g, std::span<const int> edges, Condition c) {
  if (edges.empty()) return false;
  auto support = support_of(g, edges);
  return violates_counts(static_cast<int>(edges.size()), static_cast<int>(support.size()), classify(g, edges), c);
}

SparsityVerdict brute_force_verdict(const GainGraph& g, int max_edges) {
  const int m = g.n_edges();
  if (m > max_edges || m > 62) {
    throw Error(ErrorCode::TooLarge, "brute force limited to " + std::to_string(max_edges) + " edges");
  }
  std::vector<std::uint64_t> best(3, 0);
  std::vector<char> have(3, 0);
  auto better = [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    std::uint64_t d = a ^ b;
    return d != 0 && (a & (d & (~d + 1))) != 0;
  };
  std::vector<int> touch(g.n_vertices, 0);
  std::vector<int> ids;
  int supp = 0;
  std::function<void(int, std::uint64_t)> dfs = [&](int i, std::uint64_t mask) {
    if (i == m) {
      if (mask == 0) return;
      int cnt = static_cast<int>(ids.size());
      if (cnt < 2 * supp - 2) return;
      GainClass cls = cnt > 2 * supp - 1 ? GainClass::mixed : classify(g, ids);
      for (int c = 0; c < 3; ++c) {
        if (!violates_counts(cnt, supp, cls, static_cast<Condition>(c))) continue;
        if (!have[c] || better(mask, best[c])) {
          best[c] = mask;
          have[c] = 1;
        }
      }
      return;
    }
    dfs(i + 1, mask);
    const auto& e = g.edges[i];
    if (touch[e.tail]++ == 0) ++supp;
    if (touch[e.head]++ == 0) ++supp;
    ids.push_back(i);
    dfs(i + 1, mask | (std::uint64_t{1} << i));
    ids.pop_back();
    if (--touch[e.head] == 0) --supp;
    if (--touch[e.tail] == 0) --supp;
  };
  dfs(0, 0);
  for (int c = 0; c < 3; ++c) {
    if (!have[c]) continue;
    std::vector<int> edges;
    for (int i = 0; i < m; ++i) {
      if (best[c] >> i & 1) edges.push_back(i);
    }
    return violation(static_cast<Condition>(c), make_witness(g, std::move(edges)));
  }
  return independent_verdict(g);
}

SparsityVerdict fast_verdict(const GainGraph& g) {
  if (auto w = count_violation(g)) return violation(Condition::count_21, std::move(*w));
  if (auto w = periodic_violation(g)) return violation(Condition::purely_periodic_22, std::move(*w));
  if (auto w = balanced_violation(g)) return violation(Condition::balanced_23, std::move(*w));
  return independent_verdict(g);
}

bool is_independent(const GainGraph& g) { return fast_verdict(g).independent; }

}  // namespace wallrig
