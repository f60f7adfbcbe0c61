// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Independent checks come from tests/support/oracles.hpp.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wallrig/canonical.hpp"
#include "wallrig/gain_graph.hpp"
#include "wallrig/henneberg.hpp"
#include "wallrig/orbit.hpp"
#include "wallrig/sparsity.hpp"

using namespace wallrig;

namespace {

struct Tally {
  long checked = 0;
  long failures = 0;
  std::string first_failure;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

bool report(int id, const std::string& title, const std::function<Tally()>& body) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  try {
    t = body();
  } catch (const std::exception& e) {
    t.failures++;
    t.first_failure = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = t.failures == 0;
  std::printf("%s  %d %s: %ld checks, %ld failures%s%s (%.1fs)\n", ok ? "PASS" : "FAIL", id, title.c_str(), t.checked,
              t.failures, t.detail.empty() ? "" : ", ", t.detail.c_str(), secs);
  if (!ok) std::printf("      first failure: %s\n", t.first_failure.c_str());
  std::fflush(stdout);
  return ok;
}

std::string show(const GainGraph& g) {
  std::ostringstream os;
  os << to_string(g.group) << " n=" << g.n_vertices << " [";
  for (const auto& e : g.edges) os << " " << e.tail << "-" << e.head << format(e.gain);
  os << " ]";
  return os.str();
}

bool numerically_minimal(const GainGraph& g, std::uint64_t seed) {
  return numeric_rigidity(g, 3, seed, 1'000'000).verdict == RigidityClass::minimally_rigid;
}

// Family of criterion 3: every graph with n <= 2, 2n - 1 edges and
// translation parts bounded by 1, plus random graphs with n <= 4.
std::vector<GainGraph> spanning_family(GroupTag tag, std::uint64_t seed, long* exhaustive_count) {
  std::vector<GainGraph> out;
  for (int n = 1; n <= 2; ++n) {
    auto fam = enumerate_family(n, 1, tag);
    out.insert(out.end(), fam.begin(), fam.end());
  }
  *exhaustive_count = static_cast<long>(out.size());
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 2000; ++i) {
    int n = 1 + static_cast<int>(rng() % 4);
    out.push_back(oracle::random_graph(rng, n, 2 * n - 1, 1 + static_cast<int>(rng() % 2), tag));
  }
  return out;
}

GainGraph random_non_spanning(std::mt19937_64& rng, GroupTag tag) {
  for (;;) {
    int n = 1 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % (2 * n + 2));
    if (m == 2 * n - 1) continue;
    return oracle::random_graph(rng, n, m, 2, tag);
  }
}

Tally verdict_crossval(GroupTag tag, std::uint64_t seed) {
  Tally t;
  long exhaustive = 0, tight = 0;
  auto family = spanning_family(tag, seed, &exhaustive);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& g = family[i];
    bool comb = fast_verdict(g).tight;
    bool num = numerically_minimal(g, trial_seed(seed, static_cast<int>(i)));
    tight += comb;
    t.expect(comb == num, "tight=" + std::to_string(comb) + " numeric=" + std::to_string(num) + " " + show(g));
  }
  t.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(family.size() - exhaustive) + " random, " +
             std::to_string(tight) + " tight";
  return t;
}

Tally oracle_agreement(GroupTag tag, std::uint64_t seed) {
  Tally t;
  long exhaustive = 0;
  auto family = spanning_family(tag, seed, &exhaustive);
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  for (int i = 0; i < 1000; ++i) family.push_back(random_non_spanning(rng, tag));
  for (const auto& g : family) {
    auto fast = fast_verdict(g);
    auto slow = brute_force_verdict(g);
    bool same = fast.tight == slow.tight && fast.failed_condition == slow.failed_condition;
    std::string fc = fast.failed_condition ? std::string(to_string(*fast.failed_condition)) : "none";
    std::string sc = slow.failed_condition ? std::string(to_string(*slow.failed_condition)) : "none";
    t.expect(same, "fast " + fc + " vs brute " + sc + " " + show(g));
  }
  t.detail = std::to_string(family.size()) + " graphs";
  return t;
}

void check_extended(Tally& t, const GainGraph& g, std::uint64_t seed, const std::string& what) {
  bool tight = fast_verdict(g).tight;
  bool brute = g.n_edges() > 24 || brute_force_verdict(g).tight;
  bool num = numerically_minimal(g, seed);
  t.expect(tight && brute && num, what + " tight=" + std::to_string(tight) + " numeric=" + std::to_string(num) + " " +
                                      show(g));
}

// Loop-1-extension adds v' with loop (0, b, s); a 1-extension on that loop
// with v3 = v' then adds three parallel edges v0 -> v' whose gains share the
// horizontal component. Returns the number of instances built.
int triple_parallel(Tally& t, GroupTag tag, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  int built = 0;
  for (int guard = 0; built < count && guard < 100 * count; ++guard) {
    auto base = random_tight(1 + static_cast<int>(rng() % 6), rng(), tag);
    long b = static_cast<long>(rng() % 5) - 2;
    GroupElement loop{0, b, true};
    GroupElement edge = oracle::random_member(rng, 2, tag);
    if (!member_of(loop, tag)) continue;
    int u = static_cast<int>(rng() % base.n_vertices);
    auto mid = apply_loop_one_extension(base, u, loop, edge);
    int vp = base.n_vertices, loop_id = base.n_edges();
    long a = static_cast<long>(rng() % 5) - 2, c = static_cast<long>(rng() % 5) - 2;
    long d3 = c + 1 + static_cast<long>(rng() % 3);
    if (rng() & 1) d3 = c - (d3 - c);
    GroupElement g1{a, c, false}, g3{a, d3, false};
    if (!member_of(g1, tag) || !member_of(g3, tag)) continue;
    auto g = apply_one_extension(mid, loop_id, vp, g1, g3);
    int v0 = g.n_vertices - 1;
    GroupElement g2 = g1 * loop;
    t.expect(g1.tx == g2.tx && g2.tx == g3.tx && c != d3, "triple-parallel shape");
    check_extended(t, g, rng(), "triple-parallel");

    // Special position: v0 and v' at the same nonzero height with different
    // abscissae, everything else random.
    Configuration cfg = random_configuration(g, rng(), 1000);
    mpq_class height(1 + static_cast<long>(rng() % 50));
    cfg[vp] = {cfg[vp].x, height};
    cfg[v0] = {cfg[vp].x + 1 + static_cast<long>(rng() % 50), height};
    int best = 0;
    for (int k = 0; k < 3 && best < 2 * g.n_vertices - 1; ++k) {
      best = std::max(best, rank(build_orbit_matrix(g, cfg)));
      auto fresh = random_configuration(g, rng(), 1000);
      for (int v = 0; v < g.n_vertices; ++v)
        if (v != vp && v != v0) cfg[v] = fresh[v];
    }
    t.expect(best == 2 * g.n_vertices - 1, "collinear configuration rank " + std::to_string(best) + " " + show(g));
    ++built;
  }
  return built;
}

Tally extension_closure(GroupTag tag, std::uint64_t seed, bool with_triple) {
  Tally t;
  std::mt19937_64 rng(seed);
  const MoveKind kinds[] = {MoveKind::zero_ext, MoveKind::one_ext, MoveKind::loop_one_ext};
  for (auto kind : kinds) {
    for (int i = 0; i < 100; ++i) {
      auto g = random_tight(1 + static_cast<int>(rng() % 7), rng(), tag);
      Move m = random_move(g, kind, rng);
      check_extended(t, apply_move(g, m), rng(), std::string(to_string(kind)));
    }
  }
  t.detail = "300 moves";
  if (with_triple) {
    int built = triple_parallel(t, tag, rng(), 25);
    t.expect(built >= 20, "only " + std::to_string(built) + " triple-parallel instances");
    t.detail += ", " + std::to_string(built) + " triple-parallel";
  }
  return t;
}

Tally reduction_totality(GroupTag tag, std::uint64_t seed) {
  Tally t;
  std::vector<GainGraph> graphs;
  for (int n = 1; n <= 2; ++n) {
    auto fam = enumerate_tight(n, 1, tag);
    graphs.insert(graphs.end(), fam.begin(), fam.end());
  }
  long family = static_cast<long>(graphs.size());
  for (int i = 0; i < 200; ++i) graphs.push_back(random_tight(1 + i % 8, trial_seed(seed, i), tag));
  for (const auto& g : graphs) {
    try {
      auto cert = certify(g);
      auto text = to_json(cert);
      auto back = replay(parse_certificate(text));
      t.expect(to_json(back) == to_json(g), "replay differs " + show(g));
      t.expect(static_cast<int>(cert.moves.size()) == g.n_vertices - 1, "certificate length " + show(g));
    } catch (const Error& e) {
      t.expect(false, std::string(e.what()) + " " + show(g));
    }
  }
  t.detail = std::to_string(family) + " family + 200 random";
  return t;
}

// Attaches vertices block..n-1 to a fixed block and tops up to 2n - 1 edges
// with random valid edges. Extra edges only add to the violating block.
GainGraph complete_around(std::mt19937_64& rng, GainGraph g, int n, int extra_edges) {
  int block = g.n_vertices;
  g.n_vertices = n;
  for (int v = block; v < n; ++v) {
    for (;;) {
      g.edges.push_back({v, static_cast<int>(rng() % v), oracle::random_member(rng, 2, g.group)});
      if (!find_violation(g)) break;
      g.edges.pop_back();
    }
  }
  while (g.n_edges() < 2 * n - 1 + extra_edges) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    g.edges.push_back({a, b, oracle::random_member(rng, 2, g.group)});
    if (find_violation(g)) g.edges.pop_back();
  }
  return g;
}

GainGraph overcounted(std::mt19937_64& rng, GroupTag tag) {
  auto g = random_tight(1 + static_cast<int>(rng() % 6), rng(), tag);
  for (;;) {
    int a = static_cast<int>(rng() % g.n_vertices), b = static_cast<int>(rng() % g.n_vertices);
    g.edges.push_back({a, b, oracle::random_member(rng, 2, tag)});
    if (!find_violation(g)) return g;
    g.edges.pop_back();
  }
}

// k vertices, identity-gain path plus k translation edges: 2k - 1 edges on a
// purely periodic block.
GainGraph periodic_block(std::mt19937_64& rng, GroupTag tag, int k) {
  GainGraph g{tag, k, {}};
  for (int v = 1; v < k; ++v) g.edges.push_back({v - 1, v, {}});
  while (g.n_edges() < 2 * k - 1) {
    GroupElement tr;
    do tr = oracle::random_member(rng, 2, tag);
    while (tr.refl || tr.is_identity());
    g.edges.push_back({static_cast<int>(rng() % k), static_cast<int>(rng() % k), tr});
    if (find_violation(g)) g.edges.pop_back();
  }
  return g;
}

// 2k - 2 edges of K_k with gains phi(t)^-1 phi(h): balanced by construction.
GainGraph balanced_block(std::mt19937_64& rng, GroupTag tag, int k) {
  std::vector<GroupElement> phi(k);
  for (auto& p : phi) p = oracle::random_member(rng, 2, tag);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
  std::shuffle(pairs.begin(), pairs.end(), rng);
  GainGraph g{tag, k, {}};
  for (int i = 0; i < 2 * k - 2; ++i) {
    auto [a, b] = pairs[i];
    g.edges.push_back({a, b, inverse(phi[a]) * phi[b]});
  }
  return g;
}

Tally necessity(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const GroupTag tags[] = {GroupTag::pm, GroupTag::cm, GroupTag::pg};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 500; ++i) {
    GroupTag tag = tags[rng() % 3];
    int kind = i % 3;
    GainGraph g;
    Condition expected = Condition::count_21;
    int block_size = 0;
    if (kind == 0) {
      g = overcounted(rng, tag);
    } else if (kind == 1) {
      int k = 1 + static_cast<int>(rng() % 3);
      block_size = 2 * k - 1;
      g = complete_around(rng, periodic_block(rng, tag, k), k + static_cast<int>(rng() % 3), 0);
      expected = Condition::purely_periodic_22;
    } else {
      int k = 4 + static_cast<int>(rng() % 2);
      block_size = 2 * k - 2;
      g = complete_around(rng, balanced_block(rng, tag, k), k + static_cast<int>(rng() % 2), 0);
      expected = Condition::balanced_23;
    }
    ++counts[kind];
    if (kind > 0) {
      // The block occupies the first 2k - 1 (periodic) or 2k - 2 (balanced)
      // edges; confirm its class and count independently.
      int block_edges = 0, block_vertices = 0;
      std::vector<int> block;
      std::vector<char> seen(g.n_vertices, 0);
      for (int id = 0; id < g.n_edges() && id < block_size; ++id) {
        block.push_back(id);
        for (int x : {g.edges[id].tail, g.edges[id].head}) block_vertices += !seen[x]++;
      }
      block_edges = static_cast<int>(block.size());
      auto cls = oracle::cycle_class(g, block);
      int limit = expected == Condition::balanced_23 ? 2 * block_vertices - 3 : 2 * block_vertices - 2;
      bool right_class = expected == Condition::balanced_23 ? cls == GainClass::balanced : cls != GainClass::mixed;
      t.expect(right_class && block_edges > limit, "construction " + show(g));
    }
    auto v = fast_verdict(g);
    t.expect(!v.tight && v.failed_condition.has_value(), "violator reported tight " + show(g));
    auto num = numeric_rigidity(g, 3, rng(), 1'000'000);
    t.expect(num.verdict != RigidityClass::minimally_rigid, "violator numerically minimally rigid " + show(g));
    t.expect(num.rank < g.n_edges(), "rows independent for violator " + show(g));
  }
  t.detail = std::to_string(counts[0]) + " overcount, " + std::to_string(counts[1]) + " periodic, " +
             std::to_string(counts[2]) + " balanced";
  return t;
}

// In pg a reflective loop gain has odd horizontal part, so e1 and e2 = e1 m
// of a 1-extension on a loop always differ in refl and in tx parity.
Tally pg_no_collinear(std::uint64_t seed) {
  Tally t;
  auto window = gain_window(3, GroupTag::pg);
  for (const auto& m : window) {
    if (!m.refl) continue;
    for (const auto& g1 : window) {
      auto g2 = g1 * m;
      t.expect(g1.refl != g2.refl && (g1.tx - g2.tx) % 2 != 0, "pg loop split " + format(g1) + format(m));
    }
  }
  std::mt19937_64 rng(seed);
  int loop_splits = 0;
  for (int i = 0; i < 2000 && loop_splits < 200; ++i) {
    auto g = random_tight(1 + static_cast<int>(rng() % 6), rng(), GroupTag::pg);
    auto move = std::get<OneExtension>(random_move(g, MoveKind::one_ext, rng));
    if (!move.removed.is_loop() || move.v3 != move.removed.tail) continue;
    ++loop_splits;
    auto g2 = move.g2();
    t.expect(g2.refl != move.g1.refl, "pg triple-parallel refl");
    t.expect(!(move.g1.tx == g2.tx && g2.tx == move.g3.tx), "pg triple-parallel shares horizontal gain");
  }
  t.expect(loop_splits > 0, "no pg loop splits sampled");
  t.detail = std::to_string(loop_splits) + " pg loop splits";
  return t;
}

}  // namespace

int main() {
  bool ok = true;
  const std::uint64_t seed = 20240611;

  ok &= report(1, "base case", [] {
    Tally t;
    auto good = single_loop_graph({0, 0, true});
    auto bad = single_loop_graph({0, 1, false});
    t.expect(fast_verdict(good).tight && brute_force_verdict(good).tight, "(0,0,s) not tight");
    auto ng = numeric_rigidity(good);
    t.expect(ng.verdict == RigidityClass::minimally_rigid && ng.rank == 1, "(0,0,s) not minimally rigid with rank 1");
    for (const auto& v : {fast_verdict(bad), brute_force_verdict(bad)}) {
      t.expect(!v.tight && v.failed_condition == Condition::purely_periodic_22, "(0,1,e) verdict");
    }
    auto nb = numeric_rigidity(bad);
    t.expect(nb.verdict == RigidityClass::flexible && nb.rank == 0, "(0,1,e) not flexible with rank 0");
    return t;
  });

  ok &= report(2, "kernel invariant", [&] {
    Tally t;
    std::mt19937_64 rng(seed);
    const GroupTag tags[] = {GroupTag::pm, GroupTag::cm, GroupTag::pg};
    for (int i = 0; i < 500; ++i) {
      int n = 1 + static_cast<int>(rng() % 6);
      auto g = oracle::random_graph(rng, n, 1 + static_cast<int>(rng() % (2 * n + 2)), 3, tags[i % 3]);
      Configuration c;
      for (int v = 0; v < n; ++v)
        c.push_back({oracle::frac(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 9)),
                     oracle::frac(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 9))});
      auto mat = build_orbit_matrix(g, c);
      for (const auto& q : multiply(mat.rows, horizontal_motion(n))) t.expect(q == 0, "nonzero product " + show(g));
    }
    return t;
  });

  ok &= report(3, "tightness iff minimally rigid (pm)", [&] { return verdict_crossval(GroupTag::pm, seed); });
  ok &= report(4, "fast verdict equals brute force (pm)", [&] { return oracle_agreement(GroupTag::pm, seed); });
  ok &= report(5, "extensions preserve minimal rigidity (pm)", [&] { return extension_closure(GroupTag::pm, seed, true); });
  ok &= report(6, "reduction to the base graph (pm)", [&] { return reduction_totality(GroupTag::pm, seed); });
  ok &= report(7, "violators are never minimally rigid", [&] { return necessity(seed); });

  ok &= report(8, "group parametricity (cm, pg)", [&] {
    Tally all;
    for (GroupTag tag : {GroupTag::cm, GroupTag::pg}) {
      for (const auto& part : {verdict_crossval(tag, seed + 1), oracle_agreement(tag, seed + 2),
                               extension_closure(tag, seed + 3, tag == GroupTag::cm),
                               reduction_totality(tag, seed + 4)}) {
        all.checked += part.checked;
        if (part.failures && !all.failures) all.first_failure = std::string(to_string(tag)) + ": " + part.first_failure;
        all.failures += part.failures;
      }
    }
    auto pg = pg_no_collinear(seed + 5);
    all.checked += pg.checked;
    if (pg.failures && !all.failures) all.first_failure = pg.first_failure;
    all.failures += pg.failures;
    all.detail = pg.detail;
    return all;
  });

  return ok ? 0 : 1;
}
