#include "wallrig/henneberg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "wallrig/canonical.hpp"
#include "wallrig/sparsity.hpp"

namespace wallrig {

std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::zero_ext: return "zero_ext";
    case MoveKind::one_ext: return "one_ext";
    case MoveKind::loop_one_ext: return "loop_one_ext";
  }
  return "?";
}

MoveKind kind_of(const Move& m) { return static_cast<MoveKind>(m.index()); }

namespace {

// A new edge at v0 read as (v0, other; gain); other < 0 marks a loop.
struct Role {
  int other;
  GroupElement gain;
};

void check_vertex(const GainGraph& g, int v, const char* name) {
  if (v < 0 || v >= g.n_vertices) {
    throw Error(ErrorCode::BadVertexIndex, std::string(name) + " = " + std::to_string(v) + " is not a vertex");
  }
}

GainGraph insert_vertex(const GainGraph& g, int removed, const std::vector<Role>& roles, const Placement& pl) {
  const int p = pl.vertex < 0 ? g.n_vertices : pl.vertex;
  if (p > g.n_vertices) throw Error(ErrorCode::InvalidArgument, "placement vertex out of range");
  if (!pl.flipped.empty() && pl.flipped.size() != roles.size()) {
    throw Error(ErrorCode::InvalidArgument, "placement flip list has the wrong length");
  }
  auto shift = [p](int x) { return x >= p ? x + 1 : x; };

  std::vector<GainEdge> old;
  for (int id = 0; id < g.n_edges(); ++id) {
    if (id == removed) continue;
    const auto& e = g.edges[id];
    old.push_back({shift(e.tail), shift(e.head), e.gain});
  }
  std::vector<GainEdge> fresh;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    int other = roles[i].other < 0 ? p : shift(roles[i].other);
    bool flip = !pl.flipped.empty() && pl.flipped[i];
    fresh.push_back(flip ? GainEdge{other, p, inverse(roles[i].gain)} : GainEdge{p, other, roles[i].gain});
  }

  GainGraph out{g.group, g.n_vertices + 1, {}};
  const std::size_t total = old.size() + fresh.size();
  if (pl.slots.empty()) {
    out.edges = std::move(old);
    out.edges.insert(out.edges.end(), fresh.begin(), fresh.end());
  } else {
    if (pl.slots.size() != fresh.size()) throw Error(ErrorCode::InvalidArgument, "placement slot list has the wrong length");
    std::vector<int> owner(total, -1);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      int s = pl.slots[i];
      if (s < 0 || static_cast<std::size_t>(s) >= total || owner[s] >= 0) {
        throw Error(ErrorCode::InvalidArgument, "placement slots must be distinct positions in the new edge list");
      }
      owner[s] = static_cast<int>(i);
    }
    std::size_t next_old = 0;
    for (std::size_t s = 0; s < total; ++s) {
      out.edges.push_back(owner[s] >= 0 ? fresh[owner[s]] : old[next_old++]);
    }
  }
  validate(out);
  return out;
}

// Incident edge of v0 normalized to leave v0.
struct Incident {
  int id;
  int other;  // -1 for a loop
  GroupElement gain;
  bool flipped;
};

std::vector<Incident> incident_edges(const GainGraph& g, int v0) {
  std::vector<Incident> out;
  for (int id = 0; id < g.n_edges(); ++id) {
    const auto& e = g.edges[id];
    if (e.tail == v0 && e.head == v0) {
      out.push_back({id, -1, e.gain, false});
    } else if (e.tail == v0) {
      out.push_back({id, e.head, e.gain, false});
    } else if (e.head == v0) {
      out.push_back({id, e.tail, inverse(e.gain), true});
    }
  }
  return out;
}

GainGraph delete_vertex(const GainGraph& g, int v0) {
  GainGraph out{g.group, g.n_vertices - 1, {}};
  auto down = [v0](int x) { return x > v0 ? x - 1 : x; };
  for (const auto& e : g.edges) {
    if (e.tail == v0 || e.head == v0) continue;
    out.edges.push_back({down(e.tail), down(e.head), e.gain});
  }
  return out;
}

Placement placement_of(int v0, const std::vector<Incident>& roles) {
  Placement pl;
  pl.vertex = v0;
  for (const auto& r : roles) {
    pl.slots.push_back(r.id);
    pl.flipped.push_back(r.flipped);
  }
  return pl;
}

std::string describe(const GainGraph& g) {
  std::ostringstream os;
  os << "n=" << g.n_vertices << " edges:";
  for (const auto& e : g.edges) os << " (" << e.tail << ',' << e.head << ';' << format(e.gain) << ')';
  return os.str();
}

}  // namespace

GainGraph apply_zero_extension(const GainGraph& g, int v1, int v2, const GroupElement& g1, const GroupElement& g2) {
  return apply_move(g, ZeroExtension{v1, v2, g1, g2, {}});
}

GainGraph apply_one_extension(const GainGraph& g, int edge, int v3, const GroupElement& g1, const GroupElement& g3) {
  if (edge < 0 || edge >= g.n_edges()) throw Error(ErrorCode::MissingEdge, "no edge " + std::to_string(edge));
  return apply_move(g, OneExtension{edge, g.edges[edge], v3, g1, g3, {}});
}

GainGraph apply_loop_one_extension(const GainGraph& g, int v1, const GroupElement& loop_gain,
                                   const GroupElement& edge_gain) {
  return apply_move(g, LoopOneExtension{v1, loop_gain, edge_gain, {}});
}

GainGraph apply_move(const GainGraph& g, const Move& m) {
  if (const auto* z = std::get_if<ZeroExtension>(&m)) {
    check_vertex(g, z->v1, "v1");
    check_vertex(g, z->v2, "v2");
    return insert_vertex(g, -1, {{z->v1, z->g1}, {z->v2, z->g2}}, z->placement);
  }
  if (const auto* o = std::get_if<OneExtension>(&m)) {
    if (o->edge < 0 || o->edge >= g.n_edges()) throw Error(ErrorCode::MissingEdge, "no edge " + std::to_string(o->edge));
    if (!same_edge_orbit(g.edges[o->edge], o->removed)) {
      throw Error(ErrorCode::MissingEdge, "edge " + std::to_string(o->edge) + " does not match the removed edge");
    }
    check_vertex(g, o->v3, "v3");
    return insert_vertex(g, o->edge,
                         {{o->removed.tail, o->g1}, {o->removed.head, o->g2()}, {o->v3, o->g3}}, o->placement);
  }
  const auto& l = std::get<LoopOneExtension>(m);
  if (!l.loop_gain.refl) {
    throw Error(ErrorCode::ReflectionRequired, "loop gain " + format(l.loop_gain) + " has no reflection component");
  }
  check_vertex(g, l.v1, "v1");
  return insert_vertex(g, -1, {{-1, l.loop_gain}, {l.v1, l.edge_gain}}, l.placement);
}

Reduction find_reduction(const GainGraph& g, const ReductionOptions& opts) {
  validate(g);
  if (g.n_vertices < 2) throw Error(ErrorCode::InvalidArgument, "reduction needs at least two vertices");
  if (!fast_verdict(g).tight) throw Error(ErrorCode::NotTight, "graph is not tight");

  int v0 = -1, best_deg = 4;
  for (int v = 0; v < g.n_vertices; ++v) {
    int d = g.degree(v);
    if (d >= 2 && d <= best_deg) {
      best_deg = d;
      v0 = v;
    }
  }
  if (v0 < 0) throw Error(ErrorCode::NoReductionFound, "no vertex of degree 2 or 3 in " + describe(g));

  auto inc = incident_edges(g, v0);
  const GainGraph base = delete_vertex(g, v0);
  auto down = [v0](int x) { return x > v0 ? x - 1 : x; };

  auto confirm = [&](Reduction r) {
    if (r.reduced.n_edges() <= opts.brute_force_max_edges && !brute_force_verdict(r.reduced).tight) {
      throw Error(ErrorCode::InternalError, "engines disagree on reduced graph " + describe(r.reduced));
    }
    if (apply_move(r.reduced, r.move) != g) {
      throw Error(ErrorCode::InternalError, "reduction does not invert to the input " + describe(g));
    }
    return r;
  };

  if (best_deg == 2 && inc.size() == 2 && inc[0].other >= 0 && inc[1].other >= 0) {
    Move mv = ZeroExtension{down(inc[0].other), down(inc[1].other), inc[0].gain, inc[1].gain, placement_of(v0, inc)};
    if (fast_verdict(base).tight) return confirm({mv, base});
    throw Error(ErrorCode::NoReductionFound, "0-reduction not tight at vertex " + std::to_string(v0) + " of " + describe(g));
  }

  if (best_deg == 3 && inc.size() == 2) {
    auto loop = inc[0].other < 0 ? inc[0] : inc[1];
    auto edge = inc[0].other < 0 ? inc[1] : inc[0];
    if (loop.other < 0 && edge.other >= 0 && loop.gain.refl) {
      Move mv = LoopOneExtension{down(edge.other), loop.gain, edge.gain, placement_of(v0, {loop, edge})};
      if (fast_verdict(base).tight) return confirm({mv, base});
    }
    throw Error(ErrorCode::NoReductionFound, "loop-1-reduction fails at vertex " + std::to_string(v0) + " of " + describe(g));
  }

  if (inc.size() != 3 || std::any_of(inc.begin(), inc.end(), [](const Incident& x) { return x.other < 0; })) {
    throw Error(ErrorCode::NoReductionFound, "unexpected neighbourhood at vertex " + std::to_string(v0) + " of " + describe(g));
  }

  // Index triples (i, j, k): new edge joins the ends of roles i and j.
  std::vector<std::array<int, 3>> order;
  const int a = inc[0].other, b = inc[1].other, c = inc[2].other;
  if (a == b && b == c) {
    order = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  } else if (a != b && b != c && a != c) {
    order = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  } else {
    int single = (a == b) ? 2 : (a == c ? 1 : 0);
    int p = (single == 0) ? 1 : 0;
    int q = 3 - single - p;
    order = {{single, p, q}, {single, q, p}, {p, q, single}};
  }
  std::vector<std::string> tried;
  for (const auto& [i, j, k] : order) {
    GainEdge e{down(inc[i].other), down(inc[j].other), inverse(inc[i].gain) * inc[j].gain};
    GainGraph cand = base;
    cand.edges.push_back(e);
    tried.push_back("(" + std::to_string(e.tail) + "," + std::to_string(e.head) + ";" + format(e.gain) + ")");
    if (find_violation(cand) || !fast_verdict(cand).tight) continue;
    Move mv = OneExtension{cand.n_edges() - 1, e, down(inc[k].other), inc[i].gain, inc[k].gain,
                           placement_of(v0, {inc[i], inc[j], inc[k]})};
    return confirm({mv, cand});
  }
  std::string all;
  for (const auto& t : tried) all += " " + t;
  throw Error(ErrorCode::NoReductionFound,
              "no tight 1-reduction at vertex " + std::to_string(v0) + " (tried" + all + ") of " + describe(g));
}

Certificate certify(const GainGraph& g, const ReductionOptions& opts) {
  validate(g);
  if (!fast_verdict(g).tight) throw Error(ErrorCode::NotTight, "graph is not tight");
  std::vector<Move> rev;
  GainGraph cur = g;
  while (cur.n_vertices > 1) {
    auto r = find_reduction(cur, opts);
    rev.push_back(std::move(r.move));
    cur = std::move(r.reduced);
  }
  if (cur.n_edges() != 1 || !cur.edges[0].is_loop() || !cur.edges[0].gain.refl) {
    throw Error(ErrorCode::InternalError, "reduction chain ended at " + describe(cur));
  }
  return Certificate{cur, {rev.rbegin(), rev.rend()}};
}

GainGraph replay(const Certificate& c) {
  const auto& b = c.base;
  if (b.n_vertices != 1 || b.n_edges() != 1 || !b.edges[0].is_loop() || !b.edges[0].gain.refl ||
      find_violation(b)) {
    throw Error(ErrorCode::InvalidBase, "base must be one vertex with a single reflective loop");
  }
  GainGraph g = b;
  for (const auto& m : c.moves) g = apply_move(g, m);
  return g;
}

// ---- certificate JSON ----------------------------------------------------------

namespace {

using detail::ordered_json;

ordered_json placement_to_json(const Placement& p) {
  ordered_json j;
  j["vertex"] = p.vertex;
  j["slots"] = p.slots;
  j["flipped"] = ordered_json::array();
  for (bool f : p.flipped) j["flipped"].push_back(f);
  return j;
}

Placement placement_from_json(const ordered_json& j, const std::string& where) {
  Placement p;
  p.vertex = detail::int_field(j, "vertex", where);
  const auto& slots = detail::field(j, "slots", where);
  const auto& flipped = detail::field(j, "flipped", where);
  if (!slots.is_array() || !flipped.is_array()) detail::parse_fail(where, "slots and flipped must be arrays");
  for (const auto& s : slots) {
    if (!s.is_number_integer()) detail::parse_fail(where + ".slots", "expected integers");
    p.slots.push_back(s.get<int>());
  }
  for (const auto& f : flipped) {
    if (!f.is_boolean()) detail::parse_fail(where + ".flipped", "expected booleans");
    p.flipped.push_back(f.get<bool>());
  }
  return p;
}

ordered_json move_to_json(const Move& m) {
  ordered_json j;
  j["kind"] = std::string(to_string(kind_of(m)));
  if (const auto* z = std::get_if<ZeroExtension>(&m)) {
    j["v1"] = z->v1;
    j["v2"] = z->v2;
    j["g1"] = detail::gain_to_json(z->g1);
    j["g2"] = detail::gain_to_json(z->g2);
    j["placement"] = placement_to_json(z->placement);
  } else if (const auto* o = std::get_if<OneExtension>(&m)) {
    j["edge"] = o->edge;
    j["removed"] = {{"tail", o->removed.tail}, {"head", o->removed.head}, {"gain", detail::gain_to_json(o->removed.gain)}};
    j["v3"] = o->v3;
    j["g1"] = detail::gain_to_json(o->g1);
    j["g3"] = detail::gain_to_json(o->g3);
    j["placement"] = placement_to_json(o->placement);
  } else {
    const auto& l = std::get<LoopOneExtension>(m);
    j["v1"] = l.v1;
    j["loop_gain"] = detail::gain_to_json(l.loop_gain);
    j["edge_gain"] = detail::gain_to_json(l.edge_gain);
    j["placement"] = placement_to_json(l.placement);
  }
  return j;
}

Move move_from_json(const ordered_json& j, const std::string& where) {
  const auto& kind = detail::field(j, "kind", where);
  if (!kind.is_string()) detail::parse_fail(where + ".kind", "expected a string");
  auto k = kind.get<std::string>();
  auto gain = [&](const char* key) { return detail::gain_from_json(detail::field(j, key, where), where + "." + key); };
  auto place = [&] { return placement_from_json(detail::field(j, "placement", where), where + ".placement"); };
  if (k == "zero_ext") {
    return ZeroExtension{detail::int_field(j, "v1", where), detail::int_field(j, "v2", where), gain("g1"), gain("g2"), place()};
  }
  if (k == "one_ext") {
    const auto& r = detail::field(j, "removed", where);
    std::string rw = where + ".removed";
    GainEdge removed{detail::int_field(r, "tail", rw), detail::int_field(r, "head", rw),
                     detail::gain_from_json(detail::field(r, "gain", rw), rw + ".gain")};
    return OneExtension{detail::int_field(j, "edge", where), removed, detail::int_field(j, "v3", where), gain("g1"),
                        gain("g3"), place()};
  }
  if (k == "loop_one_ext") {
    return LoopOneExtension{detail::int_field(j, "v1", where), gain("loop_gain"), gain("edge_gain"), place()};
  }
  detail::parse_fail(where + ".kind", "unknown move kind '" + k + "'");
}

constexpr const char* kCertificateFormat = "wallrig-certificate/1";

}  // namespace

std::string to_json(const Certificate& c) {
  std::ostringstream os;
  os << "{\n  \"format\": \"" << kCertificateFormat << "\",\n"
     << "  \"group\": \"" << to_string(c.base.group) << "\",\n"
     << "  \"base\": " << detail::dump_graph(c.base, 2) << ",\n"
     << "  \"moves\": [";
  for (std::size_t i = 0; i < c.moves.size(); ++i) {
    os << (i ? ",\n" : "\n") << "    " << move_to_json(c.moves[i]).dump();
  }
  os << (c.moves.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return os.str();
}

Certificate parse_certificate(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("byte ") + std::to_string(e.byte) + ": malformed JSON");
  }
  const auto& fmt = detail::field(j, "format", "$");
  if (!fmt.is_string() || fmt.get<std::string>() != kCertificateFormat) {
    detail::parse_fail("$.format", std::string("expected \"") + kCertificateFormat + "\"");
  }
  Certificate c;
  c.base = detail::graph_from_json(detail::field(j, "base", "$"), "$.base");
  const auto& group = detail::field(j, "group", "$");
  if (!group.is_string() || group.get<std::string>() != to_string(c.base.group)) {
    detail::parse_fail("$.group", "does not match the base graph");
  }
  const auto& moves = detail::field(j, "moves", "$");
  if (!moves.is_array()) detail::parse_fail("$.moves", "expected an array");
  for (std::size_t i = 0; i < moves.size(); ++i) c.moves.push_back(move_from_json(moves[i], "$.moves[" + std::to_string(i) + "]"));
  return c;
}

// ---- random growth --------------------------------------------------------------

std::vector<GroupElement> gain_window(int bound, GroupTag tag) {
  std::vector<GroupElement> out;
  for (int x = -bound; x <= bound; ++x) {
    for (int y = -bound; y <= bound; ++y) {
      for (bool r : {false, true}) {
        GroupElement a{x, y, r};
        if (member_of(a, tag)) out.push_back(a);
      }
    }
  }
  return out;
}

namespace {

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

std::vector<GroupElement> reflections(const std::vector<GroupElement>& w) {
  std::vector<GroupElement> out;
  std::copy_if(w.begin(), w.end(), std::back_inserter(out), [](const GroupElement& a) { return a.refl; });
  return out;
}

}  // namespace

Move random_move(const GainGraph& g, MoveKind kind, std::mt19937_64& rng, const GrowthOptions& opts) {
  const auto window = gain_window(opts.gain_window, g.group);
  const auto refl = reflections(window);
  const auto n = static_cast<std::uint64_t>(g.n_vertices);
  for (int attempt = 0; attempt < opts.attempt_cap; ++attempt) {
    Move m;
    switch (kind) {
      case MoveKind::zero_ext:
        m = ZeroExtension{static_cast<int>(rng() % n), static_cast<int>(rng() % n), pick(window, rng), pick(window, rng), {}};
        break;
      case MoveKind::one_ext: {
        if (g.edges.empty()) throw Error(ErrorCode::Exhausted, "no edge to split");
        int id = static_cast<int>(rng() % g.edges.size());
        GainEdge removed = (rng() & 1) ? g.edges[id].reversed() : g.edges[id];
        m = OneExtension{id, removed, static_cast<int>(rng() % n), pick(window, rng), pick(window, rng), {}};
        break;
      }
      case MoveKind::loop_one_ext:
        m = LoopOneExtension{static_cast<int>(rng() % n), pick(refl, rng), pick(window, rng), {}};
        break;
    }
    try {
      apply_move(g, m);
      return m;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::Exhausted, "no valid " + std::string(to_string(kind)) + " found");
}

GainGraph random_tight(int n, std::uint64_t seed, GroupTag tag, const GrowthOptions& opts) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::mt19937_64 rng(seed);
  const auto refl = reflections(gain_window(opts.gain_window, tag));
  GainGraph g = single_loop_graph(pick(refl, rng), tag);
  while (g.n_vertices < n) {
    auto kind = static_cast<MoveKind>(rng() % 3);
    g = apply_move(g, random_move(g, kind, rng, opts));
    if (!fast_verdict(g).tight) throw Error(ErrorCode::InternalError, "extension lost tightness: " + describe(g));
  }
  return g;
}

// ---- enumeration ---------------------------------------------------------------------

namespace {

std::vector<GainEdge> enumeration_items(int n, int bound, GroupTag tag) {
  const auto window = gain_window(bound, tag);
  std::vector<GainEdge> items;
  for (int v = 0; v < n; ++v) {
    for (const auto& a : window) {
      if (!a.is_identity() && !(inverse(a) < a)) items.push_back({v, v, a});
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      for (const auto& a : window) items.push_back({u, v, a});
    }
  }
  return items;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<GainGraph> enumerate(int n, int bound, GroupTag tag, const EnumerationOptions& opts, bool tight_only) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "gain bound must be non-negative");
  const auto items = enumeration_items(n, bound, tag);
  const int m = 2 * n - 1;
  double space = binomial(static_cast<int>(items.size()), m);
  if (space > opts.ceiling) {
    std::ostringstream os;
    os << "search space C(" << items.size() << ", " << m << ") = " << space << " exceeds ceiling " << opts.ceiling;
    throw Error(ErrorCode::TooLarge, os.str());
  }
  std::set<std::vector<GainEdge>, bool (*)(const std::vector<GainEdge>&, const std::vector<GainEdge>&)> seen(
      [](const std::vector<GainEdge>& x, const std::vector<GainEdge>& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const GainEdge& p, const GainEdge& q) {
          return std::tie(p.tail, p.head, p.gain) < std::tie(q.tail, q.head, q.gain);
        });
      });
  GainGraph cur{tag, n, {}};
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.n_edges() == m) {
      if (tight_only && !fast_verdict(cur).tight) return;
      seen.insert(canonical_form(cur).edges);
      return;
    }
    for (std::size_t i = from; i + (m - cur.n_edges()) <= items.size(); ++i) {
      cur.edges.push_back(items[i]);
      if (!tight_only || fast_verdict(cur).independent) self(self, i + 1);
      cur.edges.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<GainGraph> out;
  for (const auto& edges : seen) out.push_back(GainGraph{tag, n, edges});
  return out;
}

}  // namespace

std::vector<GainGraph> enumerate_tight(int n, int gain_bound, GroupTag tag, const EnumerationOptions& opts) {
  return enumerate(n, gain_bound, tag, opts, true);
}

std::vector<GainGraph> enumerate_family(int n, int gain_bound, GroupTag tag, const EnumerationOptions& opts) {
  return enumerate(n, gain_bound, tag, opts, false);
}

}  // namespace wallrig
