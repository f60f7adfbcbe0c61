#include "wallrig/gain_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "json_io.hpp"

namespace wallrig {

int GainGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.tail == v) ++d;
    if (e.head == v) ++d;
  }
  return d;
}

std::vector<int> GainGraph::all_edge_ids() const {
  std::vector<int> ids(edges.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

bool same_edge_orbit(const GainEdge& a, const GainEdge& b) {
  return a == b || a == b.reversed();
}

std::optional<ValidationIssue> find_violation(const GainGraph& g) {
  if (g.n_vertices < 1) {
    return ValidationIssue{ErrorCode::InvalidArgument, -1, -1, "graph needs at least one vertex"};
  }
  for (int i = 0; i < g.n_edges(); ++i) {
    const auto& e = g.edges[i];
    std::string tag = "edge " + std::to_string(i);
    if (e.tail < 0 || e.tail >= g.n_vertices || e.head < 0 || e.head >= g.n_vertices) {
      return ValidationIssue{ErrorCode::BadVertexIndex, i, -1, tag + " has an endpoint out of range"};
    }
    if (!member_of(e.gain, g.group)) {
      return ValidationIssue{ErrorCode::GainOutsideGroup, i, -1,
                             tag + " gain " + format(e.gain) + " is not in " + std::string(to_string(g.group))};
    }
    if (e.is_loop() && e.gain.is_identity()) {
      return ValidationIssue{ErrorCode::IdentityLoop, i, -1, tag + " is a loop with identity gain"};
    }
    for (int j = 0; j < i; ++j) {
      if (same_edge_orbit(g.edges[j], e)) {
        return ValidationIssue{ErrorCode::DuplicateParallelGain, i, j,
                               tag + " duplicates edge " + std::to_string(j)};
      }
    }
  }
  return std::nullopt;
}

void validate(const GainGraph& g) {
  if (auto issue = find_violation(g)) throw Error(issue->code, issue->message);
}

GroupElement net_gain(const GainGraph& g, std::span<const WalkStep> walk) {
  GroupElement acc;
  int at = -1;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto& step = walk[i];
    if (step.edge < 0 || step.edge >= g.n_edges()) {
      throw Error(ErrorCode::MissingEdge, "walk step " + std::to_string(i) + " names no edge");
    }
    const auto& e = g.edges[step.edge];
    int from = step.forward ? e.tail : e.head;
    int to = step.forward ? e.head : e.tail;
    if (i > 0 && from != at) {
      throw Error(ErrorCode::DisconnectedWalk, "walk breaks before step " + std::to_string(i));
    }
    acc = acc * (step.forward ? e.gain : inverse(e.gain));
    at = to;
  }
  return acc;
}

std::string_view to_string(GainClass c) {
  switch (c) {
    case GainClass::balanced: return "balanced";
    case GainClass::purely_periodic: return "purely_periodic";
    case GainClass::mixed: return "mixed";
  }
  return "?";
}

namespace {

// Union-find with group-valued potentials: pot(x) = pot(parent(x)) * weight(x).
struct GainForest {
  std::vector<int> parent;
  std::vector<GroupElement> weight;

  explicit GainForest(int n) : parent(n), weight(n) { std::iota(parent.begin(), parent.end(), 0); }

  // Returns the root; `pot` receives the potential of x relative to it.
  int find(int x, GroupElement& pot) {
    if (parent[x] == x) {
      pot = GroupElement{};
      return x;
    }
    GroupElement up;
    int r = find(parent[x], up);
    weight[x] = up * weight[x];
    parent[x] = r;
    pot = weight[x];
    return r;
  }
};

GainClass class_of(const GroupElement& gen) {
  if (gen.is_identity()) return GainClass::balanced;
  return gen.refl ? GainClass::mixed : GainClass::purely_periodic;
}

}  // namespace

GainSpaceReport classify_gain_space(const GainGraph& g, std::span<const int> subset) {
  GainForest uf(g.n_vertices);
  std::vector<char> touched(g.n_vertices, 0);
  std::vector<std::pair<int, GroupElement>> gens;  // (vertex on cycle, generator)
  for (int id : subset) {
    const auto& e = g.edges.at(id);
    touched[e.tail] = touched[e.head] = 1;
    GroupElement dt, dh;
    int rt = uf.find(e.tail, dt);
    int rh = uf.find(e.head, dh);
    GroupElement d = dt * e.gain * inverse(dh);
    if (rt != rh) {
      uf.parent[rh] = rt;
      uf.weight[rh] = d;
    } else {
      gens.emplace_back(e.tail, d);
    }
  }
  GainSpaceReport report;
  std::map<int, int> slot;  // root -> component index
  for (int v = 0; v < g.n_vertices; ++v) {
    if (!touched[v]) continue;
    GroupElement pot;
    int r = uf.find(v, pot);
    auto [it, fresh] = slot.emplace(r, static_cast<int>(report.components.size()));
    if (fresh) report.components.emplace_back();
    report.components[it->second].vertices.push_back(v);
  }
  for (const auto& [v, gen] : gens) {
    GroupElement pot;
    auto& comp = report.components[slot.at(uf.find(v, pot))];
    comp.generators.push_back(gen);
    comp.cls = worst(comp.cls, class_of(gen));
  }
  for (const auto& comp : report.components) report.overall = worst(report.overall, comp.cls);
  return report;
}

GainClass classify(const GainGraph& g, std::span<const int> subset) {
  GainForest uf(g.n_vertices);
  GainClass cls = GainClass::balanced;
  for (int id : subset) {
    const auto& e = g.edges.at(id);
    GroupElement dt, dh;
    int rt = uf.find(e.tail, dt);
    int rh = uf.find(e.head, dh);
    GroupElement d = dt * e.gain * inverse(dh);
    if (rt != rh) {
      uf.parent[rh] = rt;
      uf.weight[rh] = d;
    } else {
      cls = worst(cls, class_of(d));
      if (cls == GainClass::mixed) break;
    }
  }
  return cls;
}

GainGraph switch_at(const GainGraph& g, int v, const GroupElement& gamma) {
  if (!member_of(gamma, g.group)) {
    throw Error(ErrorCode::GainOutsideGroup, "switching element " + format(gamma) + " is not in the group");
  }
  if (v < 0 || v >= g.n_vertices) throw Error(ErrorCode::BadVertexIndex, "switch vertex out of range");
  GainGraph out = g;
  for (auto& e : out.edges) {
    if (e.tail == v && e.head == v) {
      e.gain = conjugate(gamma, e.gain);
    } else if (e.tail == v) {
      e.gain = gamma * e.gain;
    } else if (e.head == v) {
      e.gain = e.gain * inverse(gamma);
    }
  }
  return out;
}

std::vector<int> spanning_forest(const GainGraph& g, std::span<const int> order) {
  std::vector<int> ids = order.empty() ? g.all_edge_ids() : std::vector<int>(order.begin(), order.end());
  std::vector<int> comp(g.n_vertices);
  std::iota(comp.begin(), comp.end(), 0);
  auto root = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::vector<int> forest;
  for (int id : ids) {
    const auto& e = g.edges.at(id);
    int a = root(e.tail), b = root(e.head);
    if (a == b) continue;
    comp[b] = a;
    forest.push_back(id);
  }
  return forest;
}

NormalizedGraph normalize_tree(const GainGraph& g, std::span<const int> forest) {
  // phi(w) = net gain of the forest path from the component root to w; the
  // switch at w by phi(w) turns every forest edge into the identity.
  std::vector<std::vector<std::pair<int, int>>> adj(g.n_vertices);  // (edge, other end)
  for (int id : forest) {
    const auto& e = g.edges.at(id);
    if (e.is_loop()) throw Error(ErrorCode::InvalidArgument, "forest contains a loop");
    adj[e.tail].emplace_back(id, e.head);
    adj[e.head].emplace_back(id, e.tail);
  }
  std::vector<std::optional<GroupElement>> phi(g.n_vertices);
  std::size_t used = 0;
  for (int r = 0; r < g.n_vertices; ++r) {
    if (phi[r]) continue;
    phi[r] = GroupElement{};
    std::vector<int> stack{r};
    std::vector<int> via(g.n_vertices, -1);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [id, y] : adj[x]) {
        if (id == via[x]) continue;
        if (phi[y]) throw Error(ErrorCode::InvalidArgument, "forest contains a cycle");
        const auto& e = g.edges[id];
        phi[y] = *phi[x] * (e.tail == x ? e.gain : inverse(e.gain));
        via[y] = id;
        ++used;
        stack.push_back(y);
      }
    }
  }
  if (used != forest.size()) throw Error(ErrorCode::InvalidArgument, "forest repeats an edge");
  NormalizedGraph out{g, {}};
  for (int w = 0; w < g.n_vertices; ++w) {
    if (phi[w]->is_identity()) continue;
    out.graph = switch_at(out.graph, w, *phi[w]);
    out.switches.emplace_back(w, *phi[w]);
  }
  return out;
}

DerivedPatch derived_patch(const GainGraph& g, const Configuration& c,
                           std::span<const GroupElement> window) {
  if (static_cast<int>(c.size()) != g.n_vertices) {
    throw Error(ErrorCode::SizeMismatch, "configuration length differs from vertex count");
  }
  std::vector<GroupElement> w;
  for (const auto& x : window) {
    if (std::find(w.begin(), w.end(), x) == w.end()) w.push_back(x);
  }
  const int k = static_cast<int>(w.size());
  auto slot = [&](const GroupElement& x) -> int {
    auto it = std::find(w.begin(), w.end(), x);
    return it == w.end() ? -1 : static_cast<int>(it - w.begin());
  };
  DerivedPatch patch;
  for (int v = 0; v < g.n_vertices; ++v) {
    for (const auto& gamma : w) patch.vertices.push_back({v, gamma, apply_point(gamma, c[v])});
  }
  std::vector<std::tuple<int, int, int>> keys;
  for (int id = 0; id < g.n_edges(); ++id) {
    const auto& e = g.edges[id];
    for (int j = 0; j < k; ++j) {
      int partner = slot(w[j] * e.gain);
      if (partner < 0) continue;
      int a = e.tail * k + j, b = e.head * k + partner;
      keys.emplace_back(std::min(a, b), std::max(a, b), id);
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (auto [a, b, id] : keys) patch.bars.push_back({id, a, b});
  return patch;
}

GainGraph single_loop_graph(const GroupElement& loop_gain, GroupTag tag) {
  return GainGraph{tag, 1, {{0, 0, loop_gain}}};
}

// ---- JSON ----------------------------------------------------------------

namespace detail {

void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing key '") + key + "'");
  return *it;
}

int int_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_integer()) parse_fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

ordered_json gain_to_json(const GroupElement& a) {
  return ordered_json::array({a.tx, a.ty, a.refl ? "s" : "e"});
}

GroupElement gain_from_json(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) parse_fail(where, "gain must be [tx, ty, \"s\"|\"e\"]");
  if (!j[0].is_number_integer() || !j[1].is_number_integer()) parse_fail(where, "gain translation must be integers");
  if (!j[2].is_string()) parse_fail(where, "gain reflection flag must be \"s\" or \"e\"");
  auto flag = j[2].get<std::string>();
  if (flag != "s" && flag != "e") parse_fail(where, "gain reflection flag must be \"s\" or \"e\"");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), flag == "s"};
}

ordered_json graph_to_json(const GainGraph& g) {
  ordered_json j;
  j["group"] = std::string(to_string(g.group));
  j["vertices"] = g.n_vertices;
  j["edges"] = ordered_json::array();
  for (const auto& e : g.edges) {
    j["edges"].push_back({{"tail", e.tail}, {"head", e.head}, {"gain", gain_to_json(e.gain)}});
  }
  return j;
}

GainGraph graph_from_json(const ordered_json& j, const std::string& where) {
  GainGraph g;
  const auto& group = field(j, "group", where);
  if (!group.is_string()) parse_fail(where + ".group", "expected a string");
  try {
    g.group = parse_group_tag(group.get<std::string>());
  } catch (const Error& e) {
    parse_fail(where + ".group", e.what());
  }
  g.n_vertices = int_field(j, "vertices", where);
  const auto& edges = field(j, "edges", where);
  if (!edges.is_array()) parse_fail(where + ".edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string at = where + ".edges[" + std::to_string(i) + "]";
    g.edges.push_back({int_field(edges[i], "tail", at), int_field(edges[i], "head", at),
                       gain_from_json(field(edges[i], "gain", at), at + ".gain")});
  }
  return g;
}

std::string dump_graph(const GainGraph& g, int indent) {
  std::string pad(indent, ' ');
  std::ostringstream os;
  os << "{\n"
     << pad << "  \"group\": \"" << to_string(g.group) << "\",\n"
     << pad << "  \"vertices\": " << g.n_vertices << ",\n"
     << pad << "  \"edges\": [";
  for (int i = 0; i < g.n_edges(); ++i) {
    const auto& e = g.edges[i];
    os << (i ? ",\n" : "\n") << pad << "    {\"tail\": " << e.tail << ", \"head\": " << e.head
       << ", \"gain\": [" << e.gain.tx << ", " << e.gain.ty << ", \"" << (e.gain.refl ? 's' : 'e') << "\"]}";
  }
  os << (g.edges.empty() ? "]\n" : "\n" + pad + "  ]\n") << pad << "}";
  return os.str();
}

}  // namespace detail

std::string to_json(const GainGraph& g) { return detail::dump_graph(g, 0) + "\n"; }

GainGraph parse_gain_graph(std::string_view text) {
  detail::ordered_json j;
  try {
    j = detail::ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("byte ") + std::to_string(e.byte) + ": malformed JSON");
  }
  return detail::graph_from_json(j, "$");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  // Write to a sibling temp file and rename so readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

GainGraph read_gain_graph(const std::filesystem::path& path) {
  try {
    return parse_gain_graph(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    throw;
  }
}

}  // namespace wallrig
