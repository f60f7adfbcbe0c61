#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wallrig/error.hpp"
#include "wallrig/group.hpp"

namespace wallrig {

/// Oriented edge (tail, head; gain). Its id is its index in GainGraph::edges.
/// Reversing the orientation and inverting the gain denotes the same edge.
struct GainEdge {
  int tail = 0;
  int head = 0;
  GroupElement gain;

  bool is_loop() const { return tail == head; }
  GainEdge reversed() const { return {head, tail, inverse(gain)}; }

  friend bool operator==(const GainEdge&, const GainEdge&) = default;
};

/// Gain graph (G, m) over one of the groups pm, cm, pg. Plain value type;
/// use validate() to check the invariants after building one by hand.
struct GainGraph {
  GroupTag group = GroupTag::pm;
  int n_vertices = 0;
  std::vector<GainEdge> edges;

  int n_edges() const { return static_cast<int>(edges.size()); }
  /// Loops count twice.
  int degree(int v) const;
  std::vector<int> all_edge_ids() const;

  friend bool operator==(const GainGraph&, const GainGraph&) = default;
};

using Configuration = std::vector<Point>;

struct ValidationIssue {
  ErrorCode code;
  int edge = -1;
  int other_edge = -1;  // the earlier conflicting edge, if any
  std::string message;
};

/// First invariant violation in edge order, or nullopt when valid.
std::optional<ValidationIssue> find_violation(const GainGraph& g);

/// Throws Error with the code of the first violation.
void validate(const GainGraph& g);

/// True when the two edges denote the same edge orbit: equal after aligning
/// orientation, or (for loops at one vertex) gains g and g^-1.
bool same_edge_orbit(const GainEdge& a, const GainEdge& b);

struct WalkStep {
  int edge = 0;
  bool forward = true;
};

/// Ordered product of the gains along the walk, inverted on backward steps.
GroupElement net_gain(const GainGraph& g, std::span<const WalkStep> walk);

enum class GainClass { balanced, purely_periodic, mixed };

std::string_view to_string(GainClass c);

/// balanced < purely_periodic < mixed.
inline GainClass worst(GainClass a, GainClass b) { return a < b ? b : a; }

struct ComponentClass {
  std::vector<int> vertices;  // ascending
  GainClass cls = GainClass::balanced;
  std::vector<GroupElement> generators;  // fundamental cycle net gains
};

struct GainSpaceReport {
  GainClass overall = GainClass::balanced;
  std::vector<ComponentClass> components;  // ordered by smallest vertex
};

/// Classifies the gain space of each connected component of the sub-multigraph
/// spanned by `subset`. The spanning forest is grown greedily in the order the
/// ids are listed, so permuting the subset selects a different forest. Only
/// vertices touched by the subset form components.
GainSpaceReport classify_gain_space(const GainGraph& g, std::span<const int> subset);

/// Overall class only, without building the report.
GainClass classify(const GainGraph& g, std::span<const int> subset);

/// Switching at v by gamma: loops become gamma m gamma^-1, edges leaving v
/// become gamma m, edges entering v become m gamma^-1.
GainGraph switch_at(const GainGraph& g, int v, const GroupElement& gamma);

/// Greedy spanning forest over all edges taken in `order` (all ids if empty).
std::vector<int> spanning_forest(const GainGraph& g, std::span<const int> order = {});

struct NormalizedGraph {
  GainGraph graph;
  std::vector<std::pair<int, GroupElement>> switches;  // applied in order
};

/// Switches so that every edge of `forest` carries the identity gain.
/// Throws InvalidArgument if `forest` contains a loop or a cycle.
NormalizedGraph normalize_tree(const GainGraph& g, std::span<const int> forest);

struct PatchVertex {
  int vertex = 0;
  GroupElement copy;
  Point position;
};

struct PatchBar {
  int edge = 0;
  int a = 0;  // indices into DerivedPatch::vertices
  int b = 0;
};

struct DerivedPatch {
  std::vector<PatchVertex> vertices;  // vertex-major, window order within
  std::vector<PatchBar> bars;         // sorted by (a, b, edge)
};

/// Finite piece of the derived framework: copy (v, gamma) sits at
/// gamma(p(v)); the bar of e = (t, h; m) joins (t, gamma) and (h, gamma m)
/// whenever both copies are in the window.
DerivedPatch derived_patch(const GainGraph& g, const Configuration& c,
                           std::span<const GroupElement> window);

/// JSON interchange: {"group": ..., "vertices": n, "edges": [...]} with each
/// gain written as [tx, ty, "s"|"e"]. Parsing is strict and lossless.
std::string to_json(const GainGraph& g);
GainGraph parse_gain_graph(std::string_view text);
GainGraph read_gain_graph(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// K_1 with a single loop.
GainGraph single_loop_graph(const GroupElement& loop_gain, GroupTag tag = GroupTag::pm);

}  // namespace wallrig
