#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wallrig/gain_graph.hpp"

namespace wallrig {

/// Where a move puts its new vertex and edges. The new vertex takes index
/// `vertex` (existing vertices at or above it shift up by one; -1 appends).
/// `slots` are the final edge-list positions of the new edges in role order,
/// and `flipped[i]` stores role edge i as (v_i, v0; g_i^-1) instead of
/// (v0, v_i; g_i). Empty slots append in role order.
struct Placement {
  int vertex = -1;
  std::vector<int> slots;
  std::vector<bool> flipped;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// New vertex v0 with e1 = (v0, v1; g1), e2 = (v0, v2; g2).
struct ZeroExtension {
  int v1 = 0;
  int v2 = 0;
  GroupElement g1;
  GroupElement g2;
  Placement placement;

  friend bool operator==(const ZeroExtension&, const ZeroExtension&) = default;
};

/// Removes edge `edge`, read as (v1, v2; m), and adds e1 = (v0, v1; g1),
/// e2 = (v0, v2; g1 m), e3 = (v0, v3; g3), so that g1^-1 g2 = m.
struct OneExtension {
  int edge = 0;
  GainEdge removed;
  int v3 = 0;
  GroupElement g1;
  GroupElement g3;
  Placement placement;

  GroupElement g2() const { return g1 * removed.gain; }

  friend bool operator==(const OneExtension&, const OneExtension&) = default;
};

/// New vertex v0 with the loop l = (v0, v0; loop_gain), loop_gain reflective,
/// and e = (v0, v1; edge_gain).
struct LoopOneExtension {
  int v1 = 0;
  GroupElement loop_gain;
  GroupElement edge_gain;
  Placement placement;

  friend bool operator==(const LoopOneExtension&, const LoopOneExtension&) = default;
};

using Move = std::variant<ZeroExtension, OneExtension, LoopOneExtension>;

enum class MoveKind { zero_ext, one_ext, loop_one_ext };

std::string_view to_string(MoveKind k);
MoveKind kind_of(const Move& m);

GainGraph apply_zero_extension(const GainGraph& g, int v1, int v2, const GroupElement& g1,
                               const GroupElement& g2);
GainGraph apply_one_extension(const GainGraph& g, int edge, int v3, const GroupElement& g1,
                              const GroupElement& g3);
GainGraph apply_loop_one_extension(const GainGraph& g, int v1, const GroupElement& loop_gain,
                                   const GroupElement& edge_gain);

/// Applies any move honouring its placement. The result is validated.
GainGraph apply_move(const GainGraph& g, const Move& m);

struct Reduction {
  Move move;         // re-applying it to `reduced` gives back the input
  GainGraph reduced;
};

struct ReductionOptions {
  int brute_force_max_edges = 24;  // cross-check the chosen candidate up to this size
};

/// One inverse Henneberg step on a tight graph with at least two vertices.
/// Throws NotTight, or NoReductionFound with diagnostics.
Reduction find_reduction(const GainGraph& g, const ReductionOptions& opts = {});

struct Certificate {
  GainGraph base;
  std::vector<Move> moves;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

Certificate certify(const GainGraph& g, const ReductionOptions& opts = {});

/// Rebuilds the graph; throws InvalidBase unless the base is one vertex
/// with a single reflective loop.
GainGraph replay(const Certificate& c);

std::string to_json(const Certificate& c);
Certificate parse_certificate(std::string_view text);

struct GrowthOptions {
  int gain_window = 2;      // translations drawn from [-w, w]^2
  int attempt_cap = 10000;  // per move
};

/// Random valid move of the given kind on g, drawn with gains from the
/// window. Throws Exhausted when none is found within the attempt cap.
Move random_move(const GainGraph& g, MoveKind kind, std::mt19937_64& rng, const GrowthOptions& opts = {});

/// Random tight graph built by n - 1 uniformly chosen moves from a random
/// base. Each intermediate graph is checked tight.
GainGraph random_tight(int n, std::uint64_t seed, GroupTag tag = GroupTag::pm, const GrowthOptions& opts = {});

struct EnumerationOptions {
  double ceiling = 2e7;  // maximum number of candidate edge sets per size
};

/// All tight graphs on exactly n vertices with translation parts bounded by
/// gain_bound, one per canonical class, sorted by canonical edge list.
std::vector<GainGraph> enumerate_tight(int n, int gain_bound, GroupTag tag = GroupTag::pm,
                                       const EnumerationOptions& opts = {});

/// All valid graphs on exactly n vertices with 2n - 1 edges and bounded
/// gains, tight or not, one per canonical class.
std::vector<GainGraph> enumerate_family(int n, int gain_bound, GroupTag tag = GroupTag::pm,
                                        const EnumerationOptions& opts = {});

/// Group elements with |tx|, |ty| <= bound that belong to the group.
std::vector<GroupElement> gain_window(int bound, GroupTag tag);

}  // namespace wallrig
