#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wallrig/gain_graph.hpp"

namespace wallrig {

struct SparsityParams {
  int k = 2;
  int l = 1;
};

/// The three counts of Z^2 x| Cs-tightness, in reporting priority order.
enum class Condition { count_21, purely_periodic_22, balanced_23 };

std::string_view to_string(Condition c);

struct Witness {
  std::vector<int> edges;    // ascending ids
  std::vector<int> support;  // ascending vertices touched
  GainClass cls = GainClass::balanced;
};

/// `tight` = independent and |E| = 2|V| - 1. When the graph is independent
/// but not spanning, failed_condition is count_21 and there is no witness.
/// Otherwise the condition reported is the first violated one in priority
/// order (count_21, purely_periodic_22, balanced_23).
struct SparsityVerdict {
  bool tight = false;
  bool independent = false;
  std::optional<Condition> failed_condition;
  std::optional<Witness> witness;
};

/// |subset| <= k |support| - l. Throws EmptySubset.
bool count_ok(const GainGraph& g, std::span<const int> subset, SparsityParams params);

/// True when `edges` on its own violates the bound of condition `c`.
bool violates(const GainGraph& g, std::span<const int> edges, Condition c);

/// Exhaustive check over all nonempty edge subsets. The witness is the
/// smallest violator of the reported condition, ties broken by the
/// lexicographically least id list. Throws TooLarge above `max_edges`.
SparsityVerdict brute_force_verdict(const GainGraph& g, int max_edges = 24);

/// Polynomial-time pebble-game checker for the count and purely periodic
/// conditions, with a potential search for the balanced one.
SparsityVerdict fast_verdict(const GainGraph& g);

bool is_independent(const GainGraph& g);

}  // namespace wallrig
