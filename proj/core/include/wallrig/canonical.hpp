#pragma once

#include "wallrig/gain_graph.hpp"

namespace wallrig {

/// Representative of the class of g under vertex relabelling and switching.
///
/// Every spanning forest is normalized to identity gains; each component is
/// then conjugated by the mirror or not, and shifted vertically so its least
/// reflection offset lies in {0, 1}. Edges are oriented so the gain is at
/// most its inverse (ties: tail <= head) and sorted. The least result over
/// all relabellings, forests and mirror choices is returned.
///
/// Exponential in the vertex count; throws TooLarge above `max_vertices`.
GainGraph canonical_form(const GainGraph& g, int max_vertices = 7);

}  // namespace wallrig
