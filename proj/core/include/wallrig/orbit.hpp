#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wallrig/gain_graph.hpp"
#include "wallrig/linalg.hpp"

namespace wallrig {

/// |E| x 2|V| orbit rigidity matrix, one row per edge in edge order.
/// Columns 2v and 2v+1 hold the x and y block of vertex v.
struct OrbitMatrix {
  int n_vertices = 0;
  RationalMatrix rows;

  int n_cols() const { return 2 * n_vertices; }
};

/// Non-loop e = (i, j; m): block p_i - m p_j at i and p_j - m^-1 p_i at j.
/// Loop at i: the single block 2 p_i - m p_i - m^-1 p_i.
OrbitMatrix build_orbit_matrix(const GainGraph& g, const Configuration& c);

int rank(const OrbitMatrix& mat);

/// The vector assigning (1, 0) to every vertex.
RationalVector horizontal_motion(int n_vertices);

/// Deterministic integer configuration in [-bound, bound]^2. A vertex is
/// resampled while one of its rows (reflective loop, or edge to an already
/// placed vertex) vanishes identically. Translation loops always give zero
/// rows and are ignored.
Configuration random_configuration(const GainGraph& g, std::uint64_t seed, std::int64_t bound = 1'000'000);

enum class RigidityClass { minimally_rigid, rigid_dependent, flexible };

std::string_view to_string(RigidityClass c);

struct NumericVerdict {
  RigidityClass verdict = RigidityClass::flexible;
  int rank = 0;
  int trials = 0;
};

/// Maximum rank over `trials` random configurations seeded from `seed`.
NumericVerdict numeric_rigidity(const GainGraph& g, int trials = 3, std::uint64_t seed = 1,
                                std::int64_t bound = 1'000'000);

/// Exact kernel basis of the orbit matrix at `c`.
std::vector<RationalVector> motion_basis(const GainGraph& g, const Configuration& c);

/// One vector per line, entries as p/q separated by single spaces.
std::string format_rows(const RationalMatrix& rows);
RationalMatrix parse_rows(std::string_view text);

/// Seed of trial i derived from a user seed.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

}  // namespace wallrig
