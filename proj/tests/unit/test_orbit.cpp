#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wallrig/orbit.hpp"
#include "wallrig/sparsity.hpp"

using namespace wallrig;

namespace {
constexpr GroupElement id{0, 0, false};
constexpr GroupElement s{0, 0, true};

RationalVector ints(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Configuration random_points(std::mt19937_64& rng, int n, long bound) {
  Configuration c;
  for (int v = 0; v < n; ++v) {
    c.push_back({oracle::frac(static_cast<long>(rng() % (2 * bound + 1)) - bound, 1 + static_cast<long>(rng() % 3)),
                 mpq_class(static_cast<long>(rng() % (2 * bound + 1)) - bound)});
  }
  return c;
}
}  // namespace

TEST_CASE("row formulas") {
  auto k1 = build_orbit_matrix(single_loop_graph(s), {{1, 2}});
  CHECK(k1.rows[0] == ints({0, 8}));
  GainGraph edge{GroupTag::pm, 2, {{0, 1, {1, 0, false}}}};
  CHECK(build_orbit_matrix(edge, {{0, 0}, {2, 1}}).rows[0] == ints({-3, -1, 3, 1}));
  CHECK(build_orbit_matrix(single_loop_graph({3, -2, false}), {{5, 7}}).rows[0] == ints({0, 0}));
  CHECK_THROWS_AS(build_orbit_matrix(edge, {{0, 0}}), Error);
}

TEST_CASE("rows agree with the derived-bar oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto g = oracle::random_graph(rng, n, 1 + static_cast<int>(rng() % 6), 3);
    auto c = random_points(rng, n, 20);
    auto mat = build_orbit_matrix(g, c);
    for (int i = 0; i < g.n_edges(); ++i) CHECK(mat.rows[i] == oracle::oracle_row(g.edges[i], c));
    CHECK(exact_rank(mat.rows, mat.n_cols()) == oracle::gauss_rank(mat.rows, mat.n_cols()));
    auto zero = multiply(mat.rows, horizontal_motion(n));
    for (const auto& q : zero) CHECK(q == 0);
  }
}

TEST_CASE("rank and kernel") {
  CHECK(exact_rank({ints({0, 0}), ints({0, 0})}, 2) == 0);
  CHECK(exact_rank({ints({0, 8})}, 2) == 1);
  RationalMatrix m{{mpq_class(1, 2), mpq_class(1, 3), 1}, {1, mpq_class(2, 3), 2}, {0, 1, 5}};
  CHECK(exact_rank(m, 3) == 2);
  auto basis = kernel_basis(m, 3);
  REQUIRE(basis.size() == 1);
  for (const auto& q : multiply(m, basis[0])) CHECK(q == 0);

  auto k = motion_basis(single_loop_graph(s), {{1, 2}});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == ints({1, 0}));

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    RationalMatrix a(rows, RationalVector(cols));
    for (auto& r : a)
      for (auto& q : r) q = oracle::frac(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
    if (rows > 1 && (rng() & 1)) a[1] = a[0];
    int r = exact_rank(a, cols);
    CHECK(r == oracle::gauss_rank(a, cols));
    auto ker = kernel_basis(a, cols);
    CHECK(static_cast<int>(ker.size()) == cols - r);
    for (const auto& v : ker)
      for (const auto& q : multiply(a, v)) CHECK(q == 0);
  }
}

TEST_CASE("random configurations") {
  GainGraph tri{GroupTag::pm, 2, {{0, 1, id}, {0, 1, s}, {0, 1, {0, 1, false}}}};
  CHECK(random_configuration(tri, 5, 100) == random_configuration(tri, 5, 100));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto c = random_configuration(single_loop_graph({0, 0, true}), seed, 1);
    CHECK(c[0].y != 0);
    for (const auto& p : c) {
      CHECK(abs(p.x) <= 1);
      CHECK(abs(p.y) <= 1);
    }
  }
  auto c = random_configuration(tri, 9);
  CHECK(rank(build_orbit_matrix(tri, c)) == 3);
}

TEST_CASE("numeric rigidity") {
  auto base = numeric_rigidity(single_loop_graph(s), 3, 1);
  CHECK(base.verdict == RigidityClass::minimally_rigid);
  CHECK(base.rank == 1);
  auto flex = numeric_rigidity(single_loop_graph({1, 0, false}), 3, 1);
  CHECK(flex.verdict == RigidityClass::flexible);
  CHECK(flex.rank == 0);
  GainGraph over{GroupTag::pm, 1, {{0, 0, s}, {0, 0, {0, 1, true}}}};
  CHECK(numeric_rigidity(over).verdict == RigidityClass::rigid_dependent);
}

TEST_CASE("rank properties on random graphs") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto g = oracle::random_graph(rng, n, 1 + static_cast<int>(rng() % (2 * n + 1)), 2);
    auto c = random_configuration(g, rng(), 1000);
    int r = rank(build_orbit_matrix(g, c));
    CHECK(r <= std::min(g.n_edges(), 2 * n - 1));
    for (const auto& e : g.edges) {
      if (!e.is_loop()) continue;
      GainGraph one{g.group, n, {e}};
      bool zero_row = rank(build_orbit_matrix(one, c)) == 0;
      CHECK(zero_row == !e.gain.refl);
    }
    auto h = switch_at(g, static_cast<int>(rng() % n), oracle::random_element(rng, 2));
    CHECK(numeric_rigidity(g, 3, 7).rank == numeric_rigidity(h, 3, 7).rank);
    if (fast_verdict(g).tight) CHECK(numeric_rigidity(g, 3, 8).verdict == RigidityClass::minimally_rigid);
  }
}

TEST_CASE("dump format") {
  RationalMatrix m{{mpq_class(1, 2), -3}, {0, mpq_class(-7, 4)}};
  auto text = format_rows(m);
  CHECK(text == "1/2 -3/1\n0/1 -7/4\n");
  CHECK(parse_rows(text) == m);
  CHECK_THROWS_AS(parse_rows("1/0\n"), Error);
  CHECK_THROWS_AS(parse_rows("1/2 x\n"), Error);
}
