#include "wallrig/orbit.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace wallrig {

namespace {

void put(RationalVector& row, int v, const Point& block) {
  row[2 * v] += block.x;
  row[2 * v + 1] += block.y;
}

RationalVector edge_row(const GainEdge& e, const Configuration& c, int n_cols) {
  RationalVector row(n_cols);
  const Point& pi = c[e.tail];
  const Point& pj = c[e.head];
  if (e.is_loop()) {
    Point two = mpq_class(2) * pi;
    put(row, e.tail, two - apply_point(e.gain, pi) - apply_point(inverse(e.gain), pi));
  } else {
    put(row, e.tail, pi - apply_point(e.gain, pj));
    put(row, e.head, pj - apply_point(inverse(e.gain), pi));
  }
  return row;
}

bool zero(const RationalVector& row) {
  return std::all_of(row.begin(), row.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

}  // namespace

OrbitMatrix build_orbit_matrix(const GainGraph& g, const Configuration& c) {
  if (static_cast<int>(c.size()) != g.n_vertices) {
    throw Error(ErrorCode::SizeMismatch, "configuration has " + std::to_string(c.size()) + " points for " +
                                             std::to_string(g.n_vertices) + " vertices");
  }
  OrbitMatrix mat{g.n_vertices, {}};
  mat.rows.reserve(g.edges.size());
  for (const auto& e : g.edges) mat.rows.push_back(edge_row(e, c, mat.n_cols()));
  return mat;
}

int rank(const OrbitMatrix& mat) { return exact_rank(mat.rows, mat.n_cols()); }

RationalVector horizontal_motion(int n_vertices) {
  RationalVector u(2 * n_vertices);
  for (int v = 0; v < n_vertices; ++v) u[2 * v] = 1;
  return u;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Configuration random_configuration(const GainGraph& g, std::uint64_t seed, std::int64_t bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "coordinate bound must be positive");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  auto draw = [&] { return mpq_class(static_cast<long>(static_cast<std::int64_t>(rng() % span) - bound)); };
  Configuration c(g.n_vertices);
  const int n_cols = 2 * g.n_vertices;
  for (int v = 0; v < g.n_vertices; ++v) {
    for (int attempt = 0;; ++attempt) {
      c[v] = {draw(), draw()};
      bool ok = true;
      for (const auto& e : g.edges) {
        bool relevant = e.is_loop() ? (e.tail == v && e.gain.refl)
                                    : std::max(e.tail, e.head) == v;
        if (relevant && zero(edge_row(e, c, n_cols))) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      if (attempt > 1000) throw Error(ErrorCode::Exhausted, "cannot place vertex " + std::to_string(v));
    }
  }
  return c;
}

std::string_view to_string(RigidityClass c) {
  switch (c) {
    case RigidityClass::minimally_rigid: return "minimally_rigid";
    case RigidityClass::rigid_dependent: return "rigid_dependent";
    case RigidityClass::flexible: return "flexible";
  }
  return "?";
}

NumericVerdict numeric_rigidity(const GainGraph& g, int trials, std::uint64_t seed, std::int64_t bound) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  NumericVerdict out;
  out.trials = trials;
  const int full = 2 * g.n_vertices - 1;
  for (int t = 0; t < trials; ++t) {
    auto c = random_configuration(g, trial_seed(seed, t), bound);
    out.rank = std::max(out.rank, rank(build_orbit_matrix(g, c)));
    if (out.rank == std::min(full, g.n_edges())) break;  // cannot grow further
  }
  if (out.rank < full) {
    out.verdict = RigidityClass::flexible;
  } else {
    out.verdict = g.n_edges() == full ? RigidityClass::minimally_rigid : RigidityClass::rigid_dependent;
  }
  return out;
}

std::vector<RationalVector> motion_basis(const GainGraph& g, const Configuration& c) {
  auto mat = build_orbit_matrix(g, c);
  return kernel_basis(mat.rows, mat.n_cols());
}

std::string format_rows(const RationalMatrix& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ' ';
      os << row[j].get_num().get_str() << '/' << row[j].get_den().get_str();
    }
    os << '\n';
  }
  return os.str();
}

RationalMatrix parse_rows(std::string_view text) {
  RationalMatrix rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    RationalVector row;
    while (ls >> tok) {
      mpq_class q;
      if (q.set_str(tok, 10) != 0 || tok.find('/') == std::string::npos) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad entry '" + tok + "'");
      }
      if (sgn(q.get_den()) == 0) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": zero denominator");
      }
      q.canonicalize();
      row.push_back(q);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wallrig
