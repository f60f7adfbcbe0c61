#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "wallrig/henneberg.hpp"
#include "wallrig/orbit.hpp"
#include "wallrig/sparsity.hpp"

namespace wallrig::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string path;
  std::string engine = "fast";
  int trials = 3;
  std::uint64_t seed = 1;
  std::int64_t bound = 1'000'000;
  std::string out;
  std::string expect;
  std::string group = "pm";
  int n = 1;
  int gain_bound = 1;
  double ceiling = 2e7;
  std::string out_dir = ".";
  std::string window = "box:1";
  bool timing = false;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotTight: return kNegative;
    case ErrorCode::NoReductionFound:
    case ErrorCode::InternalError: return kInternal;
    case ErrorCode::TooLarge:
    case ErrorCode::Exhausted: return kResource;
    default: return kInputError;
  }
}

struct Loaded {
  GainGraph graph;
  std::string digest;
};

Loaded load(const std::string& path) {
  auto text = read_text_file(path);
  Loaded l{parse_gain_graph(text), fnv1a64(text)};
  try {
    validate(l.graph);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
  return l;
}

void head(Report& r, std::string_view command, const std::string& input, const Loaded& l) {
  r.field("command", command).field("input", input).field("digest", l.digest);
  r.field("group", to_string(l.graph.group)).field("vertices", l.graph.n_vertices).field("edges", l.graph.n_edges());
}

void write_verdict(Report& r, const SparsityVerdict& v) {
  r.flag("tight", v.tight).flag("independent", v.independent);
  r.field("failed_condition", v.failed_condition ? to_string(*v.failed_condition) : "none");
  if (v.witness) {
    r.ids("witness_edges", v.witness->edges).ids("witness_support", v.witness->support);
    r.field("witness_class", to_string(v.witness->cls));
  }
}

bool same_verdict(const SparsityVerdict& a, const SparsityVerdict& b) {
  return a.tight == b.tight && a.independent == b.independent && a.failed_condition == b.failed_condition;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  auto l = load(o.path);
  Report r(out);
  head(r, "check", o.path, l);
  r.field("engine", o.engine);
  SparsityVerdict v;
  if (o.engine == "fast") {
    v = fast_verdict(l.graph);
  } else if (o.engine == "brute") {
    v = brute_force_verdict(l.graph);
  } else {
    v = fast_verdict(l.graph);
    auto b = brute_force_verdict(l.graph);
    r.flag("engines_agree", same_verdict(v, b));
    if (!same_verdict(v, b)) {
      err << "error: fast and brute-force engines disagree\n";
      write_verdict(r, v);
      return kInternal;
    }
  }
  write_verdict(r, v);
  return v.tight ? kOk : kNegative;
}

int cmd_rank(const Options& o, std::ostream& out) {
  auto l = load(o.path);
  Report r(out);
  head(r, "rank", o.path, l);
  auto v = numeric_rigidity(l.graph, o.trials, o.seed, o.bound);
  r.field("seed", o.seed).field("trials", o.trials).field("coordinate_bound", o.bound);
  r.field("rank", v.rank).field("full_rank", 2 * l.graph.n_vertices - 1);
  r.field("kernel_dimension", 2 * l.graph.n_vertices - v.rank);
  r.field("verdict", to_string(v.verdict));
  return v.verdict == RigidityClass::minimally_rigid ? kOk : kNegative;
}

int cmd_certify(const Options& o, std::ostream& out) {
  auto l = load(o.path);
  Report r(out);
  head(r, "certify", o.path, l);
  auto cert = certify(l.graph);
  auto text = to_json(cert);
  r.field("moves", cert.moves.size());
  std::ostringstream kinds;
  for (std::size_t i = 0; i < cert.moves.size(); ++i) kinds << (i ? " " : "") << to_string(kind_of(cert.moves[i]));
  r.field("move_kinds", kinds.str());
  r.field("certificate_digest", fnv1a64(text));
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
    r.field("written", o.out);
  }
  return kOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  auto text = read_text_file(o.path);
  auto cert = parse_certificate(text);
  auto g = replay(cert);
  auto graph_text = to_json(g);
  Report r(out);
  r.field("command", "replay").field("input", o.path).field("digest", fnv1a64(text));
  r.field("moves", cert.moves.size()).field("vertices", g.n_vertices).field("edges", g.n_edges());
  r.field("graph_digest", fnv1a64(graph_text));
  if (!o.out.empty()) {
    write_text_file(o.out, graph_text);
    r.field("written", o.out);
  }
  if (!o.expect.empty()) {
    bool match = read_text_file(o.expect) == graph_text;
    r.flag("matches_expected", match);
    return match ? kOk : kNegative;
  }
  if (o.out.empty()) out << graph_text;
  return kOk;
}

int cmd_grow(const Options& o, std::ostream& out) {
  auto g = random_tight(o.n, o.seed, parse_group_tag(o.group));
  auto text = to_json(g);
  if (o.out.empty()) {
    out << text;
    return kOk;
  }
  write_text_file(o.out, text);
  Report r(out);
  r.field("command", "grow").field("seed", o.seed).field("group", o.group).field("vertices", g.n_vertices);
  r.field("edges", g.n_edges()).field("graph_digest", fnv1a64(text)).field("written", o.out);
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  auto tag = parse_group_tag(o.group);
  Report r(out);
  r.field("command", "enumerate").field("n_max", o.n).field("gain_bound", o.gain_bound).field("group", o.group);
  fs::create_directories(o.out_dir);
  std::size_t total = 0;
  for (int n = 1; n <= o.n; ++n) {
    auto graphs = enumerate_tight(n, o.gain_bound, tag, {o.ceiling});
    r.field("tight_n" + std::to_string(n), graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      std::ostringstream name;
      name << "n" << n << "_" << std::setw(5) << std::setfill('0') << i << ".json";
      write_text_file(fs::path(o.out_dir) / name.str(), to_json(graphs[i]));
    }
    total += graphs.size();
  }
  r.field("total", total).field("out_dir", o.out_dir);
  return kOk;
}

int cmd_crossval(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n > 4) throw Error(ErrorCode::InvalidArgument, "crossval is limited to n_max <= 4");
  auto tag = parse_group_tag(o.group);
  Report r(out);
  r.field("command", "crossval").field("n_max", o.n).field("gain_bound", o.gain_bound).field("group", o.group);
  r.field("seed", o.seed).field("trials", o.trials);
  std::size_t graphs = 0, tight = 0;
  for (int n = 1; n <= o.n; ++n) {
    auto family = enumerate_family(n, o.gain_bound, tag, {o.ceiling});
    std::size_t tight_n = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto& g = family[i];
      bool comb = fast_verdict(g).tight;
      auto num = numeric_rigidity(g, o.trials, trial_seed(o.seed, static_cast<int>(i)), o.bound);
      bool rigid = num.verdict == RigidityClass::minimally_rigid;
      if (comb != rigid) {
        r.field("mismatch_n", n).flag("combinatorial_tight", comb).field("numeric", to_string(num.verdict));
        r.field("numeric_rank", num.rank);
        out << to_json(g);
        err << "error: combinatorial and numeric verdicts differ\n";
        return kMismatch;
      }
      tight_n += comb;
    }
    r.field("family_n" + std::to_string(n), family.size()).field("tight_n" + std::to_string(n), tight_n);
    graphs += family.size();
    tight += tight_n;
  }
  r.field("graphs", graphs).field("tight", tight).field("mismatches", 0);
  return kOk;
}

Configuration drawing_configuration(const GainGraph& g, const Options& o) {
  auto c = random_configuration(g, o.seed, o.bound);
  for (auto& p : c) {
    p.x /= o.bound;
    p.y /= o.bound;
  }
  return c;
}

int cmd_motions(const Options& o, std::ostream& out) {
  auto l = load(o.path);
  Report r(out);
  head(r, "motions", o.path, l);
  auto c = drawing_configuration(l.graph, o);
  auto basis = motion_basis(l.graph, c);
  r.field("seed", o.seed).field("coordinate_bound", o.bound);
  std::ostringstream pts;
  for (std::size_t v = 0; v < c.size(); ++v) pts << (v ? " " : "") << c[v].x.get_str() << ',' << c[v].y.get_str();
  r.field("configuration", pts.str());
  r.field("kernel_dimension", basis.size());
  out << "basis:\n" << format_rows(basis);
  if (!o.window.empty()) {
    auto window = parse_window(o.window, l.graph.group);
    r.field("window_size", window.size());
    out << "patch_velocities:\n";
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (int v = 0; v < l.graph.n_vertices; ++v) {
        Point u{basis[k][2 * v], basis[k][2 * v + 1]};
        for (const auto& gamma : window) {
          auto w = linear_part_apply(gamma, u);
          out << "motion " << k << " vertex " << v << " copy " << format(gamma) << ": " << w.x.get_str() << ' '
              << w.y.get_str() << '\n';
        }
      }
    }
  }
  return kOk;
}

int cmd_export_patch(const Options& o, std::ostream& out) {
  auto l = load(o.path);
  auto window = parse_window(o.window, l.graph.group);
  auto c = drawing_configuration(l.graph, o);
  auto patch = derived_patch(l.graph, c, window);
  auto svg = patch_svg(patch);
  Report r(out);
  head(r, "export-patch", o.path, l);
  r.field("window_size", window.size()).field("patch_vertices", patch.vertices.size()).field("patch_bars", patch.bars.size());
  if (o.out.empty()) {
    out << svg;
  } else {
    write_text_file(o.out, svg);
    r.field("written", o.out);
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forced-symmetric rigidity for the wallpaper groups pm, cm and pg", "wallrig"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  const std::vector<std::string> groups{"pm", "cm", "pg"};

  auto* check = app.add_subcommand("check", "Decide tightness of a gain graph");
  check->add_option("path", o.path, "Gain-graph file")->required();
  check->add_option("--engine", o.engine, "fast, brute or both")->check(CLI::IsMember({"fast", "brute", "both"}));

  auto* rank = app.add_subcommand("rank", "Exact orbit-matrix rank at random configurations");
  rank->add_option("path", o.path, "Gain-graph file")->required();
  rank->add_option("--trials", o.trials, "Random configurations")->check(CLI::PositiveNumber);
  rank->add_option("--seed", o.seed, "Seed");
  rank->add_option("--bound", o.bound, "Coordinate bound")->check(CLI::PositiveNumber);

  auto* cert = app.add_subcommand("certify", "Build a construction certificate from a single looped vertex");
  cert->add_option("path", o.path, "Gain-graph file")->required();
  cert->add_option("--out", o.out, "Certificate output file");

  auto* rep = app.add_subcommand("replay", "Rebuild a graph from a certificate");
  rep->add_option("path", o.path, "Certificate file")->required();
  rep->add_option("--expect", o.expect, "Compare byte-for-byte with this gain-graph file");
  rep->add_option("--out", o.out, "Write the rebuilt graph here");

  auto* grow = app.add_subcommand("grow", "Random tight graph by random extensions");
  grow->add_option("n", o.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  grow->add_option("--seed", o.seed, "Seed");
  grow->add_option("--group", o.group, "pm, cm or pg")->check(CLI::IsMember(groups));
  grow->add_option("--out", o.out, "Output file");

  auto* en = app.add_subcommand("enumerate", "All tight graphs up to n_max vertices with bounded gains");
  en->add_option("n_max", o.n, "Largest vertex count")->required()->check(CLI::PositiveNumber);
  en->add_option("--gain-bound", o.gain_bound, "Bound on |tx|, |ty|")->check(CLI::NonNegativeNumber);
  en->add_option("--group", o.group, "pm, cm or pg")->check(CLI::IsMember(groups));
  en->add_option("--out-dir", o.out_dir, "Directory for the emitted files");
  en->add_option("--ceiling", o.ceiling, "Largest admissible search space");

  auto* cv = app.add_subcommand("crossval", "Compare combinatorial and numeric verdicts over a bounded family");
  cv->add_option("n_max", o.n, "Largest vertex count")->required()->check(CLI::PositiveNumber);
  cv->add_option("--gain-bound", o.gain_bound, "Bound on |tx|, |ty|")->check(CLI::NonNegativeNumber);
  cv->add_option("--trials", o.trials, "Random configurations per graph")->check(CLI::PositiveNumber);
  cv->add_option("--seed", o.seed, "Seed");
  cv->add_option("--group", o.group, "pm, cm or pg")->check(CLI::IsMember(groups));
  cv->add_option("--ceiling", o.ceiling, "Largest admissible search space");

  auto* mo = app.add_subcommand("motions", "Exact basis of symmetric infinitesimal motions");
  mo->add_option("path", o.path, "Gain-graph file")->required();
  mo->add_option("--window", o.window, "Group elements: box:R or tx,ty,s|e;...");
  mo->add_option("--seed", o.seed, "Seed");
  mo->add_option("--bound", o.bound, "Configuration denominator")->check(CLI::PositiveNumber);

  auto* ex = app.add_subcommand("export-patch", "SVG drawing of a finite piece of the derived framework");
  ex->add_option("path", o.path, "Gain-graph file")->required();
  ex->add_option("--window", o.window, "Group elements: box:R or tx,ty,s|e;...");
  ex->add_option("--out", o.out, "SVG output file");
  ex->add_option("--seed", o.seed, "Seed");
  ex->add_option("--bound", o.bound, "Configuration denominator")->check(CLI::PositiveNumber);

  app.add_flag("--timing", o.timing, "Append elapsed wall time to the report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (mo->parsed() || ex->parsed()) {
    if (mo->count("--bound") == 0 && ex->count("--bound") == 0) o.bound = 10;
  }
  if (mo->parsed() && mo->count("--window") == 0) o.window.clear();

  auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (check->parsed()) code = cmd_check(o, out, err);
    else if (rank->parsed()) code = cmd_rank(o, out);
    else if (cert->parsed()) code = cmd_certify(o, out);
    else if (rep->parsed()) code = cmd_replay(o, out);
    else if (grow->parsed()) code = cmd_grow(o, out);
    else if (en->parsed()) code = cmd_enumerate(o, out);
    else if (cv->parsed()) code = cmd_crossval(o, out, err);
    else if (mo->parsed()) code = cmd_motions(o, out);
    else if (ex->parsed()) code = cmd_export_patch(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (o.timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << "elapsed_ms: " << std::fixed << std::setprecision(1) << ms << '\n';
  }
  return code;
}

}  // namespace wallrig::cli
