#include "planes4/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "planes4/errors.hpp"
#include "planes4/grassmann.hpp"
#include "planes4/harmonic_annulus.hpp"
#include "planes4/mesh_io.hpp"
#include "planes4/multiscale_scanner.hpp"
#include "planes4/output.hpp"
#include "planes4/plateau_lab.hpp"
#include "planes4/projection_bounds.hpp"
#include "planes4/random.hpp"

namespace planes4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;

// Column documentation, shown in --help and mirrored in docs/csv_columns.md.
const char* kBoundsColumns = R"(results.csv columns:
  alpha1, alpha2      characteristic angles of the pair (radians)
  sup                 searched supremum of |p1 xi| + |p2 xi| over unit simple xi
  wirtinger_bound     1 + 2 cos(alpha1)
  witness_lower       1 + cos(alpha1) cos(alpha2), the value at xi = e1^e2
  samples             objective evaluations (grid plus ascent)
  refinement_iters    ascent iterations summed over starts)";

const char* kWirtingerColumns = R"(results.csv columns:
  kind                xi (sampled equality element) or random (random unit simple 2-vector)
  index               draw number within its kind
  projection_sum      |p1 xi| + |p2 xi| for the orthogonal pair span(e1,e2), span(e3,e4)
  member              1 if the membership test accepts the 2-vector, else 0)";

const char* kAnnulusColumns = R"(results.csv columns:
  mode                exact | reflection | log | fd
  r0                  inner radius
  value               exact: energy of the reflected problem; reflection: lower bound;
                      log: bound (times eps when given); fd: finite-difference energy
  reference           fd: closed-form energy of the same problem; nan otherwise
  C                   log with eps: constant max(101, 2/(1 - sqrt(eps))); nan otherwise)";

const char* kScanColumns = R"(results.csv columns:
  n                   step number, scale 2^-n
  scale               s_n
  center_1..center_4  window center q_n
  fit_1..fit_4        best translate found in the window
  best_distance       relative distance to the best translate
  carry_distance      relative distance to the translate by q_n itself
  tolerance           2 h / s_n for the local sample spacing h)";

const char* kPlateauColumns = R"(results.csv columns:
  alpha1, alpha2      characteristic angles
  n                   boundary segments per circle
  pinch_radius        0 for the union of the disks
  initial_area        area of the starting mesh
  final_area          area after descent
  certificate_bound   (shadow1 + shadow2) / lambda of the final mesh
  lambda              min(1 + 2 cos alpha1, max face projection sum)
  covers_1, covers_2  1 if the shadow on that plane covers the unit disk
  mesh_tolerance      2 pi minus the area of the union mesh at this n
  certificate_tolerance  rasterization error model of the certificate
  iterations          accepted descent steps
  line_search_failed  1 if the last line search found no decrease
  verdict             improved | certified-optimal | no-improvement-found
trace.csv columns: pinch_radius, step, area)";

// Angles typed as decimals (1.5708) may overshoot pi/2 slightly.
double clamp_angle(double a) {
  if (a > kHalfPi && a <= kHalfPi + 1e-4) return kHalfPi;
  return a;
}

std::string real(double v) { return format_real(v); }

struct Outcome {
  Table table;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<RecordLine> record;
  std::vector<std::pair<std::string, Table>> extra;  // additional CSV files
  std::vector<std::string> files;                     // other files already written
};

struct Common {
  std::string out;
  std::string config;
  std::uint64_t seed = 1;
};

Outcome run_bounds(double a1, double a2, int angle_grid, const SearchConfig& search) {
  Outcome o;
  o.table.columns = {"alpha1", "alpha2", "sup", "wirtinger_bound", "witness_lower", "samples",
                     "refinement_iters"};
  std::vector<std::pair<double, double>> pairs;
  if (angle_grid > 0) {
    for (int i = 1; i <= angle_grid; ++i)
      for (int j = i; j <= angle_grid; ++j) pairs.emplace_back(kHalfPi * i / angle_grid, kHalfPi * j / angle_grid);
  } else {
    require(!std::isnan(a1) && !std::isnan(a2), "bounds: give --alpha1 and --alpha2, or --angle-grid");
    pairs.emplace_back(clamp_angle(a1), clamp_angle(a2));
  }
  o.params = {{"alpha1", real(a1)}, {"alpha2", real(a2)}, {"angle_grid", std::to_string(angle_grid)},
              {"grid", std::to_string(search.grid)}, {"ascent_steps", std::to_string(search.ascent_steps)}};
  double worst_gap = -1e300;
  for (const auto& [x, y] : pairs) {
    const auto [p1, p2] = canonical_pair(x, y);
    const BoundReport r = sup_projection_sum(p1, p2, search);
    o.table.add({real(x), real(y), real(r.sup_value), real(r.bound), real(1 + std::cos(x) * std::cos(y)),
                 std::to_string(r.samples), std::to_string(r.refinement_iters)});
    worst_gap = std::max(worst_gap, r.sup_value - r.bound);
  }
  if (worst_gap > 1e-9)
    throw NumericalError(fmt::format("bounds: searched supremum exceeds 1 + 2 cos(alpha1) by {}", worst_gap));
  o.record = {{0, "pairs", std::to_string(pairs.size())},
              {0, "max_sup_minus_bound", real(worst_gap)}};
  return o;
}

Outcome run_wirtinger(int samples, double tol, std::uint64_t seed) {
  require(samples > 0, "wirtinger: --samples must be positive");
  require(tol > 0.0, "wirtinger: --tolerance must be positive");
  Outcome o;
  o.table.columns = {"kind", "index", "projection_sum", "member"};
  o.params = {{"samples", std::to_string(samples)}, {"tolerance", real(tol)}};
  const auto [p1, p2] = standard_orthogonal_pair();
  Rng rng(seed);
  int xi_members = 0, random_members = 0;
  for (int i = 0; i < samples; ++i) {
    XiElement e;
    e.alpha = rng.uniform(0.0, kHalfPi);
    const double t = rng.uniform(0.0, 2 * kPi), u = rng.uniform(0.0, 2 * kPi);
    e.v1 = std::cos(t) * Vector4::UnitX() + std::sin(t) * Vector4::UnitY();
    e.v2 = -std::sin(t) * Vector4::UnitX() + std::cos(t) * Vector4::UnitY();
    e.u1 = std::cos(u) * Vector4::UnitZ() + std::sin(u) * Vector4::UnitW();
    e.u2 = -std::sin(u) * Vector4::UnitZ() + std::cos(u) * Vector4::UnitW();
    const TwoVector xi = xi_sample(e);
    const bool m = xi_membership(xi, tol);
    xi_members += m;
    o.table.add({"xi", std::to_string(i), real(projection_sum(p1, p2, xi)), m ? "1" : "0"});
  }
  for (int i = 0; i < samples; ++i) {
    const TwoVector xi = random_unit_simple(rng);
    const bool m = xi_membership(xi, tol);
    random_members += m;
    o.table.add({"random", std::to_string(i), real(projection_sum(p1, p2, xi)), m ? "1" : "0"});
  }
  o.record = {{0, "xi_members", std::to_string(xi_members)},
              {0, "random_members", std::to_string(random_members)}};
  return o;
}

// "1:0.5,3:2" -> order-indexed coefficients
std::vector<double> parse_coefficients(const std::string& spec, int order) {
  std::vector<double> c(static_cast<std::size_t>(order), 0.0);
  if (spec.empty()) return c;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, "annulus: coefficient '" + item + "' is not n:value");
    int n = 0;
    double v = 0.0;
    try {
      n = std::stoi(item.substr(0, colon));
      v = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("annulus: coefficient '" + item + "' is not n:value");
    }
    require(n >= 1 && n <= order, fmt::format("annulus: mode {} outside 1..{}", n, order));
    c[static_cast<std::size_t>(n - 1)] = v;
  }
  return c;
}

struct AnnulusArgs {
  std::string mode = "exact";
  double r0 = 0.25;
  double delta = 1.0;
  std::optional<double> eps;
  double mean = 0.0;
  std::string cos_terms;
  std::string sin_terms;
  int order = 32;
  int radial = 128;
  int angular = 512;
  double center_x = 0.0;
  double center_y = 0.0;
};

Outcome run_annulus(const AnnulusArgs& a) {
  Outcome o;
  o.table.columns = {"mode", "r0", "value", "reference", "C"};
  o.params = {{"mode", a.mode}, {"r0", real(a.r0)}, {"delta", real(a.delta)},
              {"eps", a.eps ? real(*a.eps) : "none"}, {"mean", real(a.mean)},
              {"cos", a.cos_terms}, {"sin", a.sin_terms}, {"order", std::to_string(a.order)},
              {"radial", std::to_string(a.radial)}, {"angular", std::to_string(a.angular)},
              {"center_x", real(a.center_x)}, {"center_y", real(a.center_y)}};
  require(a.order >= 1, "annulus: --order must be positive");
  const double nan = std::nan("");

  FourierBoundary given;
  given.mean = a.mean;
  given.A = parse_coefficients(a.cos_terms, a.order);
  given.B = parse_coefficients(a.sin_terms, a.order);
  // round trip through samples so the decomposition is exercised
  auto decomposed = [&] { return fourier_decompose(sample_circle(given, 8 * a.order + 1), a.order); };

  if (a.mode == "exact") {
    o.table.add({a.mode, real(a.r0), real(annulus_energy_exact(decomposed(), a.r0)), "nan", "nan"});
  } else if (a.mode == "reflection") {
    AnnulusSpec spec;
    spec.r0 = a.r0;
    spec.center = {a.center_x, a.center_y};
    o.table.add({a.mode, real(a.r0), real(reflection_lower_bound(decomposed(), spec)), "nan", "nan"});
  } else if (a.mode == "log") {
    if (a.eps) {
      const LogAnnulusBound b = log_annulus_bound(a.delta, a.r0, *a.eps);
      o.table.add({a.mode, real(a.r0), real(b.value), "nan", real(b.C)});
    } else {
      o.table.add({a.mode, real(a.r0), real(log_annulus_bound(a.delta, a.r0)), "nan", real(nan)});
    }
  } else if (a.mode == "fd") {
    require(a.r0 > 0.0 && a.r0 < 1.0, "annulus: r0 must lie in (0, 1)");
    const FourierBoundary fb = decomposed();
    AnnulusSpec spec;
    spec.r0 = a.r0;
    spec.outer = 1.0 / a.r0;
    AnnulusData data;
    for (int j = 0; j < a.angular; ++j) data.inner.push_back(fb(2 * kPi * j / a.angular));
    data.outer = data.inner;
    const double fd = fd_oracle(data, spec, {a.radial, a.angular});
    o.table.add({a.mode, real(a.r0), real(fd), real(annulus_energy_exact(fb, a.r0)), "nan"});
  } else {
    throw ConfigError("annulus: unknown --mode '" + a.mode + "' (exact, reflection, log, fd)");
  }
  return o;
}

struct ScanArgs {
  std::string mesh;
  double eps = 0.05;
  double floor = 1.0 / 16;
  double spacing = 0.0;  // 0: eps * floor / 2
  double grade = 0.0;    // 0: eps / 3
  double alpha1 = kHalfPi;
  double alpha2 = kHalfPi;
};

Outcome run_scan(const ScanArgs& a) {
  require(!a.mesh.empty(), "scan: --mesh is required");
  const double spacing = a.spacing > 0.0 ? a.spacing : a.eps * a.floor / 2;
  const double grade = a.grade > 0.0 ? a.grade : a.eps / 3;
  Outcome o;
  o.params = {{"mesh", std::filesystem::path(a.mesh).filename().string()}, {"eps", real(a.eps)},
              {"floor", real(a.floor)}, {"spacing", real(spacing)}, {"grade", real(grade)},
              {"alpha1", real(a.alpha1)}, {"alpha2", real(a.alpha2)}};
  const TriMesh4 mesh = read_mesh4(a.mesh);
  validate(mesh);
  const SetSample e = sample_mesh(mesh, spacing, grade);
  const auto [p1, p2] = canonical_pair(clamp_angle(a.alpha1), clamp_angle(a.alpha2));
  ScanConfig cfg;
  cfg.eps = a.eps;
  cfg.floor = a.floor;
  const ScanReport rep = epsilon_process(e, p1, p2, cfg);

  o.table.columns = {"n", "scale", "center_1", "center_2", "center_3", "center_4", "fit_1", "fit_2",
                     "fit_3", "fit_4", "best_distance", "carry_distance", "tolerance"};
  for (const auto& s : rep.steps) {
    std::vector<std::string> row = {std::to_string(s.n), real(s.scale)};
    for (int k = 0; k < 4; ++k) row.push_back(real(s.center[k]));
    for (int k = 0; k < 4; ++k) row.push_back(real(s.fit[k]));
    row.insert(row.end(), {real(s.best_distance), real(s.carry_distance), real(s.tolerance)});
    o.table.add(std::move(row));
  }
  o.record = {{0, "sample_points", std::to_string(e.points.size())},
              {0, "stopped", rep.stopped ? "true" : "false"},
              {0, "floor_hit", rep.floor_hit ? "true" : "false"},
              {0, "steps", std::to_string(rep.steps.size())}};
  if (rep.stopped) {
    o.record.push_back({0, "critical", ""});
    o.record.push_back({1, "r_k", real(rep.r_k)});
    o.record.push_back({1, "o_k", fmt::format("{} {} {} {}", real(rep.o_k[0]), real(rep.o_k[1]),
                                              real(rep.o_k[2]), real(rep.o_k[3]))});
    o.record.push_back({1, "dist_shrunk", real(rep.dist_shrunk)});
    o.record.push_back({1, "dist_double", real(rep.dist_double)});
  }
  return o;
}

struct PlateauArgs {
  double alpha1 = kHalfPi;
  double alpha2 = kHalfPi;
  int n = 256;
  std::vector<double> pinch = {0.0};
  OptimizerConfig optimizer;
  int resolution = 512;
  bool write_mesh = false;
};

Outcome run_plateau(const PlateauArgs& a, std::uint64_t seed, const std::string& out_dir) {
  Outcome o;
  std::string pinch_list;
  for (const double p : a.pinch) pinch_list += (pinch_list.empty() ? "" : ";") + real(p);
  o.params = {{"alpha1", real(a.alpha1)}, {"alpha2", real(a.alpha2)}, {"n", std::to_string(a.n)},
              {"pinch", pinch_list}, {"max_iters", std::to_string(a.optimizer.max_iters)},
              {"step", real(a.optimizer.step)}, {"tol_grad", real(a.optimizer.tol_grad)},
              {"resolution", std::to_string(a.resolution)}};
  std::vector<ExperimentConfig> cfgs;
  for (const double p : a.pinch) {
    ExperimentConfig c;
    c.alpha1 = clamp_angle(a.alpha1);
    c.alpha2 = clamp_angle(a.alpha2);
    c.boundary_segments = a.n;
    c.pinch_radius = p;
    c.optimizer = a.optimizer;
    c.seed = seed;
    c.certificate_resolution = a.resolution;
    cfgs.push_back(c);
  }
  const auto reports = run_sweep(cfgs);

  o.table.columns = {"alpha1", "alpha2", "n", "pinch_radius", "initial_area", "final_area",
                     "certificate_bound", "lambda", "covers_1", "covers_2", "mesh_tolerance",
                     "certificate_tolerance", "iterations", "line_search_failed", "verdict"};
  Table trace;
  trace.columns = {"pinch_radius", "step", "area"};
  for (const auto& r : reports) {
    const auto& c = r.certificate;
    o.table.add({real(r.config.alpha1), real(r.config.alpha2), std::to_string(r.config.boundary_segments),
                 real(r.config.pinch_radius), real(r.initial_area), real(r.final_area), real(c.bound),
                 real(c.lambda), c.covers[0] ? "1" : "0", c.covers[1] ? "1" : "0", real(r.mesh_tolerance),
                 real(c.tolerance), std::to_string(r.area_trace.size() - 1), r.line_search_failed ? "1" : "0",
                 to_string(r.verdict)});
    for (std::size_t i = 0; i < r.area_trace.size(); ++i)
      trace.add({real(r.config.pinch_radius), std::to_string(i), real(r.area_trace[i])});
    o.record.push_back({0, "run", ""});
    o.record.push_back({1, "pinch_radius", real(r.config.pinch_radius)});
    o.record.push_back({1, "final_area", real(r.final_area)});
    o.record.push_back({1, "verdict", to_string(r.verdict)});
  }
  o.extra.emplace_back("trace.csv", std::move(trace));
  if (a.write_mesh) {
    require(!out_dir.empty(), "plateau: --write-mesh needs --out");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    require(!ec, "cannot create output directory " + out_dir);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const std::string name = fmt::format("plateau_{}.mesh4", i);
      write_mesh4((std::filesystem::path(out_dir) / name).string(), reports[i].final_mesh);
      o.files.push_back(name);
    }
  }
  return o;
}

void emit(const std::string& command, const Common& common, Outcome& o, const std::string& started) {
  o.table.sort_rows();
  Manifest m;
  m.command = command;
  m.params = o.params;
  m.version = kVersion;
  m.seed = common.seed;
  m.started = started;
  const std::string digest = m.digest();
  if (common.out.empty()) {
    std::cout << "# config_digest=" << digest << '\n';
    for (std::size_t i = 0; i < o.table.columns.size(); ++i) std::cout << (i ? "," : "") << o.table.columns[i];
    std::cout << '\n';
    for (const auto& r : o.table.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i];
      std::cout << '\n';
    }
    for (const auto& l : o.record) std::cout << "# " << std::string(2 * l.depth, ' ') << l.key << ": " << l.value << '\n';
    return;
  }
  const std::filesystem::path dir(common.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, "cannot create output directory " + common.out);
  write_csv((dir / "results.csv").string(), o.table, digest);
  m.outputs.push_back("results.csv");
  for (auto& [name, t] : o.extra) {
    t.sort_rows();
    write_csv((dir / name).string(), t, digest);
    m.outputs.push_back(name);
  }
  std::vector<RecordLine> rec = {{0, "command", command}, {0, "config_digest", digest},
                                 {0, "version", kVersion}, {0, "results", ""}};
  for (auto l : o.record) {
    ++l.depth;
    rec.push_back(l);
  }
  write_record((dir / "record.txt").string(), rec);
  m.outputs.push_back("record.txt");
  m.outputs.insert(m.outputs.end(), o.files.begin(), o.files.end());
  m.finished = utc_timestamp();
  write_manifest((dir / "manifest.txt").string(), m);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "output directory (default: CSV to stdout)");
  sub->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  sub->add_option("--config", c.config, "flat key=value file using the flag names as keys");
}

// Splices the key=value lines of every --config file into the arguments as
// long flags. Keys given explicitly on the command line win. Flags without a
// value take true/false.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      files.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      files.push_back(args[i].substr(9));
    } else {
      out.push_back(args[i]);
    }
  }
  auto given = [&](const std::string& flag) {
    for (const auto& a : out)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> extra;
  for (const auto& f : files) {
    std::ifstream in(f);
    require(in.good(), "cannot read config file " + f);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto eq = line.find('=');
      require(eq != std::string::npos, fmt::format("{}:{}: expected key=value", f, lineno));
      auto trim = [](std::string v) {
        const auto a = v.find_first_not_of(" \t\r"), b = v.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
      require(!key.empty(), fmt::format("{}:{}: empty key", f, lineno));
      const std::string flag = "--" + key;
      if (given(flag)) continue;
      if (value == "true") {
        extra.push_back(flag);
      } else if (value != "false") {
        extra.push_back(flag);
        extra.push_back(value);
      }
    }
  }
  // options follow the subcommand, which is the first argument
  out.insert(out.begin() + std::min<std::size_t>(out.size(), 1), extra.begin(), extra.end());
  return out;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"planes4: numerical checks for unions of two planes in R^4"};
  app.name("planes4");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  const double nan = std::nan("");

  double b_a1 = nan, b_a2 = nan;
  int b_angle_grid = 0;
  SearchConfig b_search;
  auto* bounds = app.add_subcommand("bounds", "supremum of the projection sum over unit simple 2-vectors");
  bounds->add_option("--alpha1", b_a1, "smaller characteristic angle (radians)");
  bounds->add_option("--alpha2", b_a2, "larger characteristic angle (radians)");
  bounds->add_option("--angle-grid", b_angle_grid, "sweep all pairs k pi/(2K), 1 <= i <= j <= K");
  bounds->add_option("--grid", b_search.grid, "nodes per angle of the coarse grid")->capture_default_str();
  bounds->add_option("--ascent-steps", b_search.ascent_steps, "coordinate ascent iterations")->capture_default_str();
  bounds->footer(kBoundsColumns);
  add_common(bounds, common);

  int w_samples = 1000;
  double w_tol = 1e-9;
  auto* wirt = app.add_subcommand("wirtinger", "equality set of the orthogonal projection bound");
  wirt->add_option("--samples", w_samples, "draws of each kind")->capture_default_str();
  wirt->add_option("--tolerance", w_tol, "membership tolerance")->capture_default_str();
  wirt->footer(kWirtingerColumns);
  add_common(wirt, common);

  AnnulusArgs an;
  double an_eps = nan;
  auto* annulus = app.add_subcommand("annulus", "Dirichlet energies and lower bounds on annuli");
  annulus->add_option("--mode", an.mode, "exact | reflection | log | fd")->capture_default_str();
  annulus->add_option("--r0", an.r0, "inner radius")->capture_default_str();
  annulus->add_option("--delta", an.delta, "log mode: inner boundary value is delta * r0")->capture_default_str();
  annulus->add_option("--eps", an_eps, "log mode: optional eps in (0, 1)");
  annulus->add_option("--mean", an.mean, "boundary mean")->capture_default_str();
  annulus->add_option("--cos", an.cos_terms, "cosine coefficients as n:value,...");
  annulus->add_option("--sin", an.sin_terms, "sine coefficients as n:value,...");
  annulus->add_option("--order", an.order, "Fourier truncation order")->capture_default_str();
  annulus->add_option("--radial", an.radial, "fd mode: radial nodes")->capture_default_str();
  annulus->add_option("--angular", an.angular, "fd mode: angular nodes")->capture_default_str();
  annulus->add_option("--center-x", an.center_x, "reflection mode: circle center")->capture_default_str();
  annulus->add_option("--center-y", an.center_y, "reflection mode: circle center")->capture_default_str();
  annulus->footer(kAnnulusColumns);
  add_common(annulus, common);

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "dyadic epsilon-process on a MESH4 surface");
  scan->add_option("--mesh", sc.mesh, "MESH4 file")->required();
  scan->add_option("--eps", sc.eps, "closeness threshold")->capture_default_str();
  scan->add_option("--floor", sc.floor, "smallest scale examined")->capture_default_str();
  scan->add_option("--spacing", sc.spacing, "sample spacing near the origin (default eps * floor / 2)");
  scan->add_option("--grade", sc.grade, "spacing growth per unit distance (default eps / 3)");
  scan->add_option("--alpha1", sc.alpha1, "plane pair angles")->capture_default_str();
  scan->add_option("--alpha2", sc.alpha2, "plane pair angles")->capture_default_str();
  scan->footer(kScanColumns);
  add_common(scan, common);

  PlateauArgs pl;
  auto* plateau = app.add_subcommand("plateau", "area minimization of pinched competitors");
  plateau->add_option("--alpha1", pl.alpha1, "smaller characteristic angle")->capture_default_str();
  plateau->add_option("--alpha2", pl.alpha2, "larger characteristic angle")->capture_default_str();
  plateau->add_option("--n", pl.n, "boundary segments per circle")->capture_default_str();
  plateau->add_option("--pinch", pl.pinch, "pinch radii, comma separated")->delimiter(',')->capture_default_str();
  plateau->add_option("--max-iters", pl.optimizer.max_iters, "descent iterations")->capture_default_str();
  plateau->add_option("--step", pl.optimizer.step, "initial step")->capture_default_str();
  plateau->add_option("--tol-grad", pl.optimizer.tol_grad, "gradient tolerance")->capture_default_str();
  plateau->add_option("--resolution", pl.resolution, "shadow cells per unit")->capture_default_str();
  plateau->add_flag("--write-mesh", pl.write_mesh, "write final meshes to the output directory");
  plateau->footer(kPlateauColumns);
  add_common(plateau, common);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string started = utc_timestamp();
  try {
    Outcome o;
    std::string command;
    if (*bounds) {
      command = "bounds";
      b_search.seed = common.seed;
      o = run_bounds(b_a1, b_a2, b_angle_grid, b_search);
    } else if (*wirt) {
      command = "wirtinger";
      o = run_wirtinger(w_samples, w_tol, common.seed);
    } else if (*annulus) {
      command = "annulus";
      if (!std::isnan(an_eps)) an.eps = an_eps;
      o = run_annulus(an);
    } else if (*scan) {
      command = "scan";
      o = run_scan(sc);
    } else {
      command = "plateau";
      o = run_plateau(pl, common.seed, common.out);
    }
    emit(command, common, o, started);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace planes4
