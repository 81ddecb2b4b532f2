#include "sbm/cli.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sbm/bernstein.hpp"
#include "sbm/densities.hpp"
#include "sbm/errors.hpp"
#include "sbm/harnack.hpp"
#include "sbm/io.hpp"
#include "sbm/kernels.hpp"
#include "sbm/ladder.hpp"
#include "sbm/montecarlo.hpp"
#include "sbm/oracles.hpp"

namespace sbm::cli {

namespace {

using nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string phi_json;
  std::string kind;
  double alpha = kNaN, m = kNaN, beta = kNaN, gamma = kNaN, a = kNaN;
  int n = 0;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--phi", c.phi_json, "Catalog entry as JSON, e.g. {\"kind\":\"stable\",\"alpha\":1}");
  sub->add_option("--kind", c.kind, "Catalog kind (alternative to --phi)")
      ->check(CLI::IsMember({"stable", "relativistic", "sum", "log_up", "log_down",
                             "geometric_example"}));
  sub->add_option("--alpha", c.alpha, "Index alpha");
  sub->add_option("--m", c.m, "Mass parameter (relativistic)");
  sub->add_option("--beta", c.beta, "Second exponent (sum, log_down)");
  sub->add_option("--gamma", c.gamma, "Log exponent (log_up)");
  sub->add_option("--n", c.n, "Truncation of the geometric example (0: default)");
  sub->add_option("--killing", c.a, "Add a killing rate");
  sub->add_option("--out", c.out_path, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--threads", c.threads, "Worker threads (0: $SBM_THREADS or all cores)");
}

Cbf make_phi(const Common& c) {
  std::optional<Cbf> phi;
  if (!c.phi_json.empty()) {
    if (!c.kind.empty()) throw ConfigError("give either --phi or --kind, not both");
    phi = cbf_from_json_text(c.phi_json);
  } else {
    if (c.kind.empty()) throw ConfigError("an exponent is required: use --phi or --kind");
    json j{{"kind", c.kind}};
    const std::pair<const char*, double> fields[] = {
        {"alpha", c.alpha}, {"m", c.m}, {"beta", c.beta}, {"gamma", c.gamma}};
    for (const auto& [key, value] : fields) {
      if (!std::isnan(value)) j[key] = value;
    }
    if (c.n > 0) j["n"] = c.n;
    phi = cbf_from_json(j);
  }
  if (!std::isnan(c.a)) phi = Cbf::killed_shift(*phi, c.a);
  return *phi;
}

std::vector<double> grid_of(const std::vector<double>& explicit_values, double lo, double hi,
                            std::size_t points) {
  if (!explicit_values.empty()) return explicit_values;
  return log_grid(lo, hi, points);
}

// Everything a handler produces: the payload and whether a check passed.
struct Outcome {
  std::string content;
  bool pass = true;
};

Outcome table_outcome(const Table& t, const Common& c) {
  if (c.format == "json") return {to_json(t).dump(2) + "\n", true};
  return {to_csv(t), true};
}

Outcome report_outcome(const json& report) {
  return {report.dump(2) + "\n", report.value("pass", true)};
}

json spread_json(const RatioSpread& s) {
  return {{"min", s.min}, {"max", s.max}, {"spread", s.spread()}};
}

// ---------------------------------------------------------------------------

struct GridOpts {
  std::vector<double> values;
  double lo = 1.0, hi = 100.0;
  std::size_t points = 3;
};

void add_grid(CLI::App* sub, GridOpts& g, const std::string& name, const std::string& lo_name,
              const std::string& hi_name, double lo, double hi, std::size_t points) {
  g.lo = lo;
  g.hi = hi;
  g.points = points;
  sub->add_option(name, g.values, "Explicit evaluation points");
  sub->add_option(lo_name, g.lo, "Lower end of the log grid");
  sub->add_option(hi_name, g.hi, "Upper end of the log grid");
  sub->add_option("--points", g.points, "Points in the log grid")->check(CLI::PositiveNumber);
}

Outcome cmd_phi(const Common& c, const GridOpts& g) {
  const auto phi = make_phi(c);
  Table t{{"lambda", "phi", "psi", "ell"}, {}};
  for (double l : grid_of(g.values, g.lo, g.hi, g.points)) {
    const double v = eval_phi(phi, l);
    t.rows.push_back({l, v, l / v, v / std::pow(l, 0.5 * phi.index())});
  }
  return table_outcome(t, c);
}

Outcome cmd_density(const Common& c, const GridOpts& g, const std::string& inversion) {
  const auto phi = make_phi(c);
  DensityEvaluator ev{phi};
  if (inversion == "talbot") ev.mode = InversionMode::talbot_contour;
  if (inversion == "gaver") ev.mode = InversionMode::gaver_stehfest;
  Table t{{"t", "u", "mu", "mu_tail", "zahle"}, {}};
  for (double s : grid_of(g.values, g.lo, g.hi, g.points)) {
    const double u = potential_density_u(ev, s);
    t.rows.push_back({s, u, eval_levy_density(phi, s), levy_tail(phi, s), u * s * phi(1.0 / s)});
  }
  return table_outcome(t, c);
}

Outcome cmd_kernel(const Common& c, const GridOpts& g, int dim) {
  const auto phi = make_phi(c);
  const auto radii = grid_of(g.values, g.lo, g.hi, g.points);
  const auto tab = build_kernel_table(phi, dim, radii, resolve_thread_count(c.threads));
  Table t{{"r", "G", "J", "g_ratio", "j_ratio"}, {}};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double rd = std::pow(r, dim);
    const double p = phi(1.0 / (r * r));
    const double G = tab.g_values.empty() ? kNaN : tab.g_values[i];
    t.rows.push_back({r, G, tab.j_values[i], G * rd * p, tab.j_values[i] * rd / p});
  }
  return table_outcome(t, c);
}

Outcome cmd_ladder(const Common& c, const std::string& quantity, const GridOpts& g, double x) {
  const auto phi = make_phi(c);
  const auto pts = grid_of(g.values, g.lo, g.hi, g.points);
  Table t;
  if (quantity == "green") {
    t.columns = {"x", "y", "G"};
    for (double y : pts) t.rows.push_back({x, y, halfline_green(phi, x, y)});
    return table_outcome(t, c);
  }
  t.columns = {quantity == "chi" ? "lambda" : "t", quantity};
  for (double p : pts) {
    double v = 0.0;
    if (quantity == "chi") v = ladder_exponent_chi(phi, p);
    if (quantity == "v") v = ladder_potential_density(phi, p);
    if (quantity == "V") v = renewal_function_V(phi, p);
    t.rows.push_back({p, v});
  }
  return table_outcome(t, c);
}

// ---------------------------------------------------------------------------

struct CheckOpts {
  std::string name;
  int dim = 0;
  double r = 0.0;
  std::vector<double> radii{0.25, 0.5, 1.0};
  std::size_t paths = 2000;
  double step = 0.0;
  double K = 1.0;
  std::string domain = "interval";
};

PathConfig check_config(const Common& c, const CheckOpts& o, double default_step) {
  PathConfig cfg;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.paths = o.paths;
  cfg.step = o.step > 0.0 ? o.step : default_step;
  return cfg;
}

json ratio_suite(const RatioSpread& coarse, const RatioSpread& fine) {
  const double change = std::abs(fine.spread() - coarse.spread()) / coarse.spread();
  return {{"spread", coarse.spread()},
          {"spread_refined", fine.spread()},
          {"min", coarse.min},
          {"max", coarse.max},
          {"refinement_change", change},
          {"pass", coarse.spread() < 1e3 && fine.spread() < 1e3 && change < 0.05}};
}

Outcome cmd_check(const Common& c, const CheckOpts& o) {
  const auto phi = make_phi(c);
  json rep{{"check", o.name}, {"phi", phi.to_json()}};
  if (o.name == "sandwich") {
    const auto s = chi_sandwich_check(phi, log_grid(1e-2, 1e4, 40));
    rep.update(spread_json(s));
    rep["lower"] = sandwich_lower();
    rep["upper"] = sandwich_upper();
    rep["pass"] = s.min >= sandwich_lower() - 1e-9 && s.max <= sandwich_upper() + 1e-9;
  } else if (o.name == "zahle") {
    const double mx = zahle_upper_check(DensityEvaluator{phi}, log_grid(1e-6, 1.0, 50));
    rep["max"] = mx;
    rep["bound"] = zahle_constant();
    rep["pass"] = mx <= zahle_constant() + 1e-6;
  } else if (o.name == "ratios") {
    const int d = o.dim > 0 ? o.dim : 3;
    const unsigned threads = resolve_thread_count(c.threads);
    const DensityEvaluator ev{phi};
    rep["dim"] = d;
    rep["u"] = ratio_suite(u_asymptotic_ratio(ev, log_grid(1e-6, 1.0, 50)),
                           u_asymptotic_ratio(ev, refine_log_grid(1e-6, 1.0, 50)));
    rep["mu"] = ratio_suite(mu_asymptotic_ratio(phi, log_grid(1e-6, 1.0, 50)),
                            mu_asymptotic_ratio(phi, refine_log_grid(1e-6, 1.0, 50)));
    bool pass = rep["u"]["pass"].get<bool>() && rep["mu"]["pass"].get<bool>();
    bool transient = false;
    try {
      transient = transience_check(phi, d);
    } catch (const UndecidableError&) {
    }
    if (transient) {
      rep["G"] = ratio_suite(g_asymptotic_ratio(phi, d, log_grid(1e-3, 1.0, 50), threads),
                             g_asymptotic_ratio(phi, d, refine_log_grid(1e-3, 1.0, 50), threads));
      pass = pass && rep["G"]["pass"].get<bool>();
    } else {
      rep["G"] = "skipped: not known to be transient";
    }
    rep["J"] = ratio_suite(j_asymptotic_ratio(phi, d, log_grid(1e-3, 1.0, 50), threads),
                           j_asymptotic_ratio(phi, d, refine_log_grid(1e-3, 1.0, 50), threads));
    rep["pass"] = pass && rep["J"]["pass"].get<bool>();
  } else if (o.name == "doubling") {
    const int d = o.dim > 0 ? o.dim : 1;
    const auto ds = j_doubling_and_shift(phi, d, o.K);
    rep["dim"] = d;
    rep["c4"] = ds.c4;
    rep["c5"] = ds.c5;
    rep["pass"] = std::isfinite(ds.c4) && std::isfinite(ds.c5) && ds.c4 > 0.0 && ds.c5 > 0.0;
  } else if (o.name == "harnack") {
    const int d = o.dim > 0 ? o.dim : 2;
    const double r = o.r > 0.0 ? o.r : 0.05;
    const auto s = harnack_stability(phi, d, r, check_config(c, o, 1e-2));
    rep.update({{"dim", d},
                {"r", r},
                {"paths", o.paths},
                {"ratio", s.ratio},
                {"ratio_more_paths", s.ratio_more_paths},
                {"ratio_finer_grid", s.ratio_finer_grid},
                {"refinement_delta", s.refinement_delta},
                {"pass", s.pass}});
  } else if (o.name == "bhp") {
    const double r = o.r > 0.0 ? o.r : 0.25;
    const auto dom = o.domain == "halfdisk" ? BhpDomain::halfdisk : BhpDomain::interval;
    const auto b = bhp_ratio_check(phi, dom, r, default_bhp_probes(dom, r),
                                   check_config(c, o, dom == BhpDomain::interval ? 1e-3 : 1e-2));
    rep.update({{"domain", o.domain},
                {"r", r},
                {"paths", o.paths},
                {"ratio", b.spread},
                {"ratio_more_paths", b.spread_more_paths},
                {"refinement_delta", b.refinement_delta},
                {"worst_relative_error", b.worst_relative_error},
                {"verdict", to_string(b.verdict)},
                {"pass", b.verdict != Verdict::fail}});
    if (b.oracle_spread > 0.0) rep["oracle_ratio"] = b.oracle_spread;
  } else if (o.name == "carleson") {
    const double r = o.r > 0.0 ? o.r : 0.25;
    const auto k = carleson_check(phi, 0.0, 1.0, r, check_config(c, o, 1e-2));
    rep.update({{"r", r},
                {"paths", o.paths},
                {"ratio", k.floor},
                {"ratio_more_paths", k.floor_more_paths},
                {"refinement_delta", k.refinement_delta},
                {"worst_relative_error", k.worst_relative_error},
                {"verdict", to_string(k.verdict)},
                {"pass", k.verdict != Verdict::fail}});
  } else if (o.name == "exit") {
    const int d = o.dim > 0 ? o.dim : 1;
    const auto e = exit_time_bounds_check(phi, d, o.radii, check_config(c, o, 1e-3));
    json rows = json::array();
    for (const auto& row : e.rows) {
      rows.push_back({{"r", row.r},
                      {"mean_center", row.at_center.mean},
                      {"se_center", row.at_center.std_error},
                      {"scaled", row.scaled},
                      {"offset", row.offset},
                      {"mean_offset", row.at_offset.mean},
                      {"se_offset", row.at_offset.std_error},
                      {"bound", row.bound},
                      {"bound_holds", row.bound_holds}});
    }
    rep["dim"] = d;
    rep["rows"] = rows;
    rep["scaled_window"] = spread_json(e.scaled_window);
    rep["pass"] = e.pass;
  }
  return report_outcome(rep);
}

// ---------------------------------------------------------------------------

struct SimOpts {
  std::string what;
  int dim = 1;
  double radius = 1.0;
  std::vector<double> x0;
  std::size_t paths = 10000;
  double eps = 1e-4;
  double step = 1e-3;
  double horizon = 50.0;
  double dt = 1.0;
  std::string sampler = "auto";
  std::string dump;
  std::vector<double> edges;
};

Outcome cmd_simulate(const Common& c, const SimOpts& o) {
  const auto phi = make_phi(c);
  if (o.dim < 1 || o.dim > 3) throw ConfigError("--dim must be 1, 2 or 3");
  PathConfig cfg;
  cfg.epsilon = o.eps;
  cfg.step = o.step;
  cfg.horizon = o.horizon;
  cfg.seed = c.seed;
  cfg.paths = o.paths;
  cfg.threads = c.threads;
  cfg.sampler = o.sampler == "exact"  ? SamplerMode::exact_stable
                : o.sampler == "cp"   ? SamplerMode::compound_poisson
                                      : SamplerMode::automatic;
  validate(cfg);
  if (o.x0.size() > static_cast<std::size_t>(o.dim)) throw ConfigError("--x0 has too many coordinates");
  Point x0{};
  for (std::size_t i = 0; i < o.x0.size(); ++i) x0[i] = o.x0[i];
  const Ball ball{Point{}, o.radius};
  const auto* stable = std::get_if<kind::Stable>(&phi.kind());

  if (o.what == "increments") {
    Table t{{"path", "increment"}, {}};
    const auto v = sample_subordinator_increments(phi, o.dt, cfg);
    for (std::size_t i = 0; i < v.size(); ++i) t.rows.push_back({static_cast<double>(i), v[i]});
    return table_outcome(t, c);
  }
  if (o.what == "histogram") {
    std::vector<double> edges = o.edges;
    if (edges.empty()) {
      for (int k = 0; k <= 10; ++k) edges.push_back(o.radius * (1.1 + 0.19 * k));
    }
    const auto h = exit_distribution_histogram(phi, o.dim, ball, x0, edges, cfg);
    Table t{{"lo", "hi", "mass", "std_error", "oracle"}, {}};
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      double oracle = kNaN;
      if (stable != nullptr && o.dim == 1) {
        oracle = stable_interval_exit_mass(stable->alpha, -o.radius, o.radius, x0[0], edges[b],
                                           edges[b + 1]) +
                 stable_interval_exit_mass(stable->alpha, -o.radius, o.radius, x0[0],
                                           -edges[b + 1], -edges[b]);
      }
      t.rows.push_back({edges[b], edges[b + 1], h.mass[b], h.std_error[b], oracle});
    }
    return table_outcome(t, c);
  }
  const auto run = sample_exit(phi, o.dim, ball, x0, cfg);
  json rep{{"mean", run.tau.mean},
           {"std_error", run.tau.std_error},
           {"n", run.tau.n},
           {"censored", run.censored},
           {"seed", c.seed},
           {"paths", o.paths}};
  if (stable != nullptr) {
    rep["oracle"] = stable_ball_exit_time(o.dim, stable->alpha, o.radius, norm(x0, o.dim));
  }
  if (!o.dump.empty()) {
    Table t{{"path", "tau", "x1", "x2", "x3", "exited_by_jump", "censored"}, {}};
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
      const auto& s = run.samples[i];
      t.rows.push_back({static_cast<double>(i), s.tau, s.exit_position[0], s.exit_position[1],
                        s.exit_position[2], s.exited_by_jump ? 1.0 : 0.0, s.censored ? 1.0 : 0.0});
    }
    write_file(o.dump, to_csv(t));
  }
  return report_outcome(rep);
}

// ---------------------------------------------------------------------------

void emit(const Common& c, const std::string& command, const std::vector<std::string>& args,
          const Outcome& result, std::ostream& out, std::ostream& err) {
  const auto manifest = make_manifest(command, args, c.seed).dump(2) + "\n";
  if (c.out_path.empty()) {
    out << result.content;
    err << manifest;
  } else {
    write_file(c.out_path, result.content);
    write_file(c.out_path + ".manifest.json", manifest);
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int depth);

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               int depth) {
  CLI::App app{"Subordinate Brownian motion toolkit"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  Common common;
  GridOpts phi_grid, density_grid, kernel_grid, ladder_grid;
  std::string inversion = "closed_form";
  int kernel_dim = 3;
  std::string quantity;
  double green_x = 1.0;
  CheckOpts check;
  SimOpts sim;
  std::string manifest_path;

  auto* phi_cmd = app.add_subcommand("phi", "Tabulate phi, psi = l/phi and ell = phi / l^{alpha/2}");
  add_common(phi_cmd, common);
  add_grid(phi_cmd, phi_grid, "--lambda", "--lmin", "--lmax", 1.0, 100.0, 3);

  auto* density_cmd = app.add_subcommand("density", "Potential and Levy densities");
  add_common(density_cmd, common);
  add_grid(density_cmd, density_grid, "--t", "--tmin", "--tmax", 1e-3, 1.0, 10);
  density_cmd->add_option("--inversion", inversion, "closed_form, talbot or gaver")
      ->check(CLI::IsMember({"closed_form", "talbot", "gaver"}));

  auto* kernel_cmd = app.add_subcommand("kernel", "Green function and jump kernel");
  add_common(kernel_cmd, common);
  add_grid(kernel_cmd, kernel_grid, "--r", "--rmin", "--rmax", 1e-2, 1.0, 10);
  kernel_cmd->add_option("--dim", kernel_dim, "Dimension")->check(CLI::Range(1, 10));

  auto* ladder_cmd = app.add_subcommand("ladder", "Ladder exponent chi, v, V and half-line Green function");
  add_common(ladder_cmd, common);
  ladder_cmd->add_option("quantity", quantity, "chi, v, V or green")
      ->required()
      ->check(CLI::IsMember({"chi", "v", "V", "green"}));
  add_grid(ladder_cmd, ladder_grid, "--lambda,--t,--y", "--min", "--max", 0.1, 100.0, 4);
  ladder_cmd->add_option("--x", green_x, "First argument of the half-line Green function");

  auto* check_cmd = app.add_subcommand("check", "Pass/fail verification reports");
  add_common(check_cmd, common);
  check_cmd->add_option("name", check.name, "Check to run")
      ->required()
      ->check(CLI::IsMember(
          {"sandwich", "zahle", "ratios", "doubling", "harnack", "bhp", "carleson", "exit"}));
  check_cmd->add_option("--dim", check.dim, "Dimension")->check(CLI::Range(1, 3));
  check_cmd->add_option("--r", check.r, "Scale r")->check(CLI::PositiveNumber);
  check_cmd->add_option("--radii", check.radii, "Radii for the exit-time check");
  check_cmd->add_option("--paths", check.paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
  check_cmd->add_option("--step", check.step, "Skeleton step in natural time units")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--K", check.K, "Range of the doubling check")->check(CLI::PositiveNumber);
  check_cmd->add_option("--domain", check.domain, "interval or halfdisk")
      ->check(CLI::IsMember({"interval", "halfdisk"}));

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo experiments");
  add_common(sim_cmd, common);
  sim_cmd->add_option("what", sim.what, "exit, histogram or increments")
      ->required()
      ->check(CLI::IsMember({"exit", "histogram", "increments"}));
  sim_cmd->add_option("--dim", sim.dim, "Dimension")->check(CLI::Range(1, 3));
  sim_cmd->add_option("--radius", sim.radius, "Ball radius")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--x0", sim.x0, "Starting point coordinates");
  sim_cmd->add_option("--paths", sim.paths, "Number of paths")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--eps", sim.eps, "Small-jump truncation");
  sim_cmd->add_option("--step", sim.step, "Skeleton time step");
  sim_cmd->add_option("--horizon", sim.horizon, "Censoring horizon");
  sim_cmd->add_option("--dt", sim.dt, "Increment length (increments)");
  sim_cmd->add_option("--sampler", sim.sampler, "auto, exact or cp")
      ->check(CLI::IsMember({"auto", "exact", "cp"}));
  sim_cmd->add_option("--dump", sim.dump, "Per-path CSV dump (exit)");
  sim_cmd->add_option("--edges", sim.edges, "Histogram bin edges on |y|");

  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "Manifest JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  if (replay_cmd->parsed()) {
    if (depth > 0) throw ConfigError("a manifest cannot replay another manifest");
    json m;
    try {
      m = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    if (!m.contains("flags") || !m["flags"].is_array()) throw ConfigError("manifest has no flags");
    return dispatch(m["flags"].get<std::vector<std::string>>(), out, err, depth + 1);
  }

  Outcome result;
  std::string command;
  if (phi_cmd->parsed()) {
    command = "phi";
    result = cmd_phi(common, phi_grid);
  } else if (density_cmd->parsed()) {
    command = "density";
    result = cmd_density(common, density_grid, inversion);
  } else if (kernel_cmd->parsed()) {
    command = "kernel";
    result = cmd_kernel(common, kernel_grid, kernel_dim);
  } else if (ladder_cmd->parsed()) {
    command = "ladder";
    result = cmd_ladder(common, quantity, ladder_grid, green_x);
  } else if (check_cmd->parsed()) {
    command = "check";
    result = cmd_check(common, check);
  } else {
    command = "simulate";
    result = cmd_simulate(common, sim);
  }
  emit(common, command, args, result, out, err);
  return result.pass ? kPass : kCheckFailed;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int depth) {
  try {
    return run_parsed(args, out, err, depth);
  } catch (const NumericAccuracyError& e) {
    err << "numeric accuracy failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return dispatch(args, out, err, 0);
}

}  // namespace sbm::cli
