// Acceptance criteria 1-11.  Prints one PASS/FAIL line per criterion with the
// measured quantities and the wall time, and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sbm/bernstein.hpp"
#include "sbm/cli.hpp"
#include "sbm/densities.hpp"
#include "sbm/harnack.hpp"
#include "sbm/io.hpp"
#include "sbm/kernels.hpp"
#include "sbm/ladder.hpp"
#include "sbm/montecarlo.hpp"
#include "sbm/oracles.hpp"

using namespace sbm;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0.0) v.require(secs < budget_seconds, "runtime budget");
  if (!v.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              v.detail.str().c_str());
  std::fflush(stdout);
}

std::string name_of(const Cbf& phi) { return phi.to_json().dump(); }

double rel(double a, double b) { return std::abs(a / b - 1.0); }

double refinement_change(const RatioSpread& coarse, const RatioSpread& fine) {
  return std::abs(fine.spread() - coarse.spread()) / coarse.spread();
}

std::string slurp_or_empty(const std::filesystem::path& p) {
  try {
    return read_file(p.string());
  } catch (const std::exception&) {
    return {};
  }
}

}  // namespace

int main() {
  const unsigned threads = resolve_thread_count(0);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  criterion(1, "stable Green function, alpha = 1, d = 3", 10.0, [](Outcome& v) {
    const auto phi = Cbf::stable(1.0);
    const double target = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    double worst = 0.0;
    for (double r : {0.01, 0.1, 1.0}) worst = std::max(worst, rel(green_function(phi, 3, r) * r * r, target));
    v.detail << " max rel err " << worst;
    v.require(worst < 5e-3, "G r^2 within 0.5%");
  });

  criterion(2, "stable jump kernel, alpha = 1, d = 1", 5.0, [](Outcome& v) {
    const auto phi = Cbf::stable(1.0);
    const double j1 = jump_kernel(phi, 1, 1.0);
    const auto ds = j_doubling_and_shift(phi, 1, 1.0);
    v.detail << " j(1)*pi " << j1 * std::numbers::pi << ", doubling " << ds.c4;
    v.require(rel(j1, 1.0 / std::numbers::pi) < 1e-3, "j(1) within 0.1%");
    v.require(std::abs(ds.c4 - 4.0) < 1e-4, "doubling constant 4");
  });

  // Stable kinds have Gamma-function shortcuts for chi; check the quadrature.
  LadderOptions quad;
  quad.closed_form = false;

  criterion(3, "ladder exponent of stable exponents", 1.0, [quad](Outcome& v) {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 1.5}) {
      const auto phi = Cbf::stable(a);
      for (double l : {0.1, 1.0, 10.0, 100.0}) {
        worst = std::max(worst, std::abs(ladder_exponent_chi(phi, l, quad) / std::pow(l, 0.5 * a) - 1.0));
      }
    }
    v.detail << " max |chi/l^(a/2) - 1| " << worst;
    v.require(worst < 1e-6, "identity within 1e-6");
  });

  criterion(4, "ladder sandwich over the catalog", 0.0, [](Outcome& v) {
    const auto grid = log_grid(1e-2, 1e4, 40);
    double lo = kInf;
    double hi = 0.0;
    for (const auto& phi : standard_catalog()) {
      const auto s = chi_sandwich_check(phi, grid);
      lo = std::min(lo, s.min);
      hi = std::max(hi, s.max);
      v.require(s.min >= sandwich_lower() - 1e-9 && s.max <= sandwich_upper() + 1e-9, name_of(phi));
    }
    v.detail << " range [" << lo << ", " << hi << "] within [" << sandwich_lower() << ", "
             << sandwich_upper() << "]";
  });

  criterion(5, "potential density upper bound over the catalog", 0.0, [](Outcome& v) {
    const auto grid = log_grid(1e-6, 1.0, 50);
    double worst = 0.0;
    for (const auto& phi : standard_catalog()) {
      const double m = zahle_upper_check(DensityEvaluator{phi}, grid);
      worst = std::max(worst, m);
      v.require(m <= zahle_constant() + 1e-6, name_of(phi));
    }
    v.detail << " max u t phi(1/t) " << worst << " <= " << zahle_constant();
  });

  criterion(6, "asymptotic-ratio suites over the catalog", 0.0, [threads](Outcome& v) {
    const int d = 3;
    double worst_spread = 0.0, worst_change = 0.0;
    auto record = [&](const RatioSpread& coarse, const RatioSpread& fine, const std::string& tag) {
      const double change = refinement_change(coarse, fine);
      worst_spread = std::max({worst_spread, coarse.spread(), fine.spread()});
      worst_change = std::max(worst_change, change);
      v.require(coarse.spread() < 1e3 && fine.spread() < 1e3, tag + " spread");
      v.require(change < 0.05, tag + " refinement");
    };
    const auto t_coarse = log_grid(1e-6, 1.0, 50);
    const auto t_fine = refine_log_grid(1e-6, 1.0, 50);
    const auto r_coarse = log_grid(1e-3, 1.0, 50);
    const auto r_fine = refine_log_grid(1e-3, 1.0, 50);
    for (const auto& phi : standard_catalog()) {
      const auto tag = name_of(phi);
      const DensityEvaluator ev{phi};
      record(u_asymptotic_ratio(ev, t_coarse), u_asymptotic_ratio(ev, t_fine), tag + " u");
      record(mu_asymptotic_ratio(phi, t_coarse), mu_asymptotic_ratio(phi, t_fine), tag + " mu");
      record(g_asymptotic_ratio(phi, d, r_coarse, threads), g_asymptotic_ratio(phi, d, r_fine, threads),
             tag + " G");
      record(j_asymptotic_ratio(phi, d, r_coarse, threads), j_asymptotic_ratio(phi, d, r_fine, threads),
             tag + " j");
    }
    v.detail << " max spread " << worst_spread << ", max refinement change " << worst_change;
  });

  criterion(7, "Cauchy exit time from (-1, 1)", 120.0, [threads](Outcome& v) {
    const auto phi = Cbf::stable(1.0);
    PathConfig cfg;
    cfg.paths = 100000;
    cfg.epsilon = 1e-4;
    cfg.step = 1e-3;
    cfg.seed = 7;
    cfg.threads = threads;
    cfg.sampler = SamplerMode::compound_poisson;
    const Ball ball{Point{}, 1.0};
    const double bound_factor = 2.0 * renewal_function_V(phi, 2.0);
    for (double x : {0.0, 0.5, 0.9}) {
      const auto run = sample_exit(phi, 1, ball, Point{x, 0.0, 0.0}, cfg);
      const double bound = bound_factor * renewal_function_V(phi, 1.0 - x);
      v.detail << " x=" << x << ": " << run.tau.mean << " +- " << run.tau.std_error << " (bound "
               << bound << ", exact " << stable_ball_exit_time(1, 1.0, 1.0, x) << ");";
      if (x == 0.0) v.require(std::abs(run.tau.mean - 1.0) < 0.05, "mean within 5% of 1");
      v.require(run.tau.mean <= bound + 3.0 * run.tau.std_error, "upper bound");
      v.require(run.censored == 0, "no censored paths");
    }
  });

  criterion(8, "Cauchy exit distribution from (-1, 1)", 120.0, [threads](Outcome& v) {
    const auto phi = Cbf::stable(1.0);
    PathConfig cfg;
    cfg.paths = 100000;
    cfg.step = 1e-3;
    cfg.seed = 8;
    cfg.threads = threads;
    cfg.sampler = SamplerMode::exact_stable;
    std::vector<double> edges;
    for (int k = 0; k <= 10; ++k) edges.push_back(1.1 + 0.19 * k);
    const auto h = exit_distribution_histogram(phi, 1, Ball{Point{}, 1.0}, Point{}, edges, cfg);
    double worst = 0.0;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      const double exact = 2.0 * stable_interval_exit_mass(1.0, -1.0, 1.0, 0.0, edges[b], edges[b + 1]);
      worst = std::max(worst, rel(h.mass[b], exact));
    }
    v.detail << " sup relative bin error " << worst << " over " << h.n << " paths";
    v.require(worst < 0.1, "sup relative error below 10%");
  });

  criterion(9, "half-line Green function of the Cauchy process", 1.0, [](Outcome& v) {
    const auto phi = Cbf::stable(1.0);
    const double g = halfline_green(phi, 1.0, 2.0);
    const double exact = 2.0 / std::numbers::pi * std::log(1.0 + std::numbers::sqrt2);
    double asym = 0.0;
    const double pts[] = {0.3, 0.7, 1.0, 2.0, 4.5};
    for (double x : pts) {
      for (double y : pts) {
        if (x != y) asym = std::max(asym, std::abs(halfline_green(phi, x, y) - halfline_green(phi, y, x)));
      }
    }
    v.detail << " G(1,2) " << g << " vs " << exact << ", max asymmetry " << asym;
    v.require(std::abs(g - exact) < 1e-4, "value within 1e-4");
    v.require(asym < 1e-6, "symmetry within 1e-6");
  });

  criterion(10, "Harnack and boundary Harnack stability", 600.0, [threads](Outcome& v) {
    PathConfig cfg;
    cfg.paths = 8000;
    cfg.step = 1e-2;
    cfg.seed = 10;
    cfg.threads = threads;
    for (double a : {0.5, 1.0, 1.5}) {
      for (double r : {0.01, 0.05, 0.1}) {
        const auto s = harnack_stability(Cbf::stable(a), 2, r, cfg, 0.2);
        v.detail << " a=" << a << ",r=" << r << ": " << s.ratio << " (delta " << s.refinement_delta
                 << ");";
        std::ostringstream tag;
        tag << "Harnack a=" << a << " r=" << r;
        v.require(s.finite && s.pass, tag.str());
      }
    }
    PathConfig bcfg = cfg;
    bcfg.paths = 20000;
    bcfg.step = 1e-3;
    const double r = 0.25;
    const auto phi = Cbf::stable(1.0);
    const auto b = bhp_ratio_check(phi, BhpDomain::interval, r,
                                   default_bhp_probes(BhpDomain::interval, r), bcfg);
    v.detail << " BHP spread " << b.spread << " (x4 paths " << b.spread_more_paths << ", oracle "
             << b.oracle_spread << ", verdict " << to_string(b.verdict) << ")";
    v.require(b.spread < 10.0 && b.spread_more_paths < 10.0, "BHP spread below 10");
    v.require(b.verdict == sbm::Verdict::pass, "BHP stable under more paths");
  });

  criterion(11, "bit-identical outputs on re-run", 0.0, [](Outcome& v) {
    const auto dir = std::filesystem::temp_directory_path() / "sbm_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> commands{
        {"simulate", "exit", "--kind", "stable", "--alpha", "1", "--dim", "1", "--radius", "1",
         "--paths", "20000", "--seed", "7", "--dump"},
        {"simulate", "histogram", "--kind", "stable", "--alpha", "1", "--paths", "20000", "--seed",
         "8"},
        {"kernel", "--kind", "stable", "--alpha", "1", "--dim", "3", "--rmin", "0.01", "--rmax",
         "1", "--points", "5"},
        {"check", "bhp", "--kind", "stable", "--alpha", "1", "--r", "0.25", "--paths", "2000",
         "--seed", "10"},
    };
    int idx = 0;
    for (auto args : commands) {
      const auto out_a = dir / ("a" + std::to_string(idx) + ".out");
      const auto out_b = dir / ("b" + std::to_string(idx) + ".out");
      const bool dump = args.back() == "--dump";
      auto with = [&](const std::filesystem::path& out) {
        auto a = args;
        if (dump) a.push_back((out.string() + ".paths.csv"));
        a.insert(a.end(), {"--out", out.string()});
        std::ostringstream sink_out, sink_err;
        return cli::run(a, sink_out, sink_err);
      };
      const int ca = with(out_a);
      const int cb = with(out_b);
      v.require(ca == cb, "exit codes agree for " + args[0]);
      const auto a = slurp_or_empty(out_a);
      const auto b = slurp_or_empty(out_b);
      v.require(!a.empty() && a == b, "identical output for " + args[0] + " " + args[1]);
      if (dump) {
        const auto pa = slurp_or_empty(out_a.string() + ".paths.csv");
        v.require(!pa.empty() && pa == slurp_or_empty(out_b.string() + ".paths.csv"),
                  "identical per-path dump");
      }
      std::filesystem::remove(out_a);
      std::ostringstream sink_out, sink_err;
      v.require(cli::run({"replay", out_a.string() + ".manifest.json"}, sink_out, sink_err) == ca,
                "replay exit code");
      v.require(slurp_or_empty(out_a) == b, "replay reproduces " + args[0]);
      ++idx;
    }
    v.detail << " " << commands.size() << " commands compared, including manifest replay";
    std::filesystem::remove_all(dir);
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
