#include "sbm/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sbm/errors.hpp"
#include "sbm/oracles.hpp"

namespace sbm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double relative_error(const McEstimate& e) {
  return e.mean > 0.0 ? e.std_error / e.mean : kInf;
}

double max_over_min(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : kInf;
}

double relative_change(double base, double other) {
  if (!std::isfinite(base) || !std::isfinite(other) || base == 0.0) return kInf;
  return std::abs(other - base) / std::abs(base);
}

struct Column {
  std::vector<McEstimate> est;
  double worst = 0.0;
};

// Estimates of a single data member over the grid.
Column column(const std::vector<std::vector<McEstimate>>& table, std::size_t k) {
  Column c;
  for (const auto& row : table) {
    c.est.push_back(row[k]);
    c.worst = std::max(c.worst, relative_error(row[k]));
  }
  return c;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<std::vector<McEstimate>> mc_harmonic(const Cbf& phi, int d, const HarmonicProbe& probe,
                                                 const PathConfig& cfg) {
  validate(cfg);
  if (probe.data.empty()) throw ConfigError("mc_harmonic: empty data family");
  const SubordinatorSampler sampler(phi, cfg.epsilon, cfg.sampler);
  std::vector<std::vector<McEstimate>> out;
  out.reserve(probe.grid.size());
  for (const auto& x : probe.grid) {
    const auto run = sample_exit(sampler, d, probe.domain, x, cfg);
    std::vector<McEstimate> row;
    row.reserve(probe.data.size());
    std::vector<double> values;
    values.reserve(run.samples.size());
    for (const auto& data : probe.data) {
      values.clear();
      for (const auto& s : run.samples) {
        if (!s.censored) values.push_back(data(s.exit_position));
      }
      row.push_back(estimate_of(values, cfg.seed, run.censored));
    }
    out.push_back(std::move(row));
  }
  return out;
}

PathConfig natural_units(const Cbf& phi, const PathConfig& cfg, double length) {
  if (!(length > 0.0)) throw DomainError("natural_units: length must be positive");
  const double scale = 1.0 / phi(1.0 / (length * length));
  PathConfig c = cfg;
  c.step = cfg.step * scale;
  c.horizon = cfg.horizon * scale;
  c.epsilon = cfg.epsilon * std::min(length * length, 1.0);
  return c;
}

std::vector<Point> harnack_grid(int d, double r, int level) {
  if (d < 1 || d > 3) throw DomainError("harnack_grid: d must be 1, 2 or 3");
  if (level < 0 || level > 4) throw DomainError("harnack_grid: level must lie in [0, 4]");
  const int shells = 2 << level;
  std::vector<Point> directions;
  if (d == 1) {
    directions = {{1, 0, 0}, {-1, 0, 0}};
  } else if (d == 2) {
    const int n = 4 << level;
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * j / n;
      directions.push_back({std::cos(th), std::sin(th), 0.0});
    }
  } else {
    directions = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    if (level > 0) {
      const double c = 1.0 / std::sqrt(3.0);
      for (int m = 0; m < 8; ++m) {
        directions.push_back({(m & 1) ? c : -c, (m & 2) ? c : -c, (m & 4) ? c : -c});
      }
    }
  }
  std::vector<Point> grid{Point{}};
  for (int k = 1; k <= shells; ++k) {
    const double rho = 0.95 * r * k / shells;
    for (const auto& u : directions) grid.push_back({rho * u[0], rho * u[1], rho * u[2]});
  }
  return grid;
}

std::vector<BoundaryData> sector_family(int d, double R) {
  std::vector<BoundaryData> family;
  for (int k = 0; k < 8; ++k) {
    if (d == 1) {
      const double side = k < 4 ? -1.0 : 1.0;
      const double lo = R * std::ldexp(1.0, k % 4);
      const double hi = k % 4 == 3 ? kInf : 2.0 * lo;
      family.push_back([side, lo, hi](const Point& y) {
        const double z = side * y[0];
        return z >= lo && z < hi ? 1.0 : 0.0;
      });
    } else if (d == 2) {
      family.push_back([k, R](const Point& y) {
        if (std::hypot(y[0], y[1]) < R) return 0.0;
        const double th = std::atan2(y[1], y[0]) + kPi;
        const int s = std::min(7, static_cast<int>(th / (0.25 * kPi)));
        return s == k ? 1.0 : 0.0;
      });
    } else {
      family.push_back([k, R](const Point& y) {
        if (norm(y, 3) < R) return 0.0;
        const int s = (y[0] >= 0 ? 1 : 0) | (y[1] >= 0 ? 2 : 0) | (y[2] >= 0 ? 4 : 0);
        return s == k ? 1.0 : 0.0;
      });
    }
  }
  return family;
}

HarnackMeasurement harnack_ratio(const Cbf& phi, int d, double r,
                                 const std::vector<BoundaryData>& family, const PathConfig& cfg,
                                 int level) {
  if (!(r > 0.0)) throw DomainError("harnack_ratio: r must be positive");
  const double R = 17.0 * r;
  HarmonicProbe probe{family, Ball{Point{}, R}, harnack_grid(d, r, level)};
  const auto table = mc_harmonic(phi, d, probe, natural_units(phi, cfg, R));
  HarnackMeasurement m;
  m.grid_points = probe.grid.size();
  m.paths = cfg.paths;
  for (std::size_t k = 0; k < family.size(); ++k) {
    std::vector<double> u;
    for (const auto& row : table) u.push_back(row[k].mean);
    m.member_ratios.push_back(max_over_min(u));
  }
  m.ratio = *std::max_element(m.member_ratios.begin(), m.member_ratios.end());
  return m;
}

StabilityReport harnack_stability(const Cbf& phi, int d, double r, const PathConfig& cfg,
                                  double tolerance) {
  const auto family = sector_family(d, 17.0 * r);
  StabilityReport rep;
  rep.ratio = harnack_ratio(phi, d, r, family, cfg, 0).ratio;
  PathConfig more = cfg;
  more.paths = 4 * cfg.paths;
  rep.ratio_more_paths = harnack_ratio(phi, d, r, family, more, 0).ratio;
  rep.ratio_finer_grid = harnack_ratio(phi, d, r, family, cfg, 1).ratio;
  rep.refinement_delta = std::max(relative_change(rep.ratio, rep.ratio_more_paths),
                                  relative_change(rep.ratio, rep.ratio_finer_grid));
  rep.finite = std::isfinite(rep.ratio) && std::isfinite(rep.ratio_more_paths) &&
               std::isfinite(rep.ratio_finer_grid);
  rep.pass = rep.finite && rep.refinement_delta < tolerance;
  return rep;
}

// ---------------------------------------------------------------------------

CarlesonReport carleson_check(const Cbf& phi, double lo, double hi, double r,
                              const PathConfig& cfg, double max_relative_error) {
  if (!(r > 0.0) || !(hi - lo >= 2.0 * r)) {
    throw DomainError("carleson_check: need r > 0 and an interval of length >= 2r");
  }
  std::vector<Point> grid{Point{lo + 0.5 * r, 0.0, 0.0}};
  const int n = 6;
  for (int k = 1; k <= n; ++k) grid.push_back({lo + 1.5 * r * k / (n + 1), 0.0, 0.0});
  const HarmonicProbe probe{{[hi](const Point& y) { return y[0] >= hi ? 1.0 : 0.0; }},
                            Interval{lo, hi}, grid};
  auto measure = [&](const PathConfig& c, double& worst) {
    const auto col = column(mc_harmonic(phi, 1, probe, natural_units(phi, c, 0.5 * (hi - lo))), 0);
    worst = std::max(worst, col.worst);
    double floor = kInf;
    double floor_rel = 0.0;
    for (std::size_t i = 1; i < col.est.size(); ++i) {
      const double q = col.est[0].mean / col.est[i].mean;
      if (q < floor) {
        floor = q;
        floor_rel = std::hypot(relative_error(col.est[0]), relative_error(col.est[i]));
      }
    }
    return std::pair{floor, floor_rel};
  };
  CarlesonReport rep;
  const auto [floor, floor_rel] = measure(cfg, rep.worst_relative_error);
  PathConfig more = cfg;
  more.paths = 4 * cfg.paths;
  rep.floor = floor;
  rep.floor_more_paths = measure(more, rep.worst_relative_error).first;
  rep.refinement_delta = relative_change(rep.floor, rep.floor_more_paths);
  if (!(rep.worst_relative_error <= max_relative_error)) {
    rep.verdict = Verdict::inconclusive;
  } else {
    const bool positive = rep.floor * (1.0 - 3.0 * floor_rel) > 0.0;
    rep.verdict = positive && rep.refinement_delta < 0.2 ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

BhpProbes default_bhp_probes(BhpDomain domain, double r) {
  if (domain == BhpDomain::interval) {
    return {[r](const Point& y) { return y[0] <= -2.0 * r ? 1.0 : 0.0; },
            [r](const Point& y) { return y[0] >= 8.0 * r ? 1.0 : 0.0; }};
  }
  return {[r](const Point& y) {
            return y[1] < 0.0 && std::hypot(y[0], y[1]) >= 2.0 * r ? 1.0 : 0.0;
          },
          [r](const Point& y) {
            return y[1] >= 0.0 && std::hypot(y[0], y[1]) >= 8.0 * r ? 1.0 : 0.0;
          }};
}

BhpReport bhp_ratio_check(const Cbf& phi, BhpDomain domain, double r, const BhpProbes& probes,
                          const PathConfig& cfg, int grid_points, double max_spread,
                          double tolerance) {
  if (!(r > 0.0)) throw DomainError("bhp_ratio_check: r must be positive");
  if (grid_points < 1) throw DomainError("bhp_ratio_check: need at least one grid point");
  const double L = 8.0 * r;
  const int d = domain == BhpDomain::interval ? 1 : 2;
  // grid[0] is A_r(Q); the rest lie in D n B(Q, r/2).
  std::vector<Point> grid;
  std::vector<double> xs;
  if (domain == BhpDomain::interval) {
    grid.push_back({0.5 * r, 0.0, 0.0});
    for (int k = 1; k <= grid_points; ++k) {
      xs.push_back(0.5 * r * k / (grid_points + 1));
      grid.push_back({xs.back(), 0.0, 0.0});
    }
  } else {
    grid.push_back({0.0, 0.5 * r, 0.0});
    for (int k = 1; k <= grid_points; ++k) {
      const double rho = 0.5 * r * k / (grid_points + 1);
      for (double th : {0.25 * kPi, 0.5 * kPi, 0.75 * kPi}) {
        grid.push_back({rho * std::cos(th), rho * std::sin(th), 0.0});
      }
    }
  }
  Domain D = Interval{0.0, L};
  if (domain == BhpDomain::halfdisk) D = HalfBall{Point{}, L};
  const HarmonicProbe probe{{probes.u, probes.v}, D, grid};

  auto spread_of_table = [&](const std::vector<std::vector<McEstimate>>& t, double& worst,
                             double& rel) {
    const auto u = column(t, 0), v = column(t, 1);
    worst = std::max({worst, u.worst, v.worst});
    std::vector<double> q;
    for (std::size_t i = 1; i < t.size(); ++i) {
      q.push_back(u.est[i].mean / v.est[i].mean * (v.est[0].mean / u.est[0].mean));
    }
    rel = 2.0 * std::max(u.worst, v.worst);
    return max_over_min(q);
  };

  BhpReport rep;
  double rel = 0.0, rel_more = 0.0;
  rep.spread = spread_of_table(mc_harmonic(phi, d, probe, natural_units(phi, cfg, L)),
                               rep.worst_relative_error, rel);
  PathConfig more = cfg;
  more.paths = 4 * cfg.paths;
  rep.spread_more_paths = spread_of_table(mc_harmonic(phi, d, probe, natural_units(phi, more, L)),
                                          rep.worst_relative_error, rel_more);
  rep.refinement_delta = relative_change(rep.spread, rep.spread_more_paths);

  if (const auto* s = std::get_if<kind::Stable>(&phi.kind());
      s != nullptr && domain == BhpDomain::interval) {
    auto u = [&](double x) { return stable_interval_exit_mass(s->alpha, 0.0, L, x, -kInf, -2.0 * r); };
    auto v = [&](double x) { return stable_interval_exit_mass(s->alpha, 0.0, L, x, L, kInf); };
    const double a = 0.5 * r;
    std::vector<double> q;
    for (double x : xs) q.push_back(u(x) / v(x) * (v(a) / u(a)));
    rep.oracle_spread = max_over_min(q);
  }

  if (!(rep.worst_relative_error <= 0.25)) {
    rep.verdict = Verdict::inconclusive;
  } else {
    const bool below = rep.spread * (1.0 + 3.0 * rel) < max_spread;
    rep.verdict = below && rep.refinement_delta < tolerance ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

}  // namespace sbm
