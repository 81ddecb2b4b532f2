#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sbm/montecarlo.hpp"

namespace sbm {

/// Nonnegative bounded function on R^d, evaluated at exit positions.
using BoundaryData = std::function<double(const Point&)>;

/// Boundary data family sharing one domain and one evaluation grid.  Every
/// member is evaluated on the same exit samples.
struct HarmonicProbe {
  std::vector<BoundaryData> data;
  Domain domain;
  std::vector<Point> grid;
};

/// u_k(x) = E_x[data_k(X_tau)] for every grid point x (outer index) and data
/// member k (inner index).  All grid points use the same streams.
std::vector<std::vector<McEstimate>> mc_harmonic(const Cbf& phi, int d, const HarmonicProbe& probe,
                                                 const PathConfig& cfg);

/// Configuration rescaled to a domain of linear size `length`: step and
/// horizon are multiplied by 1 / phi(length^-2) and epsilon by min(length^2, 1).
PathConfig natural_units(const Cbf& phi, const PathConfig& cfg, double length);

/// Evaluation grid of B(0, r): the center plus points on spheres of radius
/// 0.5r and 0.95r (level 0).  Each level doubles the radii and the angular
/// directions.  d = 1 uses both signs, d = 3 adds the poles.
std::vector<Point> harnack_grid(int d, double r, int level);

/// Eight indicators partitioning the complement of B(0, R): angular sectors
/// in d = 2, octants in d = 3, side times dyadic shell [R 2^k, R 2^{k+1})
/// (k < 3, the last shell unbounded) in d = 1.
std::vector<BoundaryData> sector_family(int d, double R);

struct HarnackMeasurement {
  /// max over family members of max_x u / min_x u on the grid
  double ratio = 0.0;
  std::vector<double> member_ratios;
  std::size_t grid_points = 0;
  std::size_t paths = 0;
};

/// Measured Harnack ratio for `family`, harmonic in B(0, 17r), on the
/// level-`level` grid of B(0, r).  `cfg` is read in natural units of 17r.
HarnackMeasurement harnack_ratio(const Cbf& phi, int d, double r,
                                 const std::vector<BoundaryData>& family, const PathConfig& cfg,
                                 int level = 0);

struct StabilityReport {
  double ratio = 0.0;
  /// Re-measured with four times the paths and with the doubled grid.
  double ratio_more_paths = 0.0;
  double ratio_finer_grid = 0.0;
  /// max relative change of the two re-measurements
  double refinement_delta = 0.0;
  bool finite = false;
  bool pass = false;
};

/// Harnack ratio with the sector family and its two refinements; passes when
/// all three are finite and each changes by less than `tolerance`.
StabilityReport harnack_stability(const Cbf& phi, int d, double r, const PathConfig& cfg,
                                  double tolerance = 0.2);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct CarlesonReport {
  /// min over the grid of u(A_r(Q)) / u(x)
  double floor = 0.0;
  double floor_more_paths = 0.0;
  double refinement_delta = 0.0;
  /// largest relative standard error seen among the estimates
  double worst_relative_error = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Carleson estimate on the interval (lo, hi) at Q = lo with
/// u(x) = P_x(X_tau >= hi), A_r(Q) = Q + r/2 and x on a grid of (Q, Q + 3r/2).
/// Needs hi - lo >= 2r.  Estimates with relative error above
/// `max_relative_error` make the verdict inconclusive.
CarlesonReport carleson_check(const Cbf& phi, double lo, double hi, double r,
                              const PathConfig& cfg, double max_relative_error = 0.25);

enum class BhpDomain { interval, halfdisk };

struct BhpProbes {
  BoundaryData u;
  BoundaryData v;
};

struct BhpReport {
  /// max / min over x in D n B(Q, r/2) of (u(x)/v(x)) (v(A)/u(A))
  double spread = 0.0;
  double spread_more_paths = 0.0;
  double refinement_delta = 0.0;
  /// Same spread from the closed-form stable kernel (interval, stable kind only; else 0).
  double oracle_spread = 0.0;
  double worst_relative_error = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Default probe pair vanishing on D^c n B(Q, 2r): u = 1{far side across Q}
/// (y_1 <= -2r in d = 1, y_d < 0 with |y| >= 2r in d = 2) and v = 1{|y| >= 8r
/// beyond the far end of D}.
BhpProbes default_bhp_probes(BhpDomain domain, double r);

/// Boundary Harnack spread with Q = 0 for D = (0, 8r) (interval) or the
/// half-disk {|x| < 8r, x_2 > 0}; A_r(Q) sits at distance r/2 from Q along the
/// inward normal.  Passes when the spread is below `max_spread` and changes
/// by less than `tolerance` under four times the paths.
BhpReport bhp_ratio_check(const Cbf& phi, BhpDomain domain, double r, const BhpProbes& probes,
                          const PathConfig& cfg, int grid_points = 4, double max_spread = 10.0,
                          double tolerance = 0.2);

}  // namespace sbm
