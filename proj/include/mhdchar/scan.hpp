#pragma once

#include <array>
#include <string>
#include <vector>

#include "mhdchar/boundary.hpp"
#include "mhdchar/shock.hpp"

namespace mhdchar {

/// Deterministic grid on the closed hemisphere {|zeta| = 1, gamma_L >= 0}.
///
/// Interior points come from an R3 Kronecker sequence pushed to S^3 through Hopf
/// coordinates and folded onto gamma_L >= 0. The equator gamma_L = 0 gets its own
/// Fibonacci grid on S^2 in (tau, eta1, eta2) with
/// equator_factor * ceil(interior^(2/3)) points, unless `equator` is set.
struct HemisphereSampling {
  std::size_t interior = 10000;
  int equator_factor = 4;
  std::size_t equator = 0;

  std::size_t equator_count() const;
  std::size_t size() const { return interior + equator_count(); }
  /// Same grid with every count multiplied by k.
  HemisphereSampling refined(int k) const;
};

std::vector<BoundaryFrequency> hemisphere_grid(const HemisphereSampling& s);

struct ScanOptions {
  double eps_cont = 1e-6;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  bool continuity_check = true;
};

struct ScanPoint {
  BoundaryFrequency zf;
  double abs_D = 0.0;
  Eigen::Index dim_Eminus = -1;
  bool continued = false;
  double invariance_residual = 0.0;
  double route_gap = 0.0;  ///< max disagreement between the three |D| routes
  std::string error_kind;
  std::string error_message;
  bool ok() const { return error_kind.empty(); }
};

struct ScanFailure {
  std::size_t index = 0;
  BoundaryFrequency zf;
  std::string kind;
  std::string message;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::size_t interior = 0;
  std::size_t equator = 0;
  double min_abs_D = 0.0;
  std::size_t argmin = 0;
  /// Counts of |D| in ten equal bins on [0, 1].
  std::array<std::size_t, 10> histogram{};
  std::vector<ScanFailure> failures;
  Eigen::Index dim_expected = 0;
  bool dim_constant = true;
  double max_invariance_residual = 0.0;
  double max_route_gap = 0.0;
  /// Indices whose |D| jumps against the nearest grid neighbour by more than
  /// ten times the spacing times the observed Lipschitz level.
  std::vector<std::size_t> continuity_flags;

  bool any_valid() const { return failures.size() < points.size(); }
  const BoundaryFrequency& argmin_zf() const { return points.at(argmin).zf; }
};

/// Evaluates |D| at every grid point. Per-point errors are recorded, not thrown.
/// Results do not depend on the thread count.
ScanResult uniform_scan(const BoundaryProblem& problem, const BoundaryOperator& op,
                        const HemisphereSampling& sampling, const ScanOptions& opts = {});

ScanResult uniform_scan(const ThermoState& state, const EquationOfState& eos, int d,
                        const BoundaryOperator& op, const HemisphereSampling& sampling,
                        const ScanOptions& opts = {});

struct ConvergenceReport {
  double coarse = 0.0;
  double fine = 0.0;
  double rel_change = 0.0;
  int factor = 1;
  bool converged = false;
};

ConvergenceReport convergence(const ScanResult& coarse, const ScanResult& fine, int factor,
                              double tol = 0.05);

struct GasShockSpec {
  ThermoState upstream;
  double mach = 2.0;
  ShockFamily family = ShockFamily::FastPlus;
  int axis = 3;
  Vec3 B_direction = Vec3(1.0, 0.0, 0.0);
};

struct BStudyRow {
  double B_mag = 0.0;
  double min_abs_D = 0.0;
  BoundaryFrequency argmin;
  std::size_t failures = 0;
  Eigen::Index dim_Eminus = 0;
  double rh_residual = 0.0;
  double density_ratio = 0.0;
  double sigma = 0.0;
  std::size_t continuity_flags = 0;
  bool has_refined = false;
  ConvergenceReport refined;
  std::string error;  ///< shock construction error, if any
};

struct BStudy {
  std::vector<BStudyRow> rows;
  bool all_positive = false;
  /// |min|D|(|B|) - min|D|(0)| nonincreasing as |B| decreases.
  bool trend_monotone = false;
  /// min|D|(|B|) > 0.5 min|D|(0) for every |B| <= 1e-2.
  bool half_floor = false;
  bool all_converged = false;
  double max_rh_residual = 0.0;
};

/// Builds the shock for each |B| (descending; a zero row is appended if absent),
/// scans the folded problem, and evaluates the limit assertions. With
/// refine > 1 every row is also scanned on the refined grid.
BStudy b_to_zero_study(const EosPtr& eos, const GasShockSpec& spec,
                       const std::vector<double>& magnitudes,
                       const HemisphereSampling& sampling, int refine = 1,
                       const ScanOptions& opts = {}, double conv_tol = 0.05);

}  // namespace mhdchar
