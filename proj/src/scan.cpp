#include "mhdchar/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "mhdchar/errors.hpp"

namespace mhdchar {

std::size_t HemisphereSampling::equator_count() const {
  if (equator > 0) return equator;
  if (interior == 0 || equator_factor <= 0) return 0;
  const double base = std::ceil(std::cbrt(static_cast<double>(interior) * interior) - 1e-9);
  return static_cast<std::size_t>(equator_factor) * static_cast<std::size_t>(base);
}

HemisphereSampling HemisphereSampling::refined(int k) const {
  if (k < 1) throw ConfigError("refinement factor must be >= 1");
  HemisphereSampling s = *this;
  s.interior *= static_cast<std::size_t>(k);
  s.equator = equator_count() * static_cast<std::size_t>(k);
  return s;
}

std::vector<BoundaryFrequency> hemisphere_grid(const HemisphereSampling& s) {
  std::vector<BoundaryFrequency> out;
  out.reserve(s.size());
  // Plastic-type constant for three dimensions: the real root of x^4 = x + 1.
  double g = 1.2;
  for (int it = 0; it < 60; ++it) g -= (g * g * g * g - g - 1.0) / (4.0 * g * g * g - 1.0);
  const double a1 = 1.0 / g, a2 = 1.0 / (g * g), a3 = 1.0 / (g * g * g);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < s.interior; ++k) {
    const double kk = static_cast<double>(k);
    const double u1 = std::fmod(0.5 + kk * a1, 1.0);
    const double u2 = std::fmod(0.5 + kk * a2, 1.0);
    const double u3 = std::fmod(0.5 + kk * a3, 1.0);
    const double r1 = std::sqrt(1.0 - u1), r2 = std::sqrt(u1);
    BoundaryFrequency z;
    z.tau = r1 * std::sin(two_pi * u2);
    z.gamma_L = std::abs(r1 * std::cos(two_pi * u2));
    z.eta = Eigen::Vector2d(r2 * std::sin(two_pi * u3), r2 * std::cos(two_pi * u3));
    out.push_back(z);
  }
  const std::size_t ne = s.equator_count();
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < ne; ++i) {
    const double zc = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(ne);
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const double phi = golden * static_cast<double>(i);
    BoundaryFrequency z;
    z.tau = r * std::cos(phi);
    z.gamma_L = 0.0;
    z.eta = Eigen::Vector2d(r * std::sin(phi), zc);
    out.push_back(z);
  }
  return out;
}

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(n, 1)));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + t - 1) / t;
  for (unsigned w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

Eigen::Vector4d as_vec(const BoundaryFrequency& z) {
  return {z.tau, z.gamma_L, z.eta(0), z.eta(1)};
}

void continuity(ScanResult& r, unsigned threads) {
  const std::size_t n = r.points.size();
  std::vector<std::size_t> nn(n, n);
  std::vector<double> dist(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    if (!r.points[i].ok()) return;
    const Eigen::Vector4d xi = as_vec(r.points[i].zf);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !r.points[j].ok()) continue;
      const double dd = (as_vec(r.points[j].zf) - xi).squaredNorm();
      if (dd < best) {
        best = dd;
        nn[i] = j;
      }
    }
    dist[i] = std::sqrt(best);
  });
  std::vector<double> ratios;
  for (std::size_t i = 0; i < n; ++i)
    if (nn[i] < n && dist[i] > 0.0)
      ratios.push_back(std::abs(r.points[i].abs_D - r.points[nn[i]].abs_D) / dist[i]);
  if (ratios.empty()) return;
  std::vector<double> sorted = ratios;
  const std::size_t q = sorted.size() * 9 / 10;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(q), sorted.end());
  const double level = sorted[q];
  if (!(level > 0.0)) return;
  for (std::size_t i = 0; i < n; ++i) {
    if (nn[i] >= n || !(dist[i] > 0.0)) continue;
    const double jump = std::abs(r.points[i].abs_D - r.points[nn[i]].abs_D);
    if (jump > 10.0 * dist[i] * level) r.continuity_flags.push_back(i);
  }
}

}  // namespace

ScanResult uniform_scan(const BoundaryProblem& problem, const BoundaryOperator& op,
                        const HemisphereSampling& sampling, const ScanOptions& opts) {
  if (op.cols() != problem.size())
    throw DimensionMismatch("boundary operator width does not match the problem size");
  const std::vector<BoundaryFrequency> grid = hemisphere_grid(sampling);
  ScanResult r;
  r.interior = sampling.interior;
  r.equator = sampling.equator_count();
  r.dim_expected = problem.incoming_count();
  r.points.resize(grid.size());

  parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
    ScanPoint& p = r.points[i];
    p.zf = grid[i];
    try {
      const LopatinskiResult lr = evaluate_lopatinski(problem, op, p.zf, opts.eps_cont);
      p.abs_D = lr.abs_D;
      p.dim_Eminus = lr.k;
      p.continued = lr.continued;
      p.invariance_residual = lr.invariance_residual;
      p.route_gap = std::max({std::abs(lr.abs_D - lr.abs_D_lu), std::abs(lr.abs_D - lr.abs_D_proj),
                              std::abs(lr.abs_D_lu - lr.abs_D_proj)});
      if (!(lr.invariance_residual < 1e-8)) {
        p.error_kind = "InvarianceResidual";
        p.error_message = "G-invariance residual " + std::to_string(lr.invariance_residual);
      }
    } catch (const Error& e) {
      p.error_kind = e.kind();
      p.error_message = e.what();
    }
  });

  r.min_abs_D = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const ScanPoint& p = r.points[i];
    if (!p.ok()) {
      r.failures.push_back({i, p.zf, p.error_kind, p.error_message});
      continue;
    }
    if (p.dim_Eminus != r.dim_expected) r.dim_constant = false;
    if (p.abs_D < r.min_abs_D) {
      r.min_abs_D = p.abs_D;
      r.argmin = i;
    }
    const auto bin = static_cast<std::size_t>(std::clamp(p.abs_D, 0.0, 1.0) * 10.0);
    ++r.histogram[std::min<std::size_t>(bin, 9)];
    r.max_invariance_residual = std::max(r.max_invariance_residual, p.invariance_residual);
    r.max_route_gap = std::max(r.max_route_gap, p.route_gap);
  }
  if (r.failures.size() == r.points.size()) r.min_abs_D = std::numeric_limits<double>::quiet_NaN();
  if (opts.continuity_check) continuity(r, opts.threads);
  return r;
}

ScanResult uniform_scan(const ThermoState& state, const EquationOfState& eos, int d,
                        const BoundaryOperator& op, const HemisphereSampling& sampling,
                        const ScanOptions& opts) {
  return uniform_scan(BoundaryProblem::one_sided(state, eos, d), op, sampling, opts);
}

ConvergenceReport convergence(const ScanResult& coarse, const ScanResult& fine, int factor,
                              double tol) {
  ConvergenceReport c;
  c.coarse = coarse.min_abs_D;
  c.fine = fine.min_abs_D;
  c.factor = factor;
  const double ref = std::max(std::abs(c.fine), std::numeric_limits<double>::min());
  c.rel_change = std::abs(c.fine - c.coarse) / ref;
  c.converged = std::isfinite(c.rel_change) && c.rel_change <= tol;
  return c;
}

BStudy b_to_zero_study(const EosPtr& eos, const GasShockSpec& spec,
                       const std::vector<double>& magnitudes, const HemisphereSampling& sampling,
                       int refine, const ScanOptions& opts, double conv_tol) {
  if (magnitudes.empty()) throw ConfigError("B magnitude list is empty");
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] >= 0.0)) throw ConfigError("B magnitudes must be nonnegative");
    if (i > 0 && !(magnitudes[i] < magnitudes[i - 1]))
      throw ConfigError("B magnitudes must be strictly descending");
  }
  const double dn = spec.B_direction.norm();
  if (!(dn > 0.0)) throw ConfigError("B direction must be nonzero");
  std::vector<double> mags = magnitudes;
  if (mags.back() != 0.0) mags.push_back(0.0);

  BStudy st;
  bool refined_all = refine > 1;
  for (double m : mags) {
    BStudyRow row;
    row.B_mag = m;
    try {
      const Vec3 B = spec.B_direction / dn * m;
      const PlanarShock sh =
          rankine_hugoniot(eos, spec.upstream, spec.family, spec.mach, spec.axis, B);
      row.rh_residual = sh.rh_residual;
      row.density_ratio = sh.downstream().rho / sh.upstream().rho;
      row.sigma = sh.sigma;
      const BoundaryProblem prob = shock_problem(sh);
      const BoundaryOperator op = shock_boundary_operator(sh);
      const ScanResult sr = uniform_scan(prob, op, sampling, opts);
      row.min_abs_D = sr.min_abs_D;
      row.argmin = sr.any_valid() ? sr.argmin_zf() : BoundaryFrequency{};
      row.failures = sr.failures.size();
      row.dim_Eminus = sr.dim_expected;
      row.continuity_flags = sr.continuity_flags.size();
      if (refine > 1) {
        const ScanResult fr = uniform_scan(prob, op, sampling.refined(refine), opts);
        row.has_refined = true;
        row.refined = convergence(sr, fr, refine, conv_tol);
        row.failures += fr.failures.size();
        if (!row.refined.converged) refined_all = false;
      }
    } catch (const Error& e) {
      row.error = std::string(e.kind()) + ": " + e.what();
      row.min_abs_D = std::numeric_limits<double>::quiet_NaN();
      refined_all = false;
    }
    st.max_rh_residual = std::max(st.max_rh_residual, row.rh_residual);
    st.rows.push_back(row);
  }

  const double base = st.rows.back().min_abs_D;
  st.all_positive = true;
  for (const auto& r : st.rows)
    if (!(r.min_abs_D > 0.0) || r.failures > 0 || !r.error.empty()) st.all_positive = false;
  st.trend_monotone = std::isfinite(base);
  st.half_floor = std::isfinite(base);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < st.rows.size(); ++i) {
    const double diff = std::abs(st.rows[i].min_abs_D - base);
    if (!(diff <= prev)) st.trend_monotone = false;
    prev = diff;
    if (st.rows[i].B_mag <= 1e-2 && !(st.rows[i].min_abs_D > 0.5 * base)) st.half_floor = false;
  }
  st.all_converged = refined_all;
  return st;
}

}  // namespace mhdchar
