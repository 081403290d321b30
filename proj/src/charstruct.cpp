#include "mhdchar/charstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mhdchar/errors.hpp"
#include "mhdchar/symbol.hpp"

namespace mhdchar {

namespace {

double checked_norm(const Vec3& xi) {
  const double n = xi.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ZeroFrequency("frequency vector must be nonzero");
  return n;
}

struct TaggedValue {
  double value;
  Wave wave;
};

// The eight closed-form values from (projected) speeds. Entropy appears twice.
std::array<TaggedValue, 8> tagged_values(double lambda0, double n, double a, double c_s,
                                         double c_f) {
  return {{{lambda0, Wave::Entropy},
           {lambda0, Wave::Entropy},
           {lambda0 - c_s * n, Wave::SlowMinus},
           {lambda0 + c_s * n, Wave::SlowPlus},
           {lambda0 - a * n, Wave::AlfvenMinus},
           {lambda0 + a * n, Wave::AlfvenPlus},
           {lambda0 - c_f * n, Wave::FastMinus},
           {lambda0 + c_f * n, Wave::FastPlus}}};
}

std::vector<CharacteristicRoot> merge(std::array<TaggedValue, 8> vals, double band) {
  std::stable_sort(vals.begin(), vals.end(),
                   [](const TaggedValue& x, const TaggedValue& y) { return x.value < y.value; });
  std::vector<CharacteristicRoot> roots;
  std::vector<double> sums;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0 && vals[i].value - vals[i - 1].value <= band) {
      CharacteristicRoot& r = roots.back();
      r.multiplicity += 1;
      r.families.push_back(vals[i].wave);
      sums.back() += vals[i].value;
    } else {
      CharacteristicRoot r;
      r.lambda = vals[i].value;
      r.multiplicity = 1;
      r.families = {vals[i].wave};
      roots.push_back(r);
      sums.push_back(vals[i].value);
    }
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    CharacteristicRoot& r = roots[k];
    r.lambda = sums[k] / r.multiplicity;
    std::sort(r.families.begin(), r.families.end());
    r.families.erase(std::unique(r.families.begin(), r.families.end()), r.families.end());
  }
  return roots;
}

double speed_scale(const ThermoState& s, const WaveSpeeds& ws) {
  return std::max({ws.c_f, s.u.norm(), 1.0});
}

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

bool contains(const std::vector<Wave>& fams, Wave w) {
  return std::find(fams.begin(), fams.end(), w) != fams.end();
}

}  // namespace

std::string to_string(Wave w) {
  switch (w) {
    case Wave::Entropy: return "entropy";
    case Wave::SlowMinus: return "slow-";
    case Wave::SlowPlus: return "slow+";
    case Wave::AlfvenMinus: return "alfven-";
    case Wave::AlfvenPlus: return "alfven+";
    case Wave::FastMinus: return "fast-";
    case Wave::FastPlus: return "fast+";
  }
  return "?";
}

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::Simple: return "Simple";
    case RootClass::GeometricallyRegular: return "GeometricallyRegular";
    case RootClass::TotallyNonglancing: return "TotallyNonglancing";
    case RootClass::NotClassified: return "NotClassified";
  }
  return "?";
}

std::string to_string(FieldVsSound f) {
  switch (f) {
    case FieldVsSound::Sub: return "Sub";
    case FieldVsSound::Super: return "Super";
    case FieldVsSound::Equal: return "Equal";
  }
  return "?";
}

std::string to_string(FieldCase c) {
  switch (c) {
    case FieldCase::Generic: return "generic";
    case FieldCase::NormalOrthogonal: return "xi_dot_B_zero";
    case FieldCase::Aligned: return "xi_cross_B_zero";
    case FieldCase::Excluded: return "B_zero";
  }
  return "?";
}

WaveSpeeds wave_speeds(const ThermoState& state, const EquationOfState& eos, const Vec3& xi) {
  const double n = checked_norm(xi);
  const double c0_sq = sound_speed_sq(eos, state);
  const Vec3 xh = xi / n;
  const double sr = std::sqrt(state.rho);
  WaveSpeeds ws;
  ws.xi_norm = n;
  ws.a = xh.dot(state.B) / sr;
  ws.b = xh.cross(state.B).norm() / sr;
  const double a2 = ws.a * ws.a;
  const double h2 = a2 + ws.b * ws.b;
  ws.h = std::sqrt(h2);
  ws.c0 = std::sqrt(c0_sq);
  const double diff = c0_sq - h2;
  const double rad = std::max(0.0, diff * diff + 4.0 * ws.b * ws.b * c0_sq);
  const double cf2 = 0.5 * ((c0_sq + h2) + std::sqrt(rad));
  // c_s^2 from the product of the roots avoids cancellation when a is small.
  const double cs2 = a2 * c0_sq / cf2;
  ws.c_f = std::sqrt(cf2);
  ws.c_s = std::sqrt(cs2);
  return ws;
}

std::array<double, 8> eigenvalues_unmerged(const ThermoState& state, const EquationOfState& eos,
                                           const Vec3& xi) {
  const WaveSpeeds ws = wave_speeds(state, eos, xi);
  const auto tv = tagged_values(state.u.dot(xi), ws.xi_norm, ws.a, ws.c_s, ws.c_f);
  std::array<double, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = tv[i].value;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CharacteristicRoot> eigenvalues(const ThermoState& state, const EquationOfState& eos,
                                            const Vec3& xi, const Tolerances& tol) {
  const WaveSpeeds ws = wave_speeds(state, eos, xi);
  const double band = tol.tol_merge * ws.xi_norm * speed_scale(state, ws);
  return merge(tagged_values(state.u.dot(xi), ws.xi_norm, ws.a, ws.c_s, ws.c_f), band);
}

std::array<double, 9> char_poly_reduced(const ThermoState& state, const EquationOfState& eos,
                                        const Vec3& xi) {
  const WaveSpeeds ws = wave_speeds(state, eos, xi);
  const double a2 = ws.a * ws.a;
  const double h2 = a2 + ws.b * ws.b;
  const double c2 = ws.c0 * ws.c0;
  std::array<double, 9> c{};
  c[8] = 1.0;
  c[6] = -(h2 + c2 + a2);
  c[4] = a2 * (2.0 * c2 + h2);
  c[2] = -a2 * a2 * c2;
  return c;
}

double eval_poly(const std::array<double, 9>& c, double x) {
  double r = 0.0;
  for (int k = 8; k >= 0; --k) r = r * x + c[k];
  return r;
}

EntropyTransform entropy_transform(const EosEval& ev, double rho, double theta) {
  EntropyTransform out;
  out.T << ev.P_rho, ev.P_theta / rho, ev.P_theta * theta, -ev.e_theta * rho;
  const double p = out.T(0, 0) * out.T(1, 1);
  const double q = out.T(0, 1) * out.T(1, 0);
  out.det = p - q;
  const double scale = std::abs(p) + std::abs(q);
  if (!(scale > 0.0) || std::abs(out.det) < 1e-14 * scale)
    throw SingularTransform("rho P_rho e_theta + theta P_theta^2 / rho vanishes");
  out.T_inv << out.T(1, 1), -out.T(0, 1), -out.T(1, 0), out.T(0, 0);
  out.T_inv /= out.det;
  return out;
}

EntropyTransform entropy_transform(const ThermoState& state, const EquationOfState& eos) {
  state.validate();
  return entropy_transform(eval_eos(eos, state.rho, state.theta), state.rho, state.theta);
}

AdaptedBasis adapted_basis(const ThermoState& state, const EquationOfState& eos, const Vec3& xi) {
  const double n = checked_norm(xi);
  state.validate();
  const EosEval ev = eval_eos(eos, state.rho, state.theta);
  const double rho = state.rho;
  const double sr = std::sqrt(rho);

  AdaptedBasis ab;
  ab.xi_hat = xi / n;
  ab.c0_sq = sound_speed_sq(ev, rho, state.theta);
  const Vec3 B_perp = state.B - ab.xi_hat.dot(state.B) * ab.xi_hat;
  const double Bn = state.B.norm();
  if (Bn > 0.0 && B_perp.norm() > 1e-14 * Bn) {
    ab.t1 = B_perp / B_perp.norm();
    ab.b = B_perp.norm() / sr;
  } else {
    // Householder reflector taking xi_hat to a multiple of e_1; its other
    // columns span the tangent plane.
    const Vec3& nh = ab.xi_hat;
    const double sgn = nh(0) >= 0.0 ? 1.0 : -1.0;
    Vec3 v = nh;
    v(0) += sgn;
    const Eigen::Matrix3d H = Eigen::Matrix3d::Identity() - 2.0 * v * v.transpose() / v.squaredNorm();
    ab.t1 = H.col(1);
    ab.b = 0.0;
    ab.householder_fallback = true;
  }
  ab.t2 = ab.xi_hat.cross(ab.t1);
  ab.a = ab.xi_hat.dot(state.B) / sr;

  ab.C.setZero();
  ab.C(0, var::rho) = ev.P_rho / rho;
  ab.C(0, var::theta) = ev.P_theta / rho;
  ab.C(6, var::rho) = ev.P_theta * state.theta / rho;
  ab.C(6, var::theta) = -ev.e_theta * rho;
  for (int j = 0; j < 3; ++j) {
    ab.C(1, var::u + j) = ab.xi_hat(j);
    ab.C(2, var::u + j) = ab.t1(j);
    ab.C(3, var::u + j) = ab.t2(j);
    ab.C(4, var::B + j) = ab.t1(j) / sr;
    ab.C(5, var::B + j) = ab.t2(j) / sr;
    ab.C(7, var::B + j) = ab.xi_hat(j) / sr;
  }

  Mat8& R = ab.reduced;
  R.setZero();
  R(0, 1) = ab.c0_sq;
  R(1, 0) = 1.0;
  R(1, 4) = ab.b;
  R(2, 4) = -ab.a;
  R(3, 5) = -ab.a;
  R(4, 1) = ab.b;
  R(4, 2) = -ab.a;
  R(5, 3) = -ab.a;
  return ab;
}

Mat8 adapted_block_matrix(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                          double lambda_tilde) {
  const AdaptedBasis ab = adapted_basis(state, eos, xi);
  return lambda_tilde * Mat8::Identity() - xi.norm() * ab.reduced;
}

RegimeTag regime(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                 const Tolerances& tol) {
  const double n = checked_norm(xi);
  const double c0_sq = sound_speed_sq(eos, state);
  const Vec3 xh = xi / n;
  const double Bn = state.B.norm();
  const double field_scale = std::sqrt(state.rho * c0_sq);
  RegimeTag rt;
  rt.B_zero = Bn <= tol.tol_manifold * field_scale;
  if (rt.B_zero) {
    rt.xi_dot_B_zero = true;
    rt.xi_cross_B_zero = true;
    rt.near_manifold = Bn > 0.0;
  } else {
    const double dot = std::abs(xh.dot(state.B));
    const double cross = xh.cross(state.B).norm();
    rt.xi_dot_B_zero = dot <= tol.tol_manifold * Bn;
    rt.xi_cross_B_zero = cross <= tol.tol_manifold * Bn;
    rt.near_manifold = (rt.xi_dot_B_zero && dot > 0.0) || (rt.xi_cross_B_zero && cross > 0.0);
  }
  const double B2 = Bn * Bn;
  const double rc2 = state.rho * c0_sq;
  const double diff = B2 - rc2;
  if (std::abs(diff) <= tol.tol_manifold * std::max(B2, rc2)) {
    rt.field_vs_sound = FieldVsSound::Equal;
    rt.near_manifold = rt.near_manifold || diff != 0.0;
  } else {
    rt.field_vs_sound = diff < 0.0 ? FieldVsSound::Sub : FieldVsSound::Super;
  }
  if (rt.B_zero)
    rt.field_case = FieldCase::Excluded;
  else if (rt.xi_dot_B_zero)
    rt.field_case = FieldCase::NormalOrthogonal;
  else if (rt.xi_cross_B_zero)
    rt.field_case = FieldCase::Aligned;
  else
    rt.field_case = FieldCase::Generic;
  return rt;
}

int eigenvector_count(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                      double lambda, double band) {
  const SymbolEigen se = symbol_eigen(state, eos, xi);
  std::vector<int> cols;
  for (int k = 0; k < 8; ++k)
    if (std::abs(se.values(k) - lambda) <= band) cols.push_back(k);
  if (cols.empty()) return 0;
  MatX V(8, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    V.col(static_cast<Eigen::Index>(k)) = se.vectors.col(cols[k]).normalized();
  }
  Eigen::JacobiSVD<MatX> svd(V);
  const VecX sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-10 * sv(0)) ++rank;
  return rank;
}

Classification classify(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                        const std::optional<BoundaryFrame>& boundary,
                        const ClassifyOptions& opts) {
  Classification out;
  out.speeds = wave_speeds(state, eos, xi);
  out.regime = regime(state, eos, xi, opts.tol);
  const WaveSpeeds& ws = out.speeds;
  const RegimeTag& rt = out.regime;
  const double n = ws.xi_norm;
  const double lambda0 = state.u.dot(xi);

  // Speeds projected onto the detected manifold so that coincidences are exact.
  double a = ws.a, c_s = ws.c_s, c_f = ws.c_f;
  if (rt.B_zero) {
    a = 0.0;
    c_s = 0.0;
    c_f = ws.c0;
  } else if (rt.xi_dot_B_zero) {
    a = 0.0;
    c_s = 0.0;
    c_f = std::sqrt(ws.c0 * ws.c0 + ws.h * ws.h);
  } else if (rt.xi_cross_B_zero) {
    // b = 0: |a| = h, and the slow/fast pair is {h, c0}.
    a = std::copysign(ws.h, a);
    if (rt.field_vs_sound == FieldVsSound::Equal) {
      a = std::copysign(ws.c0, a);
      c_s = ws.c0;
      c_f = ws.c0;
    } else if (rt.field_vs_sound == FieldVsSound::Sub) {
      c_s = ws.h;
      c_f = ws.c0;
    } else {
      c_s = ws.c0;
      c_f = ws.h;
    }
  }
  out.roots = merge(tagged_values(lambda0, n, a, c_s, c_f), 0.0);

  const bool excluded = rt.B_zero || rt.field_vs_sound == FieldVsSound::Equal;
  const double scale = speed_scale(state, ws);
  const double band = std::max(opts.tol.tol_merge, 10.0 * opts.tol.tol_manifold) * n * scale;

  for (CharacteristicRoot& r : out.roots) {
    if (r.multiplicity == 1) {
      r.classification = RootClass::Simple;
      continue;
    }
    r.eigenvector_count = eigenvector_count(state, eos, xi, r.lambda, band);
    if (excluded) {
      r.classification = RootClass::NotClassified;
      continue;
    }
    const bool entropy_only = r.families.size() == 1 && r.family() == Wave::Entropy;
    if (entropy_only || (rt.field_case == FieldCase::NormalOrthogonal &&
                         contains(r.families, Wave::Entropy))) {
      const bool witness = r.eigenvector_count == r.multiplicity;
      r.classification = witness ? RootClass::GeometricallyRegular : RootClass::NotClassified;
      continue;
    }
    if (rt.field_case == FieldCase::Aligned) {
      if (!boundary) {
        if (opts.glancing_verdict)
          throw MissingBoundary("aligned-field double roots need a boundary axis and frame speed");
        r.classification = RootClass::NotClassified;
        continue;
      }
      const int d = boundary->axis;
      if (d < 1 || d > 3) throw DimensionMismatch("boundary axis must be 1, 2 or 3");
      const double rel = state.u(d - 1) - boundary->sigma;
      const double alf = state.B(d - 1) / std::sqrt(state.rho);
      const double s = state.u.norm() + std::abs(boundary->sigma) + ws.h + ws.c0;
      const double thr = opts.tol.tol_manifold * s;
      const bool ok = std::abs(rel - alf) > thr && std::abs(rel + alf) > thr;
      r.classification = ok ? RootClass::TotallyNonglancing : RootClass::NotClassified;
      continue;
    }
    r.classification = RootClass::NotClassified;
  }
  return out;
}

std::vector<double> central_stencil_weights(int K, int m) {
  const int npts = 2 * K + 1;
  std::vector<double> x(npts);
  for (int i = 0; i < npts; ++i) x[i] = static_cast<double>(i - K);
  // Fornberg's recursion for weights at z = 0.
  std::vector<std::vector<double>> c(npts, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < npts; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(npts);
  for (int i = 0; i < npts; ++i) w[i] = c[i][m];
  return w;
}

NonglancingResult nonglancing_test(const ThermoState& state, const EquationOfState& eos,
                                   const CharacteristicRoot& root, const Vec3& xi,
                                   const BoundaryFrame& boundary, const NonglancingOptions& opts) {
  const int m = root.multiplicity;
  if (m < 1 || m > 6) throw DimensionMismatch("nonglancing test supports multiplicities 1..6");
  const int d = boundary.axis;
  if (d < 1 || d > 3) throw DimensionMismatch("boundary axis must be 1, 2 or 3");
  const WaveSpeeds ws = wave_speeds(state, eos, xi);
  const EosEval ev = eval_eos(eos, state.rho, state.theta);
  const double n = ws.xi_norm;
  const double sigma = boundary.sigma;
  const Vec3 ed = unit_axis(d);
  const double lambda = root.lambda;

  // P(tau, xi) with tau fixed at the root; the frame shift makes the
  // argument tau I + A(xi) - sigma xi_d I.
  const double tau0 = -(lambda - sigma * xi(d - 1));
  auto P = [&](double delta) {
    const Vec3 x = xi + delta * ed;
    Mat8 M = assemble_full_symbol(state, ev, x);
    M.diagonal().array() += tau0 - sigma * x(d - 1);
    return M.partialPivLu().determinant();
  };

  constexpr int K = 4;  // nine points: exact for the degree-8 polynomial in xi_d
  const std::vector<double> w = central_stencil_weights(K, m);
  auto derivative = [&](double h) {
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) acc += w[k + K] * P(k * h);
    return acc / std::pow(h, m);
  };
  const double h = std::pow(opts.step_base, 1.0 / m) * n;
  const double D1 = derivative(h);
  const double D2 = derivative(0.5 * h);
  const int order = 2 * ((2 * K + 2 - m) / 2);
  const double rf = std::pow(2.0, order);
  const double D = D2 + (D2 - D1) / (rf - 1.0);

  // Normalization: m! times the product of gaps to the other closed-form roots times s^m.
  std::array<double, 8> all = eigenvalues_unmerged(state, eos, xi);
  std::vector<double> others(all.begin(), all.end());
  for (int k = 0; k < m; ++k) {
    auto it = std::min_element(others.begin(), others.end(), [&](double p, double q) {
      return std::abs(p - lambda) < std::abs(q - lambda);
    });
    others.erase(it);
  }
  const double s = state.u.norm() + std::abs(sigma) + ws.c_f + ws.h;
  double e = 1.0;
  for (double v : others) e *= std::abs(v - lambda);
  if (!(e > 0.0)) e = std::pow(s * n, static_cast<double>(others.size()));
  const double norm = factorial(m) * e * std::pow(s, m);

  NonglancingResult out;
  out.normalized_derivative = D / norm;
  out.richardson_error = std::abs(D2 - D1) / norm;
  out.nonglancing = std::abs(out.normalized_derivative) > opts.tol;

  // Branch continuation in xi_d.
  const double eps = opts.branch_eps * n;
  auto cluster = [&](double delta) {
    const Vec8 vals = numeric_spectrum(state, eos, xi + delta * ed);
    std::vector<double> v(vals.data(), vals.data() + 8);
    std::sort(v.begin(), v.end(), [&](double p, double q) {
      return std::abs(p - lambda) < std::abs(q - lambda);
    });
    if (m < 8) {
      const double dm = std::abs(v[m - 1] - lambda);
      const double dn = std::abs(v[m] - lambda);
      if (dn <= 10.0 * dm + 1e-12 * s * n)
        throw DegenerateBranchMatching("root cluster not separated at step " + std::to_string(eps));
    }
    v.resize(m);
    std::sort(v.begin(), v.end());
    return v;
  };
  const std::vector<double> plus = cluster(eps);
  const std::vector<double> minus = cluster(-eps);
  for (int k = 0; k < m; ++k) {
    const double vp = (plus[k] - lambda) / eps;
    const double vm = (lambda - minus[m - 1 - k]) / eps;
    if (std::abs(vp - vm) > 1e-4 * s)
      throw DegenerateBranchMatching("one-sided branch velocities disagree (" +
                                     std::to_string(vp) + " vs " + std::to_string(vm) + ")");
    out.branch_velocities.push_back(0.5 * (vp + vm) - sigma);
  }
  const double vthr = 1e-6 * s;
  for (double v : out.branch_velocities) {
    if (v > vthr) ++out.incoming_count;
    else if (v < -vthr) ++out.outgoing_count;
  }
  out.totally = out.incoming_count == m || out.outgoing_count == m;
  return out;
}

}  // namespace mhdchar
