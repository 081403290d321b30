#include "mhdchar/shock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mhdchar/charstruct.hpp"
#include "mhdchar/errors.hpp"
#include "mhdchar/symbol.hpp"

namespace mhdchar {

std::string to_string(ShockFamily f) {
  return f == ShockFamily::FastPlus ? "fast+" : "fast-";
}

ShockFamily shock_family_from_string(const std::string& s) {
  if (s == "fast+" || s == "fast_plus") return ShockFamily::FastPlus;
  if (s == "fast-" || s == "fast_minus") return ShockFamily::FastMinus;
  throw ConfigError("unknown shock family '" + s + "' (expected fast+ or fast-)");
}

Vec8 conserved(const ThermoState& s, const EquationOfState& eos) {
  const EosEval ev = eval_eos(eos, s.rho, s.theta);
  Vec8 W;
  W(0) = s.rho;
  W.segment<3>(1) = s.rho * s.u;
  W(4) = s.rho * ev.e + 0.5 * s.rho * s.u.squaredNorm() + 0.5 * s.B.squaredNorm();
  W.segment<3>(5) = s.B;
  return W;
}

Vec8 flux(const ThermoState& s, const EquationOfState& eos, int d) {
  const EosEval ev = eval_eos(eos, s.rho, s.theta);
  const int k = d - 1;
  const double ud = s.u(k), Bd = s.B(k);
  const double B2 = s.B.squaredNorm();
  Vec8 F;
  F(0) = s.rho * ud;
  F.segment<3>(1) = s.rho * ud * s.u - Bd * s.B;
  F(1 + k) += ev.P + 0.5 * B2;
  F(4) = (s.rho * ev.e + 0.5 * s.rho * s.u.squaredNorm() + ev.P + B2) * ud - Bd * s.u.dot(s.B);
  F.segment<3>(5) = ud * s.B - Bd * s.u;
  return F;
}

Mat8 flux_jacobian(const ThermoState& s, const EquationOfState& eos, int d) {
  const EosEval ev = eval_eos(eos, s.rho, s.theta);
  const int k = d - 1;
  const double rho = s.rho;
  const double ud = s.u(k), Bd = s.B(k);
  const double u2 = s.u.squaredNorm(), B2 = s.B.squaredNorm();
  const double uB = s.u.dot(s.B);
  auto dl = [](int i, int j) { return i == j ? 1.0 : 0.0; };

  Mat8 J = Mat8::Zero();
  J(0, var::rho) = ud;
  J(0, var::u + k) = rho;
  for (int i = 0; i < 3; ++i) {
    const int row = 1 + i;
    J(row, var::rho) = s.u(i) * ud + (i == k ? ev.P_rho : 0.0);
    J(row, var::theta) = i == k ? ev.P_theta : 0.0;
    for (int j = 0; j < 3; ++j) {
      J(row, var::u + j) = rho * (dl(i, j) * ud + s.u(i) * dl(j, k));
      J(row, var::B + j) = s.B(j) * dl(i, k) - dl(i, j) * Bd - s.B(i) * dl(j, k);
    }
  }
  const double total = rho * ev.e + 0.5 * rho * u2 + ev.P + B2;
  J(4, var::rho) = (ev.e + rho * ev.e_rho + 0.5 * u2 + ev.P_rho) * ud;
  J(4, var::theta) = (rho * ev.e_theta + ev.P_theta) * ud;
  for (int j = 0; j < 3; ++j) {
    J(4, var::u + j) = total * dl(j, k) + rho * s.u(j) * ud - Bd * s.B(j);
    J(4, var::B + j) = 2.0 * s.B(j) * ud - dl(j, k) * uB - Bd * s.u(j);
  }
  for (int i = 0; i < 3; ++i) {
    const int row = 5 + i;
    for (int j = 0; j < 3; ++j) {
      J(row, var::u + j) = s.B(i) * dl(j, k) - Bd * dl(i, j);
      J(row, var::B + j) = ud * dl(i, j) - s.u(i) * dl(j, k);
    }
  }
  return J;
}

Vec8 rh_jump(const ThermoState& left, const ThermoState& right, const EquationOfState& eos,
             int d) {
  Vec8 r = flux(right, eos, d) - flux(left, eos, d);
  r(var::B + d - 1) = right.B(d - 1) - left.B(d - 1);
  return r;
}

namespace {

int count_if_vec(const Vec8& v, double lo, double hi) {
  int c = 0;
  for (int i = 0; i < 8; ++i)
    if (v(i) > lo && v(i) < hi) ++c;
  return c;
}

struct Scales {
  Vec8 f;        // residual scales
  VecX x;        // unknown scales (7)
};

Scales make_scales(const ThermoState& up, const EquationOfState& eos, int d, double cf) {
  const EosEval ev = eval_eos(eos, up.rho, up.theta);
  const int k = d - 1;
  const double w = std::abs(up.u(k));
  const double B2 = up.B.squaredNorm();
  const double field = std::sqrt(up.rho) * cf;
  Scales s;
  s.f(0) = up.rho * w;
  for (int i = 0; i < 3; ++i) s.f(1 + i) = up.rho * w * w + ev.P + 0.5 * B2;
  s.f(4) = w * (up.rho * ev.e + 0.5 * up.rho * up.u.squaredNorm() + ev.P + B2) +
           std::abs(up.B(k)) * std::abs(up.u.dot(up.B));
  for (int i = 0; i < 3; ++i) s.f(5 + i) = w * (up.B.norm() + field) + std::abs(up.B(k)) * up.u.norm();
  s.x.resize(7);
  const double speed = cf + w + up.u.norm();
  s.x << up.rho, speed, speed, speed, up.theta, field, field;
  return s;
}

// Unknowns: rho, u(3), theta, and the two tangential field components.
ThermoState unpack(const VecX& x, const ThermoState& up, int d) {
  const auto [t1, t2] = tangential_axes(d);
  ThermoState s;
  s.rho = x(0);
  s.u = x.segment<3>(1);
  s.theta = x(4);
  s.B = Vec3::Zero();
  s.B(d - 1) = up.B(d - 1);
  s.B(t1 - 1) = x(5);
  s.B(t2 - 1) = x(6);
  return s;
}

VecX pack(const ThermoState& s, int d) {
  const auto [t1, t2] = tangential_axes(d);
  VecX x(7);
  x << s.rho, s.u(0), s.u(1), s.u(2), s.theta, s.B(t1 - 1), s.B(t2 - 1);
  return x;
}

VecX residual(const VecX& x, const ThermoState& up, const EquationOfState& eos, int d,
              const Scales& sc) {
  const ThermoState down = unpack(x, up, d);
  const Vec8 full = (flux(down, eos, d) - flux(up, eos, d)).cwiseQuotient(sc.f);
  VecX r(7);
  int c = 0;
  for (int i = 0; i < 8; ++i)
    if (i != var::B + d - 1) r(c++) = full(i);
  return r;
}

struct NewtonResult {
  ThermoState down;
  double resid = 0.0;
  bool ok = false;
};

NewtonResult newton(const ThermoState& up, const ThermoState& seed, const EquationOfState& eos,
                    int d, double cf, const RankineHugoniotOptions& opts) {
  const Scales sc = make_scales(up, eos, d, cf);
  VecX x = pack(seed, d);
  auto admissible = [](const VecX& v) { return v(0) > 0.0 && v(4) > 0.0 && v.allFinite(); };
  auto R = [&](const VecX& v) { return residual(v, up, eos, d, sc); };
  NewtonResult out;
  if (!admissible(x)) return out;
  VecX r = R(x);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (r.lpNorm<Eigen::Infinity>() < 1e-15) break;
    MatX J(7, 7);
    for (int j = 0; j < 7; ++j) {
      const double h = 1e-7 * sc.x(j);
      VecX xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      if (!admissible(xm)) {
        J.col(j) = (R(xp) - r) / h;
      } else {
        J.col(j) = (R(xp) - R(xm)) / (2.0 * h);
      }
    }
    const VecX step = -J.fullPivLu().solve(r);
    if (!step.allFinite()) return out;
    double lam = 1.0;
    bool accepted = false;
    const double r0 = r.norm();
    while (lam > 1e-6) {
      const VecX xn = x + lam * step;
      if (admissible(xn)) {
        const VecX rn = R(xn);
        if (rn.allFinite() && rn.norm() < (1.0 - 1e-4 * lam) * r0) {
          x = xn;
          r = rn;
          accepted = true;
          break;
        }
      }
      lam *= 0.5;
    }
    if (!accepted) break;
    if (step.cwiseQuotient(sc.x).lpNorm<Eigen::Infinity>() < 1e-15) break;
  }
  out.down = unpack(x, up, d);
  out.resid = r.lpNorm<Eigen::Infinity>();
  out.ok = out.resid <= opts.residual_tol;
  return out;
}

// Normal-shock relations for a gamma-law gas, used as the Newton seed.
ThermoState gas_seed(const ThermoState& up, const EquationOfState& eos, int d) {
  const int k = d - 1;
  const EosEval ev = eval_eos(eos, up.rho, up.theta);
  const double c02 = sound_speed_sq(ev, up.rho, up.theta);
  const double Gam = up.rho * c02 / ev.P;
  const double w1 = up.u(k);
  const double M2 = w1 * w1 / c02;
  ThermoState s = up;
  if (M2 <= 1.0) return s;
  const double ratio = (Gam + 1.0) * M2 / ((Gam - 1.0) * M2 + 2.0);
  const double P2 = ev.P * (1.0 + 2.0 * Gam / (Gam + 1.0) * (M2 - 1.0));
  s.rho = up.rho * ratio;
  s.u(k) = w1 / ratio;
  // Solve P(rho2, theta) = P2 for theta.
  double th = up.theta * (P2 / ev.P) / ratio;
  for (int it = 0; it < 50; ++it) {
    const EosEval e2 = eos.evaluate(s.rho, th);
    if (!(e2.P_theta > 0.0)) break;
    const double dth = (e2.P - P2) / e2.P_theta;
    th -= dth;
    if (th <= 0.0) {
      th = up.theta;
      break;
    }
    if (std::abs(dth) < 1e-15 * th) break;
  }
  s.theta = th;
  for (int i = 0; i < 3; ++i)
    if (i != k) s.B(i) = up.B(i) * ratio;
  return s;
}

double lab_to_frame(ThermoState& up, ShockFamily family, double mach, const EquationOfState& eos,
                    int d) {
  const double cf = wave_speeds(up, eos, unit_axis(d)).c_f;
  const double w = family == ShockFamily::FastPlus ? -mach * cf : mach * cf;
  const double sigma = up.u(d - 1) - w;
  up.u(d - 1) = w;
  return sigma;
}

}  // namespace

LaxCounts lax_counts(const PlanarShock& shock) {
  const Vec3 ed = unit_axis(shock.axis);
  const Vec8 lv = numeric_spectrum(shock.left, *shock.eos, ed);
  const Vec8 rv = numeric_spectrum(shock.right, *shock.eos, ed);
  const double scale = std::max(lv.cwiseAbs().maxCoeff(), rv.cwiseAbs().maxCoeff());
  const double z = 1e-10 * scale;
  LaxCounts c;
  c.left_impinging = count_if_vec(lv, z, std::numeric_limits<double>::infinity());
  c.right_impinging = count_if_vec(rv, -std::numeric_limits<double>::infinity(), -z);
  c.characteristic = count_if_vec(lv, -z, z) + count_if_vec(rv, -z, z);
  return c;
}

bool satisfies_lax(const PlanarShock& shock) {
  const LaxCounts c = lax_counts(shock);
  if (c.characteristic != 0) return false;
  if (shock.family == ShockFamily::FastPlus) return c.left_impinging == 1 && c.right_impinging == 8;
  return c.left_impinging == 8 && c.right_impinging == 1;
}

PlanarShock rankine_hugoniot(const EosPtr& eos, const ThermoState& upstream, ShockFamily family,
                             double mach, int d, const Vec3& B,
                             const RankineHugoniotOptions& opts) {
  if (!eos) throw ConfigError("shock needs an equation of state");
  if (d < 1 || d > 3) throw DimensionMismatch("shock axis must be 1, 2 or 3");
  if (!(mach >= 1.0 - 1e-12))
    throw NoAdmissibleShock("fast Mach number " + std::to_string(mach) + " < 1 violates Lax");
  ThermoState up = upstream;
  up.B = B;
  up.validate();

  PlanarShock shock;
  shock.axis = d;
  shock.family = family;
  shock.eos = eos;
  shock.mach = mach;
  ThermoState up_frame = up;
  shock.sigma = lab_to_frame(up_frame, family, mach, *eos, d);

  auto assign = [&](const ThermoState& down) {
    if (family == ShockFamily::FastPlus) {
      shock.right = up_frame;
      shock.left = down;
    } else {
      shock.left = up_frame;
      shock.right = down;
    }
  };

  if (std::abs(mach - 1.0) <= 1e-12) {
    assign(up_frame);
    shock.degenerate = true;
    return shock;
  }

  // Direct Newton from the gas-dynamic seed, then continuation in field strength.
  NewtonResult best;
  ThermoState seed = gas_seed(up_frame, *eos, d);
  const double cf_full = wave_speeds(up_frame, *eos, unit_axis(d)).c_f;
  best = newton(up_frame, seed, *eos, d, cf_full, opts);

  auto lax_ok = [&](const ThermoState& down) {
    assign(down);
    return satisfies_lax(shock);
  };

  if (!(best.ok && lax_ok(best.down))) {
    const double Bn = B.norm();
    NewtonResult cur;
    ThermoState guess;
    bool have = false;
    double s = 0.0, ds = 0.25;
    ThermoState u_s = up;
    while (s < 1.0) {
      const double s_next = have ? std::min(1.0, s + ds) : 0.0;
      u_s = up;
      u_s.B = s_next * B;
      lab_to_frame(u_s, family, mach, *eos, d);
      const double cf = wave_speeds(u_s, *eos, unit_axis(d)).c_f;
      ThermoState sd = have ? guess : gas_seed(u_s, *eos, d);
      if (have) {
        const auto [t1, t2] = tangential_axes(d);
        if (s > 0.0) {
          sd.B(t1 - 1) *= s_next / s;
          sd.B(t2 - 1) *= s_next / s;
        } else {
          const ThermoState g = gas_seed(u_s, *eos, d);
          sd.B(t1 - 1) = g.B(t1 - 1);
          sd.B(t2 - 1) = g.B(t2 - 1);
        }
        sd.B(d - 1) = u_s.B(d - 1);
      }
      cur = newton(u_s, sd, *eos, d, cf, opts);
      if (cur.ok) {
        guess = cur.down;
        s = s_next;
        if (have) ds = std::min(0.5, ds * 1.5);
        have = true;
        if (Bn == 0.0) break;
      } else {
        if (!have) break;
        ds *= 0.5;
        if (ds < 1.0 / 4096.0) break;
      }
    }
    if (have && s >= 1.0) best = cur;
    else if (have && Bn == 0.0) best = cur;
    if (!(best.ok && lax_ok(best.down))) {
      std::ostringstream os;
      os << "jump conditions not solved: scaled residual " << best.resid
         << (best.ok ? " (Lax inequalities violated)" : "");
      throw NoAdmissibleShock(os.str());
    }
  }
  assign(best.down);
  const Scales sc = make_scales(up_frame, *eos, d, cf_full);
  shock.rh_residual = (rh_jump(shock.left, shock.right, *eos, d).cwiseQuotient(sc.f))
                          .lpNorm<Eigen::Infinity>();
  return shock;
}

BoundaryProblem shock_problem(const PlanarShock& shock) {
  const int d = shock.axis;
  const auto [t1, t2] = tangential_axes(d);
  const EquationOfState& eos = *shock.eos;
  auto block = [](const Mat8& A, const Mat8& B) {
    MatX M = MatX::Zero(16, 16);
    M.topLeftCorner(8, 8) = A;
    M.bottomRightCorner(8, 8) = B;
    return M;
  };
  const Mat8 Ad_r = assemble_full_symbol(shock.right, eos, unit_axis(d));
  const Mat8 Ad_l = assemble_full_symbol(shock.left, eos, unit_axis(d));
  return BoundaryProblem(block(Ad_r, -Ad_l),
                         block(assemble_full_symbol(shock.right, eos, unit_axis(t1)),
                               assemble_full_symbol(shock.left, eos, unit_axis(t1))),
                         block(assemble_full_symbol(shock.right, eos, unit_axis(t2)),
                               assemble_full_symbol(shock.left, eos, unit_axis(t2))));
}

CMatX shock_boundary_matrix(const PlanarShock& shock, const BoundaryFrequency& zf) {
  const int d = shock.axis;
  const int nrow = var::B + d - 1;
  const auto [t1, t2] = tangential_axes(d);
  const EquationOfState& eos = *shock.eos;
  const ThermoState& R = shock.right;
  const ThermoState& L = shock.left;

  Mat8 Jr = flux_jacobian(R, eos, d);
  Mat8 Jl = flux_jacobian(L, eos, d);
  Jr.row(nrow).setZero();
  Jl.row(nrow).setZero();
  Jr(nrow, nrow) = 1.0;
  Jl(nrow, nrow) = 1.0;

  CMatX Mfull(8, 16);
  Mfull.leftCols(8) = Jr.cast<cplx>();
  Mfull.rightCols(8) = (-Jl).cast<cplx>();

  const Vec8 dW = conserved(R, eos) - conserved(L, eos);
  const Vec8 F1r = flux(R, eos, t1), F1l = flux(L, eos, t1);
  const Vec8 F2r = flux(R, eos, t2), F2l = flux(L, eos, t2);
  CVecX b = zf.laplace() * dW.cast<cplx>() +
            (zf.eta(0) * (F1r - F1l) + zf.eta(1) * (F2r - F2l)).cast<cplx>();
  b(nrow) = zf.eta(0) * (R.B(t1 - 1) - L.B(t1 - 1)) + zf.eta(1) * (R.B(t2 - 1) - L.B(t2 - 1));

  const double bscale = zf.norm() * (conserved(R, eos).norm() + conserved(L, eos).norm() +
                                     F1r.norm() + F1l.norm() + F2r.norm() + F2l.norm());
  if (!(b.norm() > 1e-12 * bscale))
    throw RankDeficiency("front coefficient vanishes; the front perturbation cannot be eliminated");

  Eigen::HouseholderQR<CMatX> qr(b);
  const CMatX Q = qr.householderQ() * CMatX::Identity(8, 8);
  const CMatX Lproj = Q.rightCols(7).adjoint();
  CMatX M = Lproj * Mfull;

  Eigen::JacobiSVD<CMatX> svd(M);
  const VecX sv = svd.singularValues();
  if (!(sv(6) > 1e-10 * sv(0)))
    throw RankDeficiency("linearized jump conditions lose rank after front elimination");
  return M;
}

BoundaryOperator shock_boundary_operator(const PlanarShock& shock) {
  return BoundaryOperator(7, 16, [shock](const BoundaryFrequency& zf) {
    return shock_boundary_matrix(shock, zf);
  });
}

}  // namespace mhdchar
