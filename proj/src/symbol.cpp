#include "mhdchar/symbol.hpp"

#include <cmath>

#include "mhdchar/errors.hpp"

namespace mhdchar {

namespace {

SymbolMatrix tilde_from_eval(const ThermoState& s, const EosEval& ev, const Vec3& xi) {
  SymbolMatrix A = SymbolMatrix::Zero();
  const double rho = s.rho;
  const double Bxi = s.B.dot(xi);
  const double thermal = ev.P_theta * s.theta / (rho * ev.e_theta);
  for (int j = 0; j < 3; ++j) {
    // continuity: rho xi . du
    A(var::rho, var::u + j) = rho * xi(j);
    // temperature: theta P_theta / (rho e_theta) xi . du
    A(var::theta, var::u + j) = thermal * xi(j);
  }
  for (int i = 0; i < 3; ++i) {
    A(var::u + i, var::rho) = ev.P_rho / rho * xi(i);
    A(var::u + i, var::theta) = ev.P_theta / rho * xi(i);
    for (int j = 0; j < 3; ++j) {
      const double delta = (i == j) ? 1.0 : 0.0;
      // momentum: rho^-1 ((B . dB) xi - (B . xi) dB)
      A(var::u + i, var::B + j) = (s.B(j) * xi(i) - Bxi * delta) / rho;
      // induction: (xi . du) B - (B . xi) du
      A(var::B + i, var::u + j) = s.B(i) * xi(j) - Bxi * delta;
    }
  }
  return A;
}

EosEval checked_eval(const ThermoState& state, const EquationOfState& eos) {
  state.validate();
  return eval_eos(eos, state.rho, state.theta);
}

}  // namespace

SymbolMatrix assemble_tilde_symbol(const ThermoState& state, const EquationOfState& eos,
                                   const Vec3& xi) {
  return tilde_from_eval(state, checked_eval(state, eos), xi);
}

SymbolMatrix assemble_full_symbol(const ThermoState& state, const EosEval& ev, const Vec3& xi) {
  SymbolMatrix A = tilde_from_eval(state, ev, xi);
  A.diagonal().array() += state.u.dot(xi);
  return A;
}

SymbolMatrix assemble_full_symbol(const ThermoState& state, const EquationOfState& eos,
                                  const Vec3& xi) {
  return assemble_full_symbol(state, checked_eval(state, eos), xi);
}

Symmetrizer symmetrizer(const ThermoState& state, const EquationOfState& eos) {
  const EosEval ev = checked_eval(state, eos);
  Symmetrizer S;
  S.diagonal << ev.P_rho / state.rho, state.rho, state.rho, state.rho,
      state.rho * ev.e_theta / state.theta, 1.0, 1.0, 1.0;
  return S;
}

BoundaryMatrix boundary_matrix(const ThermoState& state, const EquationOfState& eos, int d,
                               double sigma, double tol_det) {
  if (d < 1 || d > 3) throw DimensionMismatch("boundary axis must be 1, 2 or 3");
  BoundaryMatrix out;
  out.A_d = assemble_full_symbol(state, eos, unit_axis(d));
  out.A_d.diagonal().array() -= sigma;
  out.det = out.A_d.partialPivLu().determinant();
  const Vec8 ev = numeric_spectrum(state, eos, unit_axis(d)).array() - sigma;
  const double scale = std::pow(ev.cwiseAbs().maxCoeff(), 8);
  out.is_noncharacteristic = std::abs(out.det) > tol_det * scale;
  return out;
}

SymbolEigen symbol_eigen(const ThermoState& state, const EquationOfState& eos, const Vec3& xi) {
  const Symmetrizer S = symmetrizer(state, eos);
  const SymbolMatrix A = assemble_full_symbol(state, eos, xi);
  const Vec8 r = S.diagonal.cwiseSqrt();
  // S^{1/2} A S^{-1/2} is symmetric because S A is.
  Mat8 H = r.asDiagonal() * A * r.cwiseInverse().asDiagonal();
  H = 0.5 * (H + H.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat8> es(H);
  SymbolEigen out;
  out.values = es.eigenvalues();
  out.vectors = r.cwiseInverse().asDiagonal() * es.eigenvectors();
  return out;
}

Vec8 numeric_spectrum(const ThermoState& state, const EquationOfState& eos, const Vec3& xi) {
  return symbol_eigen(state, eos, xi).values;
}

}  // namespace mhdchar
