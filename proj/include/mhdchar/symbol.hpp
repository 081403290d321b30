#pragma once

#include "mhdchar/linalg.hpp"
#include "mhdchar/thermo.hpp"

namespace mhdchar {

/// 8x8 symbol in the unknown ordering (rho, u1, u2, u3, theta, B1, B2, B3).
using SymbolMatrix = Mat8;

/// Symbol with the advection part removed:
///   tilde A(U, xi) = sum_j A^j(U) xi_j - (u . xi) I.
/// Linear in xi; xi = 0 gives the zero matrix.
SymbolMatrix assemble_tilde_symbol(const ThermoState& state, const EquationOfState& eos,
                                   const Vec3& xi);

/// A(U, xi) = sum_j A^j(U) xi_j = (u . xi) I + tilde A(U, xi).
SymbolMatrix assemble_full_symbol(const ThermoState& state, const EquationOfState& eos,
                                  const Vec3& xi);

/// Same assembly from already-evaluated EOS coefficients (no admissibility check).
SymbolMatrix assemble_full_symbol(const ThermoState& state, const EosEval& ev, const Vec3& xi);

/// Diagonal Friedrichs symmetrizer S = diag(P_rho/rho, rho, rho, rho, rho e_theta/theta, 1, 1, 1).
/// S A^j is symmetric for every j.
struct Symmetrizer {
  Vec8 diagonal;
  Mat8 matrix() const { return diagonal.asDiagonal(); }
};

Symmetrizer symmetrizer(const ThermoState& state, const EquationOfState& eos);

struct BoundaryMatrix {
  SymbolMatrix A_d;
  double det = 0.0;
  bool is_noncharacteristic = false;
};

/// A_d = A(U, e_d) for d in {1, 2, 3}, with frame speed `sigma` subtracted from
/// the diagonal. Noncharacteristic means |det A_d| > tol_det * ||A_d||_S^8, where
/// ||.||_S is the norm induced by the symmetrizer (the spectral radius of A_d).
BoundaryMatrix boundary_matrix(const ThermoState& state, const EquationOfState& eos, int d,
                               double sigma = 0.0, double tol_det = 1e-10);

/// Eigenvalues of A(U, xi), ascending. Computed from the symmetric matrix
/// S^{1/2} A S^{-1/2}, so they are real to working precision.
Vec8 numeric_spectrum(const ThermoState& state, const EquationOfState& eos, const Vec3& xi);

/// Eigen-decomposition of A(U, xi) through the symmetrizer. Columns of
/// `vectors` are right eigenvectors of A itself, matched to ascending `values`.
struct SymbolEigen {
  Vec8 values;
  Mat8 vectors;
};
SymbolEigen symbol_eigen(const ThermoState& state, const EquationOfState& eos, const Vec3& xi);

}  // namespace mhdchar
