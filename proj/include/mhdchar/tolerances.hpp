#pragma once

namespace mhdchar {

/// Scale-relative numerical bands shared by classification and boundary code.
struct Tolerances {
  /// Root merging band, multiplied by |xi| * max(c_f, |u|, 1).
  double tol_merge = 1e-9;
  /// Distance to the xi.B = 0, xi x B = 0, |B|^2 = rho c0^2 and B = 0 manifolds.
  double tol_manifold = 1e-9;
  /// Noncharacteristic boundary test |det A_d| > tol_det ||A_d||^8.
  double tol_det = 1e-10;
  /// Damping used to continue the stable subspace to gamma_L = 0.
  double eps_cont = 1e-6;
};

}  // namespace mhdchar
