#pragma once

#include <string>

#include "mhdchar/boundary.hpp"
#include "mhdchar/linalg.hpp"
#include "mhdchar/thermo.hpp"

namespace mhdchar {

/// Fast Lax shocks. FastPlus travels toward +x_d with the upstream state on the
/// right; FastMinus travels toward -x_d with the upstream state on the left.
enum class ShockFamily { FastPlus, FastMinus };

std::string to_string(ShockFamily f);
ShockFamily shock_family_from_string(const std::string& s);

/// Planar discontinuity x_d = sigma t. `left` and `right` are stored in the
/// shock rest frame (u_d already shifted by -sigma).
struct PlanarShock {
  ThermoState left;
  ThermoState right;
  double sigma = 0.0;
  int axis = 3;
  ShockFamily family = ShockFamily::FastPlus;
  EosPtr eos;
  /// Upstream normal speed relative to the front over the upstream fast speed.
  double mach = 1.0;
  /// Scaled max-norm of the jump residual.
  double rh_residual = 0.0;
  /// Zero-strength shock: left == right, sigma on the fast characteristic.
  bool degenerate = false;

  const ThermoState& upstream() const { return family == ShockFamily::FastPlus ? right : left; }
  const ThermoState& downstream() const {
    return family == ShockFamily::FastPlus ? left : right;
  }
};

/// Conserved variables (rho, rho u, E, B) with E = rho e + rho |u|^2 / 2 + |B|^2 / 2.
Vec8 conserved(const ThermoState& s, const EquationOfState& eos);

/// Ideal MHD flux through a plane normal to axis d (1-based):
///   rho u_d,
///   rho u u_d + (P + |B|^2/2) e_d - B B_d,
///   (E + P + |B|^2/2) u_d - B_d (u . B),
///   u_d B - B_d u.
Vec8 flux(const ThermoState& s, const EquationOfState& eos, int d);

/// Jacobian of flux(., d) with respect to the primitive unknowns
/// (rho, u, theta, B).
Mat8 flux_jacobian(const ThermoState& s, const EquationOfState& eos, int d);

/// Jump residual F_d(right) - F_d(left) in the rest frame; the normal-field entry is
/// replaced by [B_d].
Vec8 rh_jump(const ThermoState& left, const ThermoState& right, const EquationOfState& eos, int d);

struct LaxCounts {
  int left_impinging = 0;   ///< eigenvalues of A_d(left) > 0
  int right_impinging = 0;  ///< eigenvalues of A_d(right) < 0
  int characteristic = 0;   ///< near-zero eigenvalues on either side
};

LaxCounts lax_counts(const PlanarShock& shock);
bool satisfies_lax(const PlanarShock& shock);

struct RankineHugoniotOptions {
  double residual_tol = 1e-10;
  int max_iterations = 100;
};

/// Solves the ideal MHD jump conditions for a fast shock with upstream state
/// `upstream` (lab frame; its B is replaced by `B`) and upstream fast Mach
/// number `mach`. mach == 1 returns the degenerate zero-strength shock.
/// Throws NoAdmissibleShock when Newton fails or the Lax inequalities do not hold.
PlanarShock rankine_hugoniot(const EosPtr& eos, const ThermoState& upstream, ShockFamily family,
                             double mach, int d, const Vec3& B,
                             const RankineHugoniotOptions& opts = {});

/// Folded two-sided problem on x_d > 0: unknowns (U_right, U_left), blocks
/// diag(A_d(right), -A_d(left)) and diag(A_t(right), A_t(left)).
BoundaryProblem shock_problem(const PlanarShock& shock);

/// Linearized jump conditions with the front perturbation eliminated.
///   J_r U_r - J_l U_l = psi b(zeta),
///   b = (tau - i gamma_L)[W] + sum_j eta_j [F_tj]   (mass, momentum, energy, tangential B),
///   b_Bd = sum_j eta_j [B_tj]                       (from [B . nu] = 0),
/// projected onto the orthogonal complement of b: a 7x16 operator.
/// Throws RankDeficiency if b vanishes or the projected rows lose rank.
CMatX shock_boundary_matrix(const PlanarShock& shock, const BoundaryFrequency& zf);

BoundaryOperator shock_boundary_operator(const PlanarShock& shock);

}  // namespace mhdchar
