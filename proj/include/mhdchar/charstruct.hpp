#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mhdchar/linalg.hpp"
#include "mhdchar/thermo.hpp"
#include "mhdchar/tolerances.hpp"

namespace mhdchar {

/// Wave speeds per unit |xi| for one (state, xi).
struct WaveSpeeds {
  double a = 0.0;   ///< signed normal Alfven speed (xi_hat . B) / sqrt(rho)
  double b = 0.0;   ///< |xi_hat x B| / sqrt(rho)
  double h = 0.0;   ///< |B| / sqrt(rho)
  double c0 = 0.0;  ///< magneto-acoustic reference (sound) speed
  double c_s = 0.0;
  double c_f = 0.0;
  double xi_norm = 0.0;
};

WaveSpeeds wave_speeds(const ThermoState& state, const EquationOfState& eos, const Vec3& xi);

enum class Wave { Entropy, SlowMinus, SlowPlus, AlfvenMinus, AlfvenPlus, FastMinus, FastPlus };
enum class RootClass { Simple, GeometricallyRegular, TotallyNonglancing, NotClassified };

std::string to_string(Wave w);
std::string to_string(RootClass c);

struct CharacteristicRoot {
  double lambda = 0.0;
  int multiplicity = 1;
  /// Families merged into this root, in a fixed order; front() is the primary family.
  std::vector<Wave> families;
  RootClass classification = RootClass::NotClassified;
  /// Independent eigenvectors of A at lambda; -1 when not computed.
  int eigenvector_count = -1;

  Wave family() const { return families.front(); }
};

/// Closed-form spectrum of A(U, xi): the eight values
///   u.xi (x2), u.xi +- c_s|xi|, u.xi +- (xi.B)/sqrt(rho), u.xi +- c_f|xi|,
/// with coincident values merged. Ascending in lambda; multiplicities sum to 8.
std::vector<CharacteristicRoot> eigenvalues(const ThermoState& state, const EquationOfState& eos,
                                            const Vec3& xi, const Tolerances& tol = {});

/// The same eight values without merging, ascending.
std::array<double, 8> eigenvalues_unmerged(const ThermoState& state, const EquationOfState& eos,
                                           const Vec3& xi);

/// Coefficients c[0..8] (ascending powers of x = lambda_tilde / |xi|) of
///   x^2 (x^2 - a^2) ((x^2 - a^2)(x^2 - c0^2) - b^2 x^2).
std::array<double, 9> char_poly_reduced(const ThermoState& state, const EquationOfState& eos,
                                        const Vec3& xi);
double eval_poly(const std::array<double, 9>& c, double x);

/// (sigma_dot, theta_dot) -> (x_dot, y_dot) with sigma_dot = rho_dot / rho:
///   x_dot = P_rho sigma_dot + P_theta / rho theta_dot
///   y_dot = P_theta theta sigma_dot - e_theta rho theta_dot
struct EntropyTransform {
  Mat2 T;
  Mat2 T_inv;
  double det = 0.0;
};

EntropyTransform entropy_transform(const ThermoState& state, const EquationOfState& eos);
/// Same map from raw coefficients; skips admissibility so synthetic inputs can
/// probe the singular set. Throws SingularTransform when |det| < 1e-14 * scale.
EntropyTransform entropy_transform(const EosEval& ev, double rho, double theta);

/// Orthonormal frame (xi_hat, t1, t2) with B_perp along t1 when it exists, and
/// the linear change of unknowns into
///   (x_dot, u_par, u_perp1, u_perp2, v_perp1, v_perp2, y_dot, v_par),  v = B / sqrt(rho).
struct AdaptedBasis {
  Vec3 xi_hat;
  Vec3 t1;
  Vec3 t2;
  double a = 0.0;   ///< v_par, signed
  double b = 0.0;   ///< |v_perp| >= 0
  double c0_sq = 0.0;
  bool householder_fallback = false;
  /// Y = C V maps (rho_dot, u_dot, theta_dot, B_dot) to the adapted coordinates.
  Mat8 C;
  /// Reduced operator per unit |xi| in adapted coordinates: C (tilde A / |xi|) C^{-1}.
  Mat8 reduced;
};

AdaptedBasis adapted_basis(const ThermoState& state, const EquationOfState& eos, const Vec3& xi);

/// lambda_tilde I - |xi| reduced, the block matrix of the adapted system. Its
/// determinant equals |xi|^8 P(lambda_tilde / |xi|) with P from char_poly_reduced.
Mat8 adapted_block_matrix(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                          double lambda_tilde);

enum class FieldVsSound { Sub, Super, Equal };
enum class FieldCase { Generic, NormalOrthogonal, Aligned, Excluded };

std::string to_string(FieldVsSound f);
std::string to_string(FieldCase c);

struct RegimeTag {
  bool xi_dot_B_zero = false;
  bool xi_cross_B_zero = false;
  bool B_zero = false;
  FieldVsSound field_vs_sound = FieldVsSound::Sub;
  /// Some flag was set by the tolerance band rather than by an exact zero.
  bool near_manifold = false;
  FieldCase field_case = FieldCase::Generic;
};

RegimeTag regime(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                 const Tolerances& tol = {});

/// Planar boundary x_d = const moving with speed sigma.
struct BoundaryFrame {
  int axis = 3;
  double sigma = 0.0;
};

struct ClassifyOptions {
  Tolerances tol;
  /// When false, aligned-case double roots are left NotClassified instead of
  /// requiring a boundary frame.
  bool glancing_verdict = true;
};

struct Classification {
  RegimeTag regime;
  WaveSpeeds speeds;
  std::vector<CharacteristicRoot> roots;
};

/// Multiplicity structure of the multiple roots:
///   generic:        six simple roots plus u.xi (x2) geometrically regular;
///   xi.B = 0:       fast roots simple, one root of multiplicity 6 geometrically regular;
///   xi x B = 0:     u.xi (x2) geometrically regular, two double roots totally
///                   nonglancing iff u_d - sigma != +-B_d / sqrt(rho).
/// B = 0 and |B|^2 = rho c0^2 leave the multiple roots NotClassified.
Classification classify(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                        const std::optional<BoundaryFrame>& boundary,
                        const ClassifyOptions& opts = {});

struct NonglancingOptions {
  /// Step of the derivative stencil is step_base^(1/m) |xi|.
  double step_base = 1e-3;
  /// Perturbation used to follow eigenvalue branches, relative to |xi|.
  double branch_eps = 1e-6;
  /// Threshold on the normalized m-th derivative.
  double tol = 1e-8;
};

struct NonglancingResult {
  bool nonglancing = false;
  bool totally = false;
  int incoming_count = 0;  ///< branches with d lambda / d xi_d - sigma > 0
  int outgoing_count = 0;  ///< branches with d lambda / d xi_d - sigma < 0
  /// m-th xi_d derivative of P at the root, divided by m! prod(other root gaps) s^m.
  double normalized_derivative = 0.0;
  double richardson_error = 0.0;
  std::vector<double> branch_velocities;  ///< d lambda_j / d xi_d - sigma
};

/// Taylor test of the characteristic polynomial P(tau, xi) = det(tau I + A(xi) - sigma xi_d I)
/// at tau = -(lambda - sigma xi_d) in the conormal direction xi_d.
NonglancingResult nonglancing_test(const ThermoState& state, const EquationOfState& eos,
                                   const CharacteristicRoot& root, const Vec3& xi,
                                   const BoundaryFrame& boundary,
                                   const NonglancingOptions& opts = {});

/// Number of independent eigenvectors of A(U, xi) for the eigenvalues within
/// `band` of lambda, from the symmetrizer-based eigendecomposition.
int eigenvector_count(const ThermoState& state, const EquationOfState& eos, const Vec3& xi,
                      double lambda, double band);

/// Weights of the centered finite-difference stencil offsets -K..K (unit spacing)
/// for the m-th derivative at 0.
std::vector<double> central_stencil_weights(int K, int m);

}  // namespace mhdchar
