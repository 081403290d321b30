#pragma once

#include <functional>

#include "mhdchar/linalg.hpp"
#include "mhdchar/symbol.hpp"
#include "mhdchar/thermo.hpp"
#include "mhdchar/tolerances.hpp"

namespace mhdchar {

/// zeta = (tau - i gamma_L, eta) on the unit hemisphere
/// tau^2 + gamma_L^2 + |eta|^2 = 1, gamma_L >= 0.
struct BoundaryFrequency {
  double tau = 0.0;
  double gamma_L = 1.0;
  Eigen::Vector2d eta = Eigen::Vector2d::Zero();

  double norm() const;
  BoundaryFrequency normalized() const;
  cplx laplace() const { return {tau, -gamma_L}; }
};

/// Frozen-coefficient boundary problem on x_d > 0:
///   A_d d/dx_d U + d/dt U + A_t1 d/dx_t1 U + A_t2 d/dx_t2 U = 0.
/// For a single state the blocks are 8x8; the folded two-sided shock problem is 16x16.
class BoundaryProblem {
 public:
  BoundaryProblem(MatX A_d, MatX A_t1, MatX A_t2);

  /// One-sided problem for `state` with normal axis d (tangential axes are the two others in
  /// increasing order), moving frame speed sigma. Throws CharacteristicBoundary if det A_d ~ 0.
  static BoundaryProblem one_sided(const ThermoState& state, const EquationOfState& eos, int d,
                                   double sigma = 0.0, double tol_det = 1e-10);

  Eigen::Index size() const { return A_d_.rows(); }
  const MatX& A_d() const { return A_d_; }
  const MatX& A_t1() const { return A_t1_; }
  const MatX& A_t2() const { return A_t2_; }

  /// G(zeta) = A_d^{-1} ((tau - i gamma_L) I + eta_1 A_t1 + eta_2 A_t2).
  CMatX G(const BoundaryFrequency& zf) const;

  /// Number of positive eigenvalues of A_d, which is dim E_- for gamma_L > 0.
  int incoming_count() const { return incoming_; }

 private:
  MatX A_d_, A_t1_, A_t2_;
  MatX A_d_inv_;
  int incoming_ = 0;
};

/// Tangential axes paired with normal axis d.
std::pair<int, int> tangential_axes(int d);

/// G for a single state. Throws CharacteristicBoundary when A_d is singular.
CMatX assemble_G(const ThermoState& state, const EquationOfState& eos, int d,
                 const BoundaryFrequency& zf, double sigma = 0.0, double tol_det = 1e-10);

struct StableSubspace {
  CMatX basis;      ///< orthonormal columns spanning E_-
  CVecX spectrum;   ///< eigenvalues of G in the reordered Schur form
  double min_gap = 0.0;  ///< min |Im mu| over the spectrum
  double invariance_residual = 0.0;  ///< ||(I - P P^*) G P|| / ||G||
  bool continued = false;  ///< evaluated at gamma_L = eps_cont instead of the requested point
  Eigen::Index dim() const { return basis.cols(); }
};

/// Orthonormal basis of the invariant subspace for {Im mu < 0}, from a Schur
/// form reordered so those eigenvalues lead. Throws SpectralSplitFailure when
/// gamma_L > 1e-8 and some |Im mu| < 1e-12 max(1, ||G||).
StableSubspace stable_subspace(const CMatX& G, double gamma_L);

/// Stable subspace of problem.G(zf). When gamma_L < eps_cont the subspace is
/// taken at gamma_L = eps_cont on the same (tau, eta).
StableSubspace stable_subspace(const BoundaryProblem& problem, const BoundaryFrequency& zf,
                               double eps_cont = 1e-6);

/// Boundary conditions M(zeta) U = g with p = rows(M).
class BoundaryOperator {
 public:
  using Evaluator = std::function<CMatX(const BoundaryFrequency&)>;

  BoundaryOperator(Eigen::Index rows, Eigen::Index cols, Evaluator eval)
      : rows_(rows), cols_(cols), eval_(std::move(eval)) {}
  static BoundaryOperator constant(const CMatX& M);
  /// Rows selecting the listed unknowns (0-based).
  static BoundaryOperator dirichlet(Eigen::Index n, const std::vector<int>& components);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Eigen::Index kernel_dim() const { return cols_ - rows_; }
  CMatX operator()(const BoundaryFrequency& zf) const { return eval_(zf); }

 private:
  Eigen::Index rows_, cols_;
  Evaluator eval_;
};

/// Orthonormal basis of ker M. Throws RankDeficiency if rank(M) < rows(M).
CMatX kernel_basis(const CMatX& M, double rel_tol = 1e-10);

struct LopatinskiResult {
  CMatX E_minus;
  Eigen::Index k = 0;
  cplx D{0.0, 0.0};
  double abs_D = 0.0;        ///< |det| via Householder QR of [E_- | ker M]
  double abs_D_lu = 0.0;     ///< |D| from the LU determinant
  double abs_D_proj = 0.0;   ///< product of singular values of (I - E E^*) K
  double invariance_residual = 0.0;
  double min_gap = 0.0;
  bool continued = false;
};

/// D = det[E_- | K] for orthonormal bases E_- and K = ker M. Throws
/// DimensionMismatch unless the column counts total the ambient dimension.
LopatinskiResult lopatinski_det(const CMatX& E_minus, const CMatX& kernel);

/// Full evaluation at one frequency: E_-(zeta), ker M(zeta), D.
LopatinskiResult evaluate_lopatinski(const BoundaryProblem& problem, const BoundaryOperator& op,
                                     const BoundaryFrequency& zf, double eps_cont = 1e-6);

}  // namespace mhdchar
