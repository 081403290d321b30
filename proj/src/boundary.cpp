#include "mhdchar/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mhdchar/errors.hpp"

namespace mhdchar {

double BoundaryFrequency::norm() const {
  return std::sqrt(tau * tau + gamma_L * gamma_L + eta.squaredNorm());
}

BoundaryFrequency BoundaryFrequency::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw ZeroFrequency("boundary frequency must be nonzero");
  BoundaryFrequency z = *this;
  z.tau /= n;
  z.gamma_L /= n;
  z.eta /= n;
  return z;
}

std::pair<int, int> tangential_axes(int d) {
  switch (d) {
    case 1: return {2, 3};
    case 2: return {1, 3};
    case 3: return {1, 2};
    default: throw DimensionMismatch("boundary axis must be 1, 2 or 3");
  }
}

BoundaryProblem::BoundaryProblem(MatX A_d, MatX A_t1, MatX A_t2)
    : A_d_(std::move(A_d)), A_t1_(std::move(A_t1)), A_t2_(std::move(A_t2)) {
  const Eigen::Index n = A_d_.rows();
  if (A_d_.cols() != n || A_t1_.rows() != n || A_t1_.cols() != n || A_t2_.rows() != n ||
      A_t2_.cols() != n)
    throw DimensionMismatch("boundary problem blocks must be square and of equal size");
  Eigen::JacobiSVD<MatX> svd(A_d_);
  const VecX sv = svd.singularValues();
  if (!(sv(n - 1) > 1e-12 * sv(0)))
    throw CharacteristicBoundary("A_d is singular: boundary is characteristic");
  A_d_inv_ = A_d_.fullPivLu().inverse();
  Eigen::EigenSolver<MatX> es(A_d_, false);
  for (Eigen::Index k = 0; k < n; ++k)
    if (es.eigenvalues()(k).real() > 0.0) ++incoming_;
}

BoundaryProblem BoundaryProblem::one_sided(const ThermoState& state, const EquationOfState& eos,
                                           int d, double sigma, double tol_det) {
  const BoundaryMatrix bm = boundary_matrix(state, eos, d, sigma, tol_det);
  if (!bm.is_noncharacteristic)
    throw CharacteristicBoundary("det A_d below threshold for axis " + std::to_string(d));
  const auto [t1, t2] = tangential_axes(d);
  MatX A1 = assemble_full_symbol(state, eos, unit_axis(t1));
  MatX A2 = assemble_full_symbol(state, eos, unit_axis(t2));
  return BoundaryProblem(MatX(bm.A_d), std::move(A1), std::move(A2));
}

CMatX BoundaryProblem::G(const BoundaryFrequency& zf) const {
  const MatX tang = zf.eta(0) * A_t1_ + zf.eta(1) * A_t2_;
  CMatX G = (A_d_inv_ * tang).cast<cplx>();
  G += zf.laplace() * A_d_inv_.cast<cplx>();
  return G;
}

CMatX assemble_G(const ThermoState& state, const EquationOfState& eos, int d,
                 const BoundaryFrequency& zf, double sigma, double tol_det) {
  return BoundaryProblem::one_sided(state, eos, d, sigma, tol_det).G(zf);
}

namespace {

// Swap adjacent diagonal entries k, k+1 of the upper-triangular T, updating Q.
void swap_schur(CMatX& T, CMatX& Q, Eigen::Index k) {
  const cplx t11 = T(k, k), t22 = T(k + 1, k + 1), t12 = T(k, k + 1);
  Eigen::Vector2cd v(t12, t22 - t11);
  const double nv = v.norm();
  if (nv == 0.0) return;
  v /= nv;
  Eigen::Matrix2cd Z;
  Z << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  T.middleRows(k, 2) = (Z.adjoint() * T.middleRows(k, 2)).eval();
  T.middleCols(k, 2) = (T.middleCols(k, 2) * Z).eval();
  Q.middleCols(k, 2) = (Q.middleCols(k, 2) * Z).eval();
  T(k + 1, k) = 0.0;
  T(k, k) = t22;
  T(k + 1, k + 1) = t11;
}

}  // namespace

StableSubspace stable_subspace(const CMatX& G, double gamma_L) {
  const Eigen::Index n = G.rows();
  Eigen::ComplexSchur<CMatX> schur(G);
  if (schur.info() != Eigen::Success) throw SpectralSplitFailure("Schur decomposition failed");
  CMatX T = schur.matrixT();
  CMatX Q = schur.matrixU();

  const double gnorm = G.norm();
  StableSubspace out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) out.min_gap = std::min(out.min_gap, std::abs(T(k, k).imag()));
  if (gamma_L > 1e-8 && out.min_gap < 1e-12 * std::max(1.0, gnorm)) {
    std::ostringstream os;
    os << "eigenvalue within " << out.min_gap << " of the real axis at gamma_L = " << gamma_L;
    throw SpectralSplitFailure(os.str());
  }

  // Move every Im mu < 0 entry ahead of the others with adjacent swaps.
  Eigen::Index pos = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (T(j, j).imag() < 0.0) {
      for (Eigen::Index k = j; k > pos; --k) swap_schur(T, Q, k - 1);
      ++pos;
    }
  }
  out.spectrum = T.diagonal();
  out.basis = Q.leftCols(pos);
  if (pos > 0) {
    const CMatX GP = G * out.basis;
    const CMatX resid = GP - out.basis * (out.basis.adjoint() * GP);
    out.invariance_residual = resid.norm() / std::max(gnorm, 1e-300);
  }
  return out;
}

StableSubspace stable_subspace(const BoundaryProblem& problem, const BoundaryFrequency& zf,
                               double eps_cont) {
  if (zf.gamma_L < 0.0) throw DimensionMismatch("gamma_L must be nonnegative");
  if (zf.gamma_L >= eps_cont) return stable_subspace(problem.G(zf), zf.gamma_L);
  BoundaryFrequency zc = zf;
  zc.gamma_L = eps_cont;
  StableSubspace s = stable_subspace(problem.G(zc), zc.gamma_L);
  s.continued = true;
  return s;
}

BoundaryOperator BoundaryOperator::constant(const CMatX& M) {
  return BoundaryOperator(M.rows(), M.cols(), [M](const BoundaryFrequency&) { return M; });
}

BoundaryOperator BoundaryOperator::dirichlet(Eigen::Index n, const std::vector<int>& components) {
  CMatX M = CMatX::Zero(static_cast<Eigen::Index>(components.size()), n);
  for (std::size_t r = 0; r < components.size(); ++r) {
    if (components[r] < 0 || components[r] >= n)
      throw DimensionMismatch("dirichlet component out of range");
    M(static_cast<Eigen::Index>(r), components[r]) = 1.0;
  }
  return constant(M);
}

CMatX kernel_basis(const CMatX& M, double rel_tol) {
  const Eigen::Index n = M.cols();
  const Eigen::Index p = M.rows();
  if (p == 0) return CMatX::Identity(n, n);
  Eigen::JacobiSVD<CMatX> svd(M, Eigen::ComputeFullV);
  const VecX sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rel_tol * sv(0)) ++rank;
  if (rank < p) {
    std::ostringstream os;
    os << "boundary operator has rank " << rank << " < " << p << " rows";
    throw RankDeficiency(os.str());
  }
  return svd.matrixV().rightCols(n - rank);
}

LopatinskiResult lopatinski_det(const CMatX& E_minus, const CMatX& kernel) {
  const Eigen::Index n = E_minus.rows();
  if (kernel.rows() != n || E_minus.cols() + kernel.cols() != n) {
    std::ostringstream os;
    os << "dim E_- (" << E_minus.cols() << ") + dim ker M (" << kernel.cols()
       << ") != " << n;
    throw DimensionMismatch(os.str());
  }
  LopatinskiResult out;
  out.E_minus = E_minus;
  out.k = E_minus.cols();
  CMatX W(n, n);
  W << E_minus, kernel;
  out.D = W.partialPivLu().determinant();
  out.abs_D_lu = std::abs(out.D);
  Eigen::HouseholderQR<CMatX> qr(W);
  double prod = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) prod *= std::abs(qr.matrixQR()(k, k));
  out.abs_D = prod;
  // Second route: |det[E K]| = prod of singular values of the part of K orthogonal to E.
  if (kernel.cols() == 0) {
    out.abs_D_proj = 1.0;
  } else {
    const CMatX proj = kernel - E_minus * (E_minus.adjoint() * kernel);
    Eigen::JacobiSVD<CMatX> svd(proj);
    out.abs_D_proj = svd.singularValues().prod();
  }
  return out;
}

LopatinskiResult evaluate_lopatinski(const BoundaryProblem& problem, const BoundaryOperator& op,
                                     const BoundaryFrequency& zf, double eps_cont) {
  if (op.cols() != problem.size())
    throw DimensionMismatch("boundary operator width does not match the problem size");
  const StableSubspace es = stable_subspace(problem, zf, eps_cont);
  const CMatX K = kernel_basis(op(zf));
  LopatinskiResult r = lopatinski_det(es.basis, K);
  r.invariance_residual = es.invariance_residual;
  r.min_gap = es.min_gap;
  r.continued = es.continued;
  return r;
}

}  // namespace mhdchar
