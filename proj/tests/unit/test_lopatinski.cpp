#include <doctest.h>

#include <cmath>

#include "mhdchar/boundary.hpp"
#include "mhdchar/errors.hpp"
#include "mhdchar/scan.hpp"
#include "mhdchar/shock.hpp"
#include "mhdchar/symbol.hpp"
#include "oracles.hpp"

using namespace mhdchar;

namespace {

const EosPtr gas = std::make_shared<IdealGas>(1.0, 1.5);

ThermoState subsonic() { return {1.0, Vec3(0.1, -0.2, 0.3), 1.0, Vec3(0.5, 0.35, 0.4)}; }

BoundaryFrequency random_zeta(std::mt19937_64& rng, double gamma_min = 1e-3) {
  std::normal_distribution<double> g(0.0, 1.0);
  BoundaryFrequency z;
  do {
    z.tau = g(rng);
    z.gamma_L = std::abs(g(rng));
    z.eta = Eigen::Vector2d(g(rng), g(rng));
    z = z.normalized();
  } while (z.gamma_L < gamma_min);
  return z;
}

CMatX orth_complement(const CMatX& E) {
  const Eigen::Index n = E.rows();
  Eigen::HouseholderQR<CMatX> qr(E);
  const CMatX Q = qr.householderQ() * CMatX::Identity(n, n);
  return Q.rightCols(n - E.cols());
}

PlanarShock mach2(double b) {
  return rankine_hugoniot(gas, ThermoState{}, ShockFamily::FastPlus, 2.0, 3, Vec3(b, 0, 0));
}

}  // namespace

TEST_CASE("G at the pure damping point is -i A_d^{-1}") {
  const ThermoState s{1.0, Vec3(0, 0, 2), 1.0, Vec3::Zero()};
  const CMatX G = assemble_G(s, *gas, 3, {0.0, 1.0, Eigen::Vector2d::Zero()});
  const Mat8 Ad = assemble_full_symbol(s, *gas, unit_axis(3));
  CHECK((G - cplx(0, -1) * Ad.inverse().cast<cplx>()).norm() <= 1e-13 * G.norm());
  Eigen::ComplexEigenSolver<CMatX> es(G);
  for (Eigen::Index k = 0; k < 8; ++k) CHECK(es.eigenvalues()(k).imag() < 0.0);
  CHECK(stable_subspace(G, 1.0).dim() == 8);
  CHECK_THROWS_AS(assemble_G(ThermoState{}, *gas, 3, {0.0, 1.0, Eigen::Vector2d::Zero()}),
                  CharacteristicBoundary);
}

TEST_CASE("G is homogeneous in zeta") {
  std::mt19937_64 rng(31);
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  for (int k = 0; k < 20; ++k) {
    const BoundaryFrequency z = random_zeta(rng);
    BoundaryFrequency sz = z;
    sz.tau *= 3.5;
    sz.gamma_L *= 3.5;
    sz.eta *= 3.5;
    CHECK((p.G(sz) - 3.5 * p.G(z)).norm() <= 1e-13 * p.G(sz).norm());
  }
}

TEST_CASE("stable subspace dimension is the count of positive eigenvalues of A_d") {
  std::mt19937_64 rng(32);
  for (int d = 1; d <= 3; ++d) {
    const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, d);
    const Vec8 ev = numeric_spectrum(subsonic(), *gas, unit_axis(d));
    const int pos = static_cast<int>((ev.array() > 0.0).count());
    CHECK(p.incoming_count() == pos);
    for (int k = 0; k < 300; ++k) {
      const BoundaryFrequency z = random_zeta(rng);
      const StableSubspace s = stable_subspace(p, z);
      CHECK(s.dim() == pos);
      CHECK((s.basis.adjoint() * s.basis - CMatX::Identity(s.dim(), s.dim())).norm() <= 1e-12);
      CHECK(s.invariance_residual < 1e-8);
    }
  }
}

TEST_CASE("continuation to the equator") {
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  const BoundaryFrequency z{0.6, 0.0, Eigen::Vector2d(0.8, 0.0)};
  const StableSubspace s = stable_subspace(p, z, 1e-6);
  CHECK(s.continued);
  CHECK(s.dim() == p.incoming_count());
  BoundaryFrequency zc = z;
  zc.gamma_L = 1e-6;
  const StableSubspace ref = stable_subspace(p.G(zc), 1e-6);
  CHECK((s.basis * s.basis.adjoint() - ref.basis * ref.basis.adjoint()).norm() <= 1e-12);
}

TEST_CASE("spectral split failure on a real eigenvalue at positive damping") {
  CMatX G = CMatX::Zero(2, 2);
  G(0, 0) = 1.0;
  G(1, 1) = cplx(0, -1);
  CHECK_THROWS_AS(stable_subspace(G, 0.5), SpectralSplitFailure);
  CHECK(stable_subspace(G, 0.0).dim() == 1);
}

TEST_CASE("Lopatinski determinant: constructed unit and zero cases") {
  std::mt19937_64 rng(33);
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  for (int k = 0; k < 50; ++k) {
    const BoundaryFrequency z = random_zeta(rng);
    const CMatX E = stable_subspace(p, z).basis;
    const CMatX W = orth_complement(E);
    const LopatinskiResult one = lopatinski_det(E, W);
    CHECK(std::abs(one.abs_D - 1.0) <= 1e-12);
    CHECK(std::abs(one.abs_D_proj - 1.0) <= 1e-12);

    CMatX K = W;
    K.col(0) = E.col(0);
    const LopatinskiResult zero = lopatinski_det(E, K);
    CHECK(zero.abs_D <= 1e-12);
    CHECK(zero.abs_D_proj <= 1e-12);
    CHECK(std::abs(zero.D) <= 1e-12);
  }
  CHECK_THROWS_AS(lopatinski_det(CMatX::Identity(8, 3), CMatX::Identity(8, 3)), DimensionMismatch);
}

TEST_CASE("|D| is basis invariant and the three routes agree") {
  std::mt19937_64 rng(34);
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  const Eigen::Index k = p.incoming_count();
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const BoundaryFrequency z = random_zeta(rng);
    const CMatX E = stable_subspace(p, z).basis;
    CMatX M(k, 8);
    for (Eigen::Index i = 0; i < k; ++i)
      for (int j = 0; j < 8; ++j) M(i, j) = {g(rng), g(rng)};
    const CMatX K = kernel_basis(M);
    const LopatinskiResult r = lopatinski_det(E, K);
    CHECK(std::abs(r.abs_D - r.abs_D_lu) <= 1e-12);
    CHECK(std::abs(r.abs_D - r.abs_D_proj) <= 1e-12);
    CHECK(r.abs_D <= 1.0 + 1e-12);
    const LopatinskiResult u = lopatinski_det(E * oracle::random_unitary(rng, k),
                                              K * oracle::random_unitary(rng, 8 - k));
    CHECK(std::abs(u.abs_D - r.abs_D) <= 1e-12);
  }
}

TEST_CASE("kernel basis rejects rank-deficient boundary operators") {
  CMatX M = CMatX::Zero(2, 8);
  M(0, 0) = 1.0;
  M(1, 0) = 2.0;
  CHECK_THROWS_AS(kernel_basis(M), RankDeficiency);
  CHECK(kernel_basis(BoundaryOperator::dirichlet(8, {0, 3})({})).cols() == 6);
}

TEST_CASE("flux Jacobian matches finite differences") {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 100; ++k) {
    const ThermoState s = oracle::random_state(rng);
    for (int d = 1; d <= 3; ++d) {
      const Mat8 J = flux_jacobian(s, *gas, d);
      Mat8 F;
      for (int j = 0; j < 8; ++j) {
        auto shifted = [&](double h) {
          ThermoState t = s;
          double* f[8] = {&t.rho, &t.u(0), &t.u(1), &t.u(2), &t.theta, &t.B(0), &t.B(1), &t.B(2)};
          *f[j] += h;
          return flux(t, *gas, d);
        };
        const double base = j == 0 ? s.rho : (j == 4 ? s.theta : 1.0);
        const double h = 1e-6 * base;
        F.col(j) = (shifted(h) - shifted(-h)) / (2 * h);
      }
      CHECK((J - F).norm() <= 1e-7 * J.norm());
    }
  }
}

TEST_CASE("conservative and quasilinear forms agree off the normal-field column") {
  std::mt19937_64 rng(36);
  for (int k = 0; k < 100; ++k) {
    const ThermoState s = oracle::random_state(rng);
    Mat8 dW;
    for (int j = 0; j < 8; ++j) {
      ThermoState p = s, m = s;
      double* fp[8] = {&p.rho, &p.u(0), &p.u(1), &p.u(2), &p.theta, &p.B(0), &p.B(1), &p.B(2)};
      double* fm[8] = {&m.rho, &m.u(0), &m.u(1), &m.u(2), &m.theta, &m.B(0), &m.B(1), &m.B(2)};
      const double h = 1e-6 * (j == 0 ? s.rho : (j == 4 ? s.theta : 1.0));
      *fp[j] += h;
      *fm[j] -= h;
      dW.col(j) = (conserved(p, *gas) - conserved(m, *gas)) / (2 * h);
    }
    for (int d = 1; d <= 3; ++d) {
      Mat8 diff = dW * assemble_full_symbol(s, *gas, unit_axis(d)) - flux_jacobian(s, *gas, d);
      diff.col(var::B + d - 1).setZero();
      CHECK(diff.norm() <= 1e-6 * flux_jacobian(s, *gas, d).norm());
    }
  }
}

TEST_CASE("gas-dynamic Mach 2 shock") {
  const PlanarShock sh = mach2(0.0);
  CHECK(std::abs(sh.downstream().rho - 32.0 / 14.0) <= 1e-10);
  CHECK(sh.rh_residual < 1e-10);
  CHECK(satisfies_lax(sh));
  const double c0 = std::sqrt(5.0 / 3.0);
  CHECK(sh.sigma == doctest::Approx(2.0 * c0));
  // Classical pressure and temperature ratios.
  const double M2 = 4.0, G = 5.0 / 3.0;
  const double p_ratio = 1.0 + 2.0 * G / (G + 1.0) * (M2 - 1.0);
  CHECK(sh.downstream().rho * sh.downstream().theta ==
        doctest::Approx(p_ratio).epsilon(1e-10));
  const LaxCounts lc = lax_counts(sh);
  CHECK(lc.left_impinging == 1);
  CHECK(lc.right_impinging == 8);
  CHECK(lc.characteristic == 0);
}

TEST_CASE("small tangential field perturbs the gas shock at second order") {
  const PlanarShock s0 = mach2(0.0);
  for (double eps : {1e-2, 1e-3}) {
    const PlanarShock s1 = mach2(eps);
    CHECK(s1.rh_residual < 1e-10);
    CHECK(satisfies_lax(s1));
    CHECK(std::abs(s1.downstream().rho - s0.downstream().rho) <= 10.0 * eps * eps);
    CHECK(std::abs(s1.downstream().theta - s0.downstream().theta) <= 10.0 * eps * eps);
    CHECK(s1.downstream().B(0) / s1.upstream().B(0) ==
          doctest::Approx(s1.downstream().rho / s1.upstream().rho).epsilon(1e-9));
  }
}

TEST_CASE("oblique and mirrored shocks solve the jump conditions") {
  const ThermoState up{1.0, Vec3(0.1, 0.0, 0.2), 1.0, Vec3::Zero()};
  const PlanarShock a =
      rankine_hugoniot(gas, up, ShockFamily::FastPlus, 1.7, 3, Vec3(0.3, 0.1, 0.5));
  CHECK(a.rh_residual < 1e-10);
  CHECK(satisfies_lax(a));
  const PlanarShock b =
      rankine_hugoniot(gas, up, ShockFamily::FastMinus, 1.7, 2, Vec3(0.3, 0.6, 0.1));
  CHECK(b.rh_residual < 1e-10);
  CHECK(satisfies_lax(b));
  CHECK(b.upstream().rho == up.rho);
  CHECK(b.downstream().rho > up.rho);
}

TEST_CASE("zero-strength and sub-Lax shocks") {
  const PlanarShock z = rankine_hugoniot(gas, ThermoState{}, ShockFamily::FastPlus, 1.0, 3,
                                         Vec3(0.1, 0, 0));
  CHECK(z.degenerate);
  CHECK((z.left.u - z.right.u).norm() == 0.0);
  CHECK(z.sigma == doctest::Approx(std::sqrt(5.0 / 3.0 + 0.01)));
  CHECK_THROWS_AS(shock_boundary_matrix(z, BoundaryFrequency{0.3, 0.5, Eigen::Vector2d(0.4, 0.1)}),
                  RankDeficiency);
  CHECK_THROWS_AS(rankine_hugoniot(gas, ThermoState{}, ShockFamily::FastPlus, 0.8, 3, Vec3::Zero()),
                  NoAdmissibleShock);
}

TEST_CASE("shock problem dimensions") {
  std::mt19937_64 rng(37);
  const PlanarShock sh = mach2(1e-2);
  const BoundaryProblem p = shock_problem(sh);
  const BoundaryOperator op = shock_boundary_operator(sh);
  CHECK(p.size() == 16);
  CHECK(p.incoming_count() == 7);
  CHECK(op.rows() == 7);
  for (int k = 0; k < 100; ++k) {
    const LopatinskiResult r = evaluate_lopatinski(p, op, random_zeta(rng, 0.0));
    CHECK(r.k == 7);
    CHECK(r.E_minus.cols() + kernel_basis(op(random_zeta(rng))).cols() == 16);
    CHECK(r.abs_D > 0.0);
    CHECK(std::abs(r.abs_D - r.abs_D_proj) <= 1e-12);
  }
}

TEST_CASE("shock record round trip keeps the jump residual") {
  const PlanarShock sh = mach2(0.05);
  CHECK(rh_jump(sh.left, sh.right, *gas, 3).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("hemisphere grid") {
  HemisphereSampling s;
  s.interior = 500;
  const auto g = hemisphere_grid(s);
  CHECK(s.equator_count() == 4 * 63);
  CHECK(g.size() == 500 + 252);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(g[i].norm() - 1.0) <= 1e-14);
    CHECK(g[i].gamma_L >= 0.0);
    if (i >= 500) CHECK(g[i].gamma_L == 0.0);
  }
  double mean_gamma = 0.0;
  for (std::size_t i = 0; i < 500; ++i) mean_gamma += g[i].gamma_L / 500.0;
  // E|x_1| on S^3 is 4 / (3 pi).
  CHECK(mean_gamma == doctest::Approx(4.0 / (3.0 * M_PI)).epsilon(0.02));
  CHECK(s.refined(2).interior == 1000);
  CHECK(s.refined(2).equator_count() == 504);
}

TEST_CASE("scan is deterministic and independent of the thread count") {
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  HemisphereSampling hs;
  hs.interior = 300;
  const CMatX E0 = stable_subspace(p, BoundaryFrequency{0.2, 0.9, Eigen::Vector2d(0.3, 0.2)}.normalized()).basis;
  const BoundaryOperator op = BoundaryOperator::constant(E0.adjoint());
  ScanOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const ScanResult a = uniform_scan(p, op, hs, one);
  const ScanResult b = uniform_scan(p, op, hs, many);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].abs_D == b.points[i].abs_D);
  CHECK(a.min_abs_D == b.min_abs_D);
  CHECK(a.argmin == b.argmin);
  CHECK(a.dim_constant);
  CHECK(a.failures.empty());
  std::size_t total = 0;
  for (auto c : a.histogram) total += c;
  CHECK(total + a.failures.size() == a.points.size());
}

TEST_CASE("scan finds a constructed zero and a frozen unit point") {
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  HemisphereSampling hs;
  hs.interior = 200;
  const std::vector<BoundaryFrequency> grid = hemisphere_grid(hs);
  const BoundaryFrequency z0 = grid[17];
  const CMatX E = stable_subspace(p, z0).basis;
  const Eigen::Index k = E.cols();

  // ker M = E_-(z0)^perp: |D| = 1 at z0 and close to 1 nearby.
  const BoundaryOperator unit = BoundaryOperator::constant(E.adjoint());
  CHECK(std::abs(evaluate_lopatinski(p, unit, z0).abs_D - 1.0) <= 1e-12);
  BoundaryFrequency near = z0;
  near.tau += 1e-3;
  CHECK(evaluate_lopatinski(p, unit, near.normalized()).abs_D > 0.99);

  // ker M contains a vector of E_-(z0): the scan minimum sits at z0.
  CMatX K(8, 8 - k);
  K << E.col(0), orth_complement(E).rightCols(8 - k - 1);
  const CMatX M = orth_complement(K).adjoint();
  const ScanResult r = uniform_scan(p, BoundaryOperator::constant(M), hs);
  CHECK(r.min_abs_D <= 1e-12);
  CHECK(r.argmin == 17);
  CHECK(r.failures.empty());
}

TEST_CASE("per-point failures are recorded, not thrown") {
  const BoundaryProblem p = BoundaryProblem::one_sided(subsonic(), *gas, 3);
  HemisphereSampling hs;
  hs.interior = 50;
  const ScanResult r = uniform_scan(p, BoundaryOperator::dirichlet(8, {0}), hs);
  CHECK(r.failures.size() == r.points.size());
  CHECK(r.failures.front().kind == "DimensionMismatch");
  CHECK_FALSE(r.any_valid());
}

TEST_CASE("small-field study on a coarse grid") {
  HemisphereSampling hs;
  hs.interior = 400;
  GasShockSpec spec;
  const BStudy st = b_to_zero_study(gas, spec, {1e-1, 1e-2, 1e-3}, hs, 2);
  REQUIRE(st.rows.size() == 4);
  CHECK(st.rows.back().B_mag == 0.0);
  CHECK(st.all_positive);
  CHECK(st.trend_monotone);
  CHECK(st.half_floor);
  CHECK(st.max_rh_residual < 1e-10);
  for (const auto& r : st.rows) CHECK(r.dim_Eminus == 7);
  CHECK_THROWS_AS(b_to_zero_study(gas, spec, {1e-3, 1e-2}, hs), ConfigError);
}
