#include <doctest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "mhdchar/symbol.hpp"
#include "oracles.hpp"

using namespace mhdchar;

namespace {

const IdealGas gas(1.0, 1.5);

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix3d Z;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Z(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(Z);
  Eigen::Matrix3d Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace

TEST_CASE("symbol matches a finite-difference linearization of the quasilinear system") {
  std::mt19937_64 rng(1);
  const BarotropicGas baro(1.5, 1.4, 2.0);
  for (int k = 0; k < 300; ++k) {
    const ThermoState s = oracle::random_state(rng);
    const Vec3 xi = oracle::random_xi(rng);
    for (const EquationOfState* e : {static_cast<const EquationOfState*>(&gas),
                                     static_cast<const EquationOfState*>(&baro)}) {
      const Mat8 A = assemble_full_symbol(s, *e, xi);
      const Mat8 F = oracle::fd_symbol(s, *e, xi);
      CHECK((A - F).norm() <= 1e-6 * A.norm());
    }
  }
}

TEST_CASE("tilde symbol removes the advection diagonal and is linear in xi") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const ThermoState s = oracle::random_state(rng);
    const Vec3 x1 = oracle::random_xi(rng), x2 = oracle::random_xi(rng);
    const Mat8 T = assemble_tilde_symbol(s, gas, x1);
    CHECK((assemble_full_symbol(s, gas, x1) - T - s.u.dot(x1) * Mat8::Identity()).norm() <=
          1e-13 * (T.norm() + 1.0));
    const Mat8 lin = assemble_tilde_symbol(s, gas, 2.0 * x1 - 3.0 * x2) -
                     (2.0 * T - 3.0 * assemble_tilde_symbol(s, gas, x2));
    CHECK(lin.norm() <= 1e-12 * (T.norm() + 1.0));
  }
  CHECK(assemble_tilde_symbol(ThermoState{}, gas, Vec3::Zero()).norm() == 0.0);
}

TEST_CASE("symmetrizer makes every symbol symmetric") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    const ThermoState s = oracle::random_state(rng);
    const Vec3 xi = oracle::random_xi(rng);
    const Symmetrizer S = symmetrizer(s, gas);
    CHECK((S.diagonal.array() > 0.0).all());
    const Mat8 SA = S.matrix() * assemble_full_symbol(s, gas, xi);
    CHECK((SA - SA.transpose()).norm() <= 1e-13 * SA.norm());
  }
}

TEST_CASE("symbol is rotation equivariant") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const ThermoState s = oracle::random_state(rng);
    const Vec3 xi = oracle::random_xi(rng);
    const Eigen::Matrix3d R = random_rotation(rng);
    ThermoState r = s;
    r.u = R * s.u;
    r.B = R * s.B;
    Mat8 Q = Mat8::Identity();
    Q.block<3, 3>(1, 1) = R;
    Q.block<3, 3>(5, 5) = R;
    const Mat8 lhs = assemble_full_symbol(r, gas, R * xi);
    const Mat8 rhs = Q * assemble_full_symbol(s, gas, xi) * Q.transpose();
    CHECK((lhs - rhs).norm() <= 1e-12 * lhs.norm());
  }
}

TEST_CASE("symmetrized spectrum agrees with a general eigensolver") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const ThermoState s = oracle::random_state(rng);
    const Vec3 xi = oracle::random_xi(rng);
    const Mat8 A = assemble_full_symbol(s, gas, xi);
    Eigen::EigenSolver<Mat8> es(A, false);
    std::vector<double> ref;
    double imag = 0.0;
    for (int i = 0; i < 8; ++i) {
      ref.push_back(es.eigenvalues()(i).real());
      imag = std::max(imag, std::abs(es.eigenvalues()(i).imag()));
    }
    std::sort(ref.begin(), ref.end());
    const double scale = A.norm();
    const Vec8 ev = numeric_spectrum(s, gas, xi);
    for (int i = 0; i < 8; ++i) {
      // The general solver loses accuracy on defective-looking clusters; sqrt(eps) is its floor.
      CHECK(std::abs(ev(i) - ref[static_cast<std::size_t>(i)]) <= 1e-6 * scale);
      if (i > 0) CHECK(ev(i) >= ev(i - 1));
    }
    CHECK(imag <= 1e-6 * scale);
    const SymbolEigen se = symbol_eigen(s, gas, xi);
    CHECK((A * se.vectors - se.vectors * se.values.asDiagonal()).norm() <=
          1e-11 * scale * se.vectors.norm());
  }
}

TEST_CASE("boundary matrix of a supersonic outflow is noncharacteristic") {
  ThermoState s;
  s.u = Vec3(0, 0, 2);
  const BoundaryMatrix bm = boundary_matrix(s, gas, 3);
  CHECK(bm.is_noncharacteristic);
  const Vec8 ev = numeric_spectrum(s, gas, unit_axis(3));
  CHECK((ev.array() > 0.0).all());
  CHECK(ev(0) == doctest::Approx(2.0 - std::sqrt(5.0 / 3.0)));
  // Frame speed: the moving frame at sigma = 2 puts the entropy wave on the boundary.
  CHECK_FALSE(boundary_matrix(s, gas, 3, 2.0).is_noncharacteristic);
  CHECK_FALSE(boundary_matrix(ThermoState{}, gas, 1).is_noncharacteristic);
}
