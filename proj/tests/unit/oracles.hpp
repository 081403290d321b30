#pragma once

// Independent reference computations shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "mhdchar/linalg.hpp"
#include "mhdchar/thermo.hpp"

namespace oracle {

using mhdchar::Mat8;
using mhdchar::Vec3;
using mhdchar::Vec8;

inline Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

/// rho, theta log-uniform on [1e-2, 1e2]; |u|, |B| uniform on [0, 10].
inline mhdchar::ThermoState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lg(-2.0, 2.0), mag(0.0, 10.0);
  mhdchar::ThermoState s;
  s.rho = std::pow(10.0, lg(rng));
  s.theta = std::pow(10.0, lg(rng));
  s.u = mag(rng) * random_direction(rng);
  s.B = mag(rng) * random_direction(rng);
  return s;
}

inline Vec3 random_xi(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lg(-1.0, 1.0);
  return std::pow(10.0, lg(rng)) * random_direction(rng);
}

/// Spatial part of the quasilinear system, written with explicit vector calculus:
///   u.grad rho + rho div u
///   u.grad u + (P_rho grad rho + P_theta grad theta) / rho - (curl B x B) / rho
///   u.grad theta + theta P_theta / (rho e_theta) div u
///   u.grad B + (div u) B - B.grad u
/// `grad(i, j)` is d U_i / d x_j.
inline Vec8 spatial_operator(const mhdchar::ThermoState& s, const mhdchar::EquationOfState& eos,
                             const Eigen::Matrix<double, 8, 3>& grad) {
  const mhdchar::EosEval ev = eos.evaluate(s.rho, s.theta);
  const Vec3 grad_rho = grad.row(0).transpose();
  const Vec3 grad_theta = grad.row(4).transpose();
  const Eigen::Matrix3d Du = grad.block<3, 3>(1, 0);
  const Eigen::Matrix3d DB = grad.block<3, 3>(5, 0);
  const double div_u = Du.trace();
  const Vec3 curl_B(DB(2, 1) - DB(1, 2), DB(0, 2) - DB(2, 0), DB(1, 0) - DB(0, 1));
  Vec8 out;
  out(0) = s.u.dot(grad_rho) + s.rho * div_u;
  out.segment<3>(1) = Du * s.u + (ev.P_rho * grad_rho + ev.P_theta * grad_theta) / s.rho -
                      curl_B.cross(s.B) / s.rho;
  out(4) = s.u.dot(grad_theta) + s.theta * ev.P_theta / (s.rho * ev.e_theta) * div_u;
  out.segment<3>(5) = DB * s.u + div_u * s.B - Du * s.B;
  return out;
}

/// Symbol by central differences of the operator along the plane wave
/// U = U0 + eps V (xi . x): the k-th column is d/d eps of the operator for V = e_k.
inline Mat8 fd_symbol(const mhdchar::ThermoState& s, const mhdchar::EquationOfState& eos,
                      const Vec3& xi, double eps = 1e-6) {
  Mat8 A;
  for (int k = 0; k < 8; ++k) {
    Eigen::Matrix<double, 8, 3> g = Eigen::Matrix<double, 8, 3>::Zero();
    g.row(k) = xi.transpose();
    const Vec8 plus = spatial_operator(s, eos, eps * g);
    const Vec8 minus = spatial_operator(s, eos, -eps * g);
    A.col(k) = (plus - minus) / (2.0 * eps);
  }
  return A;
}

/// Characteristic polynomial coefficients of an n x n matrix by Faddeev-LeVerrier,
/// ascending: c[0] + c[1] x + ... + c[n] x^n, c[n] = 1.
inline std::vector<double> faddeev_leverrier(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = A * M + c[static_cast<std::size_t>(n - k + 1)] * Eigen::MatrixXd::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(A * M).trace() / static_cast<double>(k);
  }
  return c;
}

/// Random unitary n x n matrix from the QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd Z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) Z(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace oracle
