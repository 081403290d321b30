#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mhdchar {

using Vec3 = Eigen::Vector3d;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;
using CMatX = Eigen::MatrixXcd;
using CVecX = Eigen::VectorXcd;

/// Index layout of the 8 unknowns (rho, u1, u2, u3, theta, B1, B2, B3).
namespace var {
inline constexpr int rho = 0;
inline constexpr int u = 1;      // u1 at 1, u2 at 2, u3 at 3
inline constexpr int theta = 4;
inline constexpr int B = 5;      // B1 at 5, B2 at 6, B3 at 7
inline constexpr int count = 8;
}  // namespace var

/// Axis indices in the public API are 1-based (1, 2, 3), matching x_1, x_2, x_3.
inline Vec3 unit_axis(int d) {
  Vec3 e = Vec3::Zero();
  e(d - 1) = 1.0;
  return e;
}

}  // namespace mhdchar
