#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace tepml {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using CVec4 = Eigen::Vector4cd;
using CMat3 = Eigen::Matrix3cd;
using CMat4 = Eigen::Matrix4cd;

/// Gradient of a 4-component field: row c holds the gradient of component c.
using CGrad4 = Eigen::Matrix<cplx, 4, 3>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace tepml
