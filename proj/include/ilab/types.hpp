#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace ilab {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using cplx = std::complex<double>;

// Points of R^4 = C^2 with z1 = x1 + i x2, z2 = x3 + i x4.
using Point4 = Vec4;

// Covectors are component vectors in the coframe dx_i.  Two-tensors (forms
// and symmetric tensors alike) are 4x4 matrices T with T(X, Y) = X^T T Y, so a
// 2-form dx_i ^ dx_j has entries +1 at (i, j) and -1 at (j, i).
// Endomorphisms act on tangent vectors as column vectors.
using ScalarField = std::function<double(const Point4&)>;
using CovectorField = std::function<Vec4(const Point4&)>;
using TensorField = std::function<Mat4(const Point4&)>;
using EndoField = std::function<Mat4(const Point4&)>;

enum class ErrorKind {
  PoleAtOrigin,
  DomainViolation,
  NotPositiveDefinite,
  NoConvergence,
  OriginFrame,
  NonFinite,
  ConfigError,
  SearchFailed,
  IoError,
};

const char* to_string(ErrorKind k);

class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}
  ErrorKind kind() const { return kind_; }
  // message without the kind prefix
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline cplx z1_of(const Point4& p) { return {p[0], p[1]}; }
inline cplx z2_of(const Point4& p) { return {p[2], p[3]}; }
inline Point4 point_from(cplx z1, cplx z2) { return {z1.real(), z1.imag(), z2.real(), z2.imag()}; }

}  // namespace ilab
