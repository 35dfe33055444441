#pragma once

#include <cmath>

#include "shellkit/core.hpp"

namespace shellkit {

struct CartanParts {
  Mat3 dev_sym;
  Mat3 skew;
  double trace;
};

/// Orthogonal split X = devSym + skew + (tr/3) 1.
inline CartanParts cartan_decompose(const Mat3& x) {
  CartanParts p;
  p.trace = x.trace();
  Mat3 s = sym(x);
  p.dev_sym = s - (p.trace / 3.0) * Mat3::Identity();
  p.skew = skew(x);
  return p;
}

/// Axial vector of an antisymmetric matrix, axl(A) = (-A23, A13, -A12).
inline Vec3 axl(const Mat3& a) {
  double tol = 1e-10 * a.norm();
  if (sym(a).norm() > tol && sym(a).norm() > 1e-300)
    throw Error(ErrorCode::NonSkewInput, "axl() requires an antisymmetric matrix");
  return Vec3(-a(1, 2), a(0, 2), -a(0, 1));
}

inline Mat3 anti(const Vec3& v) {
  Mat3 a;
  a << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return a;
}

/// Principal square root of an SPD matrix via symmetric eigendecomposition.
inline Mat3 spd_sqrt(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym(m));
  double eps = 1e-12 * m.norm();
  if (es.eigenvalues().minCoeff() <= eps)
    throw Error(ErrorCode::NotSpd, "spd_sqrt() requires a positive definite matrix");
  Vec3 r = es.eigenvalues().cwiseSqrt();
  return es.eigenvectors() * r.asDiagonal() * es.eigenvectors().transpose();
}

/// Square root of a PSD matrix with a known near-null subspace: eigenvalues
/// below 1e-12*trace are clamped to zero instead of rejected.
inline Mat3 psd_sqrt(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym(m));
  double clamp = 1e-12 * std::abs(m.trace());
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    double ev = es.eigenvalues()(i);
    r(i) = ev <= clamp ? 0.0 : std::sqrt(ev);
  }
  return es.eigenvectors() * r.asDiagonal() * es.eigenvectors().transpose();
}

inline Mat3 spd_inv_sqrt(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym(m));
  double eps = 1e-12 * m.norm();
  if (es.eigenvalues().minCoeff() <= eps)
    throw Error(ErrorCode::NotSpd, "spd_inv_sqrt() requires a positive definite matrix");
  Vec3 r = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * r.asDiagonal() * es.eigenvectors().transpose();
}

struct PolarParts {
  Mat3 q;  // rotation factor
  Mat3 u;  // SPD stretch factor
};

/// Polar decomposition F = Q U with Q in SO(3), U = sqrt(F^T F).
inline PolarParts polar(const Mat3& f) {
  double n = f.norm();
  if (f.determinant() <= 1e-12 * n * n * n)
    throw Error(ErrorCode::Degenerate, "polar() requires det F > 0");
  // det F has been checked; build U = sqrt(F^T F) from one eigendecomposition
  // rather than through spd_sqrt's definiteness gate (cond(F^T F) = cond(F)^2).
  Eigen::SelfAdjointEigenSolver<Mat3> es(f.transpose() * f);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorCode::Degenerate, "polar() input numerically singular");
  Vec3 s = es.eigenvalues().cwiseSqrt();
  PolarParts p;
  p.u = es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
  p.q = f * es.eigenvectors() * s.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  // Newton polish restores orthogonality lost to eigen-roundoff on
  // ill-conditioned inputs (quadratic convergence near SO(3)).
  for (int it = 0; it < 3; ++it) {
    Mat3 r = p.q.transpose() * p.q - Mat3::Identity();
    if (r.norm() <= 1e-15) break;
    p.q = p.q * (Mat3::Identity() - 0.5 * r);
  }
  return p;
}

/// 2x2 -> 3x3 lift with (3,3) = 1.
inline Mat3 lift_hat(const Mat2& m) {
  Mat3 r = Mat3::Zero();
  r.topLeftCorner<2, 2>() = m;
  r(2, 2) = 1.0;
  return r;
}

/// 2x2 -> 3x3 lift with (3,3) = 0; flat(M) = hat(M) * diag(1,1,0).
inline Mat3 lift_flat(const Mat2& m) {
  Mat3 r = Mat3::Zero();
  r.topLeftCorner<2, 2>() = m;
  return r;
}

inline Mat3 flat2() {
  return Eigen::DiagonalMatrix<double, 3>(1.0, 1.0, 0.0);
}

}  // namespace shellkit
