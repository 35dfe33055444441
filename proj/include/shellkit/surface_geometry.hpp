#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "shellkit/jet2.hpp"
#include "shellkit/tensor_algebra.hpp"

namespace shellkit {

enum class SurfaceKind { Plane, Cylinder, Sphere, Torus, Graph, AffineImage, NormalOffset, RadialScale };

struct PolyTerm {
  int i = 0, j = 0;
  double coef = 0.0;
};

/// Parametrized surface catalog. Composite kinds hold a base surface and
/// propagate derivatives exactly through the truncated-Taylor arithmetic.
struct SurfaceParam {
  SurfaceKind kind = SurfaceKind::Plane;
  double radius = 1.0;                 // cylinder, sphere
  double major = 2.0, minor = 0.5;     // torus
  std::vector<PolyTerm> poly;          // graph z = f(x1,x2)
  std::shared_ptr<SurfaceParam> base;  // composites
  Mat3 map = Mat3::Identity();         // affine image
  Vec3 shift = Vec3::Zero();           // affine image
  double offset = 0.0;                 // normal offset
  double factor = 1.0;                 // radial scale
  std::array<double, 4> domain{-0.5, 0.5, -0.5, 0.5};  // [a1,b1]x[a2,b2]

  static SurfaceParam plane() { return SurfaceParam{}; }
  static SurfaceParam cylinder(double r) {
    SurfaceParam s;
    s.kind = SurfaceKind::Cylinder;
    s.radius = r;
    s.domain = {0.2, 1.2, -0.5, 0.5};
    return s;
  }
  static SurfaceParam sphere(double r) {
    SurfaceParam s;
    s.kind = SurfaceKind::Sphere;
    s.radius = r;
    s.domain = {-0.6, 0.6, 0.2, 1.2};
    return s;
  }
  static SurfaceParam torus(double R, double r) {
    SurfaceParam s;
    s.kind = SurfaceKind::Torus;
    s.major = R;
    s.minor = r;
    s.domain = {0.2, 1.2, 0.3, 1.3};
    return s;
  }
  static SurfaceParam graph(std::vector<PolyTerm> terms) {
    SurfaceParam s;
    s.kind = SurfaceKind::Graph;
    s.poly = std::move(terms);
    return s;
  }
  static SurfaceParam affine_image(SurfaceParam b, const Mat3& a, const Vec3& t) {
    SurfaceParam s;
    s.kind = SurfaceKind::AffineImage;
    s.domain = b.domain;
    s.base = std::make_shared<SurfaceParam>(std::move(b));
    s.map = a;
    s.shift = t;
    return s;
  }
  static SurfaceParam normal_offset(SurfaceParam b, double c) {
    SurfaceParam s;
    s.kind = SurfaceKind::NormalOffset;
    s.domain = b.domain;
    s.base = std::make_shared<SurfaceParam>(std::move(b));
    s.offset = c;
    return s;
  }
  static SurfaceParam radial_scale(SurfaceParam b, double f) {
    SurfaceParam s;
    s.kind = SurfaceKind::RadialScale;
    s.domain = b.domain;
    s.base = std::make_shared<SurfaceParam>(std::move(b));
    s.factor = f;
    return s;
  }
};

namespace detail {

inline Jet2 jet_ddx(const Jet2& f) {
  Jet2 r;
  for (int i = 0; i + 1 <= Jet2::Deg; ++i)
    for (int j = 0; i + 1 + j <= Jet2::Deg; ++j) r.c[i][j] = (i + 1) * f.c[i + 1][j];
  return r;
}
inline Jet2 jet_ddy(const Jet2& f) {
  Jet2 r;
  for (int i = 0; i <= Jet2::Deg; ++i)
    for (int j = 0; i + j + 1 <= Jet2::Deg; ++j) r.c[i][j] = (j + 1) * f.c[i][j + 1];
  return r;
}

inline Jet2Vec3 eval_position(const SurfaceParam& s, const Jet2& x1, const Jet2& x2) {
  Jet2Vec3 p;
  switch (s.kind) {
    case SurfaceKind::Plane:
      p(0) = x1;
      p(1) = x2;
      p(2) = Jet2(0.0);
      return p;
    case SurfaceKind::Cylinder:
      p(0) = s.radius * cos(x1);
      p(1) = s.radius * sin(x1);
      p(2) = x2;
      return p;
    case SurfaceKind::Sphere:
      // latitude x1, longitude x2; normal points toward the center.
      p(0) = s.radius * (cos(x2) * cos(x1));
      p(1) = s.radius * (sin(x2) * cos(x1));
      p(2) = s.radius * sin(x1);
      return p;
    case SurfaceKind::Torus: {
      Jet2 w = s.major + s.minor * cos(x2);
      p(0) = w * cos(x1);
      p(1) = w * sin(x1);
      p(2) = s.minor * sin(x2);
      return p;
    }
    case SurfaceKind::Graph: {
      Jet2 z(0.0);
      for (const auto& t : s.poly) {
        Jet2 term(t.coef);
        for (int k = 0; k < t.i; ++k) term *= x1;
        for (int k = 0; k < t.j; ++k) term *= x2;
        z += term;
      }
      p(0) = x1;
      p(1) = x2;
      p(2) = z;
      return p;
    }
    case SurfaceKind::AffineImage: {
      Jet2Vec3 b = eval_position(*s.base, x1, x2);
      for (int i = 0; i < 3; ++i) {
        p(i) = Jet2(s.shift(i));
        for (int j = 0; j < 3; ++j) p(i) += s.map(i, j) * b(j);
      }
      return p;
    }
    case SurfaceKind::NormalOffset: {
      Jet2Vec3 b = eval_position(*s.base, x1, x2);
      Jet2Vec3 d1, d2;
      for (int i = 0; i < 3; ++i) {
        d1(i) = jet_ddx(b(i));
        d2(i) = jet_ddy(b(i));
      }
      Jet2Vec3 c = jcross(d1, d2);
      Jet2 nrm = sqrt(jdot(c, c));
      for (int i = 0; i < 3; ++i) p(i) = b(i) + s.offset * (c(i) / nrm);
      return p;
    }
    case SurfaceKind::RadialScale: {
      Jet2Vec3 b = eval_position(*s.base, x1, x2);
      for (int i = 0; i < 3; ++i) p(i) = s.factor * b(i);
      return p;
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown surface kind");
}

}  // namespace detail

/// Pointwise geometry bundle of a parametrized surface.
struct SurfaceJet {
  Vec3 y, d1, d2, d11, d12, d22;
  Vec3 n;
  Mat32 gradN;      // (d_x1 n | d_x2 n)
  Mat3 gradTheta;   // (d1 | d2 | n)
  Mat2 I, II, III;  // fundamental forms
  Mat2 L;           // Weingarten map I^{-1} II
  double H = 0.0, K = 0.0;
  Mat3 A, B, C;  // structure tensors

  Mat3 gradThetaInv;  // cached inverse
};

inline SurfaceJet eval_jet(const SurfaceParam& s, double x1, double x2) {
  Jet2 jx = Jet2::var_x(x1), jy = Jet2::var_y(x2);
  Jet2Vec3 p = detail::eval_position(s, jx, jy);

  SurfaceJet j;
  for (int i = 0; i < 3; ++i) {
    j.y(i) = p(i).value();
    j.d1(i) = p(i).dx();
    j.d2(i) = p(i).dy();
    j.d11(i) = p(i).dxx();
    j.d12(i) = p(i).dxy();
    j.d22(i) = p(i).dyy();
  }

  Vec3 c = j.d1.cross(j.d2);
  double cn = c.norm();
  if (cn <= 1e-10 * j.d1.norm() * j.d2.norm())
    throw Error(ErrorCode::DegenerateParametrization, "tangent vectors nearly parallel");
  j.n = c / cn;

  // d_a n from d_a (d1 x d2) and the normalization chain rule.
  Vec3 dc1 = j.d11.cross(j.d2) + j.d1.cross(j.d12);
  Vec3 dc2 = j.d12.cross(j.d2) + j.d1.cross(j.d22);
  j.gradN.col(0) = dc1 / cn - c * (c.dot(dc1)) / (cn * cn * cn);
  j.gradN.col(1) = dc2 / cn - c * (c.dot(dc2)) / (cn * cn * cn);

  j.gradTheta.col(0) = j.d1;
  j.gradTheta.col(1) = j.d2;
  j.gradTheta.col(2) = j.n;
  j.gradThetaInv = j.gradTheta.inverse();

  j.I << j.d1.dot(j.d1), j.d1.dot(j.d2), j.d1.dot(j.d2), j.d2.dot(j.d2);
  // II = -(grad y)^T grad n; the closed form n . d_ab is exactly symmetric.
  j.II << j.n.dot(j.d11), j.n.dot(j.d12), j.n.dot(j.d12), j.n.dot(j.d22);
  j.L = j.I.inverse() * j.II;
  j.III = j.II * j.L;
  j.H = 0.5 * j.L.trace();
  j.K = j.L.determinant();

  Mat3 grady = Mat3::Zero(), gradn = Mat3::Zero();
  grady.col(0) = j.d1;
  grady.col(1) = j.d2;
  gradn.col(0) = j.gradN.col(0);
  gradn.col(1) = j.gradN.col(1);
  j.A = grady * j.gradThetaInv;
  j.B = -gradn * j.gradThetaInv;
  Mat3 alt = Mat3::Zero();
  alt(0, 1) = 1.0;
  alt(1, 0) = -1.0;
  j.C = j.gradTheta.determinant() * j.gradThetaInv.transpose() * alt * j.gradThetaInv;
  return j;
}

struct StructureResiduals {
  double tr_A, det_A, tr_B, det_B;
  double A_projector;       // A - (1 - n n^T)
  double B_pullback;        // B - [gradTheta]^{-T} II_flat [gradTheta]^{-1}
  double cayley_hamilton;   // B^2 - 2H B + K A
  double AB, BA, A_idem;    // AB - B, BA - B, A^2 - A
  double C_skew, C_sq, C_norm;
  double eq2_weingarten;    // [gradTheta]^{-1} B - L_flat [gradTheta]^{-1}
  double eq2_third_form;    // B^2 - [gradTheta]^{-T} III_flat [gradTheta]^{-1}
  double max_residual;
};

inline StructureResiduals check_structure_identities(const SurfaceJet& j) {
  StructureResiduals r;
  const Mat3& Gi = j.gradThetaInv;
  Mat3 GiT = Gi.transpose();
  r.tr_A = std::abs(j.A.trace() - 2.0);
  r.det_A = std::abs(j.A.determinant());
  r.tr_B = std::abs(j.B.trace() - 2.0 * j.H);
  r.det_B = std::abs(j.B.determinant());
  r.A_projector = (j.A - (Mat3::Identity() - j.n * j.n.transpose())).norm();
  r.B_pullback = (j.B - GiT * lift_flat(j.II) * Gi).norm();
  r.cayley_hamilton = (j.B * j.B - 2.0 * j.H * j.B + j.K * j.A).norm();
  r.AB = (j.A * j.B - j.B).norm();
  r.BA = (j.B * j.A - j.B).norm();
  r.A_idem = (j.A * j.A - j.A).norm();
  r.C_skew = (j.C + j.C.transpose()).norm();
  r.C_sq = (j.C * j.C + j.A).norm();
  r.C_norm = std::abs(j.C.squaredNorm() - 2.0);
  r.eq2_weingarten = (Gi * j.B - lift_flat(j.L) * Gi).norm();
  r.eq2_third_form = (j.B * j.B - GiT * lift_flat(j.III) * Gi).norm();
  r.max_residual = std::max({r.tr_A, r.det_A, r.tr_B, r.det_B, r.A_projector, r.B_pullback,
                             r.cayley_hamilton, r.AB, r.BA, r.A_idem, r.C_skew, r.C_sq, r.C_norm,
                             r.eq2_weingarten, r.eq2_third_form});
  return r;
}

/// det(grad Theta(x3)) / det(grad Theta(0)) = 1 - 2 H x3 + K x3^2.
inline double det_through_thickness(const SurfaceJet& j, double x3) {
  return 1.0 - 2.0 * j.H * x3 + j.K * x3 * x3;
}

inline Vec2 principal_curvatures(const SurfaceJet& j) {
  // eigenvalues of L via the similar symmetric operator I^{-1/2} II I^{-1/2}
  Eigen::SelfAdjointEigenSolver<Mat2> ei(j.I);
  Mat2 isqrt_inv = ei.eigenvectors() * ei.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                   ei.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<Mat2> es(isqrt_inv * j.II * isqrt_inv);
  return es.eigenvalues();
}

/// Sampled sup of max(|kappa1|, |kappa2|) over the surface's domain.
inline double principal_curvature_bound(const SurfaceParam& s, int n1 = 33, int n2 = 33) {
  double best = 0.0;
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k < n2; ++k) {
      double x1 = s.domain[0] + (s.domain[1] - s.domain[0]) * (n1 == 1 ? 0.5 : double(i) / (n1 - 1));
      double x2 = s.domain[2] + (s.domain[3] - s.domain[2]) * (n2 == 1 ? 0.5 : double(k) / (n2 - 1));
      SurfaceJet j = eval_jet(s, x1, x2);
      Vec2 kappa = principal_curvatures(j);
      best = std::max({best, std::abs(kappa(0)), std::abs(kappa(1))});
    }
  return best;
}

}  // namespace shellkit
