#pragma once

#include <cmath>

#include "shellkit/surface_geometry.hpp"
#include "shellkit/tensor_algebra.hpp"

namespace shellkit {

struct ShellMaterial {
  double h = 0.01;
  double mu = 1.0, lambda = 1.0;
  double mu_c = 1.0;  // may be +infinity (constrained family)
  double L_c = 1.0;
  double b1 = 1.0, b2 = 1.0, b3 = 1.0;

  bool mu_c_infinite() const { return std::isinf(mu_c); }
  // lambda mu / (lambda + 2 mu), the plane-stress trace coefficient
  double trace_coeff() const { return lambda * mu / (lambda + 2.0 * mu); }

  void validate() const {
    if (!(h > 0)) throw Error(ErrorCode::ConfigInvalid, "h must be > 0");
    if (!(mu > 0)) throw Error(ErrorCode::ConfigInvalid, "mu must be > 0");
    if (!(2.0 * lambda + mu > 0)) throw Error(ErrorCode::ConfigInvalid, "2*lambda + mu must be > 0");
    if (!(mu_c >= 0)) throw Error(ErrorCode::ConfigInvalid, "mu_c must be >= 0");
    if (!(L_c > 0)) throw Error(ErrorCode::ConfigInvalid, "L_c must be > 0");
    if (!(b1 > 0) || !(b2 > 0) || !(b3 > 0))
      throw Error(ErrorCode::ConfigInvalid, "b1, b2, b3 must be > 0");
  }
};

struct StrainState {
  Mat3 E = Mat3::Zero();   // elastic shell strain
  Mat3 Kt = Mat3::Zero();  // elastic shell bending-curvature
};

struct ConstrainedState {
  Mat3 Qinf = Mat3::Identity();
  Mat3 Einf = Mat3::Zero();
  Mat3 Kinf = Mat3::Zero();
  Mat2 Ginf = Mat2::Zero();            // change of metric
  Mat2 Rinf = Mat2::Zero();            // bending strain
  RowVec2 Tinf = RowVec2::Zero();      // transverse shear
  RowVec2 Ninf = RowVec2::Zero();      // drilling bendings
  Mat3 couple = Mat3::Zero();          // Einf B + C Kinf (closed form)
  double couple_discrepancy = 0.0;     // closed form vs direct assembly
};

namespace detail {
// axl with the skew part projected out; FD-computed rotation partials carry
// a small symmetric residue that must not trip the strict axl() gate.
inline Vec3 axl_projected(const Mat3& a) {
  Mat3 s = skew(a);
  return Vec3(-s(1, 2), s(0, 2), -s(0, 1));
}

inline Mat3 grad3(const Vec3& c1, const Vec3& c2) {
  Mat3 g = Mat3::Zero();
  g.col(0) = c1;
  g.col(1) = c2;
  return g;
}
}  // namespace detail

/// Elastic strain and bending-curvature of the unconstrained model.
inline StrainState unconstrained_strains(const SurfaceJet& ref, const SurfaceJet& def,
                                         const Mat3& Q, const Mat3& dQ1, const Mat3& dQ2,
                                         const ShellMaterial* material = nullptr) {
  if (material && material->mu_c_infinite())
    throw Error(ErrorCode::ConfigInvalid,
                "unconstrained strains are not defined for the mu_c -> infinity model");
  const Mat3& Gi = ref.gradThetaInv;
  Mat3 F3;
  F3.col(0) = def.d1;
  F3.col(1) = def.d2;
  F3.col(2) = Q * ref.n;  // Q gradTheta e3
  StrainState st;
  st.E = Q.transpose() * F3 * Gi - Mat3::Identity();
  Mat3 k = Mat3::Zero();
  k.col(0) = detail::axl_projected(Q.transpose() * dQ1);
  k.col(1) = detail::axl_projected(Q.transpose() * dQ2);
  st.Kt = k * Gi;
  return st;
}

/// Elastic transfer map (grad m | n)(grad Theta)^{-1}.
inline Mat3 transfer_map(const SurfaceJet& ref, const SurfaceJet& def) {
  Mat3 F3;
  F3.col(0) = def.d1;
  F3.col(1) = def.d2;
  F3.col(2) = def.n;
  return F3 * ref.gradThetaInv;
}

/// Rotation of the constrained (mu_c -> infinity) model: polar factor of the
/// transfer map.
inline Mat3 constrained_rotation(const SurfaceJet& ref, const SurfaceJet& def) {
  return polar(transfer_map(ref, def)).q;
}

struct RotationPartials {
  Mat3 dQ1 = Mat3::Zero(), dQ2 = Mat3::Zero();
};

/// Central finite differences of the pointwise polar field, one Richardson
/// extrapolation level.
inline RotationPartials constrained_rotation_partials(const SurfaceParam& ref,
                                                      const SurfaceParam& def, double x1,
                                                      double x2, double step = 1e-5) {
  auto q_at = [&](double a, double b) {
    return constrained_rotation(eval_jet(ref, a, b), eval_jet(def, a, b));
  };
  auto central = [&](double h, int dir) {
    double a1 = dir == 0 ? x1 + h : x1, b1 = dir == 0 ? x2 : x2 + h;
    double a2 = dir == 0 ? x1 - h : x1, b2 = dir == 0 ? x2 : x2 - h;
    return Mat3(((q_at(a1, b1) - q_at(a2, b2)) / (2.0 * h)).eval());
  };
  RotationPartials p;
  for (int dir = 0; dir < 2; ++dir) {
    Mat3 d_h = central(step, dir);
    Mat3 d_h2 = central(0.5 * step, dir);
    Mat3 d = (4.0 * d_h2 - d_h) / 3.0;
    (dir == 0 ? p.dQ1 : p.dQ2) = d;
  }
  return p;
}

/// Full constrained bundle from jets plus rotation-field partials.
inline ConstrainedState constrained_state(const SurfaceJet& ref, const SurfaceJet& def,
                                          const Mat3& dQ1, const Mat3& dQ2) {
  ConstrainedState cs;
  Mat3 Ue = transfer_map(ref, def);
  auto pp = polar(Ue);
  cs.Qinf = pp.q;
  cs.Einf = pp.u - Mat3::Identity();  // sqrt of the pulled-back metric minus 1

  Mat3 k = Mat3::Zero();
  k.col(0) = detail::axl_projected(cs.Qinf.transpose() * dQ1);
  k.col(1) = detail::axl_projected(cs.Qinf.transpose() * dQ2);
  cs.Kinf = k * ref.gradThetaInv;

  Mat32 q_grady0 = cs.Qinf * detail::grad3(ref.d1, ref.d2).leftCols<2>();
  Mat32 grad_m = detail::grad3(def.d1, def.d2).leftCols<2>();
  cs.Ginf = q_grady0.transpose() * grad_m - ref.I;
  Mat32 grad_n = def.gradN;
  cs.Rinf = -q_grady0.transpose() * grad_n - ref.II;
  cs.Tinf = (cs.Qinf * ref.n).transpose() * grad_m;
  cs.Ninf = ref.n.transpose() * k.leftCols<2>();

  // change-of-curvature tensor, closed form (no FD content):
  // sqrt(pullback I_m) gradTheta (L_{y0}^flat - L_m^flat) gradTheta^{-1}
  Mat2 Lm = def.I.inverse() * def.II;
  Mat3 closed = pp.u * ref.gradTheta * lift_flat(Mat2(ref.L - Lm)) * ref.gradThetaInv;
  Mat3 direct = cs.Einf * ref.B + ref.C * cs.Kinf;
  cs.couple = closed;
  cs.couple_discrepancy = (closed - direct).norm();
  return cs;
}

/// Convenience wrapper evaluating everything (FD rotation partials included)
/// at one parameter point.
inline ConstrainedState constrained_state(const SurfaceParam& ref, const SurfaceParam& def,
                                          double x1, double x2, double fd_step = 1e-5) {
  auto parts = constrained_rotation_partials(ref, def, x1, x2, fd_step);
  return constrained_state(eval_jet(ref, x1, x2), eval_jet(def, x1, x2), parts.dQ1, parts.dQ2);
}

/// Quadratic-in-x3 reconstruction of the 3D strain across the thickness.
inline Mat3 reconstructed_strain(const StrainState& st, const SurfaceJet& ref,
                                 const ShellMaterial& mat, double x3) {
  double c = mat.lambda / (mat.lambda + 2.0 * mat.mu);
  Mat3 N = ref.n * ref.n.transpose();
  Mat3 D = st.E * ref.B + ref.C * st.Kt;
  Mat3 term0 = st.E - c * st.E.trace() * N;
  Mat3 term1 = D - c * D.trace() * N;
  Mat3 term2 = D * ref.B;
  return term0 + x3 * term1 + x3 * x3 * term2;
}

/// As above with sym() applied to the x3 and x3^2 tensor blocks.
inline Mat3 modified_reconstructed_strain(const StrainState& st, const SurfaceJet& ref,
                                          const ShellMaterial& mat, double x3) {
  double c = mat.lambda / (mat.lambda + 2.0 * mat.mu);
  Mat3 N = ref.n * ref.n.transpose();
  Mat3 D = st.E * ref.B + ref.C * st.Kt;
  Mat3 term0 = st.E - c * st.E.trace() * N;
  Mat3 term1 = sym(Mat3(D)) - c * D.trace() * N;
  Mat3 term2 = sym(Mat3(D * ref.B));
  return term0 + x3 * term1 + x3 * x3 * term2;
}

/// Symmetric thickness-stretch ansatz coefficients (rho_m, rho_b).
inline std::pair<double, double> thickness_stretch_coefficients(const SurfaceJet& ref,
                                                                const SurfaceJet& def,
                                                                const Mat3& Q, const Mat3& dQ1,
                                                                const Mat3& dQ2,
                                                                const ShellMaterial& mat) {
  double c = mat.lambda / (mat.lambda + 2.0 * mat.mu);
  const Mat3& Gi = ref.gradThetaInv;
  Mat3 grad_m0 = detail::grad3(def.d1, def.d2);
  Mat3 grad_n0 = detail::grad3(ref.gradN.col(0), ref.gradN.col(1));
  // grad(Q n0) columns
  Mat3 grad_qn = detail::grad3(dQ1 * ref.n + Q * ref.gradN.col(0),
                               dQ2 * ref.n + Q * ref.gradN.col(1));
  double rho_m = 1.0 - c * ((Q.transpose() * grad_m0 * Gi).trace() - 2.0);
  double rho_b = -c * (Q.transpose() * grad_qn * Gi).trace() +
                 c * (Q.transpose() * grad_m0 * Gi * grad_n0 * Gi).trace();
  return {rho_m, rho_b};
}

}  // namespace shellkit
