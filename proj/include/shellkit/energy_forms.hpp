#pragma once

#include <array>

#include "shellkit/strain_measures.hpp"

namespace shellkit {

enum class ModelVariant {
  UnconstrainedH5,
  UnconstrainedH3,
  ConstrainedH5,
  ConstrainedH3,
  ModifiedConstrainedH5,
  ModifiedConstrainedH3,
  ConstrainedPlate,
  ModifiedConstrainedPlate,
  Koiter,
};

inline const char* variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::UnconstrainedH5: return "UnconstrainedH5";
    case ModelVariant::UnconstrainedH3: return "UnconstrainedH3";
    case ModelVariant::ConstrainedH5: return "ConstrainedH5";
    case ModelVariant::ConstrainedH3: return "ConstrainedH3";
    case ModelVariant::ModifiedConstrainedH5: return "ModifiedConstrainedH5";
    case ModelVariant::ModifiedConstrainedH3: return "ModifiedConstrainedH3";
    case ModelVariant::ConstrainedPlate: return "ConstrainedPlate";
    case ModelVariant::ModifiedConstrainedPlate: return "ModifiedConstrainedPlate";
    case ModelVariant::Koiter: return "Koiter";
  }
  return "?";
}

struct EnergyBreakdown {
  double membrane = 0.0;
  double membrane_bending = 0.0;
  double bending_curvature = 0.0;
  double total = 0.0;
  double jacobian = 1.0;  // det(gradTheta) weight that was applied (1 if unweighted)
};

enum class EnergyOrder { H3, H5 };

// ---- quadratic and bilinear constitutive forms -------------------------------

/// mu |sym X|^2 + mu_c |skew X|^2 + lambda mu/(lambda+2mu) tr(X)^2
inline double w_shell(const Mat3& X, const ShellMaterial& m) {
  double s = m.mu * sym(X).squaredNorm();
  double t = m.trace_coeff() * X.trace() * X.trace();
  Mat3 sk = skew(X);
  if (m.mu_c_infinite()) {
    if (sk.norm() > 1e-12 * (1.0 + X.norm()))
      throw Error(ErrorCode::InfiniteEnergy, "skew part nonzero with mu_c = infinity");
    return s + t;
  }
  return s + m.mu_c * sk.squaredNorm() + t;
}

inline double w_shell_bilinear(const Mat3& X, const Mat3& Y, const ShellMaterial& m) {
  double v = m.mu * inner(sym(X), sym(Y)) + m.trace_coeff() * X.trace() * Y.trace();
  if (m.mu_c_infinite()) {
    double mag = 1.0 + X.norm() + Y.norm();
    if (skew(X).norm() > 1e-12 * mag || skew(Y).norm() > 1e-12 * mag)
      throw Error(ErrorCode::InfiniteEnergy, "skew part nonzero with mu_c = infinity");
    return v;
  }
  return v + m.mu_c * inner(skew(X), skew(Y));
}

namespace detail {
inline void require_symmetric(const Mat3& S) {
  if (skew(S).norm() > 1e-8 * (1.0 + S.norm()))
    throw Error(ErrorCode::NonSymmetricInput, "symmetric argument expected");
}
}  // namespace detail

/// mu |S|^2 + lambda mu/(lambda+2mu) tr(S)^2 on symmetric S
inline double w_shell_inf(const Mat3& S, const ShellMaterial& m) {
  detail::require_symmetric(S);
  return m.mu * S.squaredNorm() + m.trace_coeff() * S.trace() * S.trace();
}

inline double w_shell_inf_bilinear(const Mat3& S, const Mat3& T, const ShellMaterial& m) {
  detail::require_symmetric(S);
  detail::require_symmetric(T);
  return m.mu * inner(S, T) + m.trace_coeff() * S.trace() * T.trace();
}

/// W_shell with the trace coefficient replaced by lambda/2
inline double w_mp(const Mat3& X, const ShellMaterial& m) {
  return w_shell(X, m) +
         (m.lambda * m.lambda / (2.0 * (m.lambda + 2.0 * m.mu))) * X.trace() * X.trace();
}

inline double w_mp_inf(const Mat3& S, const ShellMaterial& m) {
  detail::require_symmetric(S);
  return m.mu * S.squaredNorm() + 0.5 * m.lambda * S.trace() * S.trace();
}

/// mu Lc^2 (b1 |dev sym X|^2 + b2 |skew X|^2 + b3 tr(X)^2)
inline double w_curv(const Mat3& X, const ShellMaterial& m) {
  auto parts = cartan_decompose(X);
  return m.mu * m.L_c * m.L_c *
         (m.b1 * parts.dev_sym.squaredNorm() + m.b2 * parts.skew.squaredNorm() +
          m.b3 * parts.trace * parts.trace);
}

// ---- assembled areal densities ------------------------------------------------

/// Areal energy density of the unconstrained model (full or h^3-truncated).
inline EnergyBreakdown density_unconstrained(const StrainState& st, const SurfaceJet& ref,
                                             const ShellMaterial& mat, EnergyOrder order,
                                             bool weighted = false) {
  double h = mat.h, h3 = h * h * h / 12.0, h5 = h * h * h * h * h / 80.0;
  double H = ref.H, K = ref.K;
  Mat3 D = st.E * ref.B + ref.C * st.Kt;
  Mat3 DB = D * ref.B;

  EnergyBreakdown out;
  out.membrane = (h + K * h3) * w_shell(st.E, mat);
  out.membrane_bending = -4.0 * h3 * H * w_shell_bilinear(st.E, D, mat) +
                         2.0 * h3 * w_shell_bilinear(st.E, DB, mat);
  if (order == EnergyOrder::H5) {
    out.membrane_bending += (h3 - K * h5) * w_shell(D, mat) + h5 * w_mp(DB, mat);
    out.bending_curvature = (h - K * h3) * w_curv(st.Kt, mat) +
                            (h3 - K * h5) * w_curv(Mat3(st.Kt * ref.B), mat) +
                            h5 * w_curv(Mat3(st.Kt * ref.B * ref.B), mat);
  } else {
    out.membrane_bending += h3 * w_shell(D, mat);
    out.bending_curvature =
        (h - K * h3) * w_curv(st.Kt, mat) + h3 * w_curv(Mat3(st.Kt * ref.B), mat);
  }
  out.total = out.membrane + out.membrane_bending + out.bending_curvature;
  if (weighted) {
    out.jacobian = ref.gradTheta.determinant();
    out.membrane *= out.jacobian;
    out.membrane_bending *= out.jacobian;
    out.bending_curvature *= out.jacobian;
    out.total *= out.jacobian;
  }
  return out;
}

/// Areal energy density of the constrained / modified / plate variants.
inline EnergyBreakdown density_constrained(const ConstrainedState& cs, const SurfaceJet& ref,
                                           const SurfaceJet& def, const ShellMaterial& mat,
                                           ModelVariant variant, bool weighted = false) {
  (void)def;
  bool modified = variant == ModelVariant::ModifiedConstrainedH5 ||
                  variant == ModelVariant::ModifiedConstrainedH3 ||
                  variant == ModelVariant::ModifiedConstrainedPlate;
  bool plate = variant == ModelVariant::ConstrainedPlate ||
               variant == ModelVariant::ModifiedConstrainedPlate;
  bool order5 =
      variant == ModelVariant::ConstrainedH5 || variant == ModelVariant::ModifiedConstrainedH5;
  if (variant == ModelVariant::UnconstrainedH5 || variant == ModelVariant::UnconstrainedH3 ||
      variant == ModelVariant::Koiter)
    throw Error(ErrorCode::ConfigInvalid, "variant is not a constrained density");

  double h = mat.h, h3 = h * h * h / 12.0, h5 = h * h * h * h * h / 80.0;
  double H = ref.H, K = ref.K;
  Mat3 D = cs.couple;
  Mat3 DB = D * ref.B;

  if (!modified) {
    // non-modified variants are defined only on the admissible (symmetric) set
    double tol = 1e-6 * (1.0 + D.norm());
    bool bad = skew(cs.Einf).norm() > tol || skew(D).norm() > tol;
    if (order5 && skew(DB).norm() > tol) bad = true;
    if (bad)
      throw Error(ErrorCode::InfiniteEnergy,
                  "state violates the symmetry constraints of the constrained model");
  }
  Mat3 Ds = sym(D), DBs = sym(DB);

  EnergyBreakdown out;
  if (plate) {
    out.membrane = h * w_shell_inf(cs.Einf, mat);
    out.membrane_bending = h3 * w_shell_inf(Ds, mat);
    out.bending_curvature = h * w_curv(cs.Kinf, mat);
  } else {
    out.membrane = (h + K * h3) * w_shell_inf(cs.Einf, mat);
    out.membrane_bending = -4.0 * h3 * H * w_shell_inf_bilinear(cs.Einf, Ds, mat) +
                           2.0 * h3 * w_shell_inf_bilinear(cs.Einf, DBs, mat);
    if (order5) {
      out.membrane_bending += (h3 - K * h5) * w_shell_inf(Ds, mat) + h5 * w_mp_inf(DBs, mat);
      out.bending_curvature = (h - K * h3) * w_curv(cs.Kinf, mat) +
                              (h3 - K * h5) * w_curv(Mat3(cs.Kinf * ref.B), mat) +
                              h5 * w_curv(Mat3(cs.Kinf * ref.B * ref.B), mat);
    } else {
      out.membrane_bending += h3 * w_shell_inf(Ds, mat);
      out.bending_curvature =
          (h - K * h3) * w_curv(cs.Kinf, mat) + h3 * w_curv(Mat3(cs.Kinf * ref.B), mat);
    }
  }
  out.total = out.membrane + out.membrane_bending + out.bending_curvature;
  if (weighted) {
    out.jacobian = ref.gradTheta.determinant();
    out.membrane *= out.jacobian;
    out.membrane_bending *= out.jacobian;
    out.bending_curvature *= out.jacobian;
    out.total *= out.jacobian;
  }
  return out;
}

/// Koiter areal energy density (membrane + bending, det gradTheta weighted).
inline double density_koiter(const SurfaceJet& ref, const SurfaceJet& def,
                             const ShellMaterial& mat) {
  const Mat3& Gi = ref.gradThetaInv;
  Mat3 memb = Gi.transpose() * lift_flat(Mat2(0.5 * (def.I - ref.I))) * Gi;
  Mat3 bend = Gi.transpose() * lift_flat(Mat2(def.II - ref.II)) * Gi;
  double tc = mat.trace_coeff();
  double h = mat.h, h3 = h * h * h / 12.0;
  double density = h * (mat.mu * memb.squaredNorm() + tc * memb.trace() * memb.trace()) +
                   h3 * (mat.mu * bend.squaredNorm() + tc * bend.trace() * bend.trace());
  return density * ref.gradTheta.determinant();
}

// ---- alternative representation through 2x2 surface tensors --------------------

namespace detail {
inline double w_inplane(const Mat2& X, const Mat2& Y, const Mat2& Iinv, const ShellMaterial& m,
                        double trace_coeff) {
  Mat2 Yp = Iinv * Y * Iinv;
  double v = m.mu * inner(Mat2(sym(X)), Mat2(sym(Yp))) +
             trace_coeff * (X * Iinv).trace() * (Y * Iinv).trace();
  if (!m.mu_c_infinite()) v += m.mu_c * inner(Mat2(skew(X)), Mat2(skew(Yp)));
  return v;
}

inline double w_curvpls(const Mat2& X, const Mat2& Iinv, const ShellMaterial& m) {
  Mat2 Xp = Iinv * X * Iinv;
  double tr = (X * Iinv).trace();
  return m.mu * m.L_c * m.L_c *
         (m.b1 * inner(Mat2(sym(X)), Mat2(sym(Xp))) +
          (8.0 * m.b3 + m.b1 / 3.0) * inner(Mat2(skew(X)), Mat2(skew(Xp))) +
          0.5 * (m.b2 - m.b1) * tr * tr);
}
}  // namespace detail

/// Full-order density expressed through the change-of-metric tensor, the
/// bending strain tensor and the drilling bendings; requires vanishing
/// transverse shear.
inline EnergyBreakdown density_alternative(const ConstrainedState& cs, const SurfaceJet& ref,
                                           const ShellMaterial& mat, bool weighted = false) {
  if (cs.Tinf.norm() > 1e-8 * (1.0 + cs.Ginf.norm()))
    throw Error(ErrorCode::ShearNotZero, "representation assumes zero transverse shear");

  double h = mat.h, h3 = h * h * h / 12.0, h5 = h * h * h * h * h / 80.0;
  double H = ref.H, K = ref.K;
  Mat2 Iinv = ref.I.inverse();
  Mat2 L = ref.L;
  Mat2 Lstar = 2.0 * H * Mat2::Identity() - L;  // cofactor of L
  Mat2 P = cs.Ginf;
  Mat2 Crv = P * L - cs.Rinf;  // change of curvature
  double tc = mat.trace_coeff();

  EnergyBreakdown out;
  out.membrane = (h + K * h3) * detail::w_inplane(P, P, Iinv, mat, tc);
  out.membrane_bending = (h3 - K * h5) * detail::w_inplane(Crv, Crv, Iinv, mat, tc) -
                         2.0 * h3 * detail::w_inplane(P, Mat2(Crv * Lstar), Iinv, mat, tc) +
                         h5 * detail::w_inplane(Mat2(Crv * L), Mat2(Crv * L), Iinv, mat,
                                                0.5 * mat.lambda);
  Mat2 RL = cs.Rinf * L, RL2 = cs.Rinf * L * L;
  RowVec2 N = cs.Ninf, NL = cs.Ninf * L, NL2 = cs.Ninf * L * L;
  double drill = mat.mu * mat.L_c * mat.L_c * 0.5 * (mat.b1 + mat.b2) *
                 ((h - K * h3) * (N * Iinv).dot(N) + (h3 - K * h5) * (NL * Iinv).dot(NL) +
                  h5 * (NL2 * Iinv).dot(NL2));
  out.bending_curvature = (h - K * h3) * detail::w_curvpls(cs.Rinf, Iinv, mat) +
                          (h3 - K * h5) * detail::w_curvpls(RL, Iinv, mat) +
                          h5 * detail::w_curvpls(RL2, Iinv, mat) + drill;
  out.total = out.membrane + out.membrane_bending + out.bending_curvature;
  if (weighted) {
    out.jacobian = ref.gradTheta.determinant();
    out.membrane *= out.jacobian;
    out.membrane_bending *= out.jacobian;
    out.bending_curvature *= out.jacobian;
    out.total *= out.jacobian;
  }
  return out;
}

// ---- external loads -------------------------------------------------------------

enum EdgeMask : int {
  EdgeX1Min = 1,
  EdgeX1Max = 2,
  EdgeX2Min = 4,
  EdgeX2Max = 8,
};

/// Dead-load potential: area term over the parameter rectangle plus edge
/// terms over the selected boundary pieces. `u`, `f`, `t` map (x1,x2) -> Vec3.
template <class UFn, class FFn, class TFn>
double loads_potential(UFn&& u, FFn&& f, TFn&& t, const std::array<double, 4>& domain,
                       int edge_mask, int n1, int n2) {
  double dx = (domain[1] - domain[0]) / (n1 - 1);
  double dy = (domain[3] - domain[2]) / (n2 - 1);
  // cell quadrature: average of the four corner values times the cell area
  double area = 0.0;
  for (int i = 0; i + 1 < n1; ++i)
    for (int j = 0; j + 1 < n2; ++j) {
      double v = 0.0;
      for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj) {
          double x1 = domain[0] + (i + di) * dx, x2 = domain[2] + (j + dj) * dy;
          v += f(x1, x2).dot(u(x1, x2));
        }
      area += 0.25 * v * dx * dy;
    }
  // trapezoid rule along each requested edge
  double edge = 0.0;
  auto line = [&](auto point, int n, double step) {
    double acc = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      auto [a1, a2] = point(k);
      auto [b1, b2] = point(k + 1);
      acc += 0.5 * (t(a1, a2).dot(u(a1, a2)) + t(b1, b2).dot(u(b1, b2))) * step;
    }
    return acc;
  };
  if (edge_mask & EdgeX1Min)
    edge += line([&](int k) { return std::pair{domain[0], domain[2] + k * dy}; }, n2, dy);
  if (edge_mask & EdgeX1Max)
    edge += line([&](int k) { return std::pair{domain[1], domain[2] + k * dy}; }, n2, dy);
  if (edge_mask & EdgeX2Min)
    edge += line([&](int k) { return std::pair{domain[0] + k * dx, domain[2]}; }, n1, dx);
  if (edge_mask & EdgeX2Max)
    edge += line([&](int k) { return std::pair{domain[0] + k * dx, domain[3]}; }, n1, dx);
  return area + edge;
}

}  // namespace shellkit
