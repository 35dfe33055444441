#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "shellkit/energy_forms.hpp"

namespace shellkit {

struct FormEigenvalues {
  double c1 = 0.0, C1 = 0.0;  // extremes of W_shell^inf on Sym(3)
  double c2 = 0.0, C2 = 0.0;  // extremes of W_curv on R^{3x3}
};

struct AdmissibilityReport {
  double curvature_bound = 0.0;  // h * max |kappa|
  bool injectivity_ok = false;
  bool h5_ok = false;
  bool h3_condition_i = false;
  bool h3_condition_ii = false;
  FormEigenvalues constants;
  double alpha_used = 0.0;
  double a_used = 0.0;
  int grid_n1 = 0, grid_n2 = 0;  // curvature sampling grid
};

struct SymmetryResiduals {
  double r0 = 0.0;  // |skew Einf|
  double r1 = 0.0;  // |skew (Einf B + C Kinf)|
  double r2 = 0.0;  // |skew ((Einf B + C Kinf) B)|
};

// h max|kappa| < sqrt((2/3)(29 - sqrt(761))) for the full-order model
inline double h5_thickness_threshold() { return std::sqrt((2.0 / 3.0) * (29.0 - std::sqrt(761.0))); }

/// Extreme eigenvalues of the shell and curvature quadratic forms, computed
/// from Gram matrices in orthonormal bases of Sym(3) and R^{3x3}.
inline FormEigenvalues form_eigenvalues(const ShellMaterial& m) {
  // orthonormal basis of Sym(3): e_i x e_i and (e_i x e_j + e_j x e_i)/sqrt(2)
  std::vector<Mat3> sym_basis;
  for (int i = 0; i < 3; ++i) {
    Mat3 b = Mat3::Zero();
    b(i, i) = 1.0;
    sym_basis.push_back(b);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Mat3 b = Mat3::Zero();
      b(i, j) = b(j, i) = s;
      sym_basis.push_back(b);
    }
  double tc = m.trace_coeff();
  Eigen::MatrixXd gram_shell(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      gram_shell(a, b) = m.mu * inner(sym_basis[a], sym_basis[b]) +
                         tc * sym_basis[a].trace() * sym_basis[b].trace();

  Eigen::MatrixXd gram_curv(9, 9);
  auto curv_bilinear = [&](const Mat3& x, const Mat3& y) {
    auto px = cartan_decompose(x);
    auto py = cartan_decompose(y);
    return m.mu * m.L_c * m.L_c *
           (m.b1 * inner(px.dev_sym, py.dev_sym) + m.b2 * inner(px.skew, py.skew) +
            m.b3 * px.trace * py.trace);
  };
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      Mat3 x = Mat3::Zero(), y = Mat3::Zero();
      x(a / 3, a % 3) = 1.0;
      y(b / 3, b % 3) = 1.0;
      gram_curv(a, b) = curv_bilinear(x, y);
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_shell);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(gram_curv);
  FormEigenvalues out;
  out.c1 = es.eigenvalues().minCoeff();
  out.C1 = es.eigenvalues().maxCoeff();
  out.c2 = ec.eigenvalues().minCoeff();
  out.C2 = ec.eigenvalues().maxCoeff();
  return out;
}

namespace detail {
// condition-i thickness bound for a given alpha
inline double h3_condition_i_bound(double alpha, double c2, double Cmax) {
  double q = (alpha * alpha - 12.0);
  return (5.0 - 2.0 * std::sqrt(6.0)) * q * q / (4.0 * alpha * alpha) * c2 / Cmax;
}

inline bool is_unconstrained(ModelVariant v) {
  return v == ModelVariant::UnconstrainedH5 || v == ModelVariant::UnconstrainedH3;
}
}  // namespace detail

/// Thickness admissibility report for a sampled surface.
inline AdmissibilityReport thickness_admissible(const ShellMaterial& mat,
                                                const SurfaceParam& surface, ModelVariant variant,
                                                int n1 = 33, int n2 = 33) {
  AdmissibilityReport rep;
  rep.grid_n1 = n1;
  rep.grid_n2 = n2;
  rep.constants = form_eigenvalues(mat);
  double kmax = principal_curvature_bound(surface, n1, n2);
  rep.curvature_bound = mat.h * kmax;
  rep.injectivity_ok = rep.curvature_bound < 2.0;
  rep.h5_ok = rep.curvature_bound < h5_thickness_threshold();

  // the unconstrained estimates see mu_c through max/min with the shell extremes
  double Cmax = rep.constants.C1, cmin = rep.constants.c1;
  if (detail::is_unconstrained(variant)) {
    Cmax = std::max(Cmax, mat.mu_c);
    cmin = std::min(cmin, mat.mu_c);
  }

  // condition i): exists alpha in (h kmax, 2 sqrt(3)) with h^2 below the bound
  double lo = rep.curvature_bound, hi = 2.0 * std::sqrt(3.0);
  if (lo < hi && std::isfinite(Cmax)) {
    const int steps = 400;
    for (int k = 0; k < steps; ++k) {
      double alpha = lo + (k + 0.5) / steps * (hi - lo);
      if (mat.h * mat.h < detail::h3_condition_i_bound(alpha, rep.constants.c2, Cmax)) {
        rep.h3_condition_i = true;
        rep.alpha_used = alpha;
        break;
      }
    }
  }

  // condition ii): h kmax < 1/a with a above the structural bound
  if (std::isfinite(Cmax) && cmin > 0.0) {
    double a = std::max(1.0 + std::sqrt(2.0) / 2.0,
                        0.5 * (1.0 + std::sqrt(1.0 + 3.0 * Cmax / cmin)));
    rep.a_used = a * (1.0 + 1e-12);
    rep.h3_condition_ii = rep.curvature_bound < 1.0 / rep.a_used;
  }
  return rep;
}

/// Pointwise max |principal curvature| from a jet.
inline double pointwise_curvature_max(const SurfaceJet& jet) {
  auto k = principal_curvatures(jet);
  return std::max(std::abs(k(0)), std::abs(k(1)));
}

/// Lower-bound estimate of the full-order density: returns (lhs, rhs) with
/// lhs the assembled density and rhs the coercivity minorant.
inline std::pair<double, double> coercivity_bound_h5(const StrainState& st, const SurfaceJet& ref,
                                                     const ShellMaterial& mat) {
  if (mat.h * pointwise_curvature_max(ref) >= h5_thickness_threshold())
    throw Error(ErrorCode::NotAdmissible, "thickness violates the full-order coercivity condition");
  double lhs = density_unconstrained(st, ref, mat, EnergyOrder::H5).total;
  double h = mat.h, h3 = h * h * h / 12.0, h5 = h * h * h * h * h / 80.0;
  Mat3 D = st.E * ref.B + ref.C * st.Kt;
  double rhs = h * (7.0 / 48.0) * w_shell(st.E, mat) + h3 * (37.0 / 80.0) * w_shell(D, mat) +
               h5 * (1.0 / 6.0) * w_shell(Mat3(D * ref.B), mat) +
               h * (47.0 / 48.0) * w_curv(st.Kt, mat);
  return {lhs, rhs};
}

/// Skew-part residuals of the constrained symmetry requirements.
inline SymmetryResiduals symmetry_residuals(const ConstrainedState& cs, const SurfaceJet& ref) {
  SymmetryResiduals r;
  r.r0 = skew(cs.Einf).norm();
  r.r1 = skew(cs.couple).norm();
  r.r2 = skew(Mat3(cs.couple * ref.B)).norm();
  return r;
}

/// Constructive coercivity constant for the h^3-truncated density following
/// the epsilon/delta selection of the existence proof; empty when no
/// admissible choice exists.
inline std::optional<double> coercivity_constant_h3(const ShellMaterial& mat,
                                                    const std::vector<SurfaceJet>& samples,
                                                    bool constrained) {
  auto ev = form_eigenvalues(mat);
  double Cmax = ev.C1, cmin = ev.c1;
  if (!constrained) {
    Cmax = std::max(Cmax, mat.mu_c);
    cmin = std::min(cmin, mat.mu_c);
  }
  if (!std::isfinite(Cmax) || cmin <= 0.0) return std::nullopt;
  double kmax = 0.0;
  for (const auto& j : samples) kmax = std::max(kmax, pointwise_curvature_max(j));

  double h = mat.h;
  double lo = h * kmax, hi = 2.0 * std::sqrt(3.0);
  if (lo >= hi) return std::nullopt;
  double best = 0.0;
  const int alpha_steps = 200, eps_steps = 50;
  for (int ka = 0; ka < alpha_steps; ++ka) {
    double alpha = lo + (ka + 0.5) / alpha_steps * (hi - lo);
    double gamma = 1.0 / (std::sqrt(6.0) * alpha);
    double a2 = alpha * alpha;
    double eps_lo =
        4.0 * (alpha + 3.0 * a2 * gamma) / (gamma * (12.0 - a2)) * (Cmax / ev.c2) * h * h;
    double eps_hi = (12.0 - a2) / (1.0 + 2.0 * alpha * gamma);
    if (eps_lo >= eps_hi) continue;
    for (int ke = 0; ke < eps_steps; ++ke) {
      double eps = eps_lo + (ke + 0.5) / eps_steps * (eps_hi - eps_lo);
      double delta = gamma * eps;
      double coef_e = 12.0 - a2 - eps - 2.0 * alpha * delta;
      if (coef_e <= 0.0) continue;
      double coef_k = (12.0 - a2) * ev.c2 - (4.0 / delta) * alpha * Cmax * h * h -
                      (12.0 / eps) * a2 * Cmax * h * h;
      double a1 = (h / 12.0) * std::min(coef_e * cmin, coef_k);
      best = std::max(best, a1);
    }
  }
  if (best <= 0.0) return std::nullopt;
  return best;
}

}  // namespace shellkit
