#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <exception>
#include <thread>
#include <vector>

#include <Eigen/Geometry>

#include "shellkit/energy_forms.hpp"

namespace shellkit {

/// Discrete minimization problem: uniform grid over a parameter rectangle,
/// Dirichlet data on selected edges, dead loads, and an energy variant.
struct MinimizeProblem {
  std::array<double, 4> domain = {0.0, 1.0, 0.0, 1.0};
  int n1 = 9, n2 = 9;
  SurfaceParam reference = SurfaceParam::plane();
  ModelVariant variant = ModelVariant::ModifiedConstrainedPlate;
  ShellMaterial material;

  int dirichlet_edges = 0;  // EdgeMask bits
  SurfaceParam dirichlet_target = SurfaceParam::plane();
  bool has_dirichlet_target = false;  // default target: the reference itself
  bool clamp_rotation = false;        // fix Q on Dirichlet edges (unconstrained only)

  Vec3 load_f = Vec3::Zero();  // per-area dead load
  Vec3 load_t = Vec3::Zero();  // per-edge dead load
  int load_edges = 0;          // EdgeMask bits for the traction term

  SurfaceParam init_m = SurfaceParam::plane();
  bool has_init_m = false;  // default init: the reference itself

  int max_iters = 200;
  double grad_tol = 1e-6;
  double step_init = 1.0;
  std::uint64_t seed = 0;

  const SurfaceParam& target() const { return has_dirichlet_target ? dirichlet_target : reference; }
  const SurfaceParam& init() const { return has_init_m ? init_m : reference; }

  void validate() const {
    material.validate();
    if (n1 < 5 || n2 < 5) throw Error(ErrorCode::ConfigInvalid, "grid: n1 and n2 must be >= 5");
    if (!(domain[1] > domain[0]) || !(domain[3] > domain[2]))
      throw Error(ErrorCode::ConfigInvalid, "domain: rectangle must be nondegenerate");
    bool loads = load_f.norm() > 0.0 || (load_t.norm() > 0.0 && load_edges != 0);
    if (loads && dirichlet_edges == 0)
      throw Error(ErrorCode::ConfigInvalid,
                  "dirichlet: at least one fixed edge is required with nonzero loads");
    switch (variant) {
      case ModelVariant::ConstrainedH5:
      case ModelVariant::ConstrainedH3:
      case ModelVariant::ConstrainedPlate:
        throw Error(ErrorCode::ConfigInvalid,
                    "variant: non-modified constrained densities are evaluation-only");
      default: break;
    }
    if ((variant == ModelVariant::UnconstrainedH5 || variant == ModelVariant::UnconstrainedH3) &&
        material.mu_c_infinite())
      throw Error(ErrorCode::ConfigInvalid, "material: mu_c must be finite for this variant");
  }
};

struct Solution {
  std::vector<Vec3> m;              // all n1*n2 nodes, row-major (i*n2 + j)
  std::vector<Eigen::Vector4d> q;   // unit quaternions (w,x,y,z); unconstrained variants only
  EnergyBreakdown energy;           // integrated over the grid
  double loads_value = 0.0;
  double objective = 0.0;
  double grad_norm = 0.0;  // infinity norm at the final iterate
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
  std::vector<double> history;  // accepted-iterate objectives
};

namespace detail {

inline Eigen::Vector4d quat_of(const Mat3& r) {
  Eigen::Quaterniond q(r);
  return {q.w(), q.x(), q.y(), q.z()};
}
inline Mat3 quat_to_mat(Eigen::Vector4d v) {
  v.normalize();
  return Eigen::Quaterniond(v(0), v(1), v(2), v(3)).toRotationMatrix();
}

/// Precomputed grid data shared by objective/gradient evaluations.
struct MinGrid {
  MinimizeProblem p;
  double dx = 0.0, dy = 0.0;
  std::vector<SurfaceJet> ref_node;  // n1*n2
  std::vector<SurfaceJet> ref_mid;   // (n1-1)*(n2-1)
  std::vector<char> m_fixed, q_fixed;
  std::vector<int> m_dof, q_dof;  // dof offsets, -1 when fixed
  std::vector<Vec3> m_bc;
  std::vector<Eigen::Vector4d> q_bc;
  int ndof = 0;
  bool unconstrained = false, koiter = false, rotations = false;

  int node(int i, int j) const { return i * p.n2 + j; }
  int cell(int i, int j) const { return i * (p.n2 - 1) + j; }
  double x1(int i) const { return p.domain[0] + i * dx; }
  double x2(int j) const { return p.domain[2] + j * dy; }
};

inline MinGrid make_grid(const MinimizeProblem& p) {
  p.validate();
  MinGrid g;
  g.p = p;
  g.dx = (p.domain[1] - p.domain[0]) / (p.n1 - 1);
  g.dy = (p.domain[3] - p.domain[2]) / (p.n2 - 1);
  g.unconstrained =
      p.variant == ModelVariant::UnconstrainedH5 || p.variant == ModelVariant::UnconstrainedH3;
  g.koiter = p.variant == ModelVariant::Koiter;
  g.rotations = g.unconstrained;

  int nn = p.n1 * p.n2;
  g.ref_node.reserve(nn);
  g.m_fixed.assign(nn, 0);
  g.q_fixed.assign(nn, 0);
  g.m_bc.assign(nn, Vec3::Zero());
  g.q_bc.assign(nn, Eigen::Vector4d(1, 0, 0, 0));
  for (int i = 0; i < p.n1; ++i)
    for (int j = 0; j < p.n2; ++j) {
      double a = g.x1(i), b = g.x2(j);
      g.ref_node.push_back(eval_jet(p.reference, a, b));
      bool dir = ((p.dirichlet_edges & EdgeX1Min) && i == 0) ||
                 ((p.dirichlet_edges & EdgeX1Max) && i == p.n1 - 1) ||
                 ((p.dirichlet_edges & EdgeX2Min) && j == 0) ||
                 ((p.dirichlet_edges & EdgeX2Max) && j == p.n2 - 1);
      if (dir) {
        g.m_fixed[g.node(i, j)] = 1;
        auto tj = eval_jet(p.target(), a, b);
        g.m_bc[g.node(i, j)] = tj.y;
        if (g.rotations && p.clamp_rotation) {
          g.q_fixed[g.node(i, j)] = 1;
          g.q_bc[g.node(i, j)] = quat_of(constrained_rotation(g.ref_node.back(), tj));
        }
      }
    }
  g.ref_mid.reserve((p.n1 - 1) * (p.n2 - 1));
  for (int i = 0; i + 1 < p.n1; ++i)
    for (int j = 0; j + 1 < p.n2; ++j)
      g.ref_mid.push_back(eval_jet(p.reference, g.x1(i) + 0.5 * g.dx, g.x2(j) + 0.5 * g.dy));

  g.m_dof.assign(nn, -1);
  g.q_dof.assign(nn, -1);
  for (int k = 0; k < nn; ++k)
    if (!g.m_fixed[k]) {
      g.m_dof[k] = g.ndof;
      g.ndof += 3;
    }
  if (g.rotations)
    for (int k = 0; k < nn; ++k)
      if (!g.q_fixed[k]) {
        g.q_dof[k] = g.ndof;
        g.ndof += 4;
      }
  return g;
}

/// Nodal fields reconstructed from a dof vector.
struct NodalFields {
  std::vector<Vec3> m, n;
  std::vector<Mat32> dm;
  std::vector<Mat3> rot;  // Q (unconstrained) or pointwise polar rotation (constrained)
};

template <class F>
Vec3 fd_column(F&& value, int k, int n, double step) {
  // second-order first derivative along one grid line (central / one-sided)
  if (k == 0) return (-3.0 * value(0) + 4.0 * value(1) - value(2)) / (2.0 * step);
  if (k == n - 1)
    return (3.0 * value(n - 1) - 4.0 * value(n - 2) + value(n - 3)) / (2.0 * step);
  return (value(k + 1) - value(k - 1)) / (2.0 * step);
}

inline NodalFields nodal_fields(const MinGrid& g, const std::vector<double>& x) {
  const auto& p = g.p;
  int nn = p.n1 * p.n2;
  NodalFields f;
  f.m.resize(nn);
  for (int k = 0; k < nn; ++k)
    f.m[k] = g.m_fixed[k] ? g.m_bc[k] : Vec3(x[g.m_dof[k]], x[g.m_dof[k] + 1], x[g.m_dof[k] + 2]);

  f.dm.resize(nn);
  f.n.resize(nn);
  for (int i = 0; i < p.n1; ++i)
    for (int j = 0; j < p.n2; ++j) {
      Mat32 d;
      d.col(0) = fd_column([&](int k) { return f.m[g.node(k, j)]; }, i, p.n1, g.dx);
      d.col(1) = fd_column([&](int k) { return f.m[g.node(i, k)]; }, j, p.n2, g.dy);
      int id = g.node(i, j);
      f.dm[id] = d;
      f.n[id] = d.col(0).cross(d.col(1));
      double len = f.n[id].norm();
      if (!(len > 1e-12)) throw Error(ErrorCode::Degenerate, "deformed surface is degenerate");
      f.n[id] /= len;
    }

  if (g.rotations) {
    f.rot.resize(nn);
    for (int k = 0; k < nn; ++k)
      f.rot[k] = quat_to_mat(g.q_fixed[k] ? g.q_bc[k]
                                          : Eigen::Vector4d(x[g.q_dof[k]], x[g.q_dof[k] + 1],
                                                            x[g.q_dof[k] + 2], x[g.q_dof[k] + 3]));
  } else if (!g.koiter) {
    // pointwise rotation of the constrained model at the nodes
    f.rot.resize(nn);
    for (int k = 0; k < nn; ++k) {
      Mat3 fm = detail::grad3(f.dm[k].col(0), f.dm[k].col(1));
      fm.col(2) = f.n[k];
      f.rot[k] = polar(Mat3(fm * g.ref_node[k].gradThetaInv)).q;
    }
  }
  return f;
}

inline EnergyBreakdown cell_energy(const MinGrid& g, const NodalFields& f, int ci, int cj) {
  const auto& p = g.p;
  int c00 = g.node(ci, cj), c10 = g.node(ci + 1, cj);
  int c01 = g.node(ci, cj + 1), c11 = g.node(ci + 1, cj + 1);
  const SurfaceJet& ref = g.ref_mid[g.cell(ci, cj)];

  auto mid_d1 = [&](const auto& v) {
    return ((v[c10] - v[c00] + v[c11] - v[c01]) / (2.0 * g.dx)).eval();
  };
  auto mid_d2 = [&](const auto& v) {
    return ((v[c01] - v[c00] + v[c11] - v[c10]) / (2.0 * g.dy)).eval();
  };

  Mat32 dm, dn;
  dm.col(0) = mid_d1(f.m);
  dm.col(1) = mid_d2(f.m);
  dn.col(0) = mid_d1(f.n);
  dn.col(1) = mid_d2(f.n);
  Vec3 n = dm.col(0).cross(dm.col(1));
  double len = n.norm();
  if (!(len > 1e-12)) throw Error(ErrorCode::Degenerate, "deformed surface is degenerate");
  n /= len;

  SurfaceJet def{};
  def.y = 0.25 * (f.m[c00] + f.m[c10] + f.m[c01] + f.m[c11]);
  def.d1 = dm.col(0);
  def.d2 = dm.col(1);
  def.n = n;
  def.gradN = dn;
  def.I = dm.transpose() * dm;
  Mat2 ii = dm.transpose() * dn;
  def.II = -0.5 * (ii + ii.transpose());

  if (g.koiter) {
    EnergyBreakdown out;
    double total = density_koiter(ref, def, p.material);
    out.membrane = out.total = total;  // breakdown not split for this variant
    out.jacobian = ref.gradTheta.determinant();
    return out;
  }

  if (g.unconstrained) {
    // Q and its gradient at the cell midpoint
    Eigen::Vector4d q0 = quat_of(f.rot[c00]);
    Eigen::Vector4d qs = q0;
    for (int c : {c10, c01, c11}) {
      Eigen::Vector4d qc = quat_of(f.rot[c]);
      qs += qc.dot(q0) < 0.0 ? Eigen::Vector4d(-qc) : qc;
    }
    Mat3 qm = quat_to_mat(qs);
    Mat3 dq1 = mid_d1(f.rot), dq2 = mid_d2(f.rot);
    const Mat3& gi = ref.gradThetaInv;

    Mat3 fm = detail::grad3(def.d1, def.d2);
    fm.col(2) = qm * ref.n;
    StrainState st;
    st.E = qm.transpose() * fm * gi - Mat3::Identity();
    Mat3 k = Mat3::Zero();
    k.col(0) = detail::axl_projected(qm.transpose() * dq1);
    k.col(1) = detail::axl_projected(qm.transpose() * dq2);
    st.Kt = k * gi;
    auto order =
        p.variant == ModelVariant::UnconstrainedH5 ? EnergyOrder::H5 : EnergyOrder::H3;
    return density_unconstrained(st, ref, p.material, order, true);
  }

  Mat3 dq1 = mid_d1(f.rot), dq2 = mid_d2(f.rot);
  ConstrainedState cs = constrained_state(ref, def, dq1, dq2);
  return density_constrained(cs, ref, def, p.material, p.variant, true);
}

struct Evaluation {
  EnergyBreakdown energy;
  double loads_value = 0.0;
  double objective = 0.0;
};

inline Evaluation evaluate(const MinGrid& g, const std::vector<double>& x) {
  const auto& p = g.p;
  NodalFields f = nodal_fields(g, x);
  int ncell = (p.n1 - 1) * (p.n2 - 1);
  int workers = std::max(1, std::min((int)worker_count(), ncell / 16));

  auto run_range = [&](int lo, int hi, EnergyBreakdown& acc) {
    for (int c = lo; c < hi; ++c) {
      EnergyBreakdown e = cell_energy(g, f, c / (p.n2 - 1), c % (p.n2 - 1));
      acc.membrane += e.membrane;
      acc.membrane_bending += e.membrane_bending;
      acc.bending_curvature += e.bending_curvature;
      acc.total += e.total;
    }
  };

  Evaluation out;
  if (workers <= 1) {
    run_range(0, ncell, out.energy);
  } else {
    std::vector<EnergyBreakdown> parts(workers);
    std::vector<std::exception_ptr> errs(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run_range(w * ncell / workers, (w + 1) * ncell / workers, parts[w]);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    for (const auto& part : parts) {  // fixed-order reduction
      out.energy.membrane += part.membrane;
      out.energy.membrane_bending += part.membrane_bending;
      out.energy.bending_curvature += part.bending_curvature;
      out.energy.total += part.total;
    }
  }
  double cell_area = g.dx * g.dy;
  out.energy.membrane *= cell_area;
  out.energy.membrane_bending *= cell_area;
  out.energy.bending_curvature *= cell_area;
  out.energy.total *= cell_area;

  auto u = [&](double a, double b) {
    int i = (int)std::lround((a - p.domain[0]) / g.dx);
    int j = (int)std::lround((b - p.domain[2]) / g.dy);
    int id = g.node(i, j);
    return Vec3(f.m[id] - g.ref_node[id].y);  // displacement
  };
  out.loads_value = loads_potential(u, [&](double, double) { return p.load_f; },
                                    [&](double, double) { return p.load_t; }, p.domain,
                                    p.load_edges, p.n1, p.n2);
  out.objective = out.energy.total - out.loads_value;
  return out;
}

inline std::vector<double> initial_dofs(const MinGrid& g) {
  const auto& p = g.p;
  std::vector<double> x(g.ndof, 0.0);
  std::vector<SurfaceJet> init;
  init.reserve(p.n1 * p.n2);
  for (int i = 0; i < p.n1; ++i)
    for (int j = 0; j < p.n2; ++j) init.push_back(eval_jet(p.init(), g.x1(i), g.x2(j)));
  for (int k = 0; k < p.n1 * p.n2; ++k) {
    if (g.m_dof[k] >= 0) {
      x[g.m_dof[k]] = init[k].y(0);
      x[g.m_dof[k] + 1] = init[k].y(1);
      x[g.m_dof[k] + 2] = init[k].y(2);
    }
    if (g.rotations && g.q_dof[k] >= 0) {
      Eigen::Vector4d q = quat_of(constrained_rotation(g.ref_node[k], init[k]));
      for (int c = 0; c < 4; ++c) x[g.q_dof[k] + c] = q(c);
    }
  }
  return x;
}

inline void renormalize_quats(const MinGrid& g, std::vector<double>& x) {
  if (!g.rotations) return;
  for (int k = 0; k < g.p.n1 * g.p.n2; ++k)
    if (g.q_dof[k] >= 0) {
      Eigen::Map<Eigen::Vector4d> q(&x[g.q_dof[k]]);
      q.normalize();
    }
}

inline std::vector<double> gradient(const MinGrid& g, const std::vector<double>& x) {
  std::vector<double> grad(g.ndof, 0.0);
  int workers = std::max(1, std::min((int)worker_count(), g.ndof / 8));
  auto run_range = [&](int lo, int hi) {
    std::vector<double> pt = x;
    for (int d = lo; d < hi; ++d) {
      double step = std::max(1e-6, 1e-6 * std::abs(x[d]));
      pt = x;
      pt[d] = x[d] + step;
      double fp = evaluate(g, pt).objective;
      pt[d] = x[d] - step;
      double fm = evaluate(g, pt).objective;
      grad[d] = (fp - fm) / (2.0 * step);
    }
  };
  if (workers <= 1) {
    run_range(0, g.ndof);
  } else {
    std::vector<std::exception_ptr> errs(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run_range(w * g.ndof / workers, (w + 1) * g.ndof / workers);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }
  // quaternion components live on the unit sphere: project to its tangent
  if (g.rotations)
    for (int k = 0; k < g.p.n1 * g.p.n2; ++k)
      if (g.q_dof[k] >= 0) {
        Eigen::Map<const Eigen::Vector4d> q(&x[g.q_dof[k]]);
        Eigen::Map<Eigen::Vector4d> gq(&grad[g.q_dof[k]]);
        Eigen::Vector4d un = q.normalized();
        gq -= gq.dot(un) * un;
      }
  return grad;
}

}  // namespace detail

/// Discrete energy (minus load potential) of one dof vector.
inline double assemble_objective(const MinimizeProblem& p, const std::vector<double>& x) {
  auto g = detail::make_grid(p);
  if ((int)x.size() != g.ndof) throw Error(ErrorCode::ConfigInvalid, "dof vector length mismatch");
  double v = detail::evaluate(g, x).objective;
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteObjective, "objective is not finite");
  return v;
}

/// Central finite-difference gradient (quaternion dofs tangent-projected).
inline std::vector<double> assemble_gradient(const MinimizeProblem& p,
                                             const std::vector<double>& x) {
  auto g = detail::make_grid(p);
  if ((int)x.size() != g.ndof) throw Error(ErrorCode::ConfigInvalid, "dof vector length mismatch");
  return detail::gradient(g, x);
}

/// Dof vector for the configured initial fields (Dirichlet values excluded).
inline std::vector<double> initial_guess(const MinimizeProblem& p) {
  return detail::initial_dofs(detail::make_grid(p));
}

/// Limited-memory quasi-Newton minimization with Armijo backtracking.
inline Solution minimize(const MinimizeProblem& p) {
  auto g = detail::make_grid(p);
  std::vector<double> x = detail::initial_dofs(g);

  auto safe_objective = [&](const std::vector<double>& pt) {
    try {
      double v = detail::evaluate(g, pt).objective;
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double fx = detail::evaluate(g, x).objective;
  if (!std::isfinite(fx)) throw Error(ErrorCode::NonFiniteObjective, "objective is not finite");
  std::vector<double> grad = detail::gradient(g, x);
  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
  };

  Solution sol;
  sol.history.push_back(fx);

  std::deque<std::vector<double>> hist_s, hist_y;
  std::deque<double> hist_rho;
  int n = g.ndof;
  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  int iter = 0;
  bool converged = false, ls_failed = false;
  while (true) {
    sol.grad_norm = inf_norm(grad);
    if (sol.grad_norm <= p.grad_tol) {
      converged = true;
      break;
    }
    if (iter >= p.max_iters) break;

    // two-loop recursion
    std::vector<double> d = grad;
    std::vector<double> alpha_hist(hist_s.size());
    for (int k = (int)hist_s.size() - 1; k >= 0; --k) {
      alpha_hist[k] = hist_rho[k] * dot(hist_s[k], d);
      for (int i = 0; i < n; ++i) d[i] -= alpha_hist[k] * hist_y[k][i];
    }
    if (!hist_s.empty()) {
      double gamma = dot(hist_s.back(), hist_y.back()) / dot(hist_y.back(), hist_y.back());
      for (double& c : d) c *= gamma;
    }
    for (std::size_t k = 0; k < hist_s.size(); ++k) {
      double beta = hist_rho[k] * dot(hist_y[k], d);
      for (int i = 0; i < n; ++i) d[i] += (alpha_hist[k] - beta) * hist_s[k][i];
    }
    for (double& c : d) c = -c;
    double slope = dot(grad, d);
    if (!(slope < 0.0)) {  // fall back to steepest descent
      for (int i = 0; i < n; ++i) d[i] = -grad[i];
      slope = -dot(grad, grad);
    }

    double alpha = hist_s.empty() ? std::min(p.step_init, 1.0 / std::max(1.0, sol.grad_norm))
                                  : p.step_init;
    std::vector<double> xn(n);
    double fn = 0.0;
    bool accepted = false;
    while (alpha >= 1e-14) {
      for (int i = 0; i < n; ++i) xn[i] = x[i] + alpha * d[i];
      fn = safe_objective(xn);
      if (fn <= fx + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      ls_failed = true;
      break;
    }

    detail::renormalize_quats(g, xn);
    std::vector<double> grad_n = detail::gradient(g, xn);
    std::vector<double> s(n), y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = grad_n[i] - grad[i];
    }
    double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      hist_s.push_back(std::move(s));
      hist_y.push_back(std::move(y));
      hist_rho.push_back(1.0 / sy);
      if (hist_s.size() > 10) {
        hist_s.pop_front();
        hist_y.pop_front();
        hist_rho.pop_front();
      }
    }
    x = std::move(xn);
    fx = safe_objective(x);  // quaternions renormalized: value unchanged by construction
    grad = std::move(grad_n);
    ++iter;
    sol.history.push_back(fx);
  }

  auto ev = detail::evaluate(g, x);
  auto fields = detail::nodal_fields(g, x);
  sol.m = fields.m;
  if (g.rotations) {
    sol.q.resize(fields.rot.size());
    for (std::size_t k = 0; k < fields.rot.size(); ++k) sol.q[k] = detail::quat_of(fields.rot[k]);
  }
  sol.energy = ev.energy;
  sol.loads_value = ev.loads_value;
  sol.objective = ev.objective;
  sol.iterations = iter;
  sol.converged = converged;
  sol.line_search_failed = ls_failed;
  return sol;
}

}  // namespace shellkit
