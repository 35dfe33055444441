#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "shellkit/bending_invariance.hpp"
#include "shellkit/constraints_coercivity.hpp"
#include "shellkit/minimizer.hpp"

namespace shellkit::cli {

using nlohmann::json;

// ---- config parsing ---------------------------------------------------------

inline double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw Error(ErrorCode::ConfigInvalid, field + ": expected a number");
  return j.get<double>();
}

inline SurfaceParam parse_surface(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(ErrorCode::ConfigInvalid, field + ": expected an object with a \"kind\" key");
  std::string kind = j.at("kind").get<std::string>();
  auto num = [&](const char* key) {
    if (!j.contains(key))
      throw Error(ErrorCode::ConfigInvalid, field + "." + key + ": required for kind " + kind);
    return number_at(j.at(key), field + "." + std::string(key));
  };
  if (kind == "plane") return SurfaceParam::plane();
  if (kind == "cylinder") return SurfaceParam::cylinder(num("radius"));
  if (kind == "sphere") return SurfaceParam::sphere(num("radius"));
  if (kind == "torus") return SurfaceParam::torus(num("major_radius"), num("minor_radius"));
  if (kind == "graph") {
    if (!j.contains("terms") || !j.at("terms").is_array())
      throw Error(ErrorCode::ConfigInvalid, field + ".terms: expected an array of [i, j, coef]");
    std::vector<PolyTerm> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 3)
        throw Error(ErrorCode::ConfigInvalid, field + ".terms: each entry must be [i, j, coef]");
      terms.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    }
    return SurfaceParam::graph(std::move(terms));
  }
  if (kind == "affine_image") {
    if (!j.contains("base"))
      throw Error(ErrorCode::ConfigInvalid, field + ".base: required for kind affine_image");
    Mat3 a = Mat3::Identity();
    Vec3 t = Vec3::Zero();
    if (j.contains("map")) {
      const auto& m = j.at("map");
      if (!m.is_array() || m.size() != 9)
        throw Error(ErrorCode::ConfigInvalid, field + ".map: expected 9 numbers (row-major)");
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = m[3 * r + c].get<double>();
    }
    if (j.contains("shift")) {
      const auto& s = j.at("shift");
      if (!s.is_array() || s.size() != 3)
        throw Error(ErrorCode::ConfigInvalid, field + ".shift: expected 3 numbers");
      for (int c = 0; c < 3; ++c) t(c) = s[c].get<double>();
    }
    return SurfaceParam::affine_image(parse_surface(j.at("base"), field + ".base"), a, t);
  }
  if (kind == "normal_offset")
    return SurfaceParam::normal_offset(parse_surface(j.at("base"), field + ".base"),
                                       num("offset"));
  if (kind == "radial_scale")
    return SurfaceParam::radial_scale(parse_surface(j.at("base"), field + ".base"),
                                      num("factor"));
  throw Error(ErrorCode::ConfigInvalid, field + ".kind: unknown surface kind \"" + kind + "\"");
}

inline ShellMaterial parse_material(const json& j) {
  ShellMaterial m;
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "material: expected an object");
  auto get = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (v.is_string() && (v == "inf" || v == "infinity"))
      slot = std::numeric_limits<double>::infinity();
    else
      slot = number_at(v, std::string("material.") + key);
  };
  get("h", m.h);
  get("mu", m.mu);
  get("lambda", m.lambda);
  get("mu_c", m.mu_c);
  get("L_c", m.L_c);
  get("b1", m.b1);
  get("b2", m.b2);
  get("b3", m.b3);
  try {
    m.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("material.") + e.what());
  }
  return m;
}

inline ModelVariant parse_variant(const json& j) {
  std::string s = j.get<std::string>();
  for (ModelVariant v :
       {ModelVariant::UnconstrainedH5, ModelVariant::UnconstrainedH3, ModelVariant::ConstrainedH5,
        ModelVariant::ConstrainedH3, ModelVariant::ModifiedConstrainedH5,
        ModelVariant::ModifiedConstrainedH3, ModelVariant::ConstrainedPlate,
        ModelVariant::ModifiedConstrainedPlate, ModelVariant::Koiter})
    if (s == variant_name(v)) return v;
  throw Error(ErrorCode::ConfigInvalid, "variant: unknown model variant \"" + s + "\"");
}

inline int parse_edges(const json& j, const std::string& field) {
  int mask = 0;
  if (!j.is_array()) throw Error(ErrorCode::ConfigInvalid, field + ": expected an array");
  for (const auto& e : j) {
    std::string s = e.get<std::string>();
    if (s == "x1min") mask |= EdgeX1Min;
    else if (s == "x1max") mask |= EdgeX1Max;
    else if (s == "x2min") mask |= EdgeX2Min;
    else if (s == "x2max") mask |= EdgeX2Max;
    else throw Error(ErrorCode::ConfigInvalid, field + ": unknown edge \"" + s + "\"");
  }
  return mask;
}

inline Vec3 parse_vec3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3)
    throw Error(ErrorCode::ConfigInvalid, field + ": expected 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

struct RunConfig {
  std::string command;
  std::optional<SurfaceParam> surface, deformation;
  ShellMaterial material;
  std::optional<ModelVariant> variant;
  int n1 = 9, n2 = 9;
  std::array<double, 4> domain = {0.0, 1.0, 0.0, 1.0};
  json optimizer, loads, dirichlet;  // minimize-only blocks, kept as parsed JSON
  std::string out_path = "report";
  std::string format = "csv";
  std::uint64_t seed = 0;
  json resolved;  // full config echoed into JSON reports
};

inline RunConfig parse_config(const json& j) {
  RunConfig c;
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config: expected a JSON object");
  if (!j.contains("command"))
    throw Error(ErrorCode::ConfigInvalid, "command: required");
  c.command = j.at("command").get<std::string>();
  if (j.contains("surface")) c.surface = parse_surface(j.at("surface"), "surface");
  if (j.contains("deformation")) c.deformation = parse_surface(j.at("deformation"), "deformation");
  if (j.contains("material")) c.material = parse_material(j.at("material"));
  if (j.contains("variant")) c.variant = parse_variant(j.at("variant"));
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("n1")) c.n1 = g.at("n1").get<int>();
    if (g.contains("n2")) c.n2 = g.at("n2").get<int>();
    if (c.n1 < 2 || c.n2 < 2) throw Error(ErrorCode::ConfigInvalid, "grid.n1/n2: must be >= 2");
    if (g.contains("domain")) {
      const auto& d = g.at("domain");
      if (!d.is_array() || d.size() != 4)
        throw Error(ErrorCode::ConfigInvalid, "grid.domain: expected [a1, b1, a2, b2]");
      for (int k = 0; k < 4; ++k) c.domain[k] = d[k].get<double>();
    }
  }
  if (j.contains("optimizer")) c.optimizer = j.at("optimizer");
  if (j.contains("loads")) c.loads = j.at("loads");
  if (j.contains("dirichlet")) c.dirichlet = j.at("dirichlet");
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (o.contains("path")) c.out_path = o.at("path").get<std::string>();
    if (o.contains("format")) {
      c.format = o.at("format").get<std::string>();
      if (c.format != "csv" && c.format != "json")
        throw Error(ErrorCode::ConfigInvalid, "output.format: expected \"csv\" or \"json\"");
    }
  }
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  c.resolved = j;
  return c;
}

// ---- report writing ---------------------------------------------------------

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Column-oriented table serialized as CSV or as a JSON array of records.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
  std::string csv() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
      os << "\n";
    }
    return os.str();
  }
  json records() const {
    json out = json::array();
    for (const auto& r : rows) {
      json rec = json::object();
      for (std::size_t k = 0; k < header.size() && k < r.size(); ++k) rec[header[k]] = r[k];
      out.push_back(rec);
    }
    return out;
  }
};

inline void write_report(const RunConfig& c, const Table& table, const json& summary) {
  std::ofstream os(c.out_path, std::ios::binary);
  if (!os) throw Error(ErrorCode::ConfigInvalid, "output.path: cannot open " + c.out_path);
  if (c.format == "csv") {
    os << table.csv();
  } else {
    json doc;
    doc["config"] = c.resolved;
    doc["summary"] = summary;
    doc["rows"] = table.records();
    os << doc.dump(2) << "\n";
  }
}

// ---- commands ---------------------------------------------------------------

namespace detail {

inline const SurfaceParam& need_surface(const RunConfig& c) {
  if (!c.surface) throw Error(ErrorCode::ConfigInvalid, "surface: required for this command");
  return *c.surface;
}
inline const SurfaceParam& need_deformation(const RunConfig& c) {
  if (!c.deformation)
    throw Error(ErrorCode::ConfigInvalid, "deformation: required for this command");
  return *c.deformation;
}

template <class Fn>
void for_grid(const RunConfig& c, Fn&& fn) {
  double dx = (c.domain[1] - c.domain[0]) / (c.n1 - 1);
  double dy = (c.domain[3] - c.domain[2]) / (c.n2 - 1);
  for (int i = 0; i < c.n1; ++i)
    for (int j = 0; j < c.n2; ++j) {
      double x1 = c.domain[0] + i * dx, x2 = c.domain[2] + j * dy;
      try {
        fn(x1, x2);
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " at point (" + fmt(x1) + ", " + fmt(x2) +
                                  ")");
      }
    }
}

inline void push_mat(std::vector<std::string>& row, const Mat3& m) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) row.push_back(fmt(m(r, c)));
}

inline void cmd_geometry(const RunConfig& c, Table& t, json& summary) {
  t.header = {"x1", "x2", "y1", "y2", "y3", "n1", "n2", "n3", "H", "K", "det_gradTheta"};
  const auto& s = need_surface(c);
  for_grid(c, [&](double x1, double x2) {
    auto jt = eval_jet(s, x1, x2);
    t.row({fmt(x1), fmt(x2), fmt(jt.y(0)), fmt(jt.y(1)), fmt(jt.y(2)), fmt(jt.n(0)), fmt(jt.n(1)),
           fmt(jt.n(2)), fmt(jt.H), fmt(jt.K), fmt(jt.gradTheta.determinant())});
  });
  summary["points"] = c.n1 * c.n2;
}

inline void cmd_identities(const RunConfig& c, Table& t, json& summary) {
  t.header = {"x1", "x2", "projector", "pullback", "cayley_hamilton", "weingarten", "third_form",
              "max_residual"};
  const auto& s = need_surface(c);
  double worst = 0.0;
  for_grid(c, [&](double x1, double x2) {
    auto r = check_structure_identities(eval_jet(s, x1, x2));
    worst = std::max(worst, r.max_residual);
    t.row({fmt(x1), fmt(x2), fmt(r.A_projector), fmt(r.B_pullback), fmt(r.cayley_hamilton),
           fmt(r.eq2_weingarten), fmt(r.eq2_third_form), fmt(r.max_residual)});
  });
  summary["max_residual"] = worst;
}

inline void cmd_strains(const RunConfig& c, Table& t, json& summary) {
  t.header = {"x1", "x2"};
  for (const char* name : {"Einf", "Kinf"})
    for (int r = 0; r < 3; ++r)
      for (int cc = 0; cc < 3; ++cc)
        t.header.push_back(std::string(name) + std::to_string(r + 1) + std::to_string(cc + 1));
  t.header.insert(t.header.end(), {"Ginf11", "Ginf12", "Ginf21", "Ginf22", "Rinf11", "Rinf12",
                                   "Rinf21", "Rinf22", "couple_discrepancy"});
  const auto& ref = need_surface(c);
  const auto& def = need_deformation(c);
  double worst = 0.0;
  for_grid(c, [&](double x1, double x2) {
    auto cs = constrained_state(ref, def, x1, x2);
    std::vector<std::string> row = {fmt(x1), fmt(x2)};
    push_mat(row, cs.Einf);
    push_mat(row, cs.Kinf);
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc) row.push_back(fmt(cs.Ginf(r, cc)));
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc) row.push_back(fmt(cs.Rinf(r, cc)));
    row.push_back(fmt(cs.couple_discrepancy));
    worst = std::max(worst, cs.couple_discrepancy);
    t.row(std::move(row));
  });
  summary["max_couple_discrepancy"] = worst;
}

inline void cmd_energy(const RunConfig& c, Table& t, json& summary) {
  if (!c.variant) throw Error(ErrorCode::ConfigInvalid, "variant: required for this command");
  t.header = {"x1", "x2", "membrane", "membrane_bending", "bending_curvature", "total"};
  const auto& ref = need_surface(c);
  const auto& def = need_deformation(c);
  ModelVariant v = *c.variant;
  std::vector<double> totals;  // nodal weighted densities, for the integral
  EnergyBreakdown sums;
  int count = 0;
  for_grid(c, [&](double x1, double x2) {
    EnergyBreakdown e;
    if (v == ModelVariant::Koiter) {
      e.total = e.membrane = density_koiter(eval_jet(ref, x1, x2), eval_jet(def, x1, x2),
                                            c.material);
      e.jacobian = 0.0;
    } else if (v == ModelVariant::UnconstrainedH5 || v == ModelVariant::UnconstrainedH3) {
      // evaluated along the constrained rotation field
      auto rj = eval_jet(ref, x1, x2);
      auto dj = eval_jet(def, x1, x2);
      auto parts = constrained_rotation_partials(ref, def, x1, x2);
      StrainState st = unconstrained_strains(rj, dj, constrained_rotation(rj, dj), parts.dQ1,
                                             parts.dQ2, &c.material);
      auto order = v == ModelVariant::UnconstrainedH5 ? EnergyOrder::H5 : EnergyOrder::H3;
      e = density_unconstrained(st, rj, c.material, order, true);
    } else {
      auto rj = eval_jet(ref, x1, x2);
      auto dj = eval_jet(def, x1, x2);
      auto cs = constrained_state(ref, def, x1, x2);
      e = density_constrained(cs, rj, dj, c.material, v, true);
    }
    t.row({fmt(x1), fmt(x2), fmt(e.membrane), fmt(e.membrane_bending), fmt(e.bending_curvature),
           fmt(e.total)});
    sums.membrane += e.membrane;
    sums.membrane_bending += e.membrane_bending;
    sums.bending_curvature += e.bending_curvature;
    sums.total += e.total;
    ++count;
  });
  // node-average quadrature over the parameter rectangle
  double area = (c.domain[1] - c.domain[0]) * (c.domain[3] - c.domain[2]);
  summary["integrated"] = {{"membrane", sums.membrane / count * area},
                           {"membrane_bending", sums.membrane_bending / count * area},
                           {"bending_curvature", sums.bending_curvature / count * area},
                           {"total", sums.total / count * area}};
  t.header.push_back("integrated_total");
  if (!t.rows.empty()) t.rows.front().push_back(fmt(sums.total / count * area));
}

inline void cmd_coercivity(const RunConfig& c, Table& t, json& summary) {
  if (!c.variant) throw Error(ErrorCode::ConfigInvalid, "variant: required for this command");
  const auto& s = need_surface(c);
  auto rep = thickness_admissible(c.material, s, *c.variant, c.n1, c.n2);
  summary["curvature_bound"] = rep.curvature_bound;
  summary["injectivity_ok"] = rep.injectivity_ok;
  summary["h5_ok"] = rep.h5_ok;
  summary["h3_condition_i"] = rep.h3_condition_i;
  summary["h3_condition_ii"] = rep.h3_condition_ii;
  summary["alpha_used"] = rep.alpha_used;
  summary["a_used"] = rep.a_used;
  summary["constants"] = {{"c1", rep.constants.c1},
                          {"C1", rep.constants.C1},
                          {"c2", rep.constants.c2},
                          {"C2", rep.constants.C2}};
  t.header = {"sample", "lhs", "rhs", "slack"};
  double min_slack = std::numeric_limits<double>::infinity();
  if (rep.h5_ok) {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto jet = eval_jet(s, 0.5 * (c.domain[0] + c.domain[1]), 0.5 * (c.domain[2] + c.domain[3]));
    for (int k = 0; k < 1000; ++k) {
      StrainState st;
      for (int r = 0; r < 3; ++r)
        for (int cc = 0; cc < 3; ++cc) {
          st.E(r, cc) = gauss(rng);
          st.Kt(r, cc) = gauss(rng);
        }
      auto [lhs, rhs] = coercivity_bound_h5(st, jet, c.material);
      double slack = lhs - rhs;
      min_slack = std::min(min_slack, slack);
      t.row({std::to_string(k), fmt(lhs), fmt(rhs), fmt(slack)});
    }
    summary["min_slack"] = min_slack;
  }
}

inline void cmd_invariance(const RunConfig& c, Table& t, json& summary) {
  const auto& s = need_surface(c);
  std::vector<DeformationCase> cases = {
      DeformationCase::rigid(
          Eigen::AngleAxisd(0.7, Vec3(0.2, 1.0, -0.5).normalized()).toRotationMatrix(),
          Vec3(0.4, -0.9, 0.3)),
      DeformationCase::normal_offset(0.15),
      DeformationCase::radial_scale(1.25),
  };
  if (c.deformation) cases.push_back(DeformationCase::custom_case(*c.deformation, "custom"));
  std::vector<std::pair<double, double>> points;
  double dx = (c.domain[1] - c.domain[0]) / (c.n1 - 1);
  double dy = (c.domain[3] - c.domain[2]) / (c.n2 - 1);
  for (int i = 0; i < c.n1; ++i)
    for (int j = 0; j < c.n2; ++j)
      points.emplace_back(c.domain[0] + i * dx, c.domain[2] + j * dy);

  t.header = {"kind", "case", "requirement", "residual", "pass"};
  for (auto kind : {BendingKind::KoiterPulled, BendingKind::AcharyaTilde, BendingKind::AcharyaSym,
                    BendingKind::InfinityFlat}) {
    auto rep = invariance_suite(kind, s, cases, points);
    bool all = true;
    for (const auto& r : rep.cases) {
      if (r.ar1_applies) {
        t.row({bending_kind_name(kind), r.name, "rigid_invariance", fmt(r.tensor_norm),
               r.ar1_pass ? "1" : "0"});
        all = all && r.ar1_pass;
      }
      if (r.ar3_applies) {
        t.row({bending_kind_name(kind), r.name, "stretch_invariance", fmt(r.tensor_norm),
               r.ar3_pass ? "1" : "0"});
        all = all && r.ar3_pass;
      }
      t.row({bending_kind_name(kind), r.name, "plate_scaling_invariance",
             fmt(r.ar3_plate_residual), r.ar3_plate_pass ? "1" : "0"});
      all = all && r.ar3_plate_pass;
    }
    summary[bending_kind_name(kind)] = all;
  }
}

inline MinimizeProblem build_problem(const RunConfig& c) {
  MinimizeProblem p;
  p.domain = c.domain;
  p.n1 = c.n1;
  p.n2 = c.n2;
  p.reference = need_surface(c);
  if (!c.variant) throw Error(ErrorCode::ConfigInvalid, "variant: required for this command");
  p.variant = *c.variant;
  p.material = c.material;
  p.seed = c.seed;
  if (!c.dirichlet.is_null()) {
    const auto& d = c.dirichlet;
    if (d.contains("edges")) p.dirichlet_edges = parse_edges(d.at("edges"), "dirichlet.edges");
    if (d.contains("target")) {
      p.dirichlet_target = parse_surface(d.at("target"), "dirichlet.target");
      p.has_dirichlet_target = true;
    }
    if (d.contains("clamp_rotation")) p.clamp_rotation = d.at("clamp_rotation").get<bool>();
  }
  if (!c.loads.is_null()) {
    const auto& l = c.loads;
    if (l.contains("f")) p.load_f = parse_vec3(l.at("f"), "loads.f");
    if (l.contains("t")) p.load_t = parse_vec3(l.at("t"), "loads.t");
    if (l.contains("edges")) p.load_edges = parse_edges(l.at("edges"), "loads.edges");
  }
  if (!c.optimizer.is_null()) {
    const auto& o = c.optimizer;
    if (o.contains("max_iters")) p.max_iters = o.at("max_iters").get<int>();
    if (o.contains("grad_tol")) p.grad_tol = number_at(o.at("grad_tol"), "optimizer.grad_tol");
    if (o.contains("step_init")) p.step_init = number_at(o.at("step_init"), "optimizer.step_init");
  }
  if (c.deformation) {
    p.init_m = *c.deformation;  // initial field rides in the deformation block
    p.has_init_m = true;
  }
  return p;
}

inline void cmd_minimize(const RunConfig& c, Table& t, json& summary) {
  auto p = build_problem(c);
  auto sol = minimize(p);
  t.header = {"node", "x1", "x2", "m1", "m2", "m3", "qw", "qx", "qy", "qz"};
  double dx = (p.domain[1] - p.domain[0]) / (p.n1 - 1);
  double dy = (p.domain[3] - p.domain[2]) / (p.n2 - 1);
  for (int i = 0; i < p.n1; ++i)
    for (int j = 0; j < p.n2; ++j) {
      int k = i * p.n2 + j;
      Eigen::Vector4d q = sol.q.empty() ? Eigen::Vector4d(1, 0, 0, 0) : sol.q[k];
      t.row({std::to_string(k), fmt(p.domain[0] + i * dx), fmt(p.domain[2] + j * dy),
             fmt(sol.m[k](0)), fmt(sol.m[k](1)), fmt(sol.m[k](2)), fmt(q(0)), fmt(q(1)),
             fmt(q(2)), fmt(q(3))});
    }
  summary["objective"] = sol.objective;
  summary["loads_value"] = sol.loads_value;
  summary["energy"] = {{"membrane", sol.energy.membrane},
                       {"membrane_bending", sol.energy.membrane_bending},
                       {"bending_curvature", sol.energy.bending_curvature},
                       {"total", sol.energy.total}};
  summary["iterations"] = sol.iterations;
  summary["grad_norm"] = sol.grad_norm;
  summary["converged"] = sol.converged;
  summary["line_search_failed"] = sol.line_search_failed;
}

}  // namespace detail

/// Executes one parsed run; returns the process exit status (0 ok, 1 config
/// error, 2 numerical failure) and writes diagnostics to `err`.
inline int run(const json& config, std::ostream& err,
               const std::string& out_override = std::string(),
               std::optional<std::uint64_t> seed_override = std::nullopt) {
  try {
    RunConfig c = parse_config(config);
    if (!out_override.empty()) {
      c.out_path = out_override;
      c.resolved["output"]["path"] = out_override;
    }
    if (seed_override) {
      c.seed = *seed_override;
      c.resolved["seed"] = *seed_override;
    }
    Table t;
    json summary = json::object();
    if (c.command == "geometry") detail::cmd_geometry(c, t, summary);
    else if (c.command == "identities") detail::cmd_identities(c, t, summary);
    else if (c.command == "strains") detail::cmd_strains(c, t, summary);
    else if (c.command == "energy") detail::cmd_energy(c, t, summary);
    else if (c.command == "coercivity") detail::cmd_coercivity(c, t, summary);
    else if (c.command == "invariance") detail::cmd_invariance(c, t, summary);
    else if (c.command == "minimize") detail::cmd_minimize(c, t, summary);
    else throw Error(ErrorCode::ConfigInvalid, "command: unknown command \"" + c.command + "\"");
    write_report(c, t, summary);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigInvalid ? 1 : 2;
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace shellkit::cli
