#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "shellkit/constraints_coercivity.hpp"

using namespace shellkit;

namespace {

std::mt19937 rng(777u);

StrainState random_state(const SurfaceJet& ref, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Mat3 x = Mat3::Zero(), y = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) {
      x(i, j) = d(rng);
      y(i, j) = d(rng);
    }
  return {Mat3(x * ref.gradThetaInv), Mat3(y * ref.gradThetaInv)};
}

Mat3 random_sym3() {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("form eigenvalues against hand-diagonalized cases") {
  ShellMaterial mat;
  mat.mu = 1.0;
  mat.lambda = 1.0;
  mat.L_c = 1.0;
  mat.b1 = mat.b2 = mat.b3 = 1.0;
  auto ev = form_eigenvalues(mat);
  REQUIRE(ev.c1 == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(ev.C1 == Catch::Approx(2.0).margin(1e-12));  // 2 mu (2 lambda + mu)/(lambda + 2 mu)
  REQUIRE(ev.c2 == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(ev.C2 == Catch::Approx(3.0).margin(1e-12));  // trace direction 3 b3

  ShellMaterial iso = mat;
  iso.lambda = 0.0;
  auto evi = form_eigenvalues(iso);
  REQUIRE(evi.c1 == Catch::Approx(iso.mu).margin(1e-12));
  REQUIRE(evi.C1 == Catch::Approx(iso.mu).margin(1e-12));

  // envelope property on random symmetric matrices
  ShellMaterial gen;
  gen.mu = 1.7;
  gen.lambda = 0.4;
  gen.b1 = 0.9;
  gen.b2 = 1.3;
  gen.b3 = 0.5;
  gen.L_c = 0.8;
  auto evg = form_eigenvalues(gen);
  double tc = gen.trace_coeff();
  double seen_lo = 1e300, seen_hi = -1e300;
  for (int k = 0; k < 1000; ++k) {
    Mat3 s = random_sym3();
    double w = gen.mu * s.squaredNorm() + tc * s.trace() * s.trace();
    double ratio = w / s.squaredNorm();
    REQUIRE(ratio >= evg.c1 - 1e-10);
    REQUIRE(ratio <= evg.C1 + 1e-10);
    seen_lo = std::min(seen_lo, ratio);
    seen_hi = std::max(seen_hi, ratio);
  }
  // extremes attained at the eigen-directions: identity maximizes, deviators minimize
  Mat3 id = Mat3::Identity();
  REQUIRE(gen.mu * id.squaredNorm() + tc * 9.0 == Catch::Approx(evg.C1 * 3.0).margin(1e-10));
  Mat3 dev = Mat3::Zero();
  dev(0, 0) = 1.0;
  dev(1, 1) = -1.0;
  REQUIRE(gen.mu * dev.squaredNorm() == Catch::Approx(evg.c1 * 2.0).margin(1e-10));
}

TEST_CASE("thickness admissibility thresholds") {
  ShellMaterial mat;
  auto sphere = SurfaceParam::sphere(1.0);

  mat.h = 0.9;
  auto rep = thickness_admissible(mat, sphere, ModelVariant::ConstrainedH5);
  REQUIRE(rep.h5_ok);
  REQUIRE(rep.injectivity_ok);
  mat.h = 1.0;
  rep = thickness_admissible(mat, sphere, ModelVariant::ConstrainedH5);
  REQUIRE_FALSE(rep.h5_ok);
  REQUIRE(rep.injectivity_ok);
  mat.h = 2.1;
  rep = thickness_admissible(mat, sphere, ModelVariant::ConstrainedH5);
  REQUIRE_FALSE(rep.injectivity_ok);

  // plate passes everything for any h
  mat.h = 50.0;
  auto flat = thickness_admissible(mat, SurfaceParam::plane(), ModelVariant::ConstrainedH3);
  REQUIRE(flat.injectivity_ok);
  REQUIRE(flat.h5_ok);
  REQUIRE(flat.h3_condition_i);
  REQUIRE(flat.h3_condition_ii);

  // h5 implies injectivity on an h-sweep, and flags are monotone in h
  bool prev_inj = false, prev_h5 = false, prev_i = false, prev_ii = false;
  for (double h = 2.5; h > 0.01; h *= 0.8) {
    mat.h = h;
    auto r = thickness_admissible(mat, sphere, ModelVariant::ConstrainedH3);
    if (r.h5_ok) REQUIRE(r.injectivity_ok);
    REQUIRE((!prev_inj || r.injectivity_ok));
    REQUIRE((!prev_h5 || r.h5_ok));
    REQUIRE((!prev_i || r.h3_condition_i));
    REQUIRE((!prev_ii || r.h3_condition_ii));
    prev_inj = r.injectivity_ok;
    prev_h5 = r.h5_ok;
    prev_i = r.h3_condition_i;
    prev_ii = r.h3_condition_ii;
  }
}

TEST_CASE("constrained admissibility report is independent of mu_c") {
  auto sphere = SurfaceParam::sphere(1.0);
  ShellMaterial base;
  base.h = 0.4;
  auto ref = thickness_admissible(base, sphere, ModelVariant::ConstrainedH5);
  for (double mu_c : {0.1, 1.0, 10.0, std::numeric_limits<double>::infinity()}) {
    ShellMaterial m = base;
    m.mu_c = mu_c;
    auto r = thickness_admissible(m, sphere, ModelVariant::ConstrainedH5);
    REQUIRE(r.h5_ok == ref.h5_ok);
    REQUIRE(r.h3_condition_i == ref.h3_condition_i);
    REQUIRE(r.h3_condition_ii == ref.h3_condition_ii);
    REQUIRE(r.alpha_used == Catch::Approx(ref.alpha_used));
    REQUIRE(r.a_used == Catch::Approx(ref.a_used));
  }
  // recorded alpha satisfies both inequalities of condition i
  ShellMaterial m = base;
  auto r = thickness_admissible(m, sphere, ModelVariant::ConstrainedH5);
  REQUIRE(r.h3_condition_i);
  REQUIRE(r.curvature_bound < r.alpha_used);
  double bound = (5.0 - 2.0 * std::sqrt(6.0)) *
                 std::pow(r.alpha_used * r.alpha_used - 12.0, 2) /
                 (4.0 * r.alpha_used * r.alpha_used) * r.constants.c2 / r.constants.C1;
  REQUIRE(m.h * m.h < bound);
}

TEST_CASE("full-order coercivity estimate") {
  ShellMaterial mat;
  mat.h = 0.5;
  mat.mu = mat.lambda = mat.mu_c = mat.L_c = 1.0;
  mat.b1 = mat.b2 = mat.b3 = 1.0;
  auto sphere = SurfaceParam::sphere(1.0);
  auto jet = eval_jet(sphere, 0.2, 0.7);

  auto [l0, r0] = coercivity_bound_h5(StrainState{}, jet, mat);
  REQUIRE(l0 == 0.0);
  REQUIRE(r0 == 0.0);

  double min_slack = 1e300;
  for (int k = 0; k < 2000; ++k) {
    auto st = random_state(jet, 2.0);
    auto [lhs, rhs] = coercivity_bound_h5(st, jet, mat);
    min_slack = std::min(min_slack, lhs - rhs);
    REQUIRE(lhs - rhs >= -1e-12 * (1.0 + lhs));
  }
  REQUIRE(min_slack < 1e300);

  ShellMaterial thick = mat;
  thick.h = 1.0;
  try {
    coercivity_bound_h5(StrainState{}, jet, thick);
    FAIL("expected NotAdmissible");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NotAdmissible);
  }
}

TEST_CASE("symmetry residual triple") {
  auto ref = SurfaceParam::sphere(1.0);
  auto rj = eval_jet(ref, 0.1, 0.6);
  auto cs0 = constrained_state(ref, ref, 0.1, 0.6);
  auto r = symmetry_residuals(cs0, rj);
  REQUIRE(r.r0 < 1e-12);
  REQUIRE(r.r1 < 1e-10);
  REQUIRE(r.r2 < 1e-10);

  // plates always give a symmetric stretch part
  auto plane = SurfaceParam::plane();
  auto bump = SurfaceParam::graph({{2, 0, 0.2}, {1, 1, 0.3}, {0, 2, -0.25}, {2, 1, 0.1}});
  auto rp = symmetry_residuals(constrained_state(plane, bump, 0.2, 0.1),
                               eval_jet(plane, 0.2, 0.1));
  REQUIRE(rp.r0 < 1e-10);

  // generic curved deformation of a sphere is not admissible
  auto rs = symmetry_residuals(constrained_state(ref, bump, 0.2, 0.8), rj);
  REQUIRE(rs.r1 > 1e-6);
}

TEST_CASE("constructive h3 coercivity constant") {
  ShellMaterial mat;
  mat.h = 0.1;
  mat.mu = 1.0;
  mat.lambda = 1.0;
  mat.mu_c = 1.0;

  // plate: strictly positive constant
  std::vector<SurfaceJet> flat{eval_jet(SurfaceParam::plane(), 0.0, 0.0)};
  auto a_flat = coercivity_constant_h3(mat, flat, true);
  REQUIRE(a_flat.has_value());
  REQUIRE(*a_flat > 0.0);

  // unit sphere with huge thickness: infeasible
  std::vector<SurfaceJet> sphere_jets;
  auto sphere = SurfaceParam::sphere(1.0);
  for (double x1 : {-0.4, 0.0, 0.4})
    for (double x2 : {0.3, 0.7, 1.1}) sphere_jets.push_back(eval_jet(sphere, x1, x2));
  ShellMaterial thick = mat;
  thick.h = 4.0;
  REQUIRE_FALSE(coercivity_constant_h3(thick, sphere_jets, false).has_value());

  // Monte-Carlo validation of the returned constant on the sphere
  auto a1 = coercivity_constant_h3(mat, sphere_jets, false);
  REQUIRE(a1.has_value());
  REQUIRE(*a1 > 0.0);
  for (int k = 0; k < 10000; ++k) {
    const auto& jet = sphere_jets[k % sphere_jets.size()];
    auto st = random_state(jet, 1.5);
    double w = density_unconstrained(st, jet, mat, EnergyOrder::H3).total;
    double bound = *a1 * (st.E.squaredNorm() + st.Kt.squaredNorm());
    REQUIRE(w - bound >= -1e-12 * (1.0 + w));
  }
}
