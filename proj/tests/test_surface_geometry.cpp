#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "shellkit/surface_geometry.hpp"

using namespace shellkit;

namespace {
// central finite-difference second derivatives from the first-derivative fields
Vec3 fd_d11(const SurfaceParam& s, double x1, double x2, double h) {
  return (eval_jet(s, x1 + h, x2).d1 - eval_jet(s, x1 - h, x2).d1) / (2.0 * h);
}
Vec3 fd_d12(const SurfaceParam& s, double x1, double x2, double h) {
  return (eval_jet(s, x1, x2 + h).d1 - eval_jet(s, x1, x2 - h).d1) / (2.0 * h);
}
}  // namespace

TEST_CASE("plane jet is flat") {
  auto j = eval_jet(SurfaceParam::plane(), 0.3, -0.2);
  CHECK((j.I - Mat2::Identity()).norm() == 0.0);
  CHECK(j.II.norm() == 0.0);
  CHECK(j.H == 0.0);
  CHECK(j.K == 0.0);
  CHECK(j.B.norm() == 0.0);
  CHECK(check_structure_identities(j).max_residual <= 1e-15);
}

TEST_CASE("unit cylinder curvatures") {
  auto j = eval_jet(SurfaceParam::cylinder(1.0), 0.7, 0.1);
  CHECK(std::abs(j.K) <= 1e-14);
  Vec2 k = principal_curvatures(j);
  CHECK(std::abs(std::min(k(0), k(1)) + 1.0) <= 1e-12);  // -1 with outward normal
  CHECK(std::abs(std::max(k(0), k(1))) <= 1e-12);
  CHECK(std::abs(2.0 * j.H + 1.0) <= 1e-12);
}

TEST_CASE("unit sphere curvatures, inward normal convention") {
  auto j = eval_jet(SurfaceParam::sphere(1.0), 0.4, 0.9);
  CHECK(std::abs(j.K - 1.0) <= 1e-12);
  CHECK(std::abs(j.H - 1.0) <= 1e-12);
  CHECK(std::abs(det_through_thickness(j, 1.0)) <= 1e-12);       // (1-x3)^2 at x3=1
  CHECK(std::abs(det_through_thickness(j, 0.95) - 0.0025) <= 1e-12);
  CHECK(det_through_thickness(SurfaceJet(j), -0.95) > 0.0);
}

TEST_CASE("structure identities across the catalog") {
  std::vector<SurfaceParam> catalog = {
      SurfaceParam::plane(), SurfaceParam::cylinder(1.0), SurfaceParam::sphere(1.0),
      SurfaceParam::torus(2.0, 0.5),
      SurfaceParam::graph({{2, 0, 1.0}, {0, 2, -1.0}})};  // x1^2 - x2^2
  for (const auto& s : catalog) {
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < 5; ++k) {
        double x1 = s.domain[0] + (s.domain[1] - s.domain[0]) * i / 4.0;
        double x2 = s.domain[2] + (s.domain[3] - s.domain[2]) * k / 4.0;
        auto j = eval_jet(s, x1, x2);
        CHECK(check_structure_identities(j).max_residual <= 1e-11);
      }
  }
}

TEST_CASE("composite surfaces: exact derivative propagation") {
  SurfaceParam base = SurfaceParam::sphere(1.0);
  Mat3 rot = Eigen::AngleAxisd(0.8, Vec3(1, 2, 2).normalized()).toRotationMatrix();
  std::vector<SurfaceParam> comps = {
      SurfaceParam::affine_image(base, rot, Vec3(0.1, -0.2, 0.3)),
      SurfaceParam::normal_offset(base, 0.2),
      SurfaceParam::radial_scale(base, 1.5),
      SurfaceParam::normal_offset(SurfaceParam::radial_scale(base, 1.3), -0.1)};
  for (const auto& s : comps) {
    double x1 = 0.25, x2 = 0.8;
    auto j = eval_jet(s, x1, x2);
    CHECK(check_structure_identities(j).max_residual <= 1e-10);
    // FD agreement of second derivatives (1e-7 relative)
    double h = 1e-5;
    double scale = 1.0 + j.y.norm() + j.d11.norm() + j.d12.norm() + j.d22.norm();
    CHECK((fd_d11(s, x1, x2, h) - j.d11).norm() / scale <= 1e-6);
    CHECK((fd_d12(s, x1, x2, h) - j.d12).norm() / scale <= 1e-6);
  }
}

TEST_CASE("normal offset of sphere shifts toward center") {
  // inward normal: offset by c moves radius r -> r - c
  auto j = eval_jet(SurfaceParam::normal_offset(SurfaceParam::sphere(1.0), 0.25), 0.1, 0.5);
  CHECK(std::abs(j.y.norm() - 0.75) <= 1e-12);
  CHECK(std::abs(j.K - 1.0 / (0.75 * 0.75)) <= 1e-10);
}

TEST_CASE("finite-difference second derivatives agree with analytic jets") {
  SurfaceParam s = SurfaceParam::torus(2.0, 0.5);
  double x1 = 0.6, x2 = 0.9, h = 1e-5;
  auto j = eval_jet(s, x1, x2);
  double scale = 1.0 + j.y.norm() + j.d11.norm() + j.d12.norm() + j.d22.norm();
  CHECK((fd_d11(s, x1, x2, h) - j.d11).norm() / scale <= 1e-7);
  CHECK((fd_d12(s, x1, x2, h) - j.d12).norm() / scale <= 1e-7);
}

TEST_CASE("polar of gradTheta maps e3 to the normal") {
  for (const auto& s : {SurfaceParam::sphere(1.0), SurfaceParam::torus(2.0, 0.5),
                        SurfaceParam::graph({{2, 0, 1.0}, {1, 1, 0.5}})}) {
    auto j = eval_jet(s, 0.4, 0.7);
    auto p = polar(j.gradTheta);
    CHECK((p.q * Vec3::UnitZ() - j.n).norm() <= 1e-12);
  }
}

TEST_CASE("principal curvature bounds on closed-form surfaces") {
  CHECK(principal_curvature_bound(SurfaceParam::plane()) == 0.0);
  CHECK(std::abs(principal_curvature_bound(SurfaceParam::sphere(2.0)) - 0.5) <= 1e-12);
  CHECK(std::abs(principal_curvature_bound(SurfaceParam::cylinder(2.0)) - 0.5) <= 1e-12);
}

TEST_CASE("degenerate parametrization detected") {
  // graph with enormous gradient is fine; degenerate case via affine rank drop
  Mat3 rankdrop = Mat3::Zero();
  rankdrop(0, 0) = 1.0;
  auto s = SurfaceParam::affine_image(SurfaceParam::plane(), rankdrop, Vec3::Zero());
  CHECK_THROWS_AS(eval_jet(s, 0.1, 0.2), Error);
}

TEST_CASE("graph surface second fundamental form oracle") {
  // z = x1^2 - x2^2 at origin: II = diag(2,-2)/1, H=0, K=-4
  auto j = eval_jet(SurfaceParam::graph({{2, 0, 1.0}, {0, 2, -1.0}}), 0.0, 0.0);
  CHECK(std::abs(j.II(0, 0) - 2.0) <= 1e-14);
  CHECK(std::abs(j.II(1, 1) + 2.0) <= 1e-14);
  CHECK(std::abs(j.H) <= 1e-14);
  CHECK(std::abs(j.K + 4.0) <= 1e-13);
}
