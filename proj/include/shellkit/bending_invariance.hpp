#pragma once

#include <string>
#include <vector>

#include "shellkit/strain_measures.hpp"

namespace shellkit {

enum class BendingKind { KoiterPulled, AcharyaTilde, AcharyaSym, InfinityFlat };

inline const char* bending_kind_name(BendingKind k) {
  switch (k) {
    case BendingKind::KoiterPulled: return "KoiterPulled";
    case BendingKind::AcharyaTilde: return "AcharyaTilde";
    case BendingKind::AcharyaSym: return "AcharyaSym";
    case BendingKind::InfinityFlat: return "InfinityFlat";
  }
  return "?";
}

/// Deformations used by the invariance battery; each reduces to a
/// SurfaceParam construction applied to the reference.
struct DeformationCase {
  enum class Tag { Rigid, NormalOffset, RadialScale, PlanarScale, BiaxialCylinderStretch, Custom };
  Tag tag = Tag::Rigid;
  std::string name;
  Mat3 rot = Mat3::Identity();
  Vec3 shift = Vec3::Zero();
  double offset = 0.0;     // NormalOffset
  double factor = 1.0;     // RadialScale / PlanarScale
  double lam1 = 1.0, lam2 = 1.0;  // BiaxialCylinderStretch
  SurfaceParam custom;

  static DeformationCase rigid(const Mat3& q, const Vec3& b, std::string name = "rigid") {
    DeformationCase c;
    c.tag = Tag::Rigid;
    c.rot = q;
    c.shift = b;
    c.name = std::move(name);
    return c;
  }
  static DeformationCase normal_offset(double c0, std::string name = "normal_offset") {
    DeformationCase c;
    c.tag = Tag::NormalOffset;
    c.offset = c0;
    c.name = std::move(name);
    return c;
  }
  static DeformationCase radial_scale(double f, std::string name = "radial_scale") {
    DeformationCase c;
    c.tag = Tag::RadialScale;
    c.factor = f;
    c.name = std::move(name);
    return c;
  }
  static DeformationCase planar_scale(double f, std::string name = "planar_scale") {
    DeformationCase c;
    c.tag = Tag::PlanarScale;
    c.factor = f;
    c.name = std::move(name);
    return c;
  }
  static DeformationCase biaxial_cylinder(double l1, double l2,
                                          std::string name = "biaxial_cylinder") {
    DeformationCase c;
    c.tag = Tag::BiaxialCylinderStretch;
    c.lam1 = l1;
    c.lam2 = l2;
    c.name = std::move(name);
    return c;
  }
  static DeformationCase custom_case(SurfaceParam surf, std::string name = "custom") {
    DeformationCase c;
    c.tag = Tag::Custom;
    c.custom = std::move(surf);
    c.name = std::move(name);
    return c;
  }

  SurfaceParam apply(const SurfaceParam& ref) const {
    switch (tag) {
      case Tag::Rigid: return SurfaceParam::affine_image(ref, rot, shift);
      case Tag::NormalOffset: return SurfaceParam::normal_offset(ref, offset);
      case Tag::RadialScale: return SurfaceParam::radial_scale(ref, factor);
      case Tag::PlanarScale: return SurfaceParam::radial_scale(ref, factor);
      case Tag::BiaxialCylinderStretch: {
        Mat3 a = Mat3::Identity();
        a(0, 0) = a(1, 1) = lam1;
        a(2, 2) = lam2;
        return SurfaceParam::affine_image(ref, a, Vec3::Zero());
      }
      case Tag::Custom: return custom;
    }
    return ref;
  }
};

namespace detail {
inline Mat3 pull_flat(const SurfaceJet& ref, const Mat2& x) {
  return ref.gradThetaInv.transpose() * lift_flat(x) * ref.gradThetaInv;
}
}  // namespace detail

/// Bending strain tensor of the constrained model as a 2x2 block (its flat
/// lift is InfinityFlat below).
inline Mat2 infinity_bending_block(const SurfaceJet& ref, const SurfaceJet& def) {
  Mat3 q = constrained_rotation(ref, def);
  Mat32 q_grady0 = (q * detail::grad3(ref.d1, ref.d2)).leftCols<2>();
  return -q_grady0.transpose() * def.gradN - ref.II;
}

/// One of the catalogued nonlinear bending tensors as a 3x3 matrix.
inline Mat3 bending_tensor(BendingKind kind, const SurfaceJet& ref, const SurfaceJet& def) {
  switch (kind) {
    case BendingKind::KoiterPulled:
      return detail::pull_flat(ref, Mat2(def.II - ref.II));
    case BendingKind::AcharyaTilde: {
      Mat3 pulled_i = detail::pull_flat(ref, def.I);
      return -detail::pull_flat(ref, def.II) + psd_sqrt(pulled_i) * detail::pull_flat(ref, ref.II);
    }
    case BendingKind::AcharyaSym:
      return sym(bending_tensor(BendingKind::AcharyaTilde, ref, def));
    case BendingKind::InfinityFlat:
      return lift_flat(infinity_bending_block(ref, def));
  }
  return Mat3::Zero();
}

/// Whether the deformation is a pure elastic stretch (symmetric positive
/// definite transfer map with positive tangential orientation).
inline std::pair<bool, Mat3> pure_stretch_check(const SurfaceJet& ref, const SurfaceJet& def) {
  Mat3 ue = transfer_map(ref, def);
  double tol = 1e-8 * (1.0 + ue.norm());
  bool ok = skew(ue).norm() <= tol;
  if (ok) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(sym(ue));
    ok = es.eigenvalues().minCoeff() > tol;
  }
  if (ok) {
    // orientation: determinant of the tangential 2x2 block in an orthonormal frame
    Vec3 t1 = ref.d1.normalized();
    Vec3 t2 = (ref.d2 - ref.d2.dot(t1) * t1).normalized();
    Mat2 block;
    block << t1.dot(ue * t1), t1.dot(ue * t2), t2.dot(ue * t1), t2.dot(ue * t2);
    ok = block.determinant() > 0.0;
  }
  return {ok, ue};
}

/// Whether the deformation leaves the unit normal unaltered at this point.
inline bool normal_preserved_check(const SurfaceJet& ref, const SurfaceJet& def,
                                   double tol = 1e-9) {
  return (def.n - ref.n).norm() <= tol;
}

struct BendingCaseResult {
  std::string name;
  double tensor_norm = 0.0;  // max over sample points
  bool ar1_applies = false, ar3_applies = false;
  bool ar1_pass = true, ar3_pass = true, ar3_plate_pass = true;
  double ar3_plate_residual = 0.0;  // max |T(alpha m) - T(m)| over alpha
};

struct InvarianceReport {
  BendingKind kind;
  std::vector<BendingCaseResult> cases;
  bool ar1_all = true, ar3_all = true, ar3_plate_all = true;
};

/// Evaluates AR1 / AR3* / AR3*_plate for one bending tensor over a catalog of
/// deformations and sample points.
inline InvarianceReport invariance_suite(BendingKind kind, const SurfaceParam& ref,
                                         const std::vector<DeformationCase>& cases,
                                         const std::vector<std::pair<double, double>>& points,
                                         double tol = 1e-9) {
  InvarianceReport rep;
  rep.kind = kind;
  for (const auto& c : cases) {
    BendingCaseResult res;
    res.name = c.name;
    res.ar1_applies = c.tag == DeformationCase::Tag::Rigid;
    auto def = c.apply(ref);
    bool all_stretch_normal = true;
    bool planar_ref = true;
    for (auto [x1, x2] : points) {
      auto rj = eval_jet(ref, x1, x2);
      auto dj = eval_jet(def, x1, x2);
      double norm = bending_tensor(kind, rj, dj).norm();
      res.tensor_norm = std::max(res.tensor_norm, norm);
      auto [stretch, ue] = pure_stretch_check(rj, dj);
      if (!(stretch && normal_preserved_check(rj, dj, 1e-8))) all_stretch_normal = false;
      if (rj.B.norm() > 1e-12) planar_ref = false;
    }
    res.ar3_applies = all_stretch_normal;
    if (res.ar1_applies) res.ar1_pass = res.tensor_norm <= tol;
    if (res.ar3_applies) res.ar3_pass = res.tensor_norm <= tol;
    if (planar_ref) {
      // scaling invariance m -> alpha m for the planar reference
      for (double alpha : {0.5, 2.0, 10.0}) {
        auto scaled = SurfaceParam::radial_scale(def, alpha);
        for (auto [x1, x2] : points) {
          auto rj = eval_jet(ref, x1, x2);
          double d = (bending_tensor(kind, rj, eval_jet(scaled, x1, x2)) -
                      bending_tensor(kind, rj, eval_jet(def, x1, x2)))
                         .norm();
          res.ar3_plate_residual = std::max(res.ar3_plate_residual, d);
        }
      }
      res.ar3_plate_pass = res.ar3_plate_residual <= tol;
    }
    rep.ar1_all = rep.ar1_all && res.ar1_pass;
    rep.ar3_all = rep.ar3_all && res.ar3_pass;
    rep.ar3_plate_all = rep.ar3_plate_all && res.ar3_plate_pass;
    rep.cases.push_back(std::move(res));
  }
  return rep;
}

/// Residual of the identity linking the Acharya tensor to the constrained
/// bending strain tensor.
inline double acharya_relation_residual(const SurfaceJet& ref, const SurfaceJet& def) {
  Mat3 tilde = bending_tensor(BendingKind::AcharyaTilde, ref, def);
  Mat3 root = psd_sqrt(detail::pull_flat(ref, def.I));
  Mat3 pulled_rinf = detail::pull_flat(ref, infinity_bending_block(ref, def));
  return (tilde + root * pulled_rinf).norm();
}

}  // namespace shellkit
