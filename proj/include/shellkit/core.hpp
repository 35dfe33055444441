#pragma once

#include <Eigen/Dense>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace shellkit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using RowVec2 = Eigen::RowVector2d;

enum class ErrorCode {
  NonSkewInput,
  NotSpd,
  Degenerate,
  DegenerateParametrization,
  NonSymmetricInput,
  InfiniteEnergy,
  ShearNotZero,
  NotAdmissible,
  NonFiniteObjective,
  LineSearchFailed,
  ConfigInvalid,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonSkewInput: return "NonSkewInput";
    case ErrorCode::NotSpd: return "NotSpd";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DegenerateParametrization: return "DegenerateParametrization";
    case ErrorCode::NonSymmetricInput: return "NonSymmetricInput";
    case ErrorCode::InfiniteEnergy: return "InfiniteEnergy";
    case ErrorCode::ShearNotZero: return "ShearNotZero";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::LineSearchFailed: return "LineSearchFailed";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

template <typename M>
inline M sym(const M& x) {
  return 0.5 * (x + x.transpose());
}
template <typename M>
inline M skew(const M& x) {
  return 0.5 * (x - x.transpose());
}

inline double inner(const Mat3& a, const Mat3& b) { return (a.transpose() * b).trace(); }
inline double inner(const Mat2& a, const Mat2& b) { return (a.transpose() * b).trace(); }

/// Worker count: SHELLKIT_THREADS caps it, default hardware parallelism.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SHELLKIT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < hw) return static_cast<unsigned>(v);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return hw;
}

}  // namespace shellkit
