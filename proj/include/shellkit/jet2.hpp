#pragma once

// Bivariate truncated Taylor scalar (total degree <= 4). Internal engine for
// surface jets: catalog surfaces are evaluated in this arithmetic so that
// first and second derivatives of composite surfaces (normal offsets, affine
// images, scalings) come out exact to rounding, with enough degree headroom
// for one nested normal field.

#include <array>
#include <cmath>

#include "shellkit/core.hpp"

namespace shellkit {

class Jet2 {
 public:
  static constexpr int Deg = 4;
  // c[i][j] = (1/(i! j!)) d^{i+j} f / dx^i dy^j, i + j <= Deg.
  std::array<std::array<double, Deg + 1>, Deg + 1> c{};

  Jet2() = default;
  explicit Jet2(double v) { c[0][0] = v; }

  static Jet2 var_x(double v) {
    Jet2 j(v);
    j.c[1][0] = 1.0;
    return j;
  }
  static Jet2 var_y(double v) {
    Jet2 j(v);
    j.c[0][1] = 1.0;
    return j;
  }

  double value() const { return c[0][0]; }
  double dx() const { return c[1][0]; }
  double dy() const { return c[0][1]; }
  double dxx() const { return 2.0 * c[2][0]; }
  double dxy() const { return c[1][1]; }
  double dyy() const { return 2.0 * c[0][2]; }

  Jet2 operator-() const {
    Jet2 r;
    for (int i = 0; i <= Deg; ++i)
      for (int j = 0; i + j <= Deg; ++j) r.c[i][j] = -c[i][j];
    return r;
  }
  Jet2& operator+=(const Jet2& o) {
    for (int i = 0; i <= Deg; ++i)
      for (int j = 0; i + j <= Deg; ++j) c[i][j] += o.c[i][j];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    for (int i = 0; i <= Deg; ++i)
      for (int j = 0; i + j <= Deg; ++j) c[i][j] -= o.c[i][j];
    return *this;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, double s) {
    a.c[0][0] += s;
    return a;
  }
  friend Jet2 operator+(double s, Jet2 a) {
    a.c[0][0] += s;
    return a;
  }
  friend Jet2 operator-(Jet2 a, double s) {
    a.c[0][0] -= s;
    return a;
  }
  friend Jet2 operator-(double s, const Jet2& a) { return -a + s; }
  friend Jet2 operator*(const Jet2& a, double s) {
    Jet2 r;
    for (int i = 0; i <= Deg; ++i)
      for (int j = 0; i + j <= Deg; ++j) r.c[i][j] = a.c[i][j] * s;
    return r;
  }
  friend Jet2 operator*(double s, const Jet2& a) { return a * s; }
  friend Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    for (int i = 0; i <= Deg; ++i)
      for (int j = 0; i + j <= Deg; ++j) {
        double aij = a.c[i][j];
        if (aij == 0.0) continue;
        for (int k = 0; i + k <= Deg; ++k)
          for (int l = 0; i + k + j + l <= Deg; ++l) r.c[i + k][j + l] += aij * b.c[k][l];
      }
    return r;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }

  /// Compose a univariate series sum_k a[k] (g - g0)^k with this jet.
  static Jet2 compose(const std::array<double, Deg + 1>& a, const Jet2& g) {
    Jet2 d = g;
    d.c[0][0] = 0.0;  // nilpotent part
    // Horner evaluation in the truncated algebra.
    Jet2 r(a[Deg]);
    for (int k = Deg - 1; k >= 0; --k) r = r * d + a[k];
    return r;
  }
};

inline Jet2 sqrt(const Jet2& g) {
  double v = g.value(), s = std::sqrt(v);
  std::array<double, Jet2::Deg + 1> a{s, 0.5 / s, -1.0 / (8.0 * s * v), 1.0 / (16.0 * s * v * v),
                                      -5.0 / (128.0 * s * v * v * v)};
  return Jet2::compose(a, g);
}

inline Jet2 inv(const Jet2& g) {
  double v = g.value();
  std::array<double, Jet2::Deg + 1> a{1.0 / v, -1.0 / (v * v), 1.0 / (v * v * v),
                                      -1.0 / (v * v * v * v), 1.0 / (v * v * v * v * v)};
  return Jet2::compose(a, g);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }

inline Jet2 sin(const Jet2& g) {
  double s = std::sin(g.value()), c = std::cos(g.value());
  std::array<double, Jet2::Deg + 1> a{s, c, -s / 2.0, -c / 6.0, s / 24.0};
  return Jet2::compose(a, g);
}

inline Jet2 cos(const Jet2& g) {
  double s = std::sin(g.value()), c = std::cos(g.value());
  std::array<double, Jet2::Deg + 1> a{c, -s, -c / 2.0, s / 6.0, c / 24.0};
  return Jet2::compose(a, g);
}

struct Jet2Vec3 {
  std::array<Jet2, 3> v{};
  Jet2& operator()(int i) { return v[static_cast<size_t>(i)]; }
  const Jet2& operator()(int i) const { return v[static_cast<size_t>(i)]; }
};

inline Jet2Vec3 jcross(const Jet2Vec3& a, const Jet2Vec3& b) {
  Jet2Vec3 r;
  r(0) = a(1) * b(2) - a(2) * b(1);
  r(1) = a(2) * b(0) - a(0) * b(2);
  r(2) = a(0) * b(1) - a(1) * b(0);
  return r;
}

inline Jet2 jdot(const Jet2Vec3& a, const Jet2Vec3& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

}  // namespace shellkit
