#pragma once

// Reference computations written independently of the library code paths
// they check: component formulas by hand, closed forms, brute-force grids.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

namespace oracle {

using Vec4 = Eigen::Vector4d;
using Bi = std::array<double, 6>;  // e12 e13 e14 e23 e24 e34

inline constexpr double kPi = std::numbers::pi;

inline Bi wedge(const Vec4& a, const Vec4& b) {
  return {a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[0] * b[3] - a[3] * b[0],
          a[1] * b[2] - a[2] * b[1], a[1] * b[3] - a[3] * b[1], a[2] * b[3] - a[3] * b[2]};
}

inline double norm(const Bi& w) {
  double s = 0;
  for (double c : w) s += c * c;
  return std::sqrt(s);
}

inline double dot(const Bi& a, const Bi& b) {
  double s = 0;
  for (int i = 0; i < 6; ++i) s += a[i] * b[i];
  return s;
}

// Coefficient of e1234 in xi ^ xi, summed over ordered pairs of disjoint
// basis 2-vectors with the sign of the resulting permutation.
inline double wedge_square(const Bi& w) {
  static constexpr int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  double s = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const int p[4] = {idx[a][0], idx[a][1], idx[b][0], idx[b][1]};
      bool distinct = true;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) distinct &= p[i] != p[j];
      if (!distinct) continue;
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
      s += (inversions % 2 ? -1.0 : 1.0) * w[a] * w[b];
    }
  return s;  // equals 2 * (c12 c34 - c13 c24 + c14 c23)
}

inline Bi star(const Bi& w) { return {w[5], -w[4], w[3], w[2], -w[1], w[0]}; }

// max over unit simple xi of |<eta1, xi>| + |<eta2, xi>|, via the split of
// w = eta1 +- eta2 into self-dual and anti-self-dual parts:
// max over unit simple xi of <w, xi> is (|w+| + |w-|) / sqrt 2.
inline double closed_form_sup(const Bi& eta1, const Bi& eta2) {
  double best = 0;
  for (double s : {1.0, -1.0}) {
    Bi w, sw, plus, minus;
    for (int i = 0; i < 6; ++i) w[i] = eta1[i] + s * eta2[i];
    sw = star(w);
    for (int i = 0; i < 6; ++i) {
      plus[i] = 0.5 * (w[i] + sw[i]);
      minus[i] = 0.5 * (w[i] - sw[i]);
    }
    best = std::max(best, (norm(plus) + norm(minus)) / std::sqrt(2.0));
  }
  return best;
}

// Bivector of span(e1, e2) and of span(cos a1 e1 + sin a1 e3, cos a2 e2 + sin a2 e4).
inline Bi canonical_second(double a1, double a2) {
  const double c1 = std::cos(a1), s1 = std::sin(a1), c2 = std::cos(a2), s2 = std::sin(a2);
  return {c1 * c2, 0.0, c1 * s2, -s1 * c2, 0.0, s1 * s2};
}
inline Bi e12() { return {1, 0, 0, 0, 0, 0}; }

// Projection sum for the canonical pair in closed form:
// |p1 xi| = |xi_12|, |p2 xi| = |<xi, eta2>|.
inline double canonical_projection_sum(double a1, double a2, const Bi& xi) {
  return std::abs(xi[0]) + std::abs(dot(xi, canonical_second(a1, a2)));
}

// Brute-force sup over a grid of unit simple 2-vectors. Every 2-plane
// contains a unit vector x orthogonal to e3, so x runs over a hemisphere of
// span(e1, e2, e4) and y over a hemisphere of x-perp. n nodes per angle.
inline double grid_sup(double a1, double a2, int n) {
  double best = 0;
  for (int i1 = 0; i1 < n; ++i1) {
    const double t1 = (kPi / 2) * i1 / (n - 1);
    for (int j1 = 0; j1 < n; ++j1) {
      const double f1 = 2 * kPi * j1 / n;
      const Vec4 x(std::sin(t1) * std::cos(f1), std::sin(t1) * std::sin(f1), 0, std::cos(t1));
      const Vec4 g1(std::cos(t1) * std::cos(f1), std::cos(t1) * std::sin(f1), 0, -std::sin(t1));
      const Vec4 g2(-std::sin(f1), std::cos(f1), 0, 0);
      for (int i2 = 0; i2 < n; ++i2) {
        const double t2 = (kPi / 2) * i2 / (n - 1);
        for (int j2 = 0; j2 < n; ++j2) {
          const double f2 = 2 * kPi * j2 / n;
          const Vec4 y = std::sin(t2) * std::cos(f2) * g1 + std::sin(t2) * std::sin(f2) * g2 +
                         std::cos(t2) * Vec4(0, 0, 1, 0);
          best = std::max(best, canonical_projection_sum(a1, a2, wedge(x, y)));
        }
      }
    }
  }
  return best;
}

// Energy of the reflected annulus problem, term by term as
// 2 pi sum n (a^2 + b^2)(r^-n - r^n)(r^n + r^-n), a = A / (r^n + r^-n).
template <class Coeffs>
double reflected_energy_literal(const Coeffs& A, const Coeffs& B, double r0) {
  double e = 0;
  for (std::size_t k = 0; k < A.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    const double up = std::pow(r0, -n), down = std::pow(r0, n);
    const double a = A[k] / (down + up), b = B[k] / (down + up);
    e += n * (a * a + b * b) * (up - down) * (down + up);
  }
  return 2 * kPi * e;
}

}  // namespace oracle
