#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

namespace planes4 {

using Vector4 = Eigen::Vector4d;
using LinearMap4 = Eigen::Matrix4d;
using Compound6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kSimpleTolerance = 1e-10;

// Index pairs (i, j), i < j, zero-based, in the order used by TwoVector.
inline constexpr std::array<std::array<int, 2>, 6> kBasisPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Element of the exterior square of R^4, stored as coefficients in the
/// ordered basis e12, e13, e14, e23, e24, e34.
struct TwoVector {
  std::array<double, 6> c{};

  /// e_i ^ e_j for one-based 1 <= i < j <= 4.
  static TwoVector basis(int i, int j);

  double& operator[](std::size_t k) { return c[k]; }
  double operator[](std::size_t k) const { return c[k]; }

  double norm_squared() const;
  double norm() const;
  // c12 c34 - c13 c24 + c14 c23; zero exactly on simple 2-vectors.
  double pluecker() const;
  TwoVector normalized() const;

  TwoVector operator-() const;
  TwoVector& operator+=(const TwoVector& o);
  TwoVector& operator-=(const TwoVector& o);
  TwoVector& operator*=(double s);
  friend TwoVector operator+(TwoVector a, const TwoVector& b) { return a += b; }
  friend TwoVector operator-(TwoVector a, const TwoVector& b) { return a -= b; }
  friend TwoVector operator*(TwoVector a, double s) { return a *= s; }
  friend TwoVector operator*(double s, TwoVector a) { return a *= s; }
  bool operator==(const TwoVector&) const = default;
};

TwoVector wedge(const Vector4& x, const Vector4& y);

double inner(const TwoVector& xi, const TwoVector& zeta);

// Pluecker test relative to norm^2. The zero 2-vector counts as simple.
// Throws ConfigError when tol <= 0.
bool is_simple(const TwoVector& xi, double tol = kSimpleTolerance);

// Hodge star on 2-vectors of oriented Euclidean R^4.
TwoVector hodge_star(const TwoVector& xi);

// Matrix of the induced map on 2-vectors (second compound matrix):
// entry ((i,j),(k,l)) = f_ik f_jl - f_il f_jk.
Compound6 compound(const LinearMap4& f);

TwoVector apply_map2(const LinearMap4& f, const TwoVector& xi);
TwoVector apply_compound(const Compound6& m, const TwoVector& xi);

}  // namespace planes4
