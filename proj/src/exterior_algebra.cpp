#include "planes4/exterior_algebra.hpp"

#include <cmath>

#include "planes4/errors.hpp"

namespace planes4 {

TwoVector TwoVector::basis(int i, int j) {
  require(1 <= i && i < j && j <= 4, "basis 2-vector needs 1 <= i < j <= 4");
  TwoVector out;
  for (std::size_t k = 0; k < kBasisPairs.size(); ++k) {
    if (kBasisPairs[k][0] == i - 1 && kBasisPairs[k][1] == j - 1) out.c[k] = 1.0;
  }
  return out;
}

double TwoVector::norm_squared() const { return inner(*this, *this); }

double TwoVector::norm() const { return std::sqrt(norm_squared()); }

double TwoVector::pluecker() const { return c[0] * c[5] - c[1] * c[4] + c[2] * c[3]; }

TwoVector TwoVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw ConfigError("cannot normalize the zero 2-vector");
  return *this * (1.0 / n);
}

TwoVector TwoVector::operator-() const {
  TwoVector out;
  for (std::size_t k = 0; k < 6; ++k) out.c[k] = -c[k];
  return out;
}

TwoVector& TwoVector::operator+=(const TwoVector& o) {
  for (std::size_t k = 0; k < 6; ++k) c[k] += o.c[k];
  return *this;
}

TwoVector& TwoVector::operator-=(const TwoVector& o) {
  for (std::size_t k = 0; k < 6; ++k) c[k] -= o.c[k];
  return *this;
}

TwoVector& TwoVector::operator*=(double s) {
  for (double& v : c) v *= s;
  return *this;
}

TwoVector wedge(const Vector4& x, const Vector4& y) {
  TwoVector out;
  for (std::size_t k = 0; k < kBasisPairs.size(); ++k) {
    const auto [i, j] = kBasisPairs[k];
    out.c[k] = x[i] * y[j] - x[j] * y[i];
  }
  return out;
}

double inner(const TwoVector& xi, const TwoVector& zeta) {
  double s = 0.0;
  for (std::size_t k = 0; k < 6; ++k) s += xi.c[k] * zeta.c[k];
  return s;
}

bool is_simple(const TwoVector& xi, double tol) {
  require(tol > 0.0, "simplicity tolerance must be positive");
  return std::abs(xi.pluecker()) <= tol * xi.norm_squared();
}

TwoVector hodge_star(const TwoVector& xi) {
  // *e12 = e34, *e13 = -e24, *e14 = e23, *e23 = e14, *e24 = -e13, *e34 = e12
  return TwoVector{{xi.c[5], -xi.c[4], xi.c[3], xi.c[2], -xi.c[1], xi.c[0]}};
}

Compound6 compound(const LinearMap4& f) {
  Compound6 m;
  for (int r = 0; r < 6; ++r) {
    const auto [i, j] = kBasisPairs[r];
    for (int s = 0; s < 6; ++s) {
      const auto [k, l] = kBasisPairs[s];
      m(r, s) = f(i, k) * f(j, l) - f(i, l) * f(j, k);
    }
  }
  return m;
}

TwoVector apply_compound(const Compound6& m, const TwoVector& xi) {
  TwoVector out;
  for (int r = 0; r < 6; ++r) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += m(r, k) * xi.c[k];
    out.c[r] = s;
  }
  return out;
}

TwoVector apply_map2(const LinearMap4& f, const TwoVector& xi) {
  return apply_compound(compound(f), xi);
}

}  // namespace planes4
