#include "planes4/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace planes4 {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

Vector4 gaussian4(Rng& rng) {
  Vector4 v;
  for (int i = 0; i < 4; ++i) v[i] = rng.normal();
  return v;
}

}  // namespace

Vector4 random_unit_vector(Rng& rng) {
  for (;;) {
    const Vector4 v = gaussian4(rng);
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

std::pair<Vector4, Vector4> random_orthonormal_pair(Rng& rng) {
  for (;;) {
    const Vector4 x = random_unit_vector(rng);
    Vector4 y = gaussian4(rng);
    y -= y.dot(x) * x;
    const double n = y.norm();
    if (n > 1e-8) return {x, y / n};
  }
}

LinearMap4 random_rotation(Rng& rng) {
  for (;;) {
    LinearMap4 q;
    bool ok = true;
    for (int c = 0; c < 4 && ok; ++c) {
      Vector4 v = gaussian4(rng);
      for (int p = 0; p < c; ++p) v -= v.dot(q.col(p)) * q.col(p);
      const double n = v.norm();
      ok = n > 1e-8;
      if (ok) q.col(c) = v / n;
    }
    if (!ok) continue;
    if (q.determinant() < 0.0) q.col(3) = -q.col(3);
    return q;
  }
}

TwoVector random_unit_simple(Rng& rng) {
  const auto [x, y] = random_orthonormal_pair(rng);
  return wedge(x, y);
}

}  // namespace planes4
