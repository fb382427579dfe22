#pragma once

#include <array>
#include <utility>

#include "planes4/exterior_algebra.hpp"

namespace planes4 {

/// Unoriented 2-plane in R^4: an orthonormal basis together with the unit
/// simple 2-vector b1 ^ b2.
class Plane {
 public:
  // Orthonormalizes (u, v) by Gram-Schmidt. Throws ConfigError when the pair
  // is (numerically) dependent.
  static Plane span(const Vector4& u, const Vector4& v);

  const Vector4& basis(int k) const { return basis_[static_cast<std::size_t>(k)]; }
  const TwoVector& bivector() const { return bivector_; }

  // Plane coordinates (b1 . v, b2 . v) of the orthogonal projection of v.
  Eigen::Vector2d coordinates(const Vector4& v) const;
  bool contains(const Vector4& v, double tol = 1e-10) const;

 private:
  Plane(const Vector4& b1, const Vector4& b2);
  std::array<Vector4, 2> basis_;
  TwoVector bivector_;
};

struct CharacteristicAngles {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

CharacteristicAngles characteristic_angles(const Plane& p, const Plane& q);

// P1 = span(e1, e2), P2 = span(cos a1 e1 + sin a1 e3, cos a2 e2 + sin a2 e4).
// Requires 0 <= alpha1 <= alpha2 <= pi/2.
std::pair<Plane, Plane> canonical_pair(double alpha1, double alpha2);

// The orthogonal pair P0 = span(e1, e2) u span(e3, e4).
std::pair<Plane, Plane> standard_orthogonal_pair();

LinearMap4 projector(const Plane& p);

// Orientation-blind equality: |<xi_P, xi_Q>| >= 1 - tol.
bool same_plane(const Plane& p, const Plane& q, double tol = 1e-10);

// Apply a linear map (rotation) to a plane.
Plane transformed(const LinearMap4& f, const Plane& p);

/// Frame data for one element of the equality set of the orthogonal
/// projection bound: v1 _|_ v2 unit in span(e1,e2), u1 _|_ u2 unit in
/// span(e3,e4), alpha in [0, pi/2].
struct XiElement {
  double alpha = 0.0;
  Vector4 v1 = Vector4::UnitX();
  Vector4 v2 = Vector4::UnitY();
  Vector4 u1 = Vector4::UnitZ();
  Vector4 u2 = Vector4::UnitW();
};

// (cos a v1 + sin a u1) ^ (cos a v2 + sin a u2). Throws ConfigError on a
// malformed frame.
TwoVector xi_sample(const XiElement& e);

// Membership in the equality set for P0: |p1 xi| + |p2 xi| >= 1 - tol.
// Throws ConfigError unless xi is unit simple within tol.
bool xi_membership(const TwoVector& xi, double tol);

}  // namespace planes4
