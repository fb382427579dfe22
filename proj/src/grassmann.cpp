#include "planes4/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "planes4/errors.hpp"

namespace planes4 {

namespace {


bool is_unit(const Vector4& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

}  // namespace

Plane::Plane(const Vector4& b1, const Vector4& b2)
    : basis_{b1, b2}, bivector_(wedge(b1, b2)) {}

Plane Plane::span(const Vector4& u, const Vector4& v) {
  const double nu = u.norm();
  require(nu > 1e-14, "plane spanned by a zero vector");
  const Vector4 b1 = u / nu;
  Vector4 w = v - v.dot(b1) * b1;
  // second pass keeps the pair orthogonal to ~1e-16 even for nearly parallel input
  w -= w.dot(b1) * b1;
  const double nw = w.norm();
  require(nw > 1e-12 * std::max(1.0, v.norm()), "plane spanned by dependent vectors");
  return Plane(b1, w / nw);
}

Eigen::Vector2d Plane::coordinates(const Vector4& v) const {
  return {basis_[0].dot(v), basis_[1].dot(v)};
}

bool Plane::contains(const Vector4& v, double tol) const {
  const Vector4 r = v - basis_[0].dot(v) * basis_[0] - basis_[1].dot(v) * basis_[1];
  return r.norm() <= tol * std::max(1.0, v.norm());
}

CharacteristicAngles characteristic_angles(const Plane& p, const Plane& q) {
  Eigen::Matrix2d gram;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) gram(i, j) = p.basis(i).dot(q.basis(j));
  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(gram);
  const Eigen::Vector2d s = svd.singularValues();  // descending
  const double s1 = std::clamp(s[0], 0.0, 1.0);
  const double s2 = std::clamp(s[1], 0.0, 1.0);
  return {std::acos(s1), std::acos(s2)};
}

std::pair<Plane, Plane> canonical_pair(double alpha1, double alpha2) {
  constexpr double half_pi = std::numbers::pi / 2;
  require(0.0 <= alpha1 && alpha1 <= alpha2 && alpha2 <= half_pi,
          "characteristic angles need 0 <= alpha1 <= alpha2 <= pi/2");
  const Vector4 d1(std::cos(alpha1), 0.0, std::sin(alpha1), 0.0);
  const Vector4 d2(0.0, std::cos(alpha2), 0.0, std::sin(alpha2));
  return {Plane::span(Vector4::UnitX(), Vector4::UnitY()), Plane::span(d1, d2)};
}

std::pair<Plane, Plane> standard_orthogonal_pair() {
  return {Plane::span(Vector4::UnitX(), Vector4::UnitY()),
          Plane::span(Vector4::UnitZ(), Vector4::UnitW())};
}

LinearMap4 projector(const Plane& p) {
  return p.basis(0) * p.basis(0).transpose() + p.basis(1) * p.basis(1).transpose();
}

bool same_plane(const Plane& p, const Plane& q, double tol) {
  return std::abs(inner(p.bivector(), q.bivector())) >= 1.0 - tol;
}

Plane transformed(const LinearMap4& f, const Plane& p) {
  return Plane::span(f * p.basis(0), f * p.basis(1));
}

TwoVector xi_sample(const XiElement& e) {
  constexpr double half_pi = std::numbers::pi / 2;
  require(0.0 <= e.alpha && e.alpha <= half_pi, "xi_sample: alpha outside [0, pi/2]");
  const auto [p1, p2] = standard_orthogonal_pair();
  for (const Vector4* v : {&e.v1, &e.v2})
    require(is_unit(*v, 1e-10) && p1.contains(*v, 1e-10),
            "xi_sample: v1, v2 must be unit vectors of span(e1, e2)");
  for (const Vector4* u : {&e.u1, &e.u2})
    require(is_unit(*u, 1e-10) && p2.contains(*u, 1e-10),
            "xi_sample: u1, u2 must be unit vectors of span(e3, e4)");
  require(std::abs(e.v1.dot(e.v2)) <= 1e-10 && std::abs(e.u1.dot(e.u2)) <= 1e-10,
          "xi_sample: frame vectors must be orthogonal");
  const double c = std::cos(e.alpha);
  const double s = std::sin(e.alpha);
  return wedge(c * e.v1 + s * e.u1, c * e.v2 + s * e.u2);
}

bool xi_membership(const TwoVector& xi, double tol) {
  require(tol > 0.0, "xi_membership: tolerance must be positive");
  require(std::abs(xi.norm() - 1.0) <= tol, "xi_membership: 2-vector is not unit");
  require(std::abs(xi.pluecker()) <= tol, "xi_membership: 2-vector is not simple");
  // In the standard basis |p1 xi| = |c12| and |p2 xi| = |c34|.
  return std::abs(xi.c[0]) + std::abs(xi.c[5]) >= 1.0 - tol;
}

}  // namespace planes4
