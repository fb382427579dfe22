#include "planes4/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "planes4/errors.hpp"
#include "planes4/projection_bounds.hpp"

namespace planes4 {

namespace {

constexpr double kPi = std::numbers::pi;

using Edge = std::pair<int, int>;

Edge edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::map<Edge, int> edge_counts(const TriMesh4& mesh) {
  std::map<Edge, int> counts;
  for (const auto& f : mesh.faces)
    for (int k = 0; k < 3; ++k) ++counts[edge(f[k], f[(k + 1) % 3])];
  return counts;
}

TwoVector face_wedge(const TriMesh4& mesh, int face) {
  const auto& f = mesh.faces[static_cast<std::size_t>(face)];
  const Vector4& v0 = mesh.vertices[f[0]];
  return wedge(mesh.vertices[f[1]] - v0, mesh.vertices[f[2]] - v0);
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

void validate(const TriMesh4& mesh) {
  const auto nv = static_cast<int>(mesh.vertices.size());
  require(mesh.fixed.size() == mesh.vertices.size(), "mesh: fixed flags do not match vertex count");
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    const auto& f = mesh.faces[i];
    for (const int v : f)
      require(v >= 0 && v < nv, fmt::format("mesh: face {} has vertex index {} out of range", i, v));
    require(face_area(mesh, static_cast<int>(i)) >= kMinFaceArea,
            fmt::format("mesh: face {} is degenerate", i));
  }
  std::vector<int> degree(mesh.vertices.size(), 0);
  for (const auto& [e, count] : edge_counts(mesh)) {
    if (count != 1) continue;
    ++degree[e.first];
    ++degree[e.second];
  }
  for (int v = 0; v < nv; ++v)
    require(degree[v] % 2 == 0, fmt::format("mesh: boundary is not closed at vertex {}", v));
}

double face_area(const TriMesh4& mesh, int face) { return 0.5 * face_wedge(mesh, face).norm(); }

TwoVector face_tangent(const TriMesh4& mesh, int face) {
  const TwoVector w = face_wedge(mesh, face);
  require(0.5 * w.norm() >= kMinFaceArea, fmt::format("face_tangent: face {} is degenerate", face));
  return w.normalized();
}

double area(const TriMesh4& mesh) {
  double a = 0.0;
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) a += face_area(mesh, static_cast<int>(i));
  return a;
}

int euler_characteristic(const TriMesh4& mesh) {
  return static_cast<int>(mesh.vertices.size()) - static_cast<int>(edge_counts(mesh).size()) +
         static_cast<int>(mesh.faces.size());
}

int connected_components(const TriMesh4& mesh) {
  std::vector<int> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& f : mesh.faces) {
    parent[find(f[1])] = find(f[0]);
    parent[find(f[2])] = find(f[0]);
  }
  int n = 0;
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (find(static_cast<int>(v)) == static_cast<int>(v)) ++n;
  return n;
}

TriMesh4 fan_disk(const Plane& plane, int n, double radius, const Vector4& center) {
  require(n >= 3 && radius > 0.0, "fan_disk: need n >= 3 and a positive radius");
  TriMesh4 m;
  m.vertices.push_back(center);
  m.fixed.push_back(0);
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n;
    m.vertices.push_back(center + radius * (std::cos(t) * plane.basis(0) + std::sin(t) * plane.basis(1)));
    m.fixed.push_back(1);
  }
  for (int k = 0; k < n; ++k) m.faces.push_back({0, 1 + k, 1 + (k + 1) % n});
  return m;
}

TriMesh4 merge(const TriMesh4& a, const TriMesh4& b) {
  TriMesh4 m = a;
  const auto off = static_cast<int>(a.vertices.size());
  m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
  m.fixed.insert(m.fixed.end(), b.fixed.begin(), b.fixed.end());
  for (auto f : b.faces) {
    for (int& v : f) v += off;
    m.faces.push_back(f);
  }
  return m;
}

TriMesh4 transformed(const LinearMap4& f, const TriMesh4& mesh) {
  TriMesh4 m = mesh;
  for (auto& v : m.vertices) v = f * v;
  return m;
}

double projected_area_with_multiplicity(const TriMesh4& mesh, const Plane& p) {
  const Compound6 c = compound(projector(p));
  double s = 0.0;
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    // |wedge2 p (T)| * area(face) = |wedge2 p (w)| / 2 for w = e1 ^ e2
    s += 0.5 * apply_compound(c, face_wedge(mesh, static_cast<int>(i))).norm();
  }
  return s;
}

double shadow_area(const TriMesh4& mesh, const Plane& p, int resolution) {
  require(resolution >= 64, "shadow_area: resolution must be at least 64");
  if (mesh.faces.empty()) return 0.0;
  std::vector<Eigen::Vector2d> q(mesh.vertices.size());
  Eigen::Vector2d lo = Eigen::Vector2d::Constant(1e300), hi = Eigen::Vector2d::Constant(-1e300);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = p.coordinates(mesh.vertices[i]);
    lo = lo.cwiseMin(q[i]);
    hi = hi.cwiseMax(q[i]);
  }
  const double res = resolution;
  const auto x0 = static_cast<long>(std::floor(lo.x() * res)) - 1;
  const auto y0 = static_cast<long>(std::floor(lo.y() * res)) - 1;
  const long w = static_cast<long>(std::ceil(hi.x() * res)) - x0 + 2;
  const long h = static_cast<long>(std::ceil(hi.y() * res)) - y0 + 2;
  std::vector<char> covered(static_cast<std::size_t>(w * h), 0);

  for (const auto& f : mesh.faces) {
    Eigen::Vector2d a = q[f[0]], b = q[f[1]], c = q[f[2]];
    double twice = cross2(b - a, c - a);
    if (std::abs(twice) < 2 * kMinFaceArea) continue;  // edge-on: no area
    if (twice < 0) {
      std::swap(b, c);
      twice = -twice;
    }
    const double tol = 1e-12 * twice;
    const Eigen::Vector2d blo = a.cwiseMin(b).cwiseMin(c), bhi = a.cwiseMax(b).cwiseMax(c);
    const long ix0 = static_cast<long>(std::floor(blo.x() * res - 0.5));
    const long ix1 = static_cast<long>(std::ceil(bhi.x() * res - 0.5));
    const long iy0 = static_cast<long>(std::floor(blo.y() * res - 0.5));
    const long iy1 = static_cast<long>(std::ceil(bhi.y() * res - 0.5));
    for (long iy = iy0; iy <= iy1; ++iy) {
      for (long ix = ix0; ix <= ix1; ++ix) {
        const Eigen::Vector2d z((ix + 0.5) / res, (iy + 0.5) / res);
        if (cross2(b - a, z - a) >= -tol && cross2(c - b, z - b) >= -tol &&
            cross2(a - c, z - c) >= -tol)
          covered[static_cast<std::size_t>((iy - y0) * w + (ix - x0))] = 1;
      }
    }
  }
  const auto count = std::count(covered.begin(), covered.end(), 1);
  return static_cast<double>(count) / (res * res);
}

double shadow_tolerance(const TriMesh4& mesh, const Plane& p, int resolution) {
  require(resolution >= 64, "shadow_tolerance: resolution must be at least 64");
  const double d = std::sqrt(2.0) / resolution;
  double t = 0.0;
  for (const auto& f : mesh.faces) {
    double perimeter = 0.0;
    for (int k = 0; k < 3; ++k)
      perimeter += (p.coordinates(mesh.vertices[f[(k + 1) % 3]]) - p.coordinates(mesh.vertices[f[k]])).norm();
    t += perimeter * d / 2 + kPi * d * d / 4;
  }
  return t;
}

ProjectionReport projection_inequality_report(const TriMesh4& mesh, const Plane& p1,
                                              const Plane& p2, int resolution) {
  validate(mesh);
  ProjectionReport r;
  r.area = area(mesh);
  const Plane* planes[2] = {&p1, &p2};
  for (int k = 0; k < 2; ++k) {
    r.proj_area_mult[k] = projected_area_with_multiplicity(mesh, *planes[k]);
    r.shadow_area[k] = shadow_area(mesh, *planes[k], resolution);
    r.shadow_tolerance[k] = shadow_tolerance(mesh, *planes[k], resolution);
  }
  for (std::size_t i = 0; i < mesh.faces.size(); ++i)
    r.max_face_sum = std::max(r.max_face_sum, projection_sum(p1, p2, face_tangent(mesh, static_cast<int>(i))));
  const double cap = wirtinger_bound(characteristic_angles(p1, p2).alpha1) + 1e-9;
  r.lambda_used = std::min(r.max_face_sum, cap);
  r.inequality_slack = r.lambda_used * r.area - (r.shadow_area[0] + r.shadow_area[1]);
  return r;
}

double PolarGrid::angle(int j) const { return 2 * kPi * j / angular; }

Eigen::Vector2d PolarGrid::node(int i, int j) const {
  const double r = radius(i), t = angle(j);
  return {r * std::cos(t), r * std::sin(t)};
}

GraphAreaReport graph_area_check(const GraphSamples& phi, const PolarGrid& grid) {
  require(grid.r_inner >= 0.0 && grid.r_inner < grid.r_outer, "graph_area_check: bad annulus radii");
  require(grid.radial >= 1 && grid.angular >= 3, "graph_area_check: grid too coarse");
  const int m = grid.angular;
  require(phi.size() == static_cast<std::size_t>(grid.radial + 1) * m,
          "graph_area_check: sample count does not match the grid");
  const double dr = (grid.r_outer - grid.r_inner) / grid.radial;
  const double dt = 2 * kPi / m;
  auto at = [&](int i, int j) -> const Eigen::Vector2d& {
    return phi[static_cast<std::size_t>(i) * m + (j % m)];
  };

  GraphAreaReport out;
  for (int i = 0; i < grid.radial; ++i) {
    const double rm = grid.r_inner + (i + 0.5) * dr;
    const double cell = rm * dr * dt;
    for (int j = 0; j < m; ++j) {
      const Eigen::Vector2d pr = ((at(i + 1, j) - at(i, j)) + (at(i + 1, j + 1) - at(i, j + 1))) / (2 * dr);
      const Eigen::Vector2d pt =
          ((at(i, j + 1) - at(i, j)) + (at(i + 1, j + 1) - at(i + 1, j))) / (2 * dt * rm);
      const double a = pr.squaredNorm(), b = pt.squaredNorm(), c = pr.dot(pt);
      const double grad2 = a + b;
      out.max_gradient = std::max(out.max_gradient, std::sqrt(grad2));
      require(grad2 < 1.0, fmt::format("graph_area_check: |grad phi| = {} >= 1 in cell ({}, {})",
                                       std::sqrt(grad2), i, j));
      out.area += std::sqrt((1 + a) * (1 + b) - c * c) * cell;
      out.base_area += cell;
      out.dirichlet += grad2 * cell;
    }
  }
  out.slack = out.area - out.base_area - 0.25 * out.dirichlet;
  return out;
}

BandAreaReport band_area(const std::vector<Eigen::Vector2d>& h, double rho, bool check_lip) {
  require(rho > 0.0, "band_area: radius must be positive");
  const auto m = static_cast<int>(h.size());
  require(m >= 3, "band_area: need at least three samples");
  const double ds = 2 * kPi * rho / m;
  BandAreaReport r;
  double hmax = 0.0;
  for (int k = 0; k < m; ++k) {
    const Eigen::Vector2d& hk = h[k];
    const Eigen::Vector2d& next = h[(k + 1) % m];
    const Eigen::Vector2d& prev = h[(k + m - 1) % m];
    hmax = std::max(hmax, hk.norm());
    if (check_lip) {
      const double q = (next - hk).norm() / ds;
      require(q <= 1.0 + 1e-12, fmt::format("band_area: Lipschitz constant {} > 1 at sample {}", q, k));
    }
    const Eigen::Vector2d dh = (next - prev) / (2 * ds);
    // area element sqrt(alpha + beta t^2) with alpha = |h|^2, beta = |h ^ h'|^2
    const double alpha = hk.squaredNorm();
    const double beta = alpha * dh.squaredNorm() - hk.dot(dh) * hk.dot(dh);
    double strip;
    if (beta <= 1e-300) {
      strip = std::sqrt(alpha);
    } else if (alpha <= 1e-300) {
      strip = 0.5 * std::sqrt(beta);
    } else {
      strip = 0.5 * (std::sqrt(alpha + beta) + alpha / std::sqrt(beta) * std::asinh(std::sqrt(beta / alpha)));
    }
    r.area += strip * ds;
  }
  r.bound = std::sqrt(2.0) * 2 * kPi * rho * hmax;
  r.at_three_quarters = rho == 0.75;
  return r;
}

}  // namespace planes4
