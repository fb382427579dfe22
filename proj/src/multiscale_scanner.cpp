#include "planes4/multiscale_scanner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "planes4/errors.hpp"
#include "planes4/parallel.hpp"

namespace planes4 {

namespace {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

constexpr double kPi = std::numbers::pi;

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

using BPoint = bg::model::point<double, 4, bg::cs::cartesian>;

BPoint to_bpoint(const Vector4& v) {
  BPoint p;
  bg::set<0>(p, v[0]);
  bg::set<1>(p, v[1]);
  bg::set<2>(p, v[2]);
  bg::set<3>(p, v[3]);
  return p;
}

class PointIndex {
 public:
  explicit PointIndex(const std::vector<Vector4>& pts) {
    std::vector<BPoint> b;
    b.reserve(pts.size());
    for (const auto& p : pts) b.push_back(to_bpoint(p));
    tree_ = Tree(b.begin(), b.end());
  }

  bool empty() const { return tree_.empty(); }

  double nearest(const Vector4& z) const {
    BPoint hit;
    const BPoint qp = to_bpoint(z);
    if (tree_.query(bgi::nearest(qp, 1), &hit) == 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(bg::comparable_distance(qp, hit));
  }

 private:
  using Tree = bgi::rtree<BPoint, bgi::rstar<16>>;
  Tree tree_;
};

double max_nearest(const std::vector<Vector4>& from, const PointIndex& to) {
  std::vector<double> d(from.size());
  parallel_for(from.size(), [&](std::size_t i) { d[i] = to.nearest(from[i]); });
  double m = 0.0;
  for (const double v : d) m = std::max(m, v);
  return m;
}

// Distance from y to (p1 + q) u (p2 + q).
struct TranslateDistance {
  LinearMap4 c1;  // I - p1
  LinearMap4 c2;
  TranslateDistance(const Plane& p1, const Plane& p2)
      : c1(LinearMap4::Identity() - projector(p1)), c2(LinearMap4::Identity() - projector(p2)) {}
  double operator()(const Vector4& y, const Vector4& q) const {
    const Vector4 d = y - q;
    return std::min((c1 * d).norm(), (c2 * d).norm());
  }
};

// Points of (p + q) in D(x, r), on a square grid of the given spacing
// centered at the foot of x - q.
void translate_points(const Plane& p, const Plane& p1, const Plane& p2, const Vector4& q,
                      const Vector4& x, double r, double spacing, std::vector<Vector4>& out) {
  const Eigen::Vector2d c = p.coordinates(x - q);
  const int k = static_cast<int>(std::ceil(r / spacing));
  for (int i = -k; i <= k; ++i) {
    for (int j = -k; j <= k; ++j) {
      const Eigen::Vector2d u = c + spacing * Eigen::Vector2d(i, j);
      const Vector4 z = q + u.x() * p.basis(0) + u.y() * p.basis(1);
      if (in_bicylinder(z, p1, p2, x, r)) out.push_back(z);
    }
  }
}

// Keeps the first point of every occupied voxel.
std::vector<Vector4> decimate(const std::vector<Vector4>& pts, double voxel) {
  std::map<std::array<long, 4>, std::size_t> seen;
  std::vector<Vector4> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::array<long, 4> key;
    for (int k = 0; k < 4; ++k) key[k] = static_cast<long>(std::floor(pts[i][k] / voxel));
    if (seen.emplace(key, i).second) out.push_back(pts[i]);
  }
  return out;
}

// Everything best_translation needs about one window. `index` holds all of E.
struct Window {
  const Plane& p1;
  const Plane& p2;
  Vector4 x;
  double r;
  TranslateDistance dist;
  std::vector<Vector4> inside;  // E in D(x, r)
  const PointIndex& index;

  Window(const SetSample& e, const PointIndex& all, const Plane& a, const Plane& b,
         const Vector4& center, double radius)
      : p1(a), p2(b), x(center), r(radius), dist(a, b), index(all) {
    for (const auto& y : e.points)
      if (in_bicylinder(y, a, b, center, radius)) inside.push_back(y);
  }

  // Relative distance to p + q. Once either side reaches `cutoff` the
  // remaining work is skipped and a value >= cutoff is returned.
  double evaluate(const std::vector<Vector4>& e_points, const Vector4& q, double spacing,
                  double cutoff = std::numeric_limits<double>::infinity()) const {
    const double stop = cutoff * r;
    double a = 0.0;
    for (const auto& y : e_points) {
      a = std::max(a, dist(y, q));
      if (a >= stop) return a / r;
    }
    std::vector<Vector4> f;
    translate_points(p1, p1, p2, q, x, r, spacing, f);
    translate_points(p2, p1, p2, q, x, r, spacing, f);
    double b = 0.0;
    for (const auto& z : f) {
      b = std::max(b, index.nearest(z));
      if (b >= stop) break;
    }
    return std::max(a, b) / r;
  }
};

TranslationFit fit_window(const Window& w, const TranslationSearch& cfg) {
  TranslationFit fit;
  fit.q = w.x;
  if (w.inside.empty()) return fit;
  const Vector4& x = w.x;
  const double r = w.r;

  const double unit = cfg.eps * r;
  const std::vector<Vector4> coarse_e = decimate(w.inside, cfg.search_voxel * unit);
  const double spacing = cfg.search_spacing * unit;
  auto objective = [&](const Vector4& q, double cutoff) { return w.evaluate(coarse_e, q, spacing, cutoff); };

  const int g = cfg.grid;
  const double h = r / (g - 1);
  std::size_t cells = 1;
  for (int k = 0; k < 4; ++k) cells *= static_cast<std::size_t>(g);
  auto node = [&](std::size_t idx) {
    Vector4 q;
    for (int k = 3; k >= 0; --k) {
      q[k] = x[k] - r / 2 + h * static_cast<double>(idx % g);
      idx /= g;
    }
    return q;
  };
  // nodes in index order with strict improvement, so ties keep the
  // lexicographically first node and pruned values never win
  std::size_t best_idx = 0;
  double best = objective(node(0), std::numeric_limits<double>::infinity());
  for (std::size_t i = 1; i < cells; ++i) {
    const double v = objective(node(i), best);
    if (v < best) {
      best = v;
      best_idx = i;
    }
  }
  fit.evaluations = static_cast<int>(cells);
  Vector4 q = node(best_idx);

  // Pattern moves: the axes, then the pairwise diagonals. The objective is a
  // max over the two sheets, each sheet seeing only the normal part of q,
  // so single-axis moves stall where a diagonal one still improves.
  std::vector<Vector4> moves;
  for (int k = 0; k < 4; ++k)
    for (const double sign : {1.0, -1.0}) moves.push_back(sign * Vector4::Unit(k));
  for (int k = 0; k < 4; ++k)
    for (int l = k + 1; l < 4; ++l)
      for (const double a : {1.0, -1.0})
        for (const double b : {1.0, -1.0}) moves.push_back(a * Vector4::Unit(k) + b * Vector4::Unit(l));
  const Vector4 lo = x.array() - r / 2, hi = x.array() + r / 2;

  double step = h / 2;
  double level_gain = 0.0;
  while (fit.evaluations < cfg.max_evaluations) {
    bool moved = false;
    for (const auto& m : moves) {
      const Vector4 t = (q + step * m).cwiseMax(lo).cwiseMin(hi);
      if (t == q) continue;
      const double v = objective(t, best);
      ++fit.evaluations;
      if (v < best) {
        level_gain += best - v;
        best = v;
        q = t;
        moved = true;
      }
    }
    if (moved) continue;
    // a whole step level that gained almost nothing ends the refinement once
    // the step is well below the sampling scale; coarser levels can stall
    // by straddling the optimum, so they never stop the search
    if ((level_gain < 1e-4 * cfg.eps && step <= unit / 16) || step < 1e-4 * unit) break;
    level_gain = 0.0;
    step /= 2;
  }
  fit.q = q;
  fit.dist = w.evaluate(w.inside, q, cfg.final_spacing * unit);
  return fit;
}

}  // namespace

double SetSample::spacing_near(const Vector4& x, double r) const {
  return std::max(resolution, grade * (x.norm() + 2 * r));
}

bool in_bicylinder(const Vector4& y, const Plane& p1, const Plane& p2, const Vector4& x, double r) {
  const Vector4 d = y - x;
  return p1.coordinates(d).norm() <= r && p2.coordinates(d).norm() <= r;
}

SetSample bicylinder_clip(const SetSample& e, const Plane& p1, const Plane& p2,
                          const Vector4& x, double r) {
  require(r > 0.0, "bicylinder_clip: radius must be positive");
  SetSample out;
  out.resolution = e.resolution;
  out.grade = e.grade;
  for (const auto& y : e.points)
    if (in_bicylinder(y, p1, p2, x, r)) out.points.push_back(y);
  return out;
}

double relative_distance(const SetSample& e, const SetSample& f, const Plane& p1,
                         const Plane& p2, const Vector4& x, double r) {
  const SetSample ce = bicylinder_clip(e, p1, p2, x, r);
  const SetSample cf = bicylinder_clip(f, p1, p2, x, r);
  double d = 0.0;
  if (!ce.points.empty() && !f.points.empty()) d = std::max(d, max_nearest(ce.points, PointIndex(f.points)));
  if (!cf.points.empty() && !e.points.empty()) d = std::max(d, max_nearest(cf.points, PointIndex(e.points)));
  return d / r;
}

double relative_distance_to_translate(const SetSample& e, const Plane& p1, const Plane& p2,
                                      const Vector4& q, const Vector4& x, double r,
                                      double spacing) {
  require(r > 0.0 && spacing > 0.0, "relative_distance_to_translate: bad radius or spacing");
  const PointIndex index(e.points);
  const Window w(e, index, p1, p2, x, r);
  if (w.inside.empty()) return 0.0;
  return w.evaluate(w.inside, q, spacing);
}

namespace {

void check_search(const TranslationSearch& cfg) {
  require(cfg.eps > 0.0 && cfg.grid >= 2 && cfg.search_spacing > 0.0 && cfg.search_voxel > 0.0 &&
              cfg.final_spacing > 0.0,
          "best_translation: invalid search configuration");
}

}  // namespace

TranslationFit best_translation(const SetSample& e, const Plane& p1, const Plane& p2,
                                const Vector4& x, double r, const TranslationSearch& cfg) {
  require(r > 0.0, "best_translation: radius must be positive");
  check_search(cfg);
  const PointIndex index(e.points);
  return fit_window(Window(e, index, p1, p2, x, r), cfg);
}

ScanReport epsilon_process(const SetSample& e, const Plane& p1, const Plane& p2,
                           const ScanConfig& cfg) {
  require(cfg.eps > 0.0 && cfg.eps < 1.0 / 12, "epsilon_process: eps must lie in (0, 1/12)");
  require(cfg.floor > 0.0, "epsilon_process: floor must be positive");
  require(cfg.floor >= 2 * e.resolution, "epsilon_process: floor must be at least twice the sample resolution");
  TranslationSearch search = cfg.search;
  search.eps = cfg.eps;
  check_search(search);
  const double final_spacing = search.final_spacing * cfg.eps;
  const PointIndex index(e.points);
  auto distance_at = [&](const Vector4& q, double r) {
    const Window w(e, index, p1, p2, q, r);
    return w.inside.empty() ? 0.0 : w.evaluate(w.inside, q, final_spacing * r);
  };

  ScanReport rep;
  Vector4 q = Vector4::Zero();
  for (int n = 1;; ++n) {
    const double s = std::ldexp(1.0, -n);
    if (s < cfg.floor) {
      rep.floor_hit = true;
      break;
    }
    const TranslationFit fit = fit_window(Window(e, index, p1, p2, q, s), search);
    ScanStep step;
    step.n = n;
    step.scale = s;
    step.center = q;
    step.fit = fit.q;
    step.best_distance = fit.dist;
    step.carry_distance = distance_at(q, s);
    step.tolerance = 2 * e.spacing_near(q, s) / s;
    rep.centers.push_back(q);
    rep.scales.push_back(s);
    rep.steps.push_back(step);
    if (fit.dist > cfg.eps) {
      rep.stopped = true;
      rep.o_k = q;
      rep.r_k = s;
      const double shrunk = 2 * s * (1 - 12 * cfg.eps);
      rep.dist_shrunk = distance_at(q, shrunk);
      rep.dist_double = distance_at(q, 2 * s);
      break;
    }
    q = fit.q;
  }
  return rep;
}

SetSample graded_disk_sample(const std::function<Vector4(const Eigen::Vector2d&)>& sheet,
                             double radius, double h, double grade) {
  require(radius > 0.0 && h > 0.0 && grade >= 0.0, "graded_disk_sample: bad parameters");
  SetSample s;
  s.resolution = h;
  s.grade = grade;
  const double inner = grade > 0.0 ? std::min(radius, h / grade) : radius;
  const int k = static_cast<int>(std::floor(inner / h));
  for (int i = -k; i <= k; ++i)
    for (int j = -k; j <= k; ++j) {
      const Eigen::Vector2d z(i * h, j * h);
      if (z.norm() <= inner) s.points.push_back(sheet(z));
    }
  if (inner < radius) {
    const int m = static_cast<int>(std::ceil(2 * kPi / grade));
    for (double rho = inner * (1 + grade);; rho *= 1 + grade) {
      const double rr = std::min(rho, radius);
      for (int j = 0; j < m; ++j) {
        const double t = 2 * kPi * j / m;
        s.points.push_back(sheet(Eigen::Vector2d(rr * std::cos(t), rr * std::sin(t))));
      }
      if (rho >= radius) break;
    }
  }
  return s;
}

SetSample disk_sample(const Plane& p, double radius, double h) {
  return graded_disk_sample(
      [&p](const Eigen::Vector2d& z) -> Vector4 { return z.x() * p.basis(0) + z.y() * p.basis(1); },
      radius, h, 0.0);
}

SetSample unite(const SetSample& a, const SetSample& b) {
  SetSample s = a;
  s.points.insert(s.points.end(), b.points.begin(), b.points.end());
  s.resolution = std::max(a.resolution, b.resolution);
  s.grade = std::max(a.grade, b.grade);
  return s;
}

namespace {

// Spacing wanted at distance r from the origin.
struct Spacing {
  double h;
  double grade;
  double operator()(double r) const { return std::max(h, grade * r); }
};

// Points of the segment a -> b with gaps at most the local spacing, a
// excluded and b included.
void sample_segment(const Vector4& a, const Vector4& b, const Spacing& sp, std::vector<Vector4>& out) {
  const double len = (b - a).norm();
  double t = 0.0;
  while (true) {
    const Vector4 p = a + (t / len) * (b - a);
    // step from the nearer end of the next gap so the bound holds there too
    const double step = sp(std::max(0.0, p.norm() - sp(p.norm())));
    t += std::max(step, 1e-3 * sp.h);
    if (t >= len) break;
    out.push_back(a + (t / len) * (b - a));
  }
  out.push_back(b);
}

// Interior points of a triangle on lattices aligned with its first edge,
// one lattice per distance band [R, 1.25 R) around the origin; narrow bands
// keep the oversampling at the outer edge of each band small.
void sample_face(const Vector4& a, const Vector4& b, const Vector4& c, const Spacing& sp,
                 std::vector<Vector4>& out) {
  const Vector4 e1 = (b - a).normalized();
  const Vector4 w = (c - a) - (c - a).dot(e1) * e1;
  const Vector4 e2 = w.normalized();
  const Eigen::Vector2d B((b - a).norm(), 0.0), C((c - a).dot(e1), (c - a).dot(e2));
  auto inside = [&](const Eigen::Vector2d& u) {
    const double d1 = cross2(B, u), d2 = cross2(C - B, u - B), d3 = cross2(-C, u - C);
    return d1 > 0 && d2 > 0 && d3 > 0;
  };
  // foot of the origin in the triangle's plane
  const Eigen::Vector2d foot(-a.dot(e1), -a.dot(e2));
  const double height2 = std::max(0.0, a.squaredNorm() - foot.squaredNorm());
  const double far = std::max({a.norm(), b.norm(), c.norm()});
  const Eigen::Vector2d lo = Eigen::Vector2d(0.0, 0.0).cwiseMin(B).cwiseMin(C);
  const Eigen::Vector2d hi = Eigen::Vector2d(0.0, 0.0).cwiseMax(B).cwiseMax(C);

  const double first = sp.grade > 0.0 ? sp.h / sp.grade : std::numeric_limits<double>::infinity();
  double r_in = 0.0;
  double r_out = std::min(first, 2 * far + sp.h);
  while (r_in <= far) {
    const double spacing = sp(r_in);
    const double reach = std::sqrt(std::max(0.0, r_out * r_out - height2));
    const Eigen::Vector2d blo = lo.cwiseMax((foot.array() - reach).matrix());
    const Eigen::Vector2d bhi = hi.cwiseMin((foot.array() + reach).matrix());
    if ((blo.array() <= bhi.array()).all()) {
      const long i0 = static_cast<long>(std::ceil(blo.x() / spacing)), i1 = static_cast<long>(std::floor(bhi.x() / spacing));
      const long j0 = static_cast<long>(std::ceil(blo.y() / spacing)), j1 = static_cast<long>(std::floor(bhi.y() / spacing));
      for (long i = i0; i <= i1; ++i)
        for (long j = j0; j <= j1; ++j) {
          const Eigen::Vector2d u(i * spacing, j * spacing);
          if (!inside(u)) continue;
          const Vector4 p = a + u.x() * e1 + u.y() * e2;
          const double r = p.norm();
          if (r >= r_in && r < r_out) out.push_back(p);
        }
    }
    r_in = r_out;
    r_out *= 1.25;
  }
}

}  // namespace

SetSample sample_mesh(const TriMesh4& mesh, double h, double grade) {
  require(h > 0.0 && grade >= 0.0, "sample_mesh: bad spacing");
  const Spacing sp{h, grade};
  std::vector<Vector4> pts(mesh.vertices.begin(), mesh.vertices.end());
  std::map<std::pair<int, int>, bool> edges;
  for (const auto& f : mesh.faces)
    for (int k = 0; k < 3; ++k) edges[std::minmax(f[k], f[(k + 1) % 3])] = true;
  for (const auto& [e, unused] : edges) {
    (void)unused;
    // walk each edge from both ends to the midpoint so both ends get the
    // finer spacing of the end nearer the origin
    const Vector4 mid = 0.5 * (mesh.vertices[e.first] + mesh.vertices[e.second]);
    sample_segment(mesh.vertices[e.first], mid, sp, pts);
    sample_segment(mesh.vertices[e.second], mid, sp, pts);
  }
  for (const auto& f : mesh.faces) sample_face(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]], sp, pts);
  std::sort(pts.begin(), pts.end(), [](const Vector4& u, const Vector4& v) {
    return std::lexicographical_compare(u.data(), u.data() + 4, v.data(), v.data() + 4);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  SetSample s;
  s.points = std::move(pts);
  s.resolution = h;
  s.grade = grade;
  return s;
}

}  // namespace planes4
