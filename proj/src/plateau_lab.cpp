#include "planes4/plateau_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "planes4/errors.hpp"
#include "planes4/parallel.hpp"
#include "planes4/projection_bounds.hpp"

namespace planes4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAnnulusRings = 64;

Vector4 circle_point(const Plane& p, double radius, double t) {
  return radius * (std::cos(t) * p.basis(0) + std::sin(t) * p.basis(1));
}

void add_quad_strip(TriMesh4& m, int ring_a, int ring_b, int n) {
  for (int j = 0; j < n; ++j) {
    const int j1 = (j + 1) % n;
    m.faces.push_back({ring_a + j, ring_b + j, ring_b + j1});
    m.faces.push_back({ring_a + j, ring_b + j1, ring_a + j1});
  }
}

int add_ring(TriMesh4& m, const std::vector<Vector4>& pts, bool fixed) {
  const auto start = static_cast<int>(m.vertices.size());
  for (const auto& p : pts) {
    m.vertices.push_back(p);
    m.fixed.push_back(fixed ? 1 : 0);
  }
  return start;
}

double total_area(const TriMesh4& m) { return area(m); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Improved: return "improved";
    case Verdict::CertifiedOptimal: return "certified-optimal";
    case Verdict::NoImprovementFound: break;
  }
  return "no-improvement-found";
}

TriMesh4 build_union_mesh(double alpha1, double alpha2, int n) {
  require(n >= 32, "build_union_mesh: need at least 32 boundary segments");
  const auto [p1, p2] = canonical_pair(alpha1, alpha2);
  TriMesh4 m;
  m.vertices.push_back(Vector4::Zero());
  m.fixed.push_back(0);
  for (const Plane* p : {&p1, &p2}) {
    std::vector<Vector4> rim;
    for (int j = 0; j < n; ++j) rim.push_back(circle_point(*p, 1.0, 2 * kPi * j / n));
    const int start = add_ring(m, rim, true);
    for (int j = 0; j < n; ++j) m.faces.push_back({0, start + j, start + (j + 1) % n});
  }
  return m;
}

TriMesh4 build_pinched_competitor(double alpha1, double alpha2, double pinch_radius, int n) {
  require(pinch_radius >= 0.0 && pinch_radius < 0.5, "build_pinched_competitor: pinch radius outside [0, 0.5)");
  if (pinch_radius == 0.0) return build_union_mesh(alpha1, alpha2, n);
  require(n >= 32, "build_pinched_competitor: need at least 32 boundary segments");
  require(pinch_radius >= 2.0 / n,
          "build_pinched_competitor: pinch radius too small for the boundary resolution");
  const auto [p1, p2] = canonical_pair(alpha1, alpha2);

  // rings of ratio about 1 + 2 pi / n keep triangles near equilateral; cap the
  // count, the outer part is flat anyway
  const double natural = std::log(1.0 / pinch_radius) / std::log1p(2 * kPi / n);
  const int rings = std::clamp(static_cast<int>(std::ceil(natural)), 1, kMaxAnnulusRings);

  TriMesh4 m;
  std::array<int, 2> inner{};
  const Plane* planes[2] = {&p1, &p2};
  for (int k = 0; k < 2; ++k) {
    int prev = -1;
    for (int i = 0; i <= rings; ++i) {
      const double r = i == rings ? 1.0 : pinch_radius * std::pow(1.0 / pinch_radius, double(i) / rings);
      std::vector<Vector4> pts;
      for (int j = 0; j < n; ++j) pts.push_back(circle_point(*planes[k], r, 2 * kPi * j / n));
      const int start = add_ring(m, pts, i == rings);
      if (i == 0) inner[k] = start;
      if (prev >= 0) add_quad_strip(m, prev, start, n);
      prev = start;
    }
  }

  const double gap = (circle_point(p1, pinch_radius, 0.0) - circle_point(p2, pinch_radius, 0.0)).norm();
  const double edge = 2 * kPi * pinch_radius / n;
  const int segments = std::max(1, static_cast<int>(std::ceil(gap / edge)));
  int prev = inner[0];
  for (int t = 1; t < segments; ++t) {
    const double s = static_cast<double>(t) / segments;
    std::vector<Vector4> pts;
    for (int j = 0; j < n; ++j) {
      const double phi = 2 * kPi * j / n;
      pts.push_back((1 - s) * circle_point(p1, pinch_radius, phi) + s * circle_point(p2, pinch_radius, phi));
    }
    const int start = add_ring(m, pts, false);
    add_quad_strip(m, prev, start, n);
    prev = start;
  }
  add_quad_strip(m, prev, inner[1], n);
  validate(m);
  return m;
}

std::vector<Vector4> area_gradient(const TriMesh4& mesh) {
  std::vector<Vector4> g(mesh.vertices.size(), Vector4::Zero());
  for (const auto& f : mesh.faces) {
    const double a = 0.5 * wedge(mesh.vertices[f[1]] - mesh.vertices[f[0]],
                                 mesh.vertices[f[2]] - mesh.vertices[f[0]]).norm();
    if (a < kMinFaceArea) continue;
    for (int k = 0; k < 3; ++k) {
      const Vector4& pi = mesh.vertices[f[k]];
      const Vector4& pj = mesh.vertices[f[(k + 1) % 3]];
      const Vector4& pk = mesh.vertices[f[(k + 2) % 3]];
      const Vector4 v = pi - pj;
      const Vector4 e = pk - pj;
      g[f[k]] += (e.squaredNorm() * v - v.dot(e) * e) / (4 * a);
    }
  }
  return g;
}

OptimizeResult minimize_area(const TriMesh4& mesh, const OptimizerConfig& opt) {
  validate(mesh);
  require(opt.max_iters >= 0 && opt.step > 0.0 && opt.tol_grad >= 0.0,
          "minimize_area: invalid optimizer configuration");
  require(std::any_of(mesh.fixed.begin(), mesh.fixed.end(), [](char c) { return c != 0; }),
          "minimize_area: mesh has no fixed vertices");

  OptimizeResult res;
  res.mesh = mesh;
  double current = total_area(res.mesh);
  res.trace.push_back(current);
  double step = opt.step;
  const std::size_t nv = mesh.vertices.size();

  for (int it = 0; it < opt.max_iters; ++it) {
    const std::vector<Vector4> grad = area_gradient(res.mesh);
    std::vector<double> mass(nv, 0.0);
    for (std::size_t f = 0; f < res.mesh.faces.size(); ++f) {
      const double a = face_area(res.mesh, static_cast<int>(f));
      for (const int v : res.mesh.faces[f]) mass[v] += a / 3;
    }
    std::vector<Vector4> dir(nv, Vector4::Zero());
    double gnorm2 = 0.0, slope = 0.0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (res.mesh.fixed[v] || mass[v] <= 0.0) continue;
      dir[v] = -grad[v] / mass[v];
      gnorm2 += grad[v].squaredNorm() / mass[v];
      slope += grad[v].dot(dir[v]);
    }
    res.grad_norm = std::sqrt(gnorm2);
    if (res.grad_norm < opt.tol_grad) break;

    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries, step *= 0.5) {
      TriMesh4 trial = res.mesh;
      for (std::size_t v = 0; v < nv; ++v) {
        if (res.mesh.fixed[v]) continue;
        Vector4 p = res.mesh.vertices[v] + step * dir[v];
        const double r = p.norm();
        if (r > 1.0) p /= r;
        trial.vertices[v] = p;
      }
      bool degenerate = false;
      for (std::size_t f = 0; f < trial.faces.size() && !degenerate; ++f)
        degenerate = face_area(trial, static_cast<int>(f)) < kMinFaceArea;
      if (degenerate) continue;
      const double a = total_area(trial);
      // Armijo condition on the unprojected direction
      if (a <= current + 1e-4 * step * slope && a <= current) {
        res.mesh = std::move(trial);
        current = a;
        res.trace.push_back(current);
        accepted = true;
        break;
      }
    }
    ++res.iterations;
    if (!accepted) {
      res.line_search_failed = true;
      break;
    }
    step *= 1.5;
  }
  return res;
}

Certificate certificate_lower_bound(const TriMesh4& mesh, const Plane& p1, const Plane& p2,
                                    int resolution) {
  require(resolution >= 128, "certificate_lower_bound: resolution must be at least 128");
  validate(mesh);
  Certificate c;
  const Plane* planes[2] = {&p1, &p2};
  for (int k = 0; k < 2; ++k) {
    c.shadow[k] = shadow_area(mesh, *planes[k], resolution);
    c.covers[k] = c.shadow[k] >= (1.0 - 2.0 / resolution) * kPi;
  }
  double face_max = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    face_max = std::max(face_max, projection_sum(p1, p2, face_tangent(mesh, static_cast<int>(f))));
  c.lambda = std::min(wirtinger_bound(characteristic_angles(p1, p2).alpha1), face_max);
  c.bound = (c.shadow[0] + c.shadow[1]) / c.lambda;
  // misclassified cells sit within half a cell diagonal of the shadow
  // boundary, which for a covering shadow is the unit circle
  c.tolerance = 2 * (2 * kPi) * (std::sqrt(2.0) / resolution) / 2 / c.lambda;
  return c;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  require(cfg.alpha1 > 0.0 && cfg.alpha1 <= cfg.alpha2 && cfg.alpha2 <= kPi / 2,
          "run_experiment: need 0 < alpha1 <= alpha2 <= pi/2");
  ExperimentReport rep;
  rep.config = cfg;
  rep.reference_area = 2 * kPi;
  rep.mesh_tolerance = 2 * kPi - area(build_union_mesh(cfg.alpha1, cfg.alpha2, cfg.boundary_segments));

  const TriMesh4 start =
      build_pinched_competitor(cfg.alpha1, cfg.alpha2, cfg.pinch_radius, cfg.boundary_segments);
  OptimizeResult opt = minimize_area(start, cfg.optimizer);
  rep.initial_area = opt.trace.front();
  rep.final_area = opt.trace.back();
  rep.area_trace = std::move(opt.trace);
  rep.line_search_failed = opt.line_search_failed;
  rep.final_mesh = std::move(opt.mesh);

  const auto [p1, p2] = canonical_pair(cfg.alpha1, cfg.alpha2);
  rep.certificate = certificate_lower_bound(rep.final_mesh, p1, p2, cfg.certificate_resolution);
  const Certificate& c = rep.certificate;
  const double tol = rep.mesh_tolerance + c.tolerance;
  if (rep.final_area < rep.reference_area - 2 * rep.mesh_tolerance) {
    rep.verdict = Verdict::Improved;
  } else if (c.covers[0] && c.covers[1] && rep.final_area >= c.bound - tol &&
             c.bound >= rep.reference_area - tol) {
    rep.verdict = Verdict::CertifiedOptimal;
  }
  return rep;
}

std::vector<ExperimentReport> run_sweep(const std::vector<ExperimentConfig>& cfgs) {
  std::vector<ExperimentReport> out(cfgs.size());
  parallel_for(cfgs.size(), [&](std::size_t i) { out[i] = run_experiment(cfgs[i]); });
  auto key = [](const ExperimentReport& r) {
    const auto& c = r.config;
    return std::make_tuple(c.alpha1, c.alpha2, c.boundary_segments, c.pinch_radius, c.seed);
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const ExperimentReport& a, const ExperimentReport& b) { return key(a) < key(b); });
  return out;
}

}  // namespace planes4
