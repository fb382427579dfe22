#include "planes4/projection_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "planes4/errors.hpp"
#include "planes4/parallel.hpp"
#include "planes4/random.hpp"

namespace planes4 {

namespace {

constexpr double kPi = std::numbers::pi;

struct Objective {
  Compound6 c1;
  Compound6 c2;

  double operator()(const TwoVector& xi) const {
    return apply_compound(c1, xi).norm() + apply_compound(c2, xi).norm();
  }
};

struct Candidate {
  double value = -1.0;
  std::array<int, 4> index{};
  Vector4 x = Vector4::Zero();
  Vector4 y = Vector4::Zero();
};

// Higher value wins; ties go to the lexicographically smaller grid index.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

// Gram-Schmidt on (x, y). Returns false for a dependent pair.
bool orthonormalize(Vector4& x, Vector4& y) {
  const double nx = x.norm();
  if (nx < 1e-12) return false;
  x /= nx;
  y -= y.dot(x) * x;
  y -= y.dot(x) * x;
  const double ny = y.norm();
  if (ny < 1e-12) return false;
  y /= ny;
  return true;
}

struct AscentResult {
  double value;
  Vector4 x;
  Vector4 y;
  int iterations;
};

AscentResult ascend(const Objective& f, Vector4 x, Vector4 y, double step, int max_iters) {
  orthonormalize(x, y);
  double best = f(wedge(x, y));
  int it = 0;
  for (; it < max_iters && step > 1e-13; ++it) {
    bool improved = false;
    for (int k = 0; k < 8; ++k) {
      for (const double sign : {1.0, -1.0}) {
        Vector4 tx = x;
        Vector4 ty = y;
        (k < 4 ? tx[k] : ty[k - 4]) += sign * step;
        if (!orthonormalize(tx, ty)) continue;
        const double v = f(wedge(tx, ty));
        if (v > best) {
          best = v;
          x = tx;
          y = ty;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, x, y, it};
}

}  // namespace

double projection_sum(const Plane& p1, const Plane& p2, const TwoVector& xi) {
  require(std::abs(xi.norm() - 1.0) <= 1e-9, "projection_sum: 2-vector is not unit");
  require(std::abs(xi.pluecker()) <= 1e-9, "projection_sum: 2-vector is not simple");
  return apply_map2(projector(p1), xi).norm() + apply_map2(projector(p2), xi).norm();
}

BoundReport sup_projection_sum(const Plane& p1, const Plane& p2, const SearchConfig& cfg) {
  require(cfg.grid >= 16, "sup_projection_sum: grid density must be >= 16");
  require(cfg.ascent_steps >= 0 && cfg.grid_starts >= 1 && cfg.random_starts >= 0,
          "sup_projection_sum: invalid ascent configuration");
  const Objective f{compound(projector(p1)), compound(projector(p2))};
  const int n = cfg.grid;
  const double dt = (kPi / 2) / (n - 1);
  const double df = 2 * kPi / n;

  // Best grid point for every (t1, f1) slab.
  std::vector<Candidate> slab_best(static_cast<std::size_t>(n) * n);
  parallel_for(slab_best.size(), [&](std::size_t s) {
    const int i1 = static_cast<int>(s) / n;
    const int j1 = static_cast<int>(s) % n;
    const double t1 = i1 * dt;
    const double f1 = j1 * df;
    const Vector4 x(std::sin(t1) * std::cos(f1), std::sin(t1) * std::sin(f1), std::cos(t1), 0.0);
    const Vector4 F1(std::cos(t1) * std::cos(f1), std::cos(t1) * std::sin(f1), -std::sin(t1), 0.0);
    const Vector4 F2(-std::sin(f1), std::cos(f1), 0.0, 0.0);
    Candidate best;
    for (int i2 = 0; i2 < n; ++i2) {
      const double t2 = i2 * dt;
      for (int j2 = 0; j2 < n; ++j2) {
        const double f2 = j2 * df;
        const Vector4 y = std::sin(t2) * std::cos(f2) * F1 + std::sin(t2) * std::sin(f2) * F2 +
                          std::cos(t2) * Vector4::UnitW();
        const double v = f(wedge(x, y));
        if (v > best.value) best = {v, {i1, j1, i2, j2}, x, y};
      }
    }
    slab_best[s] = best;
  });

  std::sort(slab_best.begin(), slab_best.end(), better);
  std::vector<std::pair<Vector4, Vector4>> starts;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(cfg.grid_starts), slab_best.size());
  for (std::size_t i = 0; i < k; ++i) starts.emplace_back(slab_best[i].x, slab_best[i].y);
  // the planes themselves are natural candidates
  starts.emplace_back(p1.basis(0), p1.basis(1));
  starts.emplace_back(p2.basis(0), p2.basis(1));
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.random_starts; ++i) starts.push_back(random_orthonormal_pair(rng));

  std::vector<AscentResult> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    results[i] = ascend(f, starts[i].first, starts[i].second, df / 2, cfg.ascent_steps);
  });

  BoundReport report;
  std::size_t win = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value > results[win].value) win = i;
  report.sup_value = results[win].value;
  report.argmax = wedge(results[win].x, results[win].y);
  report.bound = wirtinger_bound(characteristic_angles(p1, p2).alpha1);
  report.samples = static_cast<std::size_t>(n) * n * n * n;
  for (const auto& r : results) {
    report.samples += static_cast<std::size_t>(r.iterations) * 16;
    report.refinement_iters += r.iterations;
  }
  return report;
}

double wirtinger_bound(double alpha1) {
  require(0.0 <= alpha1 && alpha1 <= kPi / 2, "wirtinger_bound: alpha1 outside [0, pi/2]");
  return 1.0 + 2.0 * std::cos(alpha1);
}

double angle_threshold(double eps) {
  require(eps > 0.0 && eps <= 2.0, "angle_threshold: eps outside (0, 2]");
  return std::acos(eps / 2.0);
}

double area_lower_bound(double eps) {
  require(eps >= 0.0, "area_lower_bound: eps must be non-negative");
  return 2.0 * kPi / (1.0 + eps);
}

}  // namespace planes4
