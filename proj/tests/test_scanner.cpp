#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "planes4/errors.hpp"
#include "planes4/multiscale_scanner.hpp"
#include "planes4/random.hpp"
#include "scanner_fixtures.hpp"

using namespace planes4;
using fixture::flat_p0;
using fixture::translated_p0;

namespace {

// Samples of the boundary of the bi-cylinder D(0, rho): |a| = rho, |b| <= rho
// and the symmetric piece, in (a, b) coordinates of P0.
SetSample bicylinder_boundary(double rho, double h) {
  SetSample s;
  s.resolution = h;
  const int ring = static_cast<int>(std::ceil(2 * M_PI * rho / h));
  const int k = static_cast<int>(std::floor(rho / h));
  for (int t = 0; t < ring; ++t) {
    const double th = 2 * M_PI * t / ring;
    const Eigen::Vector2d a(rho * std::cos(th), rho * std::sin(th));
    for (int i = -k; i <= k; ++i)
      for (int j = -k; j <= k; ++j) {
        const Eigen::Vector2d b(i * h, j * h);
        if (b.norm() > rho) continue;
        s.points.emplace_back(a.x(), a.y(), b.x(), b.y());
        s.points.emplace_back(b.x(), b.y(), a.x(), a.y());
      }
  }
  return s;
}

}  // namespace

TEST(Clip, Examples) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const SetSample e = unite(disk_sample(p1, 1.5, 0.05), disk_sample(p2, 1.5, 0.05));
  const SetSample c = bicylinder_clip(e, p1, p2, Vector4::Zero(), 1.0);
  std::size_t expect = 0;
  for (const auto& y : e.points) expect += y.norm() <= 1.0;
  EXPECT_EQ(c.points.size(), expect);
  for (const auto& y : c.points) EXPECT_LE(y.norm(), 1.0);

  const SetSample again = bicylinder_clip(c, p1, p2, Vector4::Zero(), 1.0);
  EXPECT_EQ(again.points, c.points);

  const double h = 1e-3;
  EXPECT_FALSE(in_bicylinder(Vector4(1 + h, 0, 0, 0), p1, p2, Vector4::Zero(), 1.0));
  EXPECT_TRUE(in_bicylinder(Vector4(1, 0, 0, 0), p1, p2, Vector4::Zero(), 1.0));
  EXPECT_TRUE(in_bicylinder(Vector4(0.7, 0.7, 0.7, 0.7), p1, p2, Vector4::Zero(), 1.0));
  EXPECT_THROW(bicylinder_clip(e, p1, p2, Vector4::Zero(), 0.0), ConfigError);
}

TEST(Clip, ContainsBallAndIsIdempotentOnRandomSets) {
  Rng rng(31);
  const auto [p1, p2] = canonical_pair(1.2, 1.4);
  SetSample e;
  for (int i = 0; i < 2000; ++i) e.points.push_back(2 * rng.uniform() * random_unit_vector(rng));
  const Vector4 x(0.1, -0.2, 0.3, 0);
  const SetSample c = bicylinder_clip(e, p1, p2, x, 0.8);
  EXPECT_EQ(bicylinder_clip(c, p1, p2, x, 0.8).points, c.points);
  for (const auto& y : e.points)
    if ((y - x).norm() <= 0.8) {
      EXPECT_TRUE(in_bicylinder(y, p1, p2, x, 0.8));
    }
}

TEST(RelativeDistance, Examples) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const double h = 0.01;
  const SetSample e = translated_p0(Vector4::Zero(), 1.6, h);
  EXPECT_EQ(relative_distance(e, e, p1, p2, Vector4::Zero(), 1.0), 0.0);
  for (const double delta : {0.02, 0.05}) {
    const SetSample f = translated_p0(Vector4(0, 0, delta, 0), 1.6, h);
    const double d = relative_distance(e, f, p1, p2, Vector4::Zero(), 1.0);
    EXPECT_LE(d, delta + 2 * h);
    EXPECT_GE(d, delta - 2 * h);
  }
  EXPECT_EQ(relative_distance(e, e, p1, p2, Vector4(5, 5, 5, 5), 1.0), 0.0);
}

TEST(RelativeDistance, NestedBicylinderBoundaries) {
  // boundaries of D(0, 1 + 1/n) and D(0, 1 - 1/n): the clipped Hausdorff
  // distance is infinite because the outer one misses D(0, 1) entirely, but
  // the relative distance goes to zero
  const auto [p1, p2] = standard_orthogonal_pair();
  const double h = 0.06;
  double prev = 1e9;
  for (const int n : {4, 8, 16}) {
    const SetSample en = bicylinder_boundary(1.0 + 1.0 / n, h);
    const SetSample fn = bicylinder_boundary(1.0 - 1.0 / n, h);
    EXPECT_TRUE(bicylinder_clip(en, p1, p2, Vector4::Zero(), 1.0).points.empty());
    EXPECT_FALSE(bicylinder_clip(fn, p1, p2, Vector4::Zero(), 1.0).points.empty());
    const double d = relative_distance(en, fn, p1, p2, Vector4::Zero(), 1.0);
    EXPECT_NEAR(d, 2.0 / n, h);
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(Translate, AgreesWithGenericDistance) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const fixture::Dimple d{0.2, 0.15};
  const SetSample e = fixture::dimple_uniform(d, 1.0, 0.01);
  for (const double t : {0.0, 0.01, 0.02}) {
    const Vector4 q(t, 0, t, 0);
    const double fast = relative_distance_to_translate(e, p1, p2, q, Vector4::Zero(), 0.5, 0.005);
    const double slow = relative_distance(e, translated_p0(q, 1.0, 0.005), p1, p2, Vector4::Zero(), 0.5);
    EXPECT_NEAR(fast, slow, 0.03);
  }
}

TEST(BestTranslation, RecoversExactTranslate) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const Vector4 v(0.02, -0.01, 0.015, 0.005);
  const SetSample e = translated_p0(v, 1.2, 0.005);
  const TranslationFit fit = best_translation(e, p1, p2, Vector4::Zero(), 0.5);
  EXPECT_LT((fit.q - v).norm(), 0.01);
  EXPECT_LT(fit.dist, 0.02);
}

TEST(BestTranslation, BumpIsHalvedByTheFit) {
  // a wide bump of height beta on the first sheet: unfit it sits beta away,
  // the best translate splits the difference
  const auto [p1, p2] = standard_orthogonal_pair();
  const double beta = 0.02, sigma = 0.1, r = 0.5;
  const auto bump = [&](const Eigen::Vector2d& z) {
    return Vector4(z.x(), z.y(), beta * std::exp(-z.squaredNorm() / (2 * sigma * sigma)), 0);
  };
  const SetSample e = unite(graded_disk_sample(bump, 1.0, 0.004, 0.0), disk_sample(p2, 1.0, 0.004));
  const double unfit = relative_distance_to_translate(e, p1, p2, Vector4::Zero(), Vector4::Zero(), r, 0.004);
  EXPECT_NEAR(unfit, beta / r, 0.03 * beta / r);
  const TranslationFit fit = best_translation(e, p1, p2, Vector4::Zero(), r);
  EXPECT_NEAR(fit.dist, beta / (2 * r), 0.1 * beta / r);
  EXPECT_NEAR(fit.q[2], beta / 2, 0.1 * beta);
}

TEST(BestTranslation, EmptyWindowAndDeterminism) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const SetSample e = translated_p0(Vector4::Zero(), 1.0, 0.02);
  const Vector4 far(9, 9, 9, 9);
  const TranslationFit none = best_translation(e, p1, p2, far, 0.5);
  EXPECT_EQ(none.q, far);
  EXPECT_EQ(none.dist, 0.0);

  const fixture::Dimple d{0.1, 0.15};
  const SetSample de = fixture::dimple_uniform(d, 1.0, 0.01);
  const TranslationFit a = best_translation(de, p1, p2, Vector4::Zero(), 0.25);
  const TranslationFit b = best_translation(de, p1, p2, Vector4::Zero(), 0.25);
  EXPECT_EQ(a.q, b.q);
  EXPECT_EQ(a.dist, b.dist);
  setenv("PLANES4_THREADS", "1", 1);
  const TranslationFit c = best_translation(de, p1, p2, Vector4::Zero(), 0.25);
  unsetenv("PLANES4_THREADS");
  EXPECT_EQ(a.q, c.q);
  EXPECT_EQ(a.dist, c.dist);
  // the dimple is symmetric under swapping the sheets, so the fit is too
  EXPECT_NEAR(a.q[0], a.q[2], 0.01 * 0.25);
}

TEST(EpsilonProcess, FlatP0HitsTheFloor) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const double eps = 0.05;
  ScanConfig cfg;
  cfg.eps = eps;
  cfg.floor = 1.0 / 64;
  const ScanReport rep = epsilon_process(flat_p0(1e-3, eps / 4), p1, p2, cfg);
  EXPECT_TRUE(rep.floor_hit);
  EXPECT_FALSE(rep.stopped);
  EXPECT_EQ(rep.steps.size(), 6u);
  for (const auto& s : rep.steps) {
    EXPECT_LE(s.best_distance, eps);
    EXPECT_LT(s.center.norm(), 1e-9 + s.scale * eps);
  }
}

TEST(EpsilonProcess, RejectsBadConfig) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const SetSample e = flat_p0(0.01, 0.0);
  ScanConfig cfg;
  cfg.eps = 0.1;
  EXPECT_THROW(epsilon_process(e, p1, p2, cfg), ConfigError);
  cfg.eps = 0.05;
  cfg.floor = 0.015;
  EXPECT_THROW(epsilon_process(e, p1, p2, cfg), ConfigError);
}

namespace {

void expect_drift_invariants(const ScanReport& rep, double eps) {
  const auto& st = rep.steps;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const double tol_i = st[i].tolerance * st[i].scale;
    if (i + 1 < st.size()) {
      EXPECT_LE((st[i + 1].center - st[i].center).norm(), 12 * st[i].scale * eps + tol_i);
      EXPECT_LE(st[i + 1].carry_distance, 2 * eps + st[i + 1].tolerance);
    }
    for (std::size_t j = i + 1; j < st.size(); ++j)
      EXPECT_LE((st[j].center - st[i].center).norm(), 24 * eps * st[i].scale + 2 * tol_i);
  }
  if (rep.stopped) {
    EXPECT_GT(st.back().best_distance, eps);
    EXPECT_LE(rep.o_k.norm(), 12 * eps + st.front().tolerance * st.front().scale);
  }
}

}  // namespace

TEST(EpsilonProcess, DimpleStopsNearBruteForceScale) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const double eps = 0.05;
  for (const double w : {0.12}) {
    const fixture::Dimple d{w, 3 * eps};
    ScanConfig cfg;
    cfg.eps = eps;
    cfg.floor = 1.0 / 128;
    const ScanReport rep = epsilon_process(fixture::dimple_graded(d, 1e-4, eps / 4), p1, p2, cfg);
    const double truth = fixture::brute_force_critical_scale(d, eps, cfg.floor);
    ASSERT_GT(truth, 0.0);
    ASSERT_TRUE(rep.stopped) << w;
    EXPECT_LE(std::abs(std::log2(rep.r_k / truth)), 1.0) << w << " " << rep.r_k << " " << truth;
    expect_drift_invariants(rep, eps);
    EXPECT_GT(rep.dist_double, 0.0);
  }
}

TEST(Sampling, GradedSpacingBound) {
  const double h = 1e-3, grade = 0.02;
  const SetSample s = graded_disk_sample([&](const Eigen::Vector2d& z) -> Vector4 { return {z.x(), z.y(), 0, 0}; }, 1.0, h, grade);
  // every probe point of the disk has a sample within the local spacing
  Rng rng(33);
  SetSample probe;
  for (int i = 0; i < 500; ++i) {
    const double r = std::sqrt(rng.uniform()), t = rng.uniform(0, 2 * M_PI);
    probe.points.emplace_back(r * std::cos(t), r * std::sin(t), 0, 0);
  }
  for (const auto& y : probe.points) {
    double d = 1e300;
    for (const auto& p : s.points) d = std::min(d, (p - y).norm());
    EXPECT_LE(d, std::max(h, grade * y.norm() * (1 + grade))) << y.transpose();
  }
  EXPECT_EQ(s.spacing_near(Vector4::Zero(), 0.01), std::max(h, grade * 0.02));
}

TEST(Sampling, MeshSampleRespectsSpacing) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const TriMesh4 m = fan_disk(p1, 16);
  const SetSample s = sample_mesh(m, 0.05);
  EXPECT_GT(s.points.size(), m.vertices.size());
  for (const auto& y : s.points) EXPECT_LE(y.norm(), 1.0 + 1e-12);
  // exact duplicates are removed
  auto sorted = s.points;
  std::sort(sorted.begin(), sorted.end(), [](const Vector4& u, const Vector4& v) {
    return std::lexicographical_compare(u.data(), u.data() + 4, v.data(), v.data() + 4);
  });
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  const SetSample g = sample_mesh(m, 0.01, 0.2);
  EXPECT_LT(g.points.size(), sample_mesh(m, 0.01).points.size());

  // covering: random surface points against the samples, brute force
  Rng rng(35);
  for (const SetSample* e : {&s, &g}) {
    double worst = 0.0;
    for (int i = 0; i < 1500; ++i) {
      const auto& f = m.faces[static_cast<std::size_t>(rng.uniform() * m.faces.size())];
      double a = rng.uniform(), b = rng.uniform();
      if (a + b > 1) a = 1 - a, b = 1 - b;
      const Vector4 y = m.vertices[f[0]] + a * (m.vertices[f[1]] - m.vertices[f[0]]) +
                        b * (m.vertices[f[2]] - m.vertices[f[0]]);
      double d = std::numeric_limits<double>::infinity();
      for (const auto& z : e->points) d = std::min(d, (z - y).norm());
      worst = std::max(worst, d / std::max(e->resolution, e->grade * y.norm()));
    }
    EXPECT_LE(worst, 1.0);
  }
}
