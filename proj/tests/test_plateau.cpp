#include <cmath>

#include <gtest/gtest.h>

#include "planes4/errors.hpp"
#include "planes4/plateau_lab.hpp"
#include "planes4/projection_bounds.hpp"
#include "planes4/random.hpp"

using namespace planes4;

TEST(UnionMesh, Counts) {
  const TriMesh4 m = build_union_mesh(0.7, 1.1, 64);
  EXPECT_EQ(m.vertices.size(), 129u);
  EXPECT_EQ(m.faces.size(), 128u);
  EXPECT_EQ(std::count(m.fixed.begin(), m.fixed.end(), 1), 128);
  EXPECT_EQ(euler_characteristic(m), 1);
  EXPECT_EQ(connected_components(m), 1);
  EXPECT_EQ(m.vertices[0], Vector4::Zero());
  // the origin is the only vertex used by faces of both disks
  int shared = 0;
  for (int v = 0; v < 129; ++v) {
    bool first = false, second = false;
    for (std::size_t f = 0; f < m.faces.size(); ++f)
      for (const int w : m.faces[f])
        if (w == v) (f < 64 ? first : second) = true;
    shared += first && second;
  }
  EXPECT_EQ(shared, 1);
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    if (m.fixed[v]) {
      EXPECT_NEAR(m.vertices[v].norm(), 1.0, 1e-15);
    }
  EXPECT_NEAR(area(build_union_mesh(M_PI / 2, M_PI / 2, 256)), 2 * M_PI, 1e-2);
  EXPECT_THROW(build_union_mesh(1.0, 1.2, 16), ConfigError);
}

TEST(PinchedCompetitor, Topology) {
  for (const double a : {M_PI / 6, M_PI / 2}) {
    const TriMesh4 m = build_pinched_competitor(a, a, 0.1, 64);
    EXPECT_NO_THROW(validate(m));
    EXPECT_EQ(euler_characteristic(m), 0);
    EXPECT_EQ(connected_components(m), 1);
    EXPECT_EQ(std::count(m.fixed.begin(), m.fixed.end(), 1), 128);
    EXPECT_TRUE(std::isfinite(area(m)));
  }
}

TEST(PinchedCompetitor, Examples) {
  EXPECT_GT(area(build_pinched_competitor(M_PI / 2, M_PI / 2, 0.1, 256)), 2 * M_PI);
  const TriMesh4 zero = build_pinched_competitor(0.4, 0.9, 0.0, 64);
  const TriMesh4 u = build_union_mesh(0.4, 0.9, 64);
  EXPECT_EQ(zero.vertices, u.vertices);
  EXPECT_EQ(zero.faces, u.faces);
  EXPECT_THROW(build_pinched_competitor(1.0, 1.0, 0.01, 64), ConfigError);
  EXPECT_THROW(build_pinched_competitor(1.0, 1.0, 0.5, 64), ConfigError);
  EXPECT_THROW(build_pinched_competitor(1.0, 1.0, -0.1, 64), ConfigError);
}

TEST(PinchedCompetitor, ShadowsCoverBothDisks) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const TriMesh4 m = build_pinched_competitor(M_PI / 2, M_PI / 2, 0.2, 128);
  EXPECT_GE(shadow_area(m, p1, 256), 0.99 * M_PI);
  EXPECT_GE(shadow_area(m, p2, 256), 0.99 * M_PI);
}

TEST(AreaGradient, MatchesFiniteDifferences) {
  Rng rng(51);
  TriMesh4 m = build_pinched_competitor(0.8, 1.2, 0.2, 32);
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    if (!m.fixed[v]) m.vertices[v] += 0.01 * random_unit_vector(rng);
  const std::vector<Vector4> g = area_gradient(m);
  const double h = 1e-6;
  for (const std::size_t v : {std::size_t{0}, std::size_t{5}, std::size_t{40}, std::size_t{100}}) {
    for (int k = 0; k < 4; ++k) {
      TriMesh4 a = m, b = m;
      a.vertices[v][k] += h;
      b.vertices[v][k] -= h;
      EXPECT_NEAR(g[v][k], (area(a) - area(b)) / (2 * h), 1e-6);
    }
  }
}

TEST(Minimize, FlatDiskIsStationary) {
  const TriMesh4 d = fan_disk(standard_orthogonal_pair().first, 64);
  const OptimizeResult r = minimize_area(d, {});
  for (std::size_t v = 0; v < d.vertices.size(); ++v) EXPECT_LE((r.mesh.vertices[v] - d.vertices[v]).norm(), 1e-8);
  EXPECT_LE(r.trace.back(), r.trace.front());
}

TEST(Minimize, TraceMonotoneBoundaryFixedAndInsideBall) {
  Rng rng(52);
  for (const double a : {M_PI / 6, M_PI / 2}) {
    TriMesh4 m = build_pinched_competitor(a, a, 0.2, 64);
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
      if (!m.fixed[v]) m.vertices[v] += 0.02 * random_unit_vector(rng);
    OptimizerConfig cfg;
    cfg.max_iters = 60;
    const OptimizeResult r = minimize_area(m, cfg);
    ASSERT_GE(r.trace.size(), 2u);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1] + 1e-12);
    EXPECT_NEAR(r.trace.back(), area(r.mesh), 1e-12);
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
      if (m.fixed[v]) {
        EXPECT_EQ(r.mesh.vertices[v], m.vertices[v]);
      }
      EXPECT_LE(r.mesh.vertices[v].norm(), 1.0 + 1e-15);
    }
  }
}

TEST(Minimize, DeterministicAndValidated) {
  const TriMesh4 m = build_pinched_competitor(M_PI / 6, M_PI / 6, 0.2, 32);
  OptimizerConfig cfg;
  cfg.max_iters = 20;
  const OptimizeResult a = minimize_area(m, cfg), b = minimize_area(m, cfg);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.mesh.vertices, b.mesh.vertices);
  cfg.step = 0.0;
  EXPECT_THROW(minimize_area(m, cfg), ConfigError);
  TriMesh4 loose = m;
  std::fill(loose.fixed.begin(), loose.fixed.end(), 0);
  EXPECT_THROW(minimize_area(loose, {}), ConfigError);
}

TEST(Certificate, UnionOfOrthogonalDisks) {
  const auto [p1, p2] = standard_orthogonal_pair();
  const TriMesh4 m = build_union_mesh(M_PI / 2, M_PI / 2, 256);
  const Certificate c = certificate_lower_bound(m, p1, p2, 512);
  EXPECT_TRUE(c.covers[0]);
  EXPECT_TRUE(c.covers[1]);
  EXPECT_NEAR(c.lambda, 1.0, 1e-12);
  EXPECT_NEAR(c.bound, 2 * M_PI, c.tolerance + 1e-3);
  EXPECT_GE(area(m), c.bound - c.tolerance - (2 * M_PI - area(m)));
  EXPECT_THROW(certificate_lower_bound(m, p1, p2, 64), ConfigError);
}

TEST(Certificate, SoundOnPerturbedOrthogonalMeshes) {
  Rng rng(53);
  const auto [p1, p2] = standard_orthogonal_pair();
  for (int trial = 0; trial < 6; ++trial) {
    TriMesh4 m = build_pinched_competitor(M_PI / 2, M_PI / 2, 0.1 + 0.05 * trial, 64);
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
      if (!m.fixed[v]) {
        m.vertices[v] += 0.03 * random_unit_vector(rng);
        if (m.vertices[v].norm() > 1) m.vertices[v].normalize();
      }
    const Certificate c = certificate_lower_bound(m, p1, p2, 256);
    EXPECT_GE(area(m), c.bound - c.tolerance);
  }
}

TEST(Certificate, ThresholdAngleBound) {
  const double a = angle_threshold(0.1);
  const auto [p1, p2] = canonical_pair(a, a);
  const TriMesh4 m = build_union_mesh(a, a, 256);
  const Certificate c = certificate_lower_bound(m, p1, p2, 512);
  EXPECT_LE(c.lambda, 1.1 + 1e-9);
  if (c.covers[0] && c.covers[1]) {
    EXPECT_GE(c.bound, 2 * M_PI / 1.1 - c.tolerance);
  }
  EXPECT_TRUE(c.covers[0] && c.covers[1]);
}

TEST(Experiment, OrthogonalUnionIsCertified) {
  ExperimentConfig cfg;
  cfg.boundary_segments = 128;
  cfg.optimizer.max_iters = 20;
  const ExperimentReport r = run_experiment(cfg);
  EXPECT_EQ(r.verdict, Verdict::CertifiedOptimal);
  EXPECT_EQ(to_string(r.verdict), "certified-optimal");
  EXPECT_EQ(r.reference_area, 2 * M_PI);
  EXPECT_GT(r.mesh_tolerance, 0.0);
  EXPECT_LE(r.final_area, r.initial_area + 1e-12);
}

TEST(Experiment, SweepVerdictsAndOrdering) {
  std::vector<ExperimentConfig> cfgs;
  for (const double pinch : {0.3, 0.1}) {
    for (const double a : {M_PI / 2, M_PI / 6}) {
      ExperimentConfig c;
      c.alpha1 = c.alpha2 = a;
      c.pinch_radius = pinch;
      c.boundary_segments = 64;
      c.optimizer.max_iters = 80;
      c.certificate_resolution = 256;
      cfgs.push_back(c);
    }
  }
  const std::vector<ExperimentReport> reps = run_sweep(cfgs);
  ASSERT_EQ(reps.size(), 4u);
  for (std::size_t i = 1; i < reps.size(); ++i) {
    const auto& x = reps[i - 1].config;
    const auto& y = reps[i].config;
    EXPECT_TRUE(std::tie(x.alpha1, x.pinch_radius) < std::tie(y.alpha1, y.pinch_radius));
  }
  bool improved = false;
  for (const auto& r : reps) {
    for (std::size_t i = 1; i < r.area_trace.size(); ++i) EXPECT_LE(r.area_trace[i], r.area_trace[i - 1] + 1e-12);
    if (r.config.alpha1 == M_PI / 2) {
      EXPECT_NE(r.verdict, Verdict::Improved);
      EXPECT_TRUE(r.certificate.covers[0] && r.certificate.covers[1]);
      EXPECT_GE(r.final_area, r.certificate.bound - r.mesh_tolerance - r.certificate.tolerance);
    } else {
      improved |= r.verdict == Verdict::Improved;
    }
  }
  EXPECT_TRUE(improved);
}

TEST(Experiment, RejectsBadAngles) {
  ExperimentConfig cfg;
  cfg.alpha1 = 1.2;
  cfg.alpha2 = 1.0;
  EXPECT_THROW(run_experiment(cfg), ConfigError);
  cfg.alpha1 = 0.0;
  EXPECT_THROW(run_experiment(cfg), ConfigError);
  EXPECT_EQ(to_string(Verdict::NoImprovementFound), "no-improvement-found");
  EXPECT_EQ(to_string(Verdict::Improved), "improved");
}
