#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "planes4/grassmann.hpp"
#include "planes4/surfaces.hpp"

namespace planes4 {

// Finite sample of a set E in R^4. Local spacing near y is at most
// max(resolution, grade * |y|); grade 0 means a uniform sample.
struct SetSample {
  std::vector<Vector4> points;
  double resolution = 0.0;
  double grade = 0.0;

  // Spacing bound anywhere inside the bi-cylinder D(x, r).
  double spacing_near(const Vector4& x, double r) const;
};

// Closed bi-cylinder test |p1(y - x)| <= r and |p2(y - x)| <= r.
bool in_bicylinder(const Vector4& y, const Plane& p1, const Plane& p2, const Vector4& x, double r);

SetSample bicylinder_clip(const SetSample& e, const Plane& p1, const Plane& p2,
                          const Vector4& x, double r);

// (1/r) max(sup over E in D(x,r) of d(., F), sup over F in D(x,r) of d(., E)),
// distances taken to the whole other sample. Zero when both clips are empty.
double relative_distance(const SetSample& e, const SetSample& f, const Plane& p1,
                         const Plane& p2, const Vector4& x, double r);

// Same quantity with F the translate (p1 + q) u (p2 + q): the E side uses the
// exact distance to the planes, the plane side is sampled on a square grid of
// the given spacing in each plane.
double relative_distance_to_translate(const SetSample& e, const Plane& p1, const Plane& p2,
                                      const Vector4& q, const Vector4& x, double r,
                                      double spacing);

struct TranslationSearch {
  double eps = 0.05;          // scale of interest; sets sampling and stopping
  int grid = 3;               // coarse nodes per coordinate over [x - r/2, x + r/2]
  double search_spacing = 1.0;  // plane-side spacing during search, units of eps * r
  double search_voxel = 0.25;   // E decimation during search, units of eps * r
  double final_spacing = 0.25;  // plane-side spacing of the reported distance
  int max_evaluations = 2000;
};

struct TranslationFit {
  Vector4 q = Vector4::Zero();
  double dist = 0.0;
  int evaluations = 0;
};

// Minimizes relative_distance_to_translate over q in the cube |q - x|_inf <=
// r/2: coarse grid (ties go to the lexicographically first node), then a
// pattern search over axis and pairwise-diagonal moves with step halving,
// until a full step level at or below eps r / 16 improves by less than
// 1e-4 eps. The E side of the search objective is decimated to voxels and
// the plane side sampled coarsely; the reported distance is recomputed on
// all of E in the window at final_spacing.
TranslationFit best_translation(const SetSample& e, const Plane& p1, const Plane& p2,
                                const Vector4& x, double r, const TranslationSearch& cfg = {});

struct ScanConfig {
  double eps = 0.05;
  double floor = 1.0 / 256;
  TranslationSearch search;
};

struct ScanStep {
  int n = 0;
  double scale = 0.0;        // s_n = 2^-n
  Vector4 center;            // q_n
  Vector4 fit;               // best translate found in D(q_n, s_n)
  double best_distance = 0.0;
  double carry_distance = 0.0;  // distance to p + q_n itself in D(q_n, s_n)
  double tolerance = 0.0;       // 2 h / s_n for the local spacing h
};

struct ScanReport {
  std::vector<Vector4> centers;
  std::vector<double> scales;
  std::vector<ScanStep> steps;
  bool stopped = false;
  bool floor_hit = false;
  Vector4 o_k = Vector4::Zero();
  double r_k = 0.0;
  double dist_shrunk = 0.0;  // distance to p + o_k in D(o_k, 2 r_k (1 - 12 eps))
  double dist_double = 0.0;  // distance to p + o_k in D(o_k, 2 r_k)
};

// Dyadic stopping-time scan: q_1 = 0; at step n fit a translate in D(q_n,
// 2^-n); stop when the best distance exceeds eps, otherwise move to the fit.
// Gives up with floor_hit once 2^-n drops below the floor.
ScanReport epsilon_process(const SetSample& e, const Plane& p1, const Plane& p2,
                           const ScanConfig& cfg);

// Sample of the image of a disk of the given radius under `sheet`: a square
// grid of spacing h out to radius h / grade, then geometric rings of ratio
// 1 + grade with about 2 pi / grade points each.
SetSample graded_disk_sample(const std::function<Vector4(const Eigen::Vector2d&)>& sheet,
                             double radius, double h, double grade);

// Uniform sample of the disk of the given radius in a plane (grade 0).
SetSample disk_sample(const Plane& p, double radius, double h);

SetSample unite(const SetSample& a, const SetSample& b);

// Vertices, edge points and per-face lattice points with local spacing at
// most max(h, grade * distance to the origin). Face lattices change spacing
// on narrow distance bands, so the count is about area / spacing^2 whatever
// the triangle shapes.
SetSample sample_mesh(const TriMesh4& mesh, double h, double grade = 0.0);

}  // namespace planes4
