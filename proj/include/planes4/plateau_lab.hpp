#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "planes4/grassmann.hpp"
#include "planes4/surfaces.hpp"

namespace planes4 {

struct OptimizerConfig {
  int max_iters = 200;
  double step = 1.0;       // initial trial step for the mass-scaled gradient
  double tol_grad = 1e-8;  // stop when the mass-weighted gradient norm drops below
};

struct ExperimentConfig {
  double alpha1 = 1.5707963267948966;
  double alpha2 = 1.5707963267948966;
  int boundary_segments = 256;
  double pinch_radius = 0.0;
  OptimizerConfig optimizer;
  std::uint64_t seed = 1;
  int certificate_resolution = 512;
};

enum class Verdict { NoImprovementFound, Improved, CertifiedOptimal };
std::string to_string(Verdict v);

struct Certificate {
  double bound = 0.0;
  std::array<bool, 2> covers{};
  std::array<double, 2> shadow{};
  double lambda = 0.0;
  double tolerance = 0.0;  // rasterization error model for covering shadows
};

struct ExperimentReport {
  ExperimentConfig config;
  double initial_area = 0.0;
  double final_area = 0.0;
  double reference_area = 0.0;  // 2 pi
  double mesh_tolerance = 0.0;  // 2 pi minus the area of the two boundary polygons' fans
  std::vector<double> area_trace;
  Certificate certificate;
  bool line_search_failed = false;
  Verdict verdict = Verdict::NoImprovementFound;
  TriMesh4 final_mesh;
};

struct OptimizeResult {
  TriMesh4 mesh;
  std::vector<double> trace;  // area before the first step and after each accepted step
  int iterations = 0;
  double grad_norm = 0.0;
  bool line_search_failed = false;
};

// Two fan disks of radius 1 in the planes of canonical_pair(alpha1, alpha2)
// sharing the origin as vertex 0; the 2n rim vertices are fixed.
TriMesh4 build_union_mesh(double alpha1, double alpha2, int n);

// Both disks cut at pinch_radius, kept as annuli with geometric rings, and
// joined by the straight tube between the two pinch circles
// rho (b1 cos t + b2 sin t) of each plane. pinch_radius 0 gives the union
// mesh. Throws ConfigError when pinch_radius < 2/n.
TriMesh4 build_pinched_competitor(double alpha1, double alpha2, double pinch_radius, int n);

// Gradient of the total area with respect to every vertex.
std::vector<Vector4> area_gradient(const TriMesh4& mesh);

// Lumped-mass preconditioned gradient descent with backtracking; free
// vertices leaving the closed unit ball are pulled back radially. Only steps
// that do not increase the area are accepted.
OptimizeResult minimize_area(const TriMesh4& mesh, const OptimizerConfig& opt);

// Shadows on both planes divided by lambda = min(1 + 2 cos alpha1, max face
// projection sum). covers_i means shadow_i >= (1 - 2/resolution) pi.
Certificate certificate_lower_bound(const TriMesh4& mesh, const Plane& p1, const Plane& p2,
                                    int resolution);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Independent runs in parallel, returned sorted by (alpha1, alpha2, n,
// pinch_radius, seed).
std::vector<ExperimentReport> run_sweep(const std::vector<ExperimentConfig>& cfgs);

}  // namespace planes4
