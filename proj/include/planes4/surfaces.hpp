#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "planes4/exterior_algebra.hpp"
#include "planes4/grassmann.hpp"

namespace planes4 {

// Triangulated surface in R^4. `fixed` marks vertices the optimizer must not
// move (the boundary curve for Plateau experiments).
struct TriMesh4 {
  std::vector<Vector4> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<char> fixed;
};

constexpr double kMinFaceArea = 1e-14;

// Throws ConfigError on out-of-range indices, degenerate faces, a flag list
// of the wrong length, or boundary edges that do not close up into loops.
void validate(const TriMesh4& mesh);

double face_area(const TriMesh4& mesh, int face);
// Unit simple 2-vector of the face orientation (v1 - v0) ^ (v2 - v0).
TwoVector face_tangent(const TriMesh4& mesh, int face);
double area(const TriMesh4& mesh);

// Number of vertices minus edges plus faces.
int euler_characteristic(const TriMesh4& mesh);
// Number of connected components of the face-vertex graph.
int connected_components(const TriMesh4& mesh);

// Fan triangulation of the disk of the given radius in the plane: center
// vertex plus n rim vertices (rim flagged fixed).
TriMesh4 fan_disk(const Plane& plane, int n, double radius = 1.0,
                  const Vector4& center = Vector4::Zero());

// Disjoint union of meshes (vertices are not merged).
TriMesh4 merge(const TriMesh4& a, const TriMesh4& b);

TriMesh4 transformed(const LinearMap4& f, const TriMesh4& mesh);

// Sum over faces of |wedge2 p (T)| times face area.
double projected_area_with_multiplicity(const TriMesh4& mesh, const Plane& p);

// Area of the projection counted once: cells of side 1/resolution (lattice
// anchored at the plane origin) whose centers lie in some projected triangle.
double shadow_area(const TriMesh4& mesh, const Plane& p, int resolution);

// Upper bound on shadow_area - (area of the projected union): each triangle
// contributes perimeter * d / 2 + pi d^2 / 4 with d the cell diagonal.
double shadow_tolerance(const TriMesh4& mesh, const Plane& p, int resolution);

struct ProjectionReport {
  double area = 0.0;
  std::array<double, 2> proj_area_mult{};
  std::array<double, 2> shadow_area{};
  std::array<double, 2> shadow_tolerance{};
  double max_face_sum = 0.0;  // max over faces of the projection sum
  double lambda_used = 0.0;
  double inequality_slack = 0.0;
};

ProjectionReport projection_inequality_report(const TriMesh4& mesh, const Plane& p1,
                                              const Plane& p2, int resolution = 512);

// Uniform polar grid over the annulus r_inner <= |x| <= r_outer: nodes at
// (r_i, t_j), i in [0, radial], j in [0, angular).
struct PolarGrid {
  double r_inner = 0.25;
  double r_outer = 1.0;
  int radial = 64;
  int angular = 256;

  double radius(int i) const { return r_inner + (r_outer - r_inner) * i / radial; }
  double angle(int j) const;
  Eigen::Vector2d node(int i, int j) const;
};

// Values of a map into the orthogonal complement at the grid nodes, row-major
// in (i, j): index i * angular + j.
using GraphSamples = std::vector<Eigen::Vector2d>;

struct GraphAreaReport {
  double area = 0.0;
  double base_area = 0.0;
  double dirichlet = 0.0;  // sum over both components of the integral of |grad|^2
  double slack = 0.0;      // area - base_area - dirichlet / 4
  double max_gradient = 0.0;
};

// Midpoint quadrature per cell; the graph area element is the square root of
// the Gram determinant. Throws ConfigError when some cell has |grad phi| >= 1.
GraphAreaReport graph_area_check(const GraphSamples& phi, const PolarGrid& grid);

struct BandAreaReport {
  double area = 0.0;
  double bound = 0.0;       // sqrt(2) * 2 pi rho * max |h|
  bool at_three_quarters = false;  // rho == 3/4, where the bound reads 3 sqrt(2) pi / 2 |h|
};

// Area of {(x, t h(x)) : |x| = rho, t in [0, 1]} for h sampled at t_k = 2 pi k
// / M on the circle. The t-integral is done in closed form, the arc integral
// by the periodic trapezoid rule with centered differences for h'. With
// check_lip, throws ConfigError if some difference quotient of h exceeds 1.
BandAreaReport band_area(const std::vector<Eigen::Vector2d>& h, double rho, bool check_lip);

}  // namespace planes4
