#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace planes4 {

// Truncated Fourier series m + sum_{n=1}^{N} (A_n cos n t + B_n sin n t).
// A[n-1], B[n-1] hold the order-n coefficients.
struct FourierBoundary {
  double mean = 0.0;
  std::vector<double> A;
  std::vector<double> B;

  int order() const { return static_cast<int>(A.size()); }
  double operator()(double theta) const;
};

// Annulus B(center, outer) \ B(center, r0).
struct AnnulusSpec {
  double r0 = 0.25;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double outer = 1.0;
};

// (theta, value) pairs on a circle.
using CircleSamples = std::vector<std::pair<double, double>>;

// M equally spaced samples of u at theta_k = 2 pi k / M.
CircleSamples sample_circle(const std::function<double(double)>& u, int m);

// Trapezoidal Fourier coefficients up to order n. Samples must be in
// increasing angle with constant spacing 2 pi / M, and M >= 4n + 1.
FourierBoundary fourier_decompose(const CircleSamples& samples, int n);

// Dirichlet energy on B(0, 1/r0) \ B(0, r0) of the harmonic function equal to
// the boundary data on both circles:
//   2 pi sum n (a_n^2 + b_n^2)(r0^-n - r0^n)(r0^n + r0^-n),
//   a_n = A_n / (r0^n + r0^-n).
// Evaluated as 2 pi sum n (A_n^2 + B_n^2) tanh(n |log r0|), which is the same
// quantity without overflow for large n.
double annulus_energy_exact(const FourierBoundary& fb, double r0);

// 1/(4 r0) * integral over the circle of radius r0 of |u - m(u)|^2 ds. Requires
// r0 < (outer - |center|) / 2.
double reflection_lower_bound(const FourierBoundary& fb, const AnnulusSpec& spec);
double reflection_lower_bound(const CircleSamples& samples, const AnnulusSpec& spec);

// 2 pi delta^2 r0^2 / |log r0|: the energy of the radial harmonic function
// with values delta r0 on |x| = r0 and 0 on |x| = 1.
double log_annulus_bound(double delta, double r0);

struct LogAnnulusBound {
  double value;  // eps * log_annulus_bound(delta, r0)
  double C;      // max(101, 2 / (1 - sqrt(eps))), so (1 - 2/C)^2 >= eps
};
LogAnnulusBound log_annulus_bound(double delta, double r0, double eps);

// Finite-difference Dirichlet energy of the harmonic extension of sampled
// data on the two circles of an annulus. Data are sampled at theta_k = 2 pi k
// / angular, one vector per circle.
struct FdGrid {
  int radial = 128;   // nodes in log r, boundary circles included
  int angular = 512;  // nodes in theta
};

struct AnnulusData {
  std::vector<double> inner;
  std::vector<double> outer;
};

double fd_oracle(const AnnulusData& data, const AnnulusSpec& spec, const FdGrid& grid = {});

}  // namespace planes4
