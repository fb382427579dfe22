#include "planes4/harmonic_annulus.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "planes4/errors.hpp"

namespace planes4 {

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const AnnulusSpec& spec) {
  require(spec.outer > 0.0 && spec.r0 > 0.0 && spec.r0 < spec.outer,
          "annulus: need 0 < r0 < outer");
  const double gap = spec.outer - spec.center.norm();
  require(gap > 0.0, "annulus: center outside the outer disk");
  require(spec.r0 < 0.5 * gap,
          fmt::format("annulus: r0 = {} must be below half the distance {} to the outer circle",
                      spec.r0, gap));
}

}  // namespace

double FourierBoundary::operator()(double theta) const {
  double v = mean;
  for (int n = 1; n <= order(); ++n)
    v += A[n - 1] * std::cos(n * theta) + B[n - 1] * std::sin(n * theta);
  return v;
}

CircleSamples sample_circle(const std::function<double(double)>& u, int m) {
  require(m > 0, "sample_circle: need a positive sample count");
  CircleSamples out(m);
  for (int k = 0; k < m; ++k) {
    const double t = 2 * kPi * k / m;
    out[k] = {t, u(t)};
  }
  return out;
}

FourierBoundary fourier_decompose(const CircleSamples& samples, int n) {
  require(n >= 0, "fourier_decompose: negative order");
  const int m = static_cast<int>(samples.size());
  require(m >= 4 * n + 1,
          fmt::format("fourier_decompose: {} samples, order {} needs at least {}", m, n, 4 * n + 1));
  const double h = 2 * kPi / m;
  for (int k = 1; k < m; ++k)
    require(std::abs(samples[k].first - samples[k - 1].first - h) <= 1e-9,
            "fourier_decompose: samples are not equally spaced over the circle");

  FourierBoundary fb;
  fb.A.assign(n, 0.0);
  fb.B.assign(n, 0.0);
  for (const auto& [t, u] : samples) fb.mean += u;
  fb.mean /= m;
  for (int j = 1; j <= n; ++j) {
    double a = 0.0, b = 0.0;
    for (const auto& [t, u] : samples) {
      a += u * std::cos(j * t);
      b += u * std::sin(j * t);
    }
    fb.A[j - 1] = 2.0 * a / m;
    fb.B[j - 1] = 2.0 * b / m;
  }
  return fb;
}

double annulus_energy_exact(const FourierBoundary& fb, double r0) {
  require(r0 > 0.0 && r0 < 1.0, "annulus_energy_exact: r0 must lie in (0, 1)");
  require(fb.A.size() == fb.B.size(), "annulus_energy_exact: coefficient lists differ in length");
  const double l = -std::log(r0);
  double e = 0.0;
  for (int n = 1; n <= fb.order(); ++n)
    e += n * (fb.A[n - 1] * fb.A[n - 1] + fb.B[n - 1] * fb.B[n - 1]) * std::tanh(n * l);
  return 2 * kPi * e;
}

double reflection_lower_bound(const FourierBoundary& fb, const AnnulusSpec& spec) {
  check_spec(spec);
  require(fb.A.size() == fb.B.size(), "reflection_lower_bound: coefficient lists differ in length");
  double s = 0.0;
  for (int n = 0; n < fb.order(); ++n) s += fb.A[n] * fb.A[n] + fb.B[n] * fb.B[n];
  // integral of |u - m|^2 over the circle is pi r0 sum (A^2 + B^2)
  return 0.25 / spec.r0 * (kPi * spec.r0 * s);
}

double reflection_lower_bound(const CircleSamples& samples, const AnnulusSpec& spec) {
  check_spec(spec);
  require(!samples.empty(), "reflection_lower_bound: no samples");
  const auto m = static_cast<double>(samples.size());
  double mean = 0.0;
  for (const auto& s : samples) mean += s.second;
  mean /= m;
  double sq = 0.0;
  for (const auto& s : samples) sq += (s.second - mean) * (s.second - mean);
  const double integral = sq * (2 * kPi / m) * spec.r0;
  return 0.25 / spec.r0 * integral;
}

double log_annulus_bound(double delta, double r0) {
  require(r0 > 0.0 && r0 < 1.0, "log_annulus_bound: r0 must lie in (0, 1)");
  require(std::isfinite(delta), "log_annulus_bound: delta must be finite");
  return 2 * kPi * delta * delta * r0 * r0 / std::abs(std::log(r0));
}

LogAnnulusBound log_annulus_bound(double delta, double r0, double eps) {
  require(eps > 0.0 && eps < 1.0, "log_annulus_bound: eps must lie in (0, 1)");
  const double c = std::max(101.0, 2.0 / (1.0 - std::sqrt(eps)));
  return {eps * log_annulus_bound(delta, r0), c};
}

double fd_oracle(const AnnulusData& data, const AnnulusSpec& spec, const FdGrid& grid) {
  require(spec.r0 > 0.0 && spec.r0 < spec.outer, "fd_oracle: need 0 < r0 < outer");
  require(grid.radial >= 64 && grid.angular >= 256, "fd_oracle: grid must be at least 64 x 256");
  const int nr = grid.radial;
  const int m = grid.angular;
  require(static_cast<int>(data.inner.size()) == m && static_cast<int>(data.outer.size()) == m,
          "fd_oracle: boundary samples must match the angular resolution");

  // In (rho, theta) = (log r, theta) the energy is the flat one, so a uniform
  // rho grid is a geometric grid in r.
  const double hr = (std::log(spec.outer) - std::log(spec.r0)) / (nr - 1);
  const double ht = 2 * kPi / m;
  const double wr = ht / hr;  // weight of a rho-edge
  const double wt = hr / ht;  // weight of a theta-edge

  const int rows = nr - 2;
  const int unknowns = rows * m;
  auto id = [m](int i, int j) { return (i - 1) * m + ((j % m) + m) % m; };
  auto boundary = [&](int i, int j) {
    j = ((j % m) + m) % m;
    return i == 0 ? data.inner[j] : data.outer[j];
  };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(unknowns) * 5);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (int i = 1; i <= rows; ++i) {
    for (int j = 0; j < m; ++j) {
      const int k = id(i, j);
      trips.emplace_back(k, k, 2 * wr + 2 * wt);
      trips.emplace_back(k, id(i, j - 1), -wt);
      trips.emplace_back(k, id(i, j + 1), -wt);
      for (const int ii : {i - 1, i + 1}) {
        if (ii == 0 || ii == nr - 1)
          rhs[k] += wr * boundary(ii, j);
        else
          trips.emplace_back(k, id(ii, j), -wr);
      }
    }
  }
  Eigen::SparseMatrix<double> a(unknowns, unknowns);
  a.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalError("fd_oracle: factorization failed");
  const Eigen::VectorXd x = solver.solve(rhs);
  const double residual = (a * x - rhs).norm() / std::max(1.0, rhs.norm());
  if (!(residual <= 1e-8))
    throw NumericalError(fmt::format("fd_oracle: linear solve residual {:.3e}", residual));

  auto value = [&](int i, int j) {
    return (i == 0 || i == nr - 1) ? boundary(i, j) : x[id(i, j)];
  };
  double e = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double row_weight = (i == 0 || i == nr - 1) ? 0.5 : 1.0;
    for (int j = 0; j < m; ++j) {
      const double u = value(i, j);
      const double dt = value(i, (j + 1) % m) - u;
      e += row_weight * wt * dt * dt;
      if (i + 1 < nr) {
        const double dr = value(i + 1, j) - u;
        e += wr * dr * dr;
      }
    }
  }
  return e;
}

}  // namespace planes4
