#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "planes4/exterior_algebra.hpp"

namespace planes4 {

/// Seeded random stream shared by every experiment.
///
/// The engine is std::mt19937_64 (64-bit Mersenne Twister, fully specified by
/// the C++ standard). Conversions are spelled out here instead of using the
/// std:: distributions, whose algorithms are implementation-defined:
///   uniform() = (next() >> 11) * 2^-53            in [0, 1)
///   normal()  = Box-Muller, one normal per pair of uniforms:
///               sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
};

Vector4 random_unit_vector(Rng& rng);

// Orthonormal pair (x, y) from Gram-Schmidt on two Gaussian vectors.
std::pair<Vector4, Vector4> random_orthonormal_pair(Rng& rng);

// Haar-distributed rotation of R^4 (det = +1).
LinearMap4 random_rotation(Rng& rng);

// Unit simple 2-vector x ^ y for a random orthonormal pair.
TwoVector random_unit_simple(Rng& rng);

}  // namespace planes4
