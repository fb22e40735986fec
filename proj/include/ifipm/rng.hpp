#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace ifipm {

// Deterministic generator used everywhere randomness is needed. Distributions
// are implemented by hand so a (seed, config) pair replays a bit-identical
// stream regardless of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix(seed + 0x9e3779b97f4a7c15ULL)) {}

  std::uint64_t next_u64() {
    // xorshift64* keeps the state a single word.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one value per call, the pair's second half is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd normal_vector(int d) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = normal();
    return v;
  }

  Eigen::MatrixXd normal_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

  // Symmetric with N(0,1) entries on and above the diagonal.
  Eigen::MatrixXd normal_symmetric(int n) {
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = j; i < n; ++i) {
        double g = normal();
        m(i, j) = g;
        m(j, i) = g;
      }
    return m;
  }

  // Uniform direction on the unit sphere in R^d.
  Eigen::VectorXd sphere_direction(int d) {
    Eigen::VectorXd v = normal_vector(d);
    double nrm = v.norm();
    while (nrm < 1e-300) {
      v = normal_vector(d);
      nrm = v.norm();
    }
    return v / nrm;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace ifipm
