#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace grassop {

// Seeded generator passed explicitly to every sampling routine. The engine is
// mt19937_64; reproducibility is guaranteed within one build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream keyed by (seed, label, index).
  static Rng derive(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  std::complex<double> complex_normal() { return {normal(), normal()}; }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::uint64_t next_u64() { return engine_(); }

  Eigen::MatrixXcd gaussian(Eigen::Index rows, Eigen::Index cols);
  Eigen::VectorXcd unit_vector(Eigen::Index n);
  Eigen::MatrixXcd unitary(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace grassop
