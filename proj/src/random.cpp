#include "grassop/random.hpp"

#include <cmath>

namespace grassop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed ^ fnv1a(label)) + index));
}

Eigen::MatrixXcd Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = complex_normal();
    }
  }
  return m;
}

Eigen::VectorXcd Rng::unit_vector(Eigen::Index n) {
  Eigen::VectorXcd v = gaussian(n, 1);
  return v / v.norm();
}

// QR of a complex Gaussian matrix with the phases of R's diagonal folded
// back into Q, which makes Q Haar distributed.
Eigen::MatrixXcd Rng::unitary(Eigen::Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian(n, n));
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) {
      q.col(j) *= r(j, j) / mag;
    }
  }
  return q;
}

}  // namespace grassop
