#pragma once

// Seeded random instances with planted ranks. Used by the repro experiments
// and the property suites.

#include <cstdint>
#include <random>

#include "framekit/linalg.hpp"

namespace framekit {

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Index uniform_int(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(rng_);
  }

  bool coin() { return (rng_() >> 63) != 0; }

  Matrix gaussian(Index rows, Index cols, bool complex) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) {
        const double re = normal_(rng_);
        const double im = complex ? normal_(rng_) : 0.0;
        m(i, j) = Scalar(re, im);
      }
    }
    return m;
  }

  Vector gaussian_vector(Index n, bool complex) { return gaussian(n, 1, complex).col(0); }

  // rows x cols matrix of rank exactly r (generically): product of Gaussian factors.
  Matrix with_rank(Index rows, Index cols, Index r, bool complex) {
    if (r == 0) return Matrix::Zero(rows, cols);
    return gaussian(rows, r, complex) * gaussian(r, cols, complex);
  }

  // Random unitary (orthogonal when real) via QR of a Gaussian matrix.
  Matrix unitary(Index n, bool complex) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, complex));
    return qr.householderQ() * Matrix::Identity(n, n);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace framekit
