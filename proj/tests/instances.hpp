#pragma once

// Randomized instance builders shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>

#include "framekit/aldroubi.hpp"
#include "framekit/perturbation.hpp"
#include "framekit/random.hpp"

namespace instances {

using namespace framekit;

struct CertifiedPair {
  Frame f;
  Frame g;
  double lambda;
  double mu;
};

// F spans C^d (or R^d) with m >= d elements; G = F - K with K scaled so that
// ||K|| <= 0.6 sqrt(A). mu is the smallest value passing the PSD test for the
// drawn lambda, plus a small margin, so lambda + mu / sqrt(A) < 0.9.
inline CertifiedPair certified_pair(InstanceGenerator& gen, bool complex, Index max_dim = 7) {
  const Index d = gen.uniform_int(1, max_dim);
  const Index m = gen.uniform_int(d, d + 4);
  Matrix t = gen.gaussian(d, m, complex);
  const double a = frame_bounds(Frame(t)).lower;
  Matrix k = gen.gaussian(d, m, complex);
  k *= gen.uniform(0.05, 0.6) * std::sqrt(a) / spectral_norm(k);
  const double lambda = gen.uniform(0.0, 0.3);
  const Matrix q = k.adjoint() * k - lambda * lambda * (t.adjoint() * t);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q, Eigen::EigenvaluesOnly);
  const double mu = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff())) * (1.0 + 1e-6) + 1e-8;
  Frame f(t);
  Frame g(Matrix(t - k));
  return {std::move(f), std::move(g), lambda, mu};
}

struct TransformPair {
  Frame f;
  TransformMatrix u;
};

// Rank-r frame with m' close to r rows of U and a planted rank for U, so
// both Riesz-basis verdicts occur often.
inline TransformPair criterion_pair(InstanceGenerator& gen, bool complex) {
  const Index d = gen.uniform_int(1, 6);
  const Index m = gen.uniform_int(1, 8);
  const Index r = gen.uniform_int(1, std::min(d, m));
  Frame f(gen.with_rank(d, m, r, complex));
  const Index m_out = std::max<Index>(1, r + gen.uniform_int(-1, 1));
  const Index full = std::min(m_out, m);
  const Index rank_u = gen.coin() ? full : gen.uniform_int(0, full);
  TransformMatrix u(gen.with_rank(m_out, m, rank_u, complex));
  return {std::move(f), std::move(u)};
}

}  // namespace instances
