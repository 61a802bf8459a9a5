#pragma once

// Perturbations of frames. For two families F, G of the same shape the
// perturbation operator is K c = sum_i c_i (f_i - g_i), i.e. K = T_F - T_G.
//
// A (lambda, mu) certificate asserts
//
//   ||K c|| <= lambda ||T_F c|| + mu ||c||   for all c.
//
// check_certificate tests the sufficient condition
//
//   lambda^2 T_F^* T_F + mu^2 I - K^* K  >=  0   (PSD),
//
// which implies the inequality because (lambda a + mu b)^2 >= lambda^2 a^2 + mu^2 b^2
// for a, b >= 0. violation_search looks for explicit counterexamples.

#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "framekit/constructions.hpp"
#include "framekit/riesz.hpp"

namespace framekit {

class PerturbationPair {
 public:
  PerturbationPair(Frame f, Frame g) : f_(std::move(f)), g_(std::move(g)) {
    if (f_.dim() != g_.dim() || f_.size() != g_.size()) {
      throw DimensionMismatch("perturbation pair frames must have the same shape (" +
                              std::to_string(f_.dim()) + "x" + std::to_string(f_.size()) +
                              " vs " + std::to_string(g_.dim()) + "x" +
                              std::to_string(g_.size()) + ")");
    }
    k_ = f_.synthesis_matrix() - g_.synthesis_matrix();
    k_norm_ = spectral_norm(k_);
  }

  const Frame& original() const { return f_; }
  const Frame& perturbed() const { return g_; }
  const Matrix& k() const { return k_; }
  double k_norm() const { return k_norm_; }

 private:
  Frame f_;
  Frame g_;
  Matrix k_;
  double k_norm_ = 0.0;
};

inline PerturbationPair perturbation_operator(const Frame& f, const Frame& g) {
  return PerturbationPair(f, g);
}

struct PerturbationCertificate {
  double lambda = 0.0;
  double mu = 0.0;
  double frame_lower = 0.0;  // A of the original frame
  double frame_upper = 0.0;  // B of the original frame
  bool admissible = false;   // lambda + mu / sqrt(A) < 1
  bool psd_test_passed = false;
  double psd_min_eigenvalue = 0.0;
  std::optional<double> predicted_lower;  // A (1 - (lambda + mu/sqrt(A)))^2
  std::optional<double> predicted_upper;  // B (1 + lambda + mu/sqrt(B))^2
  double measured_lower = 0.0;            // bounds of the perturbed family
  double measured_upper = 0.0;

  bool passed() const { return admissible && psd_test_passed; }
};

inline PerturbationCertificate check_certificate(const PerturbationPair& p, double lambda, double mu,
                                                 const Tolerance& tol = {}) {
  if (!(lambda >= 0.0) || !(mu >= 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw InvalidParameter("lambda and mu must be finite and non-negative");
  }
  const auto fb = frame_bounds(p.original(), tol);
  if (!(fb.lower > 0.0)) throw InvalidParameter("original family is not a frame (A = 0)");

  PerturbationCertificate c;
  c.lambda = lambda;
  c.mu = mu;
  c.frame_lower = fb.lower;
  c.frame_upper = fb.upper;
  c.admissible = lambda + mu / std::sqrt(fb.lower) < 1.0;

  const Matrix& t = p.original().synthesis_matrix();
  const Index m = t.cols();
  const Matrix test = lambda * lambda * (t.adjoint() * t) +
                      mu * mu * Matrix::Identity(m, m) - p.k().adjoint() * p.k();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(test, Eigen::EigenvaluesOnly);
  c.psd_min_eigenvalue = eig.eigenvalues().minCoeff();
  c.psd_test_passed = c.psd_min_eigenvalue >= -tol.eq_abs;

  if (c.admissible && c.psd_test_passed) {
    const double shrink = 1.0 - (lambda + mu / std::sqrt(fb.lower));
    const double grow = 1.0 + lambda + mu / std::sqrt(fb.upper);
    c.predicted_lower = fb.lower * shrink * shrink;
    c.predicted_upper = fb.upper * grow * grow;
  }
  const auto gb = frame_bounds(p.perturbed(), tol);
  c.measured_lower = gb.lower;
  c.measured_upper = gb.upper;
  return c;
}

// First c (unit norm) with ||K c|| > lambda ||T c|| + mu ||c|| + eq_abs, trying
// the right singular vectors of K (largest first) and then `trials` seeded
// Gaussian directions. A witness refutes the (lambda, mu) condition.
inline std::optional<Vector> violation_search(const PerturbationPair& p, double lambda, double mu,
                                              Index trials, std::uint64_t seed,
                                              const Tolerance& tol = {}) {
  const Matrix& t = p.original().synthesis_matrix();
  const Matrix& k = p.k();
  const Index m = t.cols();
  auto violates = [&](const Vector& c) {
    return (k * c).norm() > lambda * (t * c).norm() + mu * c.norm() + tol.eq_abs;
  };

  if (k.size() > 0 && p.k_norm() > 0.0) {
    Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullV);
    for (Index j = 0; j < m; ++j) {
      const Vector c = svd.matrixV().col(j);
      if (violates(c)) return c;
    }
  }

  const bool complex = p.original().field() == FieldKind::complex ||
                       p.perturbed().field() == FieldKind::complex;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector c(m);
  for (Index trial = 0; trial < trials; ++trial) {
    for (Index j = 0; j < m; ++j) c(j) = Scalar(normal(rng), complex ? normal(rng) : 0.0);
    const double n = c.norm();
    if (n == 0.0) continue;
    c /= n;
    if (violates(c)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tail norms: the finite stand-in for compactness of K
// ---------------------------------------------------------------------------

struct TailProfile {
  std::vector<Index> cut_points;  // 0 followed by each block boundary
  std::vector<double> tail_norms;  // ||K with columns [0, cut) zeroed||
};

namespace detail {

inline std::vector<Index> checked_boundaries(const PerturbationPair& p,
                                             std::span<const Index> boundaries) {
  const Index m = p.original().size();
  if (boundaries.empty() || boundaries.back() != m) {
    throw DimensionMismatch("block boundaries must end at the element count " + std::to_string(m));
  }
  std::vector<Index> cuts{0};
  for (Index b : boundaries) {
    if (b <= cuts.back()) throw DimensionMismatch("block boundaries must be increasing");
    cuts.push_back(b);
  }
  return cuts;
}

inline std::vector<Index> boundaries_for(const PerturbationPair& p, const BlockStructure& s) {
  if (s.total_elements() != p.original().size() || s.total_dim() != p.original().dim()) {
    throw DimensionMismatch("block structure does not match the frame shape");
  }
  return s.element_boundaries();
}

}  // namespace detail

inline TailProfile tail_profile(const PerturbationPair& p, std::span<const Index> boundaries) {
  TailProfile out;
  out.cut_points = detail::checked_boundaries(p, boundaries);
  const Index m = p.original().size();
  for (Index cut : out.cut_points) {
    out.tail_norms.push_back(cut == m ? 0.0 : spectral_norm(p.k().rightCols(m - cut)));
  }
  return out;
}

inline TailProfile tail_profile(const PerturbationPair& p, const BlockStructure& s) {
  const auto b = detail::boundaries_for(p, s);
  return tail_profile(p, b);
}

struct TailCut {
  Index cut = 0;          // elements before the cut
  Index blocks_before = 0;  // how many leading blocks the cut keeps
  bool interior = false;  // cut < m
  double tail_norm = 0.0;
};

// Smallest block-boundary cut whose tail norm is <= mu. The full cut always
// qualifies, so this never fails at finite size.
inline TailCut find_tail_cut(const PerturbationPair& p, std::span<const Index> boundaries,
                             double mu) {
  if (!(mu > 0.0)) throw InvalidParameter("mu must be positive");
  const auto profile = tail_profile(p, boundaries);
  const Index m = p.original().size();
  for (std::size_t k = 0; k < profile.cut_points.size(); ++k) {
    if (profile.tail_norms[k] <= mu) {
      return {profile.cut_points[k], static_cast<Index>(k), profile.cut_points[k] < m,
              profile.tail_norms[k]};
    }
  }
  return {m, static_cast<Index>(profile.cut_points.size() - 1), false, 0.0};
}

inline TailCut find_tail_cut(const PerturbationPair& p, const BlockStructure& s, double mu) {
  const auto b = detail::boundaries_for(p, s);
  return find_tail_cut(p, b, mu);
}

// ---------------------------------------------------------------------------
// Excess comparison
// ---------------------------------------------------------------------------

struct ExcessComparison {
  Index excess_f = 0;
  Index excess_g = 0;
  bool equal = false;
};

inline ExcessComparison excess_compare(const Frame& f, const Frame& g, const Tolerance& tol = {}) {
  ExcessComparison out;
  out.excess_f = null_space_basis(f.synthesis_matrix(), tol).dim();
  out.excess_g = null_space_basis(g.synthesis_matrix(), tol).dim();
  out.equal = out.excess_f == out.excess_g;
  return out;
}

// Non-total perturbed family: the excess of G inside its own span versus
// excess(F) + codim(span G).
struct SpanExcess {
  Index excess_f = 0;
  Index excess_g = 0;  // relative to span(G)
  Index codim_g = 0;   // dim of span(G)^perp
  bool f_total = false;
  bool identity_holds = false;  // excess_g == excess_f + codim_g
};

inline SpanExcess excess_with_codim(const Frame& f, const Frame& g, const Tolerance& tol = {}) {
  SpanExcess out;
  const Index rank_f = rank(f.synthesis_matrix(), tol);
  const Index rank_g = rank(g.synthesis_matrix(), tol);
  out.f_total = rank_f == f.dim();
  out.excess_f = f.size() - rank_f;
  out.excess_g = g.size() - rank_g;
  out.codim_g = g.dim() - rank_g;
  out.identity_holds = out.excess_g == out.excess_f + out.codim_g;
  return out;
}

// ---------------------------------------------------------------------------
// The block frame versus its eps-perturbation
// ---------------------------------------------------------------------------

struct BlockTrendRow {
  Index n = 0;
  double best_spanning_lower = 0.0;  // max sigma_min^2 over spanning n-subsets of block n
  Index spanning_subsets = 0;
  double ubc_bound = 0.0;     // sqrt(n-1) - 1
  double ubc_estimate = 1.0;  // alternating-pattern lower estimate for {f_1..f_{n-1}, f_{n+1}}
};

struct CounterexampleReport {
  Index num_blocks = 0;
  double eps = 0.0;
  PerturbationCertificate forward;   // F -> G with (0, eps)
  PerturbationCertificate backward;  // G -> F with (0, eps/(1-eps))
  bool certificates_pass = false;
  RieszVerdict g_leading;  // {g_i^n}, i <= n
  bool g_leading_riesz = false;
  std::vector<BlockTrendRow> trend;
  bool trend_strictly_decreasing = false;

  bool all_pass() const { return certificates_pass && g_leading_riesz && trend_strictly_decreasing; }
};

inline BlockTrendRow block_trend_row(Index n, const Tolerance& tol = {}) {
  const Frame block = parseval_block(n);
  BlockTrendRow row;
  row.n = n;
  row.ubc_bound = std::sqrt(static_cast<double>(n - 1)) - 1.0;
  std::vector<Index> idx;
  for (Index drop = 0; drop <= n; ++drop) {
    idx.clear();
    for (Index i = 0; i <= n; ++i) {
      if (i != drop) idx.push_back(i);
    }
    const auto v = riesz_verdict(block.subfamily(idx), tol);
    if (!v.is_riesz_basis_for_space) continue;
    ++row.spanning_subsets;
    row.best_spanning_lower = std::max(row.best_spanning_lower, v.lower);
  }
  if (n >= 2) {
    idx.clear();
    for (Index i = 0; i < n - 1; ++i) idx.push_back(i);
    idx.push_back(n);
    row.ubc_estimate = ubc_lower_estimate(block.subfamily(idx), 0, 0, tol).value;
  }
  return row;
}

inline CounterexampleReport block_counterexample(Index num_blocks, double eps,
                                                    const Tolerance& tol = {}) {
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidParameter("eps must lie in (0, 1/2)");
  if (num_blocks < 2) throw InvalidParameter("at least two blocks are required");
  const auto f = block_frame(num_blocks);
  const auto g = perturbed_block_frame(num_blocks, eps);

  CounterexampleReport r;
  r.num_blocks = num_blocks;
  r.eps = eps;
  r.forward = check_certificate(PerturbationPair(f.frame, g.frame), 0.0, eps, tol);
  r.backward = check_certificate(PerturbationPair(g.frame, f.frame), 0.0, eps / (1.0 - eps), tol);
  r.certificates_pass = r.forward.passed() && r.backward.passed();

  const auto leading = leading_elements(g.structure);
  r.g_leading = riesz_verdict(g.frame.subfamily(leading), tol);
  r.g_leading_riesz = r.g_leading.is_riesz_basis_for_space && r.g_leading.lower >= eps * eps - tol.eq_abs;

  r.trend_strictly_decreasing = true;
  for (Index n = 1; n <= num_blocks; ++n) {
    r.trend.push_back(block_trend_row(n, tol));
    if (n > 1 && !(r.trend[n - 1].best_spanning_lower < r.trend[n - 2].best_spanning_lower)) {
      r.trend_strictly_decreasing = false;
    }
  }
  return r;
}

}  // namespace framekit
