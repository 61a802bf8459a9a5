#pragma once

// Riesz sequences inside finite frames: the optimal Riesz constants, excess,
// greedy extraction of a spanning independent subfamily, unconditional basis
// constants, and pruning to a subfamily whose lower Riesz bound is close to
// the frame's lower bound.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "framekit/frame.hpp"

namespace framekit {

struct RieszVerdict {
  bool is_riesz_sequence = false;
  bool is_riesz_basis_for_space = false;
  double lower = 0.0;  // sigma_min(T)^2 (0 when the columns are dependent)
  double upper = 0.0;  // sigma_max(T)^2
};

inline RieszVerdict riesz_verdict(const Frame& f, const Tolerance& tol = {}) {
  const auto s = singular_values(f.synthesis_matrix());
  const Index r = detail::count_above(s, detail::rank_threshold(s, f.dim(), f.size(), tol, 0.0));
  RieszVerdict v;
  v.upper = s.empty() ? 0.0 : s.front() * s.front();
  v.is_riesz_sequence = (r == f.size());
  v.is_riesz_basis_for_space = v.is_riesz_sequence && f.size() == f.dim();
  if (v.is_riesz_sequence) v.lower = s.back() * s.back();
  return v;
}

struct RieszSubset {
  std::vector<Index> indices;  // ascending
  std::vector<Index> selection_order;
  double certified_lower = 0.0;  // sigma_min^2 of the selected columns
};

// Greedy: repeatedly add the column that maximises the smallest singular
// value of the selection, skipping columns already in its span. Near-ties
// (within eq_abs) go to the lowest index.
inline RieszSubset extract_riesz_subset(const Frame& f, const Tolerance& tol = {}) {
  const Matrix& t = f.synthesis_matrix();
  const auto s = singular_values(t);
  const double dep_threshold = detail::rank_threshold(s, f.dim(), f.size(), tol, 0.0);
  const Index target = detail::count_above(s, dep_threshold);

  RieszSubset out;
  std::vector<bool> used(static_cast<std::size_t>(f.size()), false);
  Matrix q(f.dim(), 0);  // orthonormal basis of the current selection
  Matrix selected(f.dim(), 0);

  while (static_cast<Index>(out.selection_order.size()) < target) {
    Index best = -1;
    double best_value = -1.0;
    for (Index j = 0; j < f.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const Vector col = t.col(j);
      const Vector residual = col - q * (q.adjoint() * col);
      if (residual.norm() <= dep_threshold) continue;
      Matrix trial(f.dim(), selected.cols() + 1);
      trial << selected, col;
      const Matrix gram = trial.adjoint() * trial;
      Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
      const double value = eig.eigenvalues().minCoeff();
      if (value > best_value + tol.eq_abs * std::max(1.0, best_value)) {
        best = j;
        best_value = value;
      }
    }
    if (best < 0) break;
    used[static_cast<std::size_t>(best)] = true;
    out.selection_order.push_back(best);
    const Vector col = t.col(best);
    Vector residual = col - q * (q.adjoint() * col);
    residual -= q * (q.adjoint() * residual);  // re-orthogonalise
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = residual.normalized();
    selected.conservativeResize(Eigen::NoChange, selected.cols() + 1);
    selected.col(selected.cols() - 1) = col;
  }

  out.indices = out.selection_order;
  std::sort(out.indices.begin(), out.indices.end());
  if (!out.indices.empty()) {
    const auto sub = singular_values(selected);
    out.certified_lower = sub.back() * sub.back();
  }
  return out;
}

struct ExcessReport {
  Index excess = 0;
  Index kernel_dim = 0;
  std::vector<Index> riesz_subset_indices;
  double certified_lower = 0.0;
};

inline ExcessReport excess(const Frame& f, const Tolerance& tol = {}) {
  ExcessReport r;
  r.kernel_dim = null_space_basis(f.synthesis_matrix(), tol).dim();
  r.excess = r.kernel_dim;
  auto subset = extract_riesz_subset(f, tol);
  r.riesz_subset_indices = std::move(subset.indices);
  r.certified_lower = subset.certified_lower;
  return r;
}

// ---------------------------------------------------------------------------
// Unconditional basis constants
// ---------------------------------------------------------------------------

using SignPattern = std::vector<int>;  // entries +1 / -1

inline void validate_signs(const SignPattern& signs, Index m) {
  if (static_cast<Index>(signs.size()) != m) {
    throw DimensionMismatch("sign pattern length does not match the number of vectors");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidParameter("sign pattern entries must be +1 or -1");
  }
}

inline SignPattern alternating_signs(Index m) {
  SignPattern out(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1 : -1;
  return out;
}

struct UbcValue {
  bool bounded = true;
  double value = 1.0;  // +inf when unbounded
  SignPattern maximiser;
  std::optional<Vector> kernel_witness;  // set when the family is dependent
};

namespace detail {

// For an independent family T = Q R (thin QR), T D T^+ = Q (R D R^{-1}) Q^*,
// so every sign-flip operator norm reduces to an m x m problem.
template <typename S>
class SignedNormEvaluator {
 public:
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

  explicit SignedNormEvaluator(const Mat& t) {
    Eigen::HouseholderQR<Mat> qr(t);
    const Index m = t.cols();
    r_ = qr.matrixQR().topRows(m).template triangularView<Eigen::Upper>();
    r_inv_ = r_.template triangularView<Eigen::Upper>().solve(Mat::Identity(m, m));
  }

  template <typename SignAt>
  double norm(SignAt&& sign_at) const {
    Mat scaled = r_;
    for (Index j = 0; j < scaled.cols(); ++j) {
      if (sign_at(j) < 0) scaled.col(j) = -scaled.col(j);
    }
    const Mat w = scaled * r_inv_;
    const Mat gram = w.adjoint() * w;
    Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
  }

 private:
  Mat r_;
  Mat r_inv_;
};

inline std::optional<UbcValue> unbounded_if_dependent(const Frame& f, const Tolerance& tol) {
  const auto kernel = null_space_basis(f.synthesis_matrix(), tol);
  if (kernel.empty()) return std::nullopt;
  UbcValue out;
  out.bounded = false;
  out.value = std::numeric_limits<double>::infinity();
  out.kernel_witness = kernel.vectors().col(0);
  return out;
}

struct EnumerationBest {
  double value = -1.0;
  std::uint64_t pattern = 0;
};

template <typename S>
EnumerationBest enumerate_signs(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& t,
                                unsigned threads) {
  const SignedNormEvaluator<S> eval(t);
  const Index m = t.cols();
  // Bit k of the pattern index flips the sign of column k+1; column 0 stays +1.
  const std::uint64_t total = std::uint64_t{1} << (m - 1);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::min<std::uint64_t>(total, 64))));
  std::vector<EnumerationBest> partial(threads);
  auto work = [&](unsigned w) {
    const std::uint64_t begin = total * w / threads;
    const std::uint64_t end = total * (w + 1) / threads;
    EnumerationBest best;
    for (std::uint64_t p = begin; p < end; ++p) {
      const double v =
          eval.norm([p](Index j) { return (j > 0 && ((p >> (j - 1)) & 1u)) ? -1 : 1; });
      if (v > best.value) best = {v, p};
    }
    partial[w] = best;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  EnumerationBest best;
  for (const auto& p : partial) {
    if (p.value > best.value) best = p;  // chunks are in pattern order: ties keep the lowest
  }
  return best;
}

}  // namespace detail

// Spectral norm of T D_sigma T^+, the supremum of ||sum sigma_i c_i f_i||
// over ||sum c_i f_i|| = 1 for an independent family.
inline UbcValue ubc_for_signs(const Frame& f, const SignPattern& signs,
                              const Tolerance& tol = {}) {
  validate_signs(signs, f.size());
  if (auto unbounded = detail::unbounded_if_dependent(f, tol)) return *unbounded;
  const detail::SignedNormEvaluator<Scalar> eval(f.synthesis_matrix());
  UbcValue out;
  out.value = eval.norm([&](Index j) { return signs[static_cast<std::size_t>(j)]; });
  out.maximiser = signs;
  return out;
}

inline constexpr Index kDefaultMaxEnum = 22;

// Exact constant by enumerating all 2^(m-1) sign classes (sigma_1 = +1).
inline UbcValue ubc_exact(const Frame& f, const Tolerance& tol = {},
                          Index max_enum = kDefaultMaxEnum, unsigned threads = 0) {
  if (f.size() > max_enum) {
    throw InvalidParameter("exact UBC enumeration refused for " + std::to_string(f.size()) +
                           " vectors (limit " + std::to_string(max_enum) +
                           "); use the lower estimate");
  }
  if (f.size() > 62) throw InvalidParameter("exact UBC enumeration limited to 62 vectors");
  if (auto unbounded = detail::unbounded_if_dependent(f, tol)) return *unbounded;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  detail::EnumerationBest best;
  if (f.field() == FieldKind::real) {
    const Eigen::MatrixXd real = f.synthesis_matrix().real();
    best = detail::enumerate_signs<double>(real, threads);
  } else {
    best = detail::enumerate_signs<Scalar>(f.synthesis_matrix(), threads);
  }
  UbcValue out;
  out.value = std::max(1.0, best.value);
  out.maximiser.assign(static_cast<std::size_t>(f.size()), 1);
  for (Index j = 1; j < f.size(); ++j) {
    if ((best.pattern >> (j - 1)) & 1u) out.maximiser[static_cast<std::size_t>(j)] = -1;
  }
  return out;
}

// Lower bound: best of the all-plus pattern, the alternating pattern, and
// `trials` seeded random patterns.
inline UbcValue ubc_lower_estimate(const Frame& f, Index trials, std::uint64_t seed,
                                   const Tolerance& tol = {}) {
  if (auto unbounded = detail::unbounded_if_dependent(f, tol)) return *unbounded;
  const detail::SignedNormEvaluator<Scalar> eval(f.synthesis_matrix());
  UbcValue out;
  out.value = -1.0;
  auto consider = [&](const SignPattern& signs) {
    const double v = eval.norm([&](Index j) { return signs[static_cast<std::size_t>(j)]; });
    if (v > out.value) {
      out.value = v;
      out.maximiser = signs;
    }
  };
  const Index m = f.size();
  consider(SignPattern(static_cast<std::size_t>(m), 1));
  consider(alternating_signs(m));
  std::mt19937_64 rng(seed);
  SignPattern signs(static_cast<std::size_t>(m));
  for (Index trial = 0; trial < trials; ++trial) {
    for (auto& s : signs) s = (rng() >> 63) ? -1 : 1;
    consider(signs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pruning to a Riesz subfamily with lower bound A - eps
// ---------------------------------------------------------------------------

struct PruneResult {
  double frame_lower = 0.0;  // A
  double eps = 0.0;
  // Number of leading elements (excess elements followed by the first basis
  // elements, in that order) removed by the distance criterion.
  Index proof_cut = 0;
  std::vector<Index> proof_deleted;  // ascending
  std::vector<Index> deleted;        // ascending, after restoring what can be kept
  std::vector<Index> remainder;      // ascending
  std::optional<RieszVerdict> remainder_verdict;  // empty remainder has none
  bool certified = false;                         // remainder lower >= A - eps - eq_abs
  double achieved_eps = 0.0;                      // A - remainder lower
};

inline PruneResult prune_to_lower_bound(const Frame& f, double eps, const Tolerance& tol = {}) {
  PruneResult out;
  out.frame_lower = frame_bounds(f, tol).lower;
  out.eps = eps;
  if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
  if (!(eps < out.frame_lower)) {
    throw InvalidParameter("eps must be smaller than the lower frame bound " +
                           std::to_string(out.frame_lower));
  }
  const double target = out.frame_lower - eps;

  const auto basis = extract_riesz_subset(f, tol).indices;
  std::vector<Index> extra;
  {
    std::vector<bool> in_basis(static_cast<std::size_t>(f.size()), false);
    for (Index i : basis) in_basis[static_cast<std::size_t>(i)] = true;
    for (Index i = 0; i < f.size(); ++i) {
      if (!in_basis[static_cast<std::size_t>(i)]) extra.push_back(i);
    }
  }
  const Index n_extra = static_cast<Index>(extra.size());

  auto lower_of = [&](const std::vector<Index>& idx) -> std::optional<RieszVerdict> {
    if (idx.empty()) return std::nullopt;
    return riesz_verdict(f.subfamily(idx), tol);
  };

  Index k = 0;  // basis elements removed together with the excess elements
  if (n_extra > 0) {
    const double radius = std::sqrt(eps / static_cast<double>(n_extra));
    const Matrix& t = f.synthesis_matrix();
    for (k = 0; k <= static_cast<Index>(basis.size()); ++k) {
      Matrix head(f.dim(), k);
      for (Index c = 0; c < k; ++c) head.col(c) = t.col(basis[static_cast<std::size_t>(c)]);
      const SubspaceBasis span = range_basis(head, tol);
      const bool ok = std::all_of(extra.begin(), extra.end(), [&](Index j) {
        return distance_to_span(span, t.col(j)) < radius;
      });
      if (ok) break;
    }
  }
  out.proof_cut = n_extra + k;
  out.proof_deleted = extra;
  out.proof_deleted.insert(out.proof_deleted.end(), basis.begin(), basis.begin() + k);
  std::sort(out.proof_deleted.begin(), out.proof_deleted.end());
  out.remainder.assign(basis.begin() + k, basis.end());

  // Put back deleted elements while the remainder stays independent with
  // lower bound >= A - eps.
  for (Index j : out.proof_deleted) {
    auto trial = out.remainder;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), j), j);
    const auto v = lower_of(trial);
    if (v && v->is_riesz_sequence && v->lower >= target) {
      out.remainder = std::move(trial);
    } else {
      out.deleted.push_back(j);
    }
  }

  out.remainder_verdict = lower_of(out.remainder);
  if (out.remainder_verdict) {
    out.certified =
        out.remainder_verdict->is_riesz_sequence && out.remainder_verdict->lower >= target - tol.eq_abs;
    out.achieved_eps = out.frame_lower - out.remainder_verdict->lower;
  } else {
    out.certified = true;
    out.achieved_eps = 0.0;
  }
  return out;
}

}  // namespace framekit
