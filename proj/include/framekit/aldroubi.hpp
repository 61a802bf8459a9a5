#pragma once

// Frames generated from a frame F by a coefficient matrix U:
//
//   g_i = sum_j u_{i,j} f_j,   i = 1..m'
//
// so the synthesis matrix of G is T U^T (plain transpose, no conjugation),
// the analysis satisfies {<g_i, f>} = U {<f_i, f>}, equivalently
// T_G^* f = conj(U) T^* f.

#include <string>

#include "framekit/riesz.hpp"

namespace framekit {

class TransformMatrix {
 public:
  explicit TransformMatrix(Matrix u) : u_(std::move(u)) { require_finite(u_, "transform matrix"); }

  static TransformMatrix from_real(const Eigen::MatrixXd& u) {
    return TransformMatrix(u.cast<Scalar>());
  }

  Index rows() const { return u_.rows(); }
  Index cols() const { return u_.cols(); }
  const Matrix& matrix() const { return u_; }
  Matrix transpose() const { return u_.transpose(); }
  Matrix conjugate() const { return u_.conjugate(); }

 private:
  Matrix u_;
};

namespace detail {

inline void require_compatible(const Frame& f, const TransformMatrix& u) {
  if (u.cols() != f.size()) {
    throw DimensionMismatch("transform matrix has " + std::to_string(u.cols()) +
                            " columns, frame has " + std::to_string(f.size()) + " elements");
  }
  if (u.rows() < 1) throw DimensionMismatch("transform matrix needs at least one row");
}

}  // namespace detail

inline Frame transform(const Frame& f, const TransformMatrix& u) {
  detail::require_compatible(f, u);
  Matrix g = f.synthesis_matrix() * u.transpose();
  const bool real = f.field() == FieldKind::real && u.matrix().imag().isZero(0.0);
  return Frame(std::move(g), real ? FieldKind::real : FieldKind::complex);
}

// gamma = inf ||U T^* f|| / ||T^* f|| over f with T^* f != 0, i.e. the
// smallest singular value of U restricted to R_{T^*}.
inline double frame_criterion_gamma(const Frame& f, const TransformMatrix& u,
                                    const Tolerance& tol = {}) {
  detail::require_compatible(f, u);
  const SubspaceBasis r = range_basis(f.analysis_matrix(), tol);
  if (r.empty()) return 0.0;
  const auto s = singular_values(u.matrix() * r.vectors());
  if (static_cast<Index>(s.size()) < r.dim()) return 0.0;  // m' < dim R_{T^*}
  return s.back();
}

struct KernelDimensionSplit {
  Index lhs = 0;               // dim N_{T U^T}
  Index rhs_intersection = 0;  // dim(R_{U^T} cap N_T)
  Index rhs_corange = 0;       // dim R_U^perp = m' - rank U
  bool agree = false;
};

inline KernelDimensionSplit kernel_dimension_split(const Frame& f, const TransformMatrix& u,
                                      const Tolerance& tol = {}) {
  detail::require_compatible(f, u);
  const Matrix& t = f.synthesis_matrix();
  const Matrix ut = u.transpose();
  KernelDimensionSplit out;
  out.lhs = null_space_basis(t * ut, tol, spectral_norm(t) * spectral_norm(ut)).dim();
  out.rhs_intersection =
      subspace_intersection_dim(range_basis(ut, tol), null_space_basis(t, tol), tol);
  out.rhs_corange = u.rows() - rank(u.matrix(), tol);
  out.agree = (out.lhs == out.rhs_intersection + out.rhs_corange);
  return out;
}

struct RieszBasisCriterion {
  // conj(U) maps R_{T^*} onto the whole m'-dimensional coefficient space.
  bool surjective = false;
  // G is a frame for span(F) (gamma > 0); the standing hypothesis.
  bool transformed_is_frame = false;
  bool riesz_basis = false;
};

// In finite dimension, G is a Riesz basis for span(F) iff G is a frame for
// span(F) and conj(U) restricted to R_{T^*} is onto.
inline RieszBasisCriterion riesz_basis_criterion(const Frame& f, const TransformMatrix& u,
                                    const Tolerance& tol = {}) {
  detail::require_compatible(f, u);
  const SubspaceBasis r = range_basis(f.analysis_matrix(), tol);
  RieszBasisCriterion out;
  if (r.empty()) return out;
  const double u_norm = spectral_norm(u.matrix());
  const Matrix restricted_conj = u.conjugate() * r.vectors();
  out.surjective = rank_scaled(restricted_conj, tol, u_norm) == u.rows();
  const Matrix restricted = u.matrix() * r.vectors();
  out.transformed_is_frame = rank_scaled(restricted, tol, u_norm) == r.dim();
  out.riesz_basis = out.surjective && out.transformed_is_frame;
  return out;
}

// Least-squares U with T U^T ~= G (minimum-norm solution). Not part of the
// theory; a convenience for recovering a transform between two given frames.
inline TransformMatrix recover_transform(const Frame& f, const Frame& g, const Tolerance& tol = {}) {
  if (f.dim() != g.dim()) throw DimensionMismatch("frames live in different dimensions");
  const Matrix ut = pseudo_inverse(f.synthesis_matrix(), tol) * g.synthesis_matrix();
  return TransformMatrix(Matrix(ut.transpose()));
}

}  // namespace framekit
