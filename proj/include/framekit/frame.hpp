#pragma once

// Finite frames and their operator calculus.
//
// A frame is an ordered family of m vectors in C^d, stored as its d x m
// synthesis matrix T (column i is the i-th vector). Inner products are
// linear in the first slot: <x, y> = sum_k x_k conj(y_k). With that
// convention
//
//   synthesis  T c   = sum_i c_i f_i
//   analysis   T* f  = (<f, f_1>, ..., <f, f_m>)
//   frame op   S     = T T*
//
// and the canonical dual is {S^+ f_i}, where S^+ inverts S on span(F) and
// vanishes on its orthogonal complement.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framekit/linalg.hpp"

namespace framekit {

enum class FieldKind { real, complex };

inline const char* to_string(FieldKind k) { return k == FieldKind::real ? "real" : "complex"; }

class Frame {
 public:
  // Field kind is deduced: real iff every imaginary part is exactly zero.
  explicit Frame(Matrix synthesis) : t_(std::move(synthesis)) {
    validate();
    field_ = t_.imag().isZero(0.0) ? FieldKind::real : FieldKind::complex;
  }

  Frame(Matrix synthesis, FieldKind field) : t_(std::move(synthesis)), field_(field) {
    validate();
    if (field_ == FieldKind::real && !t_.imag().isZero(0.0)) {
      throw InputError("frame declared real has non-zero imaginary parts");
    }
  }

  static Frame from_vectors(const std::vector<Vector>& vectors) {
    if (vectors.empty()) throw InputError("a frame needs at least one vector");
    Matrix t(vectors.front().size(), static_cast<Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != t.rows()) {
        throw DimensionMismatch("frame vector " + std::to_string(i) + " has dimension " +
                                std::to_string(vectors[i].size()) + ", expected " +
                                std::to_string(t.rows()));
      }
      t.col(static_cast<Index>(i)) = vectors[i];
    }
    return Frame(std::move(t));
  }

  static Frame from_real(const Eigen::MatrixXd& synthesis) {
    return Frame(synthesis.cast<Scalar>(), FieldKind::real);
  }

  Index dim() const { return t_.rows(); }
  Index size() const { return t_.cols(); }
  FieldKind field() const { return field_; }

  Vector vector(Index i) const { return t_.col(i); }
  const Matrix& synthesis_matrix() const { return t_; }
  Matrix analysis_matrix() const { return t_.adjoint(); }

  // Ordered subfamily; throws if `indices` is empty or out of range.
  Frame subfamily(std::span<const Index> indices) const {
    if (indices.empty()) throw InputError("subfamily must be non-empty");
    Matrix t(dim(), static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const Index i = indices[k];
      if (i < 0 || i >= size()) throw InvalidParameter("subfamily index out of range");
      t.col(static_cast<Index>(k)) = t_.col(i);
    }
    return Frame(std::move(t), field_);
  }

  bool operator==(const Frame& other) const {
    return field_ == other.field_ && t_.rows() == other.t_.rows() &&
           t_.cols() == other.t_.cols() && t_ == other.t_;
  }

 private:
  void validate() const {
    if (t_.cols() < 1) throw InputError("a frame needs at least one vector");
    if (t_.rows() < 1) throw InputError("frame vectors need at least one coordinate");
    require_finite(t_, "frame");
  }

  Matrix t_;
  FieldKind field_ = FieldKind::real;
};

struct FrameBounds {
  double lower = 0.0;  // smallest non-zero eigenvalue of S (bound on span(F))
  double upper = 0.0;  // largest eigenvalue of S
  Index rank = 0;
  bool spans_whole_space = false;
};

inline Vector synthesis(const Frame& f, const Vector& c) {
  if (c.size() != f.size()) {
    throw DimensionMismatch("coefficient list has length " + std::to_string(c.size()) +
                            ", frame has " + std::to_string(f.size()) + " elements");
  }
  return f.synthesis_matrix() * c;
}

inline Vector analysis(const Frame& f, const Vector& x) {
  if (x.size() != f.dim()) {
    throw DimensionMismatch("vector has dimension " + std::to_string(x.size()) +
                            ", frame lives in dimension " + std::to_string(f.dim()));
  }
  return f.synthesis_matrix().adjoint() * x;
}

inline Matrix frame_operator(const Frame& f) {
  return f.synthesis_matrix() * f.synthesis_matrix().adjoint();
}

inline FrameBounds frame_bounds(const Frame& f, const Tolerance& tol = {}) {
  const auto s = singular_values(f.synthesis_matrix());
  const Index r = detail::count_above(s, detail::rank_threshold(s, f.dim(), f.size(), tol, 0.0));
  FrameBounds b;
  b.rank = r;
  b.spans_whole_space = (r == f.dim());
  if (r > 0) {
    b.upper = s.front() * s.front();
    const double smallest = s[static_cast<std::size_t>(r - 1)];
    b.lower = smallest * smallest;
  }
  return b;
}

inline Frame dual_frame(const Frame& f, const Tolerance& tol = {}) {
  if (rank(f.synthesis_matrix(), tol) == 0) {
    throw DegenerateInput("dual frame of an all-zero family is undefined");
  }
  // S^+ T = (T^+)^*.
  return Frame(Matrix(pseudo_inverse(f.synthesis_matrix(), tol).adjoint()), f.field());
}

inline Vector frame_coefficients(const Frame& f, const Vector& x, const Tolerance& tol = {}) {
  if (x.size() != f.dim()) {
    throw DimensionMismatch("vector has dimension " + std::to_string(x.size()) +
                            ", frame lives in dimension " + std::to_string(f.dim()));
  }
  const Matrix t_pinv = pseudo_inverse(f.synthesis_matrix(), tol);
  const Vector coeffs = t_pinv * x;
  const double residual = (f.synthesis_matrix() * coeffs - x).norm();
  if (residual > tol.eq_abs * x.norm()) {
    throw OffSpanError("vector is not in the span of the frame", residual);
  }
  return coeffs;
}

struct Tightness {
  bool tight = false;
  std::optional<double> constant;
};

inline Tightness is_tight(const Frame& f, const Tolerance& tol = {}) {
  const auto b = frame_bounds(f, tol);
  Tightness out;
  out.tight = (b.upper - b.lower) <= tol.eq_abs * b.upper;
  if (out.tight) out.constant = b.upper;
  return out;
}

}  // namespace framekit
