#pragma once

// Dense numerical kernel: singular values, numerical rank, orthonormal bases
// of kernels and ranges, projections and subspace dimension arithmetic.
//
// All matrices are complex; real data is embedded with zero imaginary part.
// Ranks are decided by the rule
//
//   sigma_i > rank_rel * sigma_ref * max(rows, cols)
//
// where sigma_ref is the largest singular value of the matrix (or, for the
// "scaled" variants, the larger of that and a caller-supplied reference norm
// of the factors the matrix was built from).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "framekit/errors.hpp"

namespace framekit {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerance {
  double rank_rel = 1e-12;
  double eq_abs = 1e-9;

  void validate() const {
    if (!(rank_rel > 0.0) || !(eq_abs > 0.0) || !std::isfinite(rank_rel) ||
        !std::isfinite(eq_abs)) {
      throw InvalidParameter("tolerance values must be positive and finite");
    }
  }
};

inline bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Scalar& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

inline void require_finite(const Matrix& m, const char* what = "matrix") {
  if (!all_finite(m)) {
    throw InputError(std::string(what) + " has non-finite entries");
  }
}

// Orthonormal column basis of a subspace of C^ambient_dim. An empty basis
// (zero columns) represents the zero subspace.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(Index ambient_dim = 0) : vectors_(ambient_dim, 0) {}

  // The columns are taken as given; callers are responsible for
  // orthonormality (check with is_orthonormal()).
  explicit SubspaceBasis(Matrix orthonormal_columns)
      : vectors_(std::move(orthonormal_columns)) {}

  Index ambient_dim() const { return vectors_.rows(); }
  Index dim() const { return vectors_.cols(); }
  bool empty() const { return vectors_.cols() == 0; }
  const Matrix& vectors() const { return vectors_; }

  bool is_orthonormal(double eq_abs) const {
    if (empty()) return true;
    const Matrix gram = vectors_.adjoint() * vectors_;
    const Matrix id = Matrix::Identity(dim(), dim());
    return (gram - id).cwiseAbs().maxCoeff() <= eq_abs;
  }

 private:
  Matrix vectors_;
};

namespace detail {

struct Svd {
  std::vector<double> values;  // non-increasing, min(rows, cols) entries
  Matrix u;                    // rows x rows
  Matrix v;                    // cols x cols
};

inline Svd full_svd(const Matrix& m) {
  require_finite(m);
  Svd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.u = Matrix::Identity(m.rows(), m.rows());
    out.v = Matrix::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  return out;
}

inline double rank_threshold(const std::vector<double>& values, Index rows, Index cols,
                             const Tolerance& tol, double reference_norm) {
  const double top = values.empty() ? 0.0 : values.front();
  const double ref = std::max(top, reference_norm);
  return tol.rank_rel * ref * static_cast<double>(std::max(rows, cols));
}

inline Index count_above(const std::vector<double>& values, double threshold) {
  return static_cast<Index>(
      std::count_if(values.begin(), values.end(), [&](double s) { return s > threshold; }));
}

}  // namespace detail

inline std::vector<double> singular_values(const Matrix& m) {
  require_finite(m);
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

inline double spectral_norm(const Matrix& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

inline Index rank(const Matrix& m, const Tolerance& tol = {}) {
  const auto s = singular_values(m);
  return detail::count_above(s, detail::rank_threshold(s, m.rows(), m.cols(), tol, 0.0));
}

// Rank with the threshold measured against max(sigma_max, reference_norm).
inline Index rank_scaled(const Matrix& m, const Tolerance& tol, double reference_norm) {
  const auto s = singular_values(m);
  return detail::count_above(
      s, detail::rank_threshold(s, m.rows(), m.cols(), tol, reference_norm));
}

inline SubspaceBasis null_space_basis(const Matrix& m, const Tolerance& tol = {},
                                      double reference_norm = 0.0) {
  const auto svd = detail::full_svd(m);
  const Index r = detail::count_above(
      svd.values, detail::rank_threshold(svd.values, m.rows(), m.cols(), tol, reference_norm));
  return SubspaceBasis(Matrix(svd.v.rightCols(m.cols() - r)));
}

inline SubspaceBasis range_basis(const Matrix& m, const Tolerance& tol = {},
                                 double reference_norm = 0.0) {
  const auto svd = detail::full_svd(m);
  const Index r = detail::count_above(
      svd.values, detail::rank_threshold(svd.values, m.rows(), m.cols(), tol, reference_norm));
  return SubspaceBasis(Matrix(svd.u.leftCols(r)));
}

// Orthogonal projector onto span(b) as an explicit matrix.
inline Matrix projector(const SubspaceBasis& b) {
  return b.vectors() * b.vectors().adjoint();
}

inline Vector project_onto_span(const SubspaceBasis& b, const Vector& f) {
  if (f.size() != b.ambient_dim()) {
    throw DimensionMismatch("vector dimension " + std::to_string(f.size()) +
                            " does not match ambient dimension " +
                            std::to_string(b.ambient_dim()));
  }
  if (b.empty()) return Vector::Zero(f.size());
  return b.vectors() * (b.vectors().adjoint() * f);
}

inline double distance_to_span(const SubspaceBasis& b, const Vector& f) {
  return (f - project_onto_span(b, f)).norm();
}

// Orthonormal basis of span(a) + span(b).
inline SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b,
                                  const Tolerance& tol = {}) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("subspaces live in different ambient spaces");
  }
  Matrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.vectors(), b.vectors();
  return range_basis(joined, tol, 1.0);
}

inline Index subspace_intersection_dim(const SubspaceBasis& a, const SubspaceBasis& b,
                                       const Tolerance& tol = {}) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("subspaces live in different ambient spaces");
  }
  if (a.empty() || b.empty()) return 0;
  Matrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.vectors(), b.vectors();
  return a.dim() + b.dim() - rank_scaled(joined, tol, 1.0);
}

// Moore-Penrose pseudoinverse with the library rank rule.
inline Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol = {}) {
  const auto svd = detail::full_svd(m);
  const Index r = detail::count_above(
      svd.values, detail::rank_threshold(svd.values, m.rows(), m.cols(), tol, 0.0));
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  for (Index k = 0; k < r; ++k) {
    out += svd.v.col(k) * (1.0 / svd.values[static_cast<std::size_t>(k)]) *
           svd.u.col(k).adjoint();
  }
  return out;
}

// dim{x : Vx in Z}, by two independent routes.
struct PreimageDimension {
  Index direct = 0;        // nullity of (I - P_Z) V
  Index intersection = 0;  // dim(Z cap R_V)
  Index kernel = 0;        // dim N_V

  Index value() const { return direct; }
  bool agree() const { return direct == intersection + kernel; }
};

inline PreimageDimension preimage_dimension(const Matrix& v, const SubspaceBasis& z,
                                            const Tolerance& tol = {}) {
  if (z.ambient_dim() != v.rows()) {
    throw DimensionMismatch("subspace Z must live in the codomain of V");
  }
  const double v_norm = spectral_norm(v);
  const Matrix off_z = Matrix::Identity(v.rows(), v.rows()) - projector(z);
  PreimageDimension out;
  out.direct = null_space_basis(off_z * v, tol, v_norm).dim();
  out.intersection = subspace_intersection_dim(z, range_basis(v, tol), tol);
  out.kernel = null_space_basis(v, tol).dim();
  return out;
}

}  // namespace framekit
