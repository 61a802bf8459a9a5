#pragma once

#include <initializer_list>

#include "framekit/frame.hpp"

namespace testing_helpers {

using framekit::Index;
using framekit::Matrix;
using framekit::Vector;

inline Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector real_vector(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Standard basis vector e_i (0-based) of R^d.
inline Vector unit(Index d, Index i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline framekit::Frame onb(Index d) { return framekit::Frame(Matrix::Identity(d, d)); }

// Columns given as 0-based standard basis indices, e.g. {0, 0, 1} = {e1, e1, e2}.
inline framekit::Frame unit_family(Index d, std::initializer_list<Index> which) {
  Matrix t = Matrix::Zero(d, static_cast<Index>(which.size()));
  Index j = 0;
  for (Index i : which) t(i, j++) = 1.0;
  return framekit::Frame(std::move(t));
}

}  // namespace testing_helpers
