#include <gtest/gtest.h>

#include "framekit/constructions.hpp"
#include "framekit/linalg.hpp"
#include "framekit/random.hpp"
#include "oracles.hpp"

using namespace framekit;

namespace {

Matrix real(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(SingularValues, IdentityAndScalar) {
  const auto s = singular_values(Matrix::Identity(2, 2));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 1.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0, 1e-15);
  const auto one = singular_values(real({{3.0}}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0], 3.0);
}

TEST(SingularValues, ParsevalBlockAgainstGramOracle) {
  const Matrix t = parseval_block(3).synthesis_matrix();
  const auto s = singular_values(t);
  const auto ref = oracle::gram_singular_values(t.real());
  ASSERT_EQ(s.size(), 3u);
  ASSERT_EQ(ref.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(ref[i], 1.0, 1e-12);
    EXPECT_NEAR(s[i], 1.0, 1e-12);
  }
}

TEST(SingularValues, NonFiniteRejected) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(singular_values(m), InputError);
  m(0, 1) = Scalar(0.0, std::numeric_limits<double>::infinity());
  EXPECT_THROW(rank(m), InputError);
}

TEST(Rank, TrivialCasesAndBlock) {
  EXPECT_EQ(rank(Matrix::Zero(3, 3)), 0);
  EXPECT_EQ(rank(Matrix::Identity(5, 5)), 5);
  const Matrix t = parseval_block(3).synthesis_matrix();
  EXPECT_EQ(oracle::row_reduce_rank(t), 3);
  EXPECT_EQ(rank(t), 3);
}

TEST(NullSpace, Cases) {
  EXPECT_EQ(null_space_basis(Matrix::Identity(4, 4)).dim(), 0);
  EXPECT_EQ(null_space_basis(Matrix::Zero(3, 5)).dim(), 5);

  const Matrix t = parseval_block(3).synthesis_matrix();
  const auto n = null_space_basis(t);
  ASSERT_EQ(n.dim(), 1);
  Vector expected(4);
  expected << 1.0, 1.0, 1.0, 0.0;
  expected /= std::sqrt(3.0);
  // Equal up to a unit phase.
  EXPECT_NEAR(std::abs(n.vectors().col(0).dot(expected)), 1.0, 1e-12);
  EXPECT_LE((t * n.vectors()).norm(), 1e-12);
}

TEST(RangeBasis, Cases) {
  const auto id = range_basis(Matrix::Identity(3, 3));
  EXPECT_EQ(id.dim(), 3);
  EXPECT_TRUE(id.is_orthonormal(1e-12));

  Vector a(3), b(4);
  a << 1, 2, 3;
  b << 1, -1, 0, 2;
  EXPECT_EQ(range_basis(Matrix(a * b.transpose())).dim(), 1);

  const auto f = block_frame(3);
  EXPECT_EQ(range_basis(f.frame.analysis_matrix()).dim(), 6);
}

TEST(Projection, Cases) {
  Matrix q(3, 1);
  q << 1.0, 1.0, 1.0;
  q /= std::sqrt(3.0);
  const SubspaceBasis span(q);
  Vector e1 = Vector::Zero(3);
  e1(0) = 1.0;
  const Vector pf = project_onto_span(span, e1);
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(pf(i).real(), 1.0 / 3.0, 1e-15);

  Vector inside = q.col(0) * 2.5;
  EXPECT_LE((project_onto_span(span, inside) - inside).norm(), 1e-14);
  Vector orth(3);
  orth << 1.0, -1.0, 0.0;
  EXPECT_LE(project_onto_span(span, orth).norm(), 1e-15);

  EXPECT_THROW(project_onto_span(span, Vector::Zero(2)), DimensionMismatch);
}

TEST(Intersection, Cases) {
  InstanceGenerator gen(11);
  const auto b = range_basis(gen.gaussian(5, 2, false));
  EXPECT_EQ(subspace_intersection_dim(b, b), 2);

  const Matrix m = gen.gaussian(4, 2, false);
  const auto r = range_basis(m);
  const auto perp = null_space_basis(Matrix(m.adjoint()));
  EXPECT_EQ(subspace_intersection_dim(r, perp), 0);

  // Planted common generator in R^4; oracle: solve [A | -B] x = 0 by row reduction.
  const Vector shared = gen.gaussian_vector(4, false);
  Matrix a(4, 2), c(4, 3);
  a << shared, gen.gaussian_vector(4, false);
  c << gen.gaussian_vector(4, false), shared, gen.gaussian_vector(4, false);
  Matrix joined(4, 5);
  joined << a, c;
  const long oracle_dim = 2 + 3 - oracle::row_reduce_rank(joined);
  EXPECT_EQ(oracle_dim, 1);
  EXPECT_EQ(subspace_intersection_dim(range_basis(a), range_basis(c)), oracle_dim);

  EXPECT_THROW(subspace_intersection_dim(range_basis(a), SubspaceBasis(Matrix::Identity(3, 3))),
               DimensionMismatch);
}

TEST(Preimage, TrivialCases) {
  InstanceGenerator gen(5);
  const auto z = range_basis(gen.gaussian(6, 2, false));
  const auto id = preimage_dimension(Matrix::Identity(6, 6), z);
  EXPECT_EQ(id.value(), 2);
  EXPECT_TRUE(id.agree());

  const auto zero = preimage_dimension(Matrix::Zero(6, 4), z);
  EXPECT_EQ(zero.value(), 4);
  EXPECT_EQ(zero.kernel, 4);
  EXPECT_TRUE(zero.agree());

  EXPECT_THROW(preimage_dimension(Matrix::Identity(5, 5), z), DimensionMismatch);
}

TEST(Preimage, RankTwoAgainstEliminationOracle) {
  InstanceGenerator gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix v = gen.with_rank(4, 4, 2, trial % 2 == 1);
    const Matrix zm = gen.gaussian(4, 2, trial % 2 == 1);
    const auto z = range_basis(zm);
    const auto p = preimage_dimension(v, z);
    EXPECT_EQ(p.direct, oracle::preimage_dim(v, zm)) << "trial " << trial;
    EXPECT_TRUE(p.agree()) << "trial " << trial;
  }
}

// --- properties -----------------------------------------------------------

class LinalgProperty : public ::testing::TestWithParam<int> {};

TEST_P(LinalgProperty, RankNullityAndOrthogonality) {
  InstanceGenerator gen(static_cast<std::uint64_t>(1000 + GetParam()));
  const bool complex = GetParam() % 2 == 1;
  const Index rows = gen.uniform_int(1, 9);
  const Index cols = gen.uniform_int(1, 9);
  const Index r = gen.uniform_int(0, std::min(rows, cols));
  const Matrix m = gen.with_rank(rows, cols, r, complex);
  const Tolerance tol;

  EXPECT_EQ(rank(m, tol), r);
  const auto kernel = null_space_basis(m, tol);
  EXPECT_EQ(rank(m, tol) + kernel.dim(), cols);
  EXPECT_TRUE(kernel.is_orthonormal(tol.eq_abs));
  for (Index j = 0; j < kernel.dim(); ++j) {
    EXPECT_LE((m * kernel.vectors().col(j)).norm(), tol.eq_abs * std::max(1.0, spectral_norm(m)));
  }

  // Range of M* is orthogonal to N(M).
  const auto co_range = range_basis(Matrix(m.adjoint()), tol);
  if (!co_range.empty() && !kernel.empty()) {
    EXPECT_LE((co_range.vectors().adjoint() * kernel.vectors()).cwiseAbs().maxCoeff(), tol.eq_abs);
  }

  // sigma(M) = sigma(M*)
  const auto s = singular_values(m);
  const auto sa = singular_values(Matrix(m.adjoint()));
  ASSERT_EQ(s.size(), sa.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], sa[i], tol.eq_abs);
}

TEST_P(LinalgProperty, ProjectionIdempotent) {
  InstanceGenerator gen(static_cast<std::uint64_t>(2000 + GetParam()));
  const bool complex = GetParam() % 3 == 0;
  const Index n = gen.uniform_int(1, 9);
  const Index k = gen.uniform_int(0, n);
  const auto b = range_basis(gen.gaussian(n, k, complex));
  const Vector f = gen.gaussian_vector(n, complex);
  const Vector pf = project_onto_span(b, f);
  const Tolerance tol;
  EXPECT_LE((project_onto_span(b, pf) - pf).norm(), tol.eq_abs * f.norm());
  if (!b.empty()) {
    EXPECT_LE((b.vectors().adjoint() * (f - pf)).norm(), tol.eq_abs * f.norm());
  }
  const Matrix p = projector(b);
  EXPECT_LE((p - p.adjoint()).cwiseAbs().maxCoeff(), tol.eq_abs);
}

TEST_P(LinalgProperty, PreimageDimensionIdentity) {
  InstanceGenerator gen(static_cast<std::uint64_t>(3000 + GetParam()));
  const bool complex = GetParam() % 2 == 0;
  const Index rows = gen.uniform_int(1, 8);
  const Index cols = gen.uniform_int(1, 8);
  const Index r = gen.uniform_int(0, std::min(rows, cols));
  const Matrix v = gen.with_rank(rows, cols, r, complex);
  // Z partly inside R_V so the intersection term is non-trivial.
  const Index k = gen.uniform_int(0, rows);
  Matrix zm = gen.gaussian(rows, k, complex);
  const Index inside = std::min<Index>(k, gen.uniform_int(0, r));
  for (Index j = 0; j < inside; ++j) zm.col(j) = v * gen.gaussian_vector(cols, complex);
  const auto z = range_basis(zm);
  const auto p = preimage_dimension(v, z);
  EXPECT_TRUE(p.agree()) << p.direct << " vs " << p.intersection << " + " << p.kernel;
  EXPECT_EQ(p.direct, oracle::preimage_dim(v, z.vectors()));
}

INSTANTIATE_TEST_SUITE_P(Randomized, LinalgProperty, ::testing::Range(0, 120));
