#include <gtest/gtest.h>

#include <cmath>

#include "framekit/constructions.hpp"
#include "framekit/random.hpp"
#include "framekit/riesz.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace framekit;
using namespace testing_helpers;

TEST(ParsevalBlock, SmallCases) {
  const Matrix one = parseval_block(1).synthesis_matrix();
  ASSERT_EQ(one.rows(), 1);
  ASSERT_EQ(one.cols(), 2);
  EXPECT_EQ(one(0, 0), Scalar(0.0));
  EXPECT_EQ(one(0, 1), Scalar(1.0));

  const Matrix two = parseval_block(2).synthesis_matrix();
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix expected = real_matrix({{0.5, -0.5, r}, {-0.5, 0.5, r}});
  EXPECT_LE((two - expected).cwiseAbs().maxCoeff(), 1e-15);

  EXPECT_THROW(parseval_block(0), InvalidParameter);
}

TEST(ParsevalBlock, TightForEveryN) {
  for (Index n = 1; n <= 15; ++n) {
    const auto b = frame_bounds(parseval_block(n));
    EXPECT_NEAR(b.lower, 1.0, 1e-12) << n;
    EXPECT_NEAR(b.upper, 1.0, 1e-12) << n;
  }
}

TEST(BlockFrame, Shapes) {
  const auto one = block_frame(1);
  EXPECT_EQ(one.frame.dim(), 1);
  EXPECT_EQ(one.frame.size(), 2);
  EXPECT_EQ(one.frame.synthesis_matrix(), parseval_block(1).synthesis_matrix());

  const auto three = block_frame(3);
  EXPECT_EQ(three.frame.dim(), 6);
  EXPECT_EQ(three.frame.size(), 9);
  const auto b = frame_bounds(three.frame);
  EXPECT_NEAR(b.lower, 1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-12);
  // Excess 3: rank by elimination oracle.
  EXPECT_EQ(9 - oracle::row_reduce_rank(three.frame.synthesis_matrix()), 3);
  EXPECT_EQ(excess(three.frame).excess, 3);
  EXPECT_THROW(block_frame(0), InvalidParameter);
}

TEST(BlockFrame, StructureArithmetic) {
  const BlockStructure s(4);
  EXPECT_EQ(s.total_dim(), 10);
  EXPECT_EQ(s.total_elements(), 14);
  Index dims = 0;
  for (Index n = 1; n <= 4; ++n) {
    EXPECT_EQ(s.offset(n), dims);
    dims += s.block_dim(n);
  }
  EXPECT_EQ(dims, s.total_dim());
  EXPECT_EQ(s.element(1, 1), 0);
  EXPECT_EQ(s.element(2, 1), 2);
  EXPECT_EQ(s.element(4, 5), 13);
  EXPECT_EQ(s.element_boundaries(), (std::vector<Index>{2, 5, 9, 14}));
  EXPECT_THROW(s.element(5, 1), InvalidParameter);
  EXPECT_THROW(s.element(2, 4), InvalidParameter);
}

TEST(BlockIndex, Examples) {
  EXPECT_EQ(block_index(1, 1), 1);
  EXPECT_EQ(block_index(3, 2), 5);
  for (Index n = 1; n <= 100; ++n) EXPECT_EQ(block_index(n, n) + 1, block_index(n + 1, 1)) << n;
  EXPECT_THROW(block_index(3, 4), InvalidParameter);
  EXPECT_THROW(block_index(3, 0), InvalidParameter);
  EXPECT_THROW(block_index(0, 1), InvalidParameter);
}

TEST(PerturbedBlockFrame, Examples) {
  const auto f = block_frame(5).frame.synthesis_matrix();
  const auto g = perturbed_block_frame(5, 1e-8).frame.synthesis_matrix();
  EXPECT_LE((f - g).cwiseAbs().maxCoeff(), 1e-7);

  const auto p = perturbed_block_frame(4, 0.3);
  const auto b = frame_bounds(p.frame);
  EXPECT_GE(b.lower, 0.49 - 1e-12);
  EXPECT_LE(b.upper, 1.69 + 1e-12);

  const auto v = riesz_verdict(p.frame.subfamily(leading_elements(p.structure)));
  EXPECT_TRUE(v.is_riesz_basis_for_space);
  EXPECT_GE(v.lower, 0.09 - 1e-10);

  for (double eps : {0.0, 1.0, -0.1, 1.5}) {
    EXPECT_THROW(perturbed_block_frame(3, eps), InvalidParameter) << eps;
  }
}

TEST(PerturbedBlockFrame, LastElementUnchanged) {
  const auto f = block_frame(4);
  const auto g = perturbed_block_frame(4, 0.4);
  for (Index n = 1; n <= 4; ++n) {
    const Index j = f.element(n, n + 1);
    EXPECT_EQ(f.frame.vector(j), g.frame.vector(j));
  }
}

// --- properties -----------------------------------------------------------

class ConstructionProperty : public ::testing::TestWithParam<int> {};

TEST_P(ConstructionProperty, ParsevalEnergy) {
  const Index blocks = 1 + GetParam() % 12;
  InstanceGenerator gen(static_cast<std::uint64_t>(7000 + GetParam()));
  const auto bf = block_frame(blocks);
  const Vector x = gen.gaussian_vector(bf.frame.dim(), GetParam() % 2 == 1);
  const double energy = analysis(bf.frame, x).squaredNorm();
  EXPECT_NEAR(energy, x.squaredNorm(), 1e-10 * x.squaredNorm());
}

TEST_P(ConstructionProperty, BlockLocality) {
  const Index blocks = 1 + GetParam() % 8;
  InstanceGenerator gen(static_cast<std::uint64_t>(8000 + GetParam()));
  const auto bf = block_frame(blocks);
  const auto& s = bf.structure;
  const Vector x = gen.gaussian_vector(s.total_dim(), false);
  const Vector c = analysis(bf.frame, x);
  for (Index n = 1; n <= blocks; ++n) {
    Vector restricted = Vector::Zero(s.total_dim());
    restricted.segment(s.offset(n), n) = x.segment(s.offset(n), n);
    const Vector cn = analysis(bf.frame, restricted);
    for (Index i = 1; i <= n + 1; ++i) {
      const Index j = bf.element(n, i);
      EXPECT_NEAR(std::abs(c(j) - cn(j)), 0.0, 1e-12);
      // Support stays inside block n.
      const Vector v = bf.frame.vector(j);
      const double outside = (v.norm() * v.norm()) - v.segment(s.offset(n), n).squaredNorm();
      EXPECT_LE(std::abs(outside), 1e-15);
    }
  }
}

TEST_P(ConstructionProperty, PerBlockKernel) {
  const Index blocks = 1 + GetParam() % 10;
  const auto bf = block_frame(blocks);
  for (Index n = 1; n <= blocks; ++n) {
    Vector c = Vector::Zero(bf.frame.size());
    for (Index i = 1; i <= n; ++i) c(bf.element(n, i)) = 1.0;
    EXPECT_LE(synthesis(bf.frame, c).norm(), 1e-14) << "block " << n;
  }
}

TEST_P(ConstructionProperty, PerturbationMagnitude) {
  const Index blocks = 1 + GetParam() % 8;
  InstanceGenerator gen(static_cast<std::uint64_t>(9000 + GetParam()));
  const double eps = gen.uniform(0.01, 0.99);
  const Matrix k = block_frame(blocks).frame.synthesis_matrix() -
                   perturbed_block_frame(blocks, eps).frame.synthesis_matrix();
  for (int trial = 0; trial < 100; ++trial) {
    const Vector c = gen.gaussian_vector(k.cols(), trial % 2 == 1);
    EXPECT_LE((k * c).norm(), eps * c.norm() * (1.0 + 1e-12));
  }
}

INSTANTIATE_TEST_SUITE_P(Randomized, ConstructionProperty, ::testing::Range(0, 120));
