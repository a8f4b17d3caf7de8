#include <gtest/gtest.h>

#include <random>

#include "qhh/subspace.hpp"

using namespace qhh;

namespace {
FMatrix M(std::size_t r, std::size_t c, fp::elem p, std::vector<std::int64_t> v) {
  return FMatrix::from_ints(r, c, p, v);
}
}  // namespace

TEST(FMatrix, Products) {
  auto m = M(2, 3, 7, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(matmul(FMatrix::identity(2, 7), m), m);
  EXPECT_TRUE(matmul(FMatrix(2, 3, 7), M(3, 4, 7, std::vector<std::int64_t>(12, 5))).is_zero());
  EXPECT_EQ(matmul(M(1, 1, 7, {2}), M(1, 1, 7, {4})), M(1, 1, 7, {1}));
  EXPECT_THROW(matmul(m, m), error);
  EXPECT_THROW(matmul(FMatrix(1, 1, 5), FMatrix(1, 1, 7)), error);
}

TEST(FMatrix, DegenerateShapes) {
  FMatrix a(0, 3, 5), b(3, 0, 5);
  EXPECT_EQ(matmul(b, a).rows(), 3u);
  EXPECT_TRUE(matmul(b, a).is_zero());
  EXPECT_EQ(matmul(a, b).rows(), 0u);
  EXPECT_EQ(rank(a), 0u);
  EXPECT_EQ(kernel(a).dim(), 3u);
  EXPECT_EQ(image(b).dim(), 0u);
}

TEST(FMatrix, LargePrimeNoOverflow) {
  const fp::elem p = 2147483647u;
  FMatrix a(1, 64, p), b(64, 1, p);
  for (std::size_t i = 0; i < 64; ++i) {
    a.set(0, i, p - 1);
    b.set(i, 0, p - 1);
  }
  EXPECT_EQ(matmul(a, b)(0, 0), 64u);
}

TEST(Subspace, KernelExamples) {
  EXPECT_EQ(kernel(FMatrix(3, 3, 7)), Subspace::full(3, 7));
  EXPECT_EQ(kernel(FMatrix::identity(3, 7)).dim(), 0u);
  auto k = kernel(M(1, 2, 7, {1, 1}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.basis(), M(2, 1, 7, {1, 6}));
}

TEST(Subspace, ImageExamples) {
  EXPECT_EQ(image(FMatrix::identity(2, 7)), Subspace::full(2, 7));
  EXPECT_EQ(image(FMatrix(2, 2, 7)).dim(), 0u);
  EXPECT_EQ(image(M(2, 1, 7, {1, 2})).basis(), M(2, 1, 7, {1, 2}));
}

TEST(Subspace, QuotientDim) {
  EXPECT_EQ(quotient_dim(Subspace::zero(3, 7), Subspace::full(3, 7)), 3u);
  auto v = image(M(3, 2, 7, {1, 0, 2, 1, 0, 3}));
  EXPECT_EQ(quotient_dim(v, v), 0u);
  EXPECT_EQ(quotient_dim(image(M(2, 1, 7, {1, 0})), Subspace::full(2, 7)), 1u);
  try {
    quotient_dim(Subspace::full(2, 7), image(M(2, 1, 7, {1, 0})));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_contained);
  }
}

TEST(Subspace, EqualityIsCanonical) {
  auto a = image(M(3, 2, 5, {1, 0, 0, 1, 0, 0}));
  auto b = image(M(3, 2, 5, {2, 3, 1, 1, 0, 0}));
  EXPECT_TRUE(subspace_equal(a, b));
  EXPECT_TRUE(subspace_equal(a, a));
  EXPECT_FALSE(subspace_equal(Subspace::zero(1, 5), Subspace::full(1, 5)));
}

TEST(Subspace, RandomProperties) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const fp::elem p = trial % 2 ? 5 : 7;
    std::uniform_int_distribution<std::size_t> sz(0, 6);
    const auto r = sz(rng), c = sz(rng);
    // low-rank matrix as a product
    auto m = matmul(random_matrix(r, 2, p, rng), random_matrix(2, c, p, rng));
    if (trial % 3 == 0) m = random_matrix(r, c, p, rng);
    auto k = kernel(m);
    EXPECT_EQ(rank(m) + k.dim(), c);
    EXPECT_TRUE(matmul(m, k.basis()).is_zero());
    auto gl = random_invertible(r, p, rng), gr = random_invertible(c, p, rng);
    EXPECT_EQ(kernel(matmul(gl, m)), k);
    EXPECT_EQ(image(matmul(m, gr)), image(m));
    EXPECT_EQ(quotient_dim(image(m), image(m)) == 0, subspace_equal(image(m), image(m)));
    auto sub = image(column_block(image(m).basis(), 0, image(m).dim() / 2));
    EXPECT_EQ(quotient_dim(sub, image(m)) == 0, subspace_equal(sub, image(m)));
  }
}

TEST(Solve, ConsistentAndInconsistent) {
  auto a = M(2, 2, 7, {1, 1, 2, 2});
  auto x = solve(a, M(2, 1, 7, {3, 6}));
  ASSERT_TRUE(x);
  EXPECT_EQ(matmul(a, *x), M(2, 1, 7, {3, 6}));
  EXPECT_FALSE(solve(a, M(2, 1, 7, {1, 0})));
  auto g = M(2, 2, 7, {2, 1, 1, 1});
  EXPECT_EQ(matmul(g, inverse(g)), FMatrix::identity(2, 7));
  EXPECT_THROW(inverse(a), error);
}

TEST(QuotientSpace, Coordinates) {
  auto outer = Subspace::full(3, 5);
  auto inner = image(M(3, 1, 5, {1, 1, 0}));
  QuotientSpace q(inner, outer);
  EXPECT_EQ(q.dim(), 2u);
  // (1,1,0) is zero in the quotient
  EXPECT_TRUE(q.coordinates(M(3, 1, 5, {1, 1, 0})).is_zero());
  auto reps = q.representatives();
  EXPECT_EQ(q.coordinates(reps), FMatrix::identity(2, 5));
  EXPECT_THROW(QuotientSpace(outer, inner), error);
}

TEST(Subspace, IntersectionAndSum) {
  auto a = image(M(3, 2, 7, {1, 0, 0, 1, 0, 0}));
  auto b = image(M(3, 2, 7, {0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(intersection(a, b).dim(), 1u);
  EXPECT_EQ(sum(a, b).dim(), 3u);
}
