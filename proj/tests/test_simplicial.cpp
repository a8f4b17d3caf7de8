#include <gtest/gtest.h>

#include "qhh/hochschild.hpp"
#include "qhh/homology.hpp"
#include "qhh/random.hpp"
#include "qhh/simplicial.hpp"

using namespace qhh;

namespace {

std::vector<FMatrix> left_unit_insertion(const FinDimAlgebra& a, int top) {
  std::vector<FMatrix> s;
  for (int n = 0; n < top; ++n) s.push_back(detail::insert_unit(a, static_cast<std::size_t>(n + 1), 0));
  return s;
}

}  // namespace

TEST(Simplicial, RejectsBrokenFaceIdentity) {
  // one level, two faces that disagree on the identity d_0 d_1 = d_0 d_0
  std::vector<std::vector<FMatrix>> faces(3);
  faces[1] = {FMatrix(1, 1, 5, {1}), FMatrix(1, 1, 5, {1})};
  faces[2] = {FMatrix(1, 1, 5, {1}), FMatrix(1, 1, 5, {2}), FMatrix(1, 1, 5, {1})};
  try {
    SimplicialModule(5, {1, 1, 1}, faces);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::simplicial_identity);
  }
}

TEST(Simplicial, StandardConstructionsValidate) {
  EXPECT_NO_THROW(simplex_module(7, 2, 2, 4));
  EXPECT_NO_THROW(hochschild_simplicial(upper_triangular(5), 3));
  auto s = direct_sum(simplex_module(5, 1, 1, 3), hochschild_simplicial(dual_numbers(5), 3));
  EXPECT_EQ(s.dim(2), 4u + 8u);  // 000, 001, 011, 111
  Rng rng(1);
  for (int k = 0; k < 10; ++k) EXPECT_NO_THROW(random_simplicial(7, 3, rng));
}

TEST(Simplicial, SignedFullSpecIsHochschildBoundary) {
  const auto a = upper_triangular(5);
  const auto sm = hochschild_simplicial(a, 3);
  const auto c = q_differential(sm, make_context(2, 5, 4), DifferentialSpec::full());
  for (int n = 1; n <= 3; ++n) {
    FMatrix b(sm.dim(n - 1), sm.dim(n), 5);
    for (int i = 0; i <= n; ++i) b = i % 2 ? sub(b, sm.face(n, i)) : add(b, sm.face(n, i));
    EXPECT_EQ(c.diff(n), b);
  }
}

TEST(Simplicial, WeightedOneIsTruncated) {
  Rng rng(2);
  const auto ctx = make_context(3, 7, 2);
  const auto sm = random_simplicial(7, 4, rng);
  const auto t = q_differential(sm, ctx, DifferentialSpec::truncated());
  const auto w = q_differential(sm, ctx, DifferentialSpec::weighted(1));
  const auto w4 = q_differential(sm, ctx, DifferentialSpec::weighted(4));
  const auto g = q_differential(sm, ctx, DifferentialSpec::general(std::vector<std::int64_t>(5, 1)));
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(t.diff(n), w.diff(n));
    EXPECT_EQ(t.diff(n), w4.diff(n));
    EXPECT_EQ(t.diff(n), g.diff(n));
  }
}

TEST(Simplicial, WeightedCubeVanishesOverF7) {
  for (int s = 0; s < 10; ++s) {
    Rng rng(10 + s);
    const auto sm = random_simplicial(7, 5, rng);
    EXPECT_NO_THROW(q_differential(sm, make_context(3, 7, 2), DifferentialSpec::weighted(2)));
  }
}

TEST(Simplicial, EveryWeightIsNilpotent) {
  for (int s = 0; s < 20; ++s) {
    Rng rng(30 + s);
    const int N = 2 + s % 4;
    const auto ctx = find_context(N);
    const auto sm = random_simplicial(ctx.p(), 2 + s % 4, rng);
    EXPECT_NO_THROW(q_differential(sm, ctx, DifferentialSpec::full()));
    for (std::int64_t ell = -3; ell <= N + 2; ++ell) {
      const auto c = q_differential(sm, ctx, DifferentialSpec::weighted(ell));
      for (int n = N; n <= c.hi(); ++n) EXPECT_TRUE(diff_power(c, n, N).is_zero());
    }
  }
}

TEST(Simplicial, H0OnlyContextStillNilpotent) {
  // N = 4, q = 1 over F_2: [4] = 0 but [2] = 0 too
  const auto ctx = make_context(4, 2, 1);
  const auto sm = hochschild_simplicial(dual_numbers(2), 5);
  EXPECT_NO_THROW(q_differential(sm, ctx, DifferentialSpec::full()));
  EXPECT_NO_THROW(q_differential(sm, ctx, DifferentialSpec::weighted(3)));
}

TEST(DeltaPowerExpansion, AllOnesGivesZero) {
  Rng rng(3);
  const auto ctx = find_context(3);
  const auto sm = random_simplicial(ctx.p(), 5, rng);
  const std::vector<std::int64_t> ones(6, 1);
  for (int n = 3; n <= 5; ++n) EXPECT_TRUE(lemma53_rhs(sm, ctx, ones, n).is_zero());
}

TEST(DeltaPowerExpansion, WeightedSequenceGivesZero) {
  Rng rng(4);
  for (int N : {3, 4}) {
    const auto ctx = find_context(N);
    const auto sm = random_simplicial(ctx.p(), 5, rng);
    for (std::int64_t ell : {-1, 2, 5}) {
      std::vector<std::int64_t> a(6, 1);
      a[0] = ctx.qint(ell);
      for (int n = N; n <= 5; ++n) EXPECT_TRUE(lemma53_rhs(sm, ctx, a, n).is_zero());
    }
  }
}

TEST(DeltaPowerExpansion, MatchesComposedPowers) {
  for (int s = 0; s < 15; ++s) {
    Rng rng(50 + s);
    const int N = 2 + s % 3;
    const auto ctx = find_context(N);
    const auto sm = random_simplicial(ctx.p(), 5, rng);
    std::vector<std::int64_t> a;
    for (int i = 0; i < 6; ++i) a.push_back(uniform_int(rng, 0, static_cast<int>(ctx.p()) - 1));
    std::vector<FMatrix> d;
    for (int n = 1; n <= 5; ++n) d.push_back(q_face_sum(sm, ctx, DifferentialSpec::general(a), n));
    for (int n = N; n <= 5; ++n) {
      FMatrix m = FMatrix::identity(sm.dim(n), ctx.p());
      for (int j = 0; j < N; ++j) m = d[static_cast<std::size_t>(n - j - 1)] * m;
      EXPECT_EQ(lemma53_rhs(sm, ctx, a, n), m) << s << ' ' << n;
    }
  }
}

TEST(Sigma, HochschildRelationAndAcyclicity) {
  const auto ctx = make_context(3, 7, 2);
  for (const auto& a : {dual_numbers(7), upper_triangular(7), split_product(7)}) {
    const auto ch = contracting_homotopy_sigma(hochschild_simplicial(a, 4), ctx);
    EXPECT_EQ(ch.relation_levels.size(), 4u);
    EXPECT_TRUE(ch.certified);
    EXPECT_FALSE(ch.certified_degrees.empty());
    EXPECT_TRUE(check_homotopy(ch.homotopy));
    for (int p = 1; p <= 2; ++p) EXPECT_TRUE(is_acyclic(*ch.complex, p));
  }
}

TEST(Sigma, RandomModulesAreContracted) {
  for (int s = 0; s < 10; ++s) {
    Rng rng(70 + s);
    const int N = 2 + s % 4;
    const auto ctx = find_context(N);
    const auto ch = contracting_homotopy_sigma(random_simplicial(ctx.p(), 4, rng), ctx);
    EXPECT_TRUE(ch.certified);
    for (int p = 1; p < N; ++p) EXPECT_TRUE(is_acyclic(*ch.complex, p));
  }
}

TEST(Sigma, ClassicalCaseIsSignedDegeneracy) {
  const auto ctx = make_context(2, 5, 4);
  const auto sm = hochschild_simplicial(dual_numbers(5), 3);
  const auto ch = contracting_homotopy_sigma(sm, ctx);
  for (int n = 0; n < 3; ++n) {
    const auto want = n % 2 ? scaled(sm.degeneracy(n, n), 4) : sm.degeneracy(n, n);
    EXPECT_EQ(ch.homotopy.at(n), want);
  }
}

TEST(Sigma, RequiresH1) {
  try {
    contracting_homotopy_sigma(hochschild_simplicial(dual_numbers(2), 3), make_context(4, 2, 1));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h1_required);
  }
}

TEST(Extra, UnitInsertionOnBar) {
  const auto a = dual_numbers(7);
  const auto sm = bar_simplicial(a, 4);
  const auto s = left_unit_insertion(a, 4);
  EXPECT_TRUE(is_extra_degeneracy(sm, s));
  const auto ctx = make_context(3, 7, 2);
  const auto ch = contracting_homotopy_extra(sm, ctx, s, 1);
  EXPECT_EQ(ch.relation_levels.size(), 4u);
  EXPECT_TRUE(ch.certified);
  for (int p = 1; p <= 2; ++p) EXPECT_TRUE(is_acyclic(*ch.complex, p));
}

TEST(Extra, MinusOneWeightAwayFromBottom) {
  const auto a = dual_numbers(7);
  const auto sm = bar_simplicial(a, 5);
  const auto ctx = make_context(3, 7, 2);
  const auto ch = contracting_homotopy_extra(sm, ctx, left_unit_insertion(a, 5), -1);
  // on C_0 the relation reads [-1] id = id, false here
  ASSERT_FALSE(ch.relation_levels.empty());
  EXPECT_EQ(ch.relation_levels.front(), 1);
  EXPECT_TRUE(ch.certified);
  EXPECT_FALSE(ch.certified_degrees.empty());
}

TEST(Extra, ClassicalCase) {
  const auto a = upper_triangular(5);
  const auto sm = bar_simplicial(a, 3);
  const auto ch = contracting_homotopy_extra(sm, make_context(2, 5, 4), left_unit_insertion(a, 3), 1);
  EXPECT_TRUE(ch.certified);
  EXPECT_TRUE(is_acyclic(*ch.complex, 1));
}

TEST(Extra, RejectsNonDegeneracy) {
  const auto a = dual_numbers(7);
  const auto sm = bar_simplicial(a, 3);
  std::vector<FMatrix> s;
  for (int n = 0; n < 3; ++n) s.push_back(sm.degeneracy(n, n));
  EXPECT_FALSE(is_extra_degeneracy(sm, s));
  EXPECT_THROW(contracting_homotopy_extra(sm, make_context(3, 7, 2), s, 1), error);
}
