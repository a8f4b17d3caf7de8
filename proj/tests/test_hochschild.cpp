#include <gtest/gtest.h>

#include "qhh/hochschild.hpp"
#include "qhh/homology.hpp"

using namespace qhh;

TEST(Envelope, Shapes) {
  EXPECT_EQ(envelope(ground_field(5)).dim(), 1u);
  const auto b = envelope(dual_numbers(7));
  EXPECT_EQ(b.dim(), 4u);
  // basis e_i (x) e_j at index 2i + j; (x (x) 1)(1 (x) x) = x (x) x
  const auto prod = b.multiply(b.basis_vector(2), b.basis_vector(1));
  EXPECT_EQ(prod, (Vec{0, 0, 0, 1}));
}

TEST(Envelope, OppositeTwist) {
  const auto a = upper_triangular(5);
  const auto b = envelope(a);
  // (1 (x) E11)(1 (x) E12) = 1 (x) E12 E11 = 0 in the opposite factor
  Vec u(9, 0), v(9, 0);
  for (std::size_t k = 0; k < 3; ++k) {
    u[k * 3 + 0] = a.unit()[k];
    v[k * 3 + 1] = a.unit()[k];
  }
  EXPECT_EQ(b.multiply(u, v), Vec(9, 0));
  EXPECT_NE(b.multiply(v, u), Vec(9, 0));
}

TEST(HochschildModule, FacesAndDegeneracies) {
  const auto sm = hochschild_simplicial(dual_numbers(7), 2);
  // basis of A (x) A: index 2i + j with e_0 = 1, e_1 = x
  const std::size_t x = 1;
  EXPECT_TRUE(sm.face(1, 0) * column_vector({0, 0, 0, 1}, 7) == FMatrix(2, 1, 7));
  EXPECT_TRUE(sm.face(1, 1) * column_vector({0, 0, 0, 1}, 7) == FMatrix(2, 1, 7));
  EXPECT_EQ(sm.degeneracy(0, 0)(2, x), 1u);  // x -> x (x) 1
  EXPECT_EQ(sm.degeneracy(0, 0).column(x), (std::vector<fp::elem>{0, 0, 1, 0}));
}

TEST(HochschildComplex, Differential) {
  const auto c = hochschild_ncomplex(dual_numbers(7), make_context(3, 7, 2), 3);
  // b(1 (x) x) = x + q x = 3x
  EXPECT_EQ(c.diff(1).column(1), (std::vector<fp::elem>{0, 3}));
  EXPECT_EQ(c.diff(1).column(3), (std::vector<fp::elem>{0, 0}));
}

TEST(HochschildComplex, ClassicalSignedBoundary) {
  const auto a = upper_triangular(5);
  const auto c = hochschild_ncomplex(a, make_context(2, 5, 4), 3);
  for (int n = 2; n <= 3; ++n) EXPECT_TRUE((c.diff(n - 1) * c.diff(n)).is_zero());
  EXPECT_EQ(homology_dim(c, 1, 0), classical_hh(a, 0));
  EXPECT_EQ(homology_dim(c, 1, 1), classical_hh(a, 1));
}

TEST(HochschildComplex, NilpotentUnderH0) {
  EXPECT_NO_THROW(hochschild_ncomplex(upper_triangular(2), make_context(4, 2, 1), 5));
  EXPECT_NO_THROW(hochschild_ncomplex(truncated_polynomial(13, 3), make_context(4, 13, 5), 4));
}

TEST(ClassicalHH, GroundField) {
  EXPECT_EQ(classical_hh(ground_field(5), 0), 1u);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(classical_hh(ground_field(5), n), 0u);
}

TEST(ClassicalHH, CommutativeDegreeZero) {
  EXPECT_EQ(classical_hh(truncated_polynomial(7, 3), 0), 3u);
  EXPECT_EQ(classical_hh(split_product(7), 0), 2u);
}

TEST(ClassicalHH, DualNumbersRegression) {
  const std::size_t frozen[5] = {2, 1, 1, 1, 1};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(classical_hh(dual_numbers(7), n), frozen[n]) << n;
}

TEST(ClassicalHH, UpperTriangularHereditary) {
  // hereditary with two vertices: HH_0 = 2, higher groups vanish
  EXPECT_EQ(classical_hh(upper_triangular(5), 0), 2u);
  EXPECT_EQ(classical_hh(upper_triangular(5), 1), 0u);
}

TEST(Phh, SmallValues) {
  EXPECT_EQ(phh(ground_field(7), make_context(3, 7, 2), 1, 0), 1u);
  const auto ctx = make_context(3, 7, 2);
  EXPECT_EQ(phh(dual_numbers(7), ctx, 1, 1), 0u);
  EXPECT_EQ(phh(dual_numbers(7), ctx, 2, 1), 2u);
}

TEST(Reindex, Bookkeeping) {
  auto a = reindex(3, 1, 0);
  EXPECT_EQ(a.branch, Branch::congruent_p);
  EXPECT_EQ(a.index, 0);
  auto b = reindex(3, 2, 2);
  EXPECT_EQ(b.branch, Branch::congruent_zero);
  EXPECT_EQ(b.index, 1);
  EXPECT_EQ(reindex(3, 1, 1).branch, Branch::zero);
}

TEST(Reindex, BranchesPartition) {
  for (int N = 2; N <= 7; ++N)
    for (int p = 1; p < N; ++p)
      for (int n = 0; n < 40; ++n) {
        const int r = (n + 1) % N;
        const bool is_p = r == p, is_zero = r == 0;
        EXPECT_LE(int(is_p) + int(is_zero), 1);
        const auto b = reindex(N, p, n);
        const auto want = is_p ? Branch::congruent_p : is_zero ? Branch::congruent_zero : Branch::zero;
        EXPECT_EQ(b.branch, want);
        if (b.branch != Branch::zero) {
          EXPECT_GE(b.index, 0);
        }
      }
}

TEST(ReindexedHochschild, CaseA) {
  const auto rep = theorem1_check(dual_numbers(7), make_context(3, 7, 2), 8);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_GT(rep.cells.size(), 10u);
}

TEST(ReindexedHochschild, CaseB) {
  EXPECT_TRUE(theorem1_check(dual_numbers(3), make_context(3, 3, 1), 8).all_pass());
}

TEST(ReindexedHochschild, OtherAlgebras) {
  EXPECT_TRUE(theorem1_check(truncated_polynomial(7, 3), make_context(3, 7, 2), 5).all_pass());
  EXPECT_TRUE(theorem1_check(upper_triangular(7), make_context(3, 7, 2), 5).all_pass());
  EXPECT_TRUE(theorem1_check(split_product(5), make_context(4, 5, 2), 5).all_pass());
  EXPECT_TRUE(theorem1_check(dual_numbers(5), make_context(4, 5, 2), 6).all_pass());
}

TEST(ReindexedHochschild, NeedsH1) {
  try {
    theorem1_check(dual_numbers(2), make_context(4, 2, 1), 4);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h1_required);
  }
}

TEST(BarResolution, AugmentationAndDifferential) {
  const auto bar = bar_nresolution(dual_numbers(7), make_context(3, 7, 2), 3);
  const auto& c = *bar.resolution.complex;
  EXPECT_EQ(c.lo(), -1);
  // epsilon(x (x) 1) = x
  EXPECT_EQ(c.diff(0).column(2), (std::vector<fp::elem>{0, 1}));
  // d'(1 (x) x (x) 1) = x (x) 1 + q 1 (x) x
  EXPECT_EQ(c.diff(1).column(2), (std::vector<fp::elem>{0, 2, 1, 0}));
  for (int p = 1; p <= 2; ++p) EXPECT_TRUE(is_acyclic(c, p));
  EXPECT_NO_THROW(validate_resolution(bar.resolution));
}

TEST(BarResolution, ResourceBound) {
  try {
    bar_nresolution(truncated_polynomial(7, 3), make_context(3, 7, 2), 12);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::resource_bound);
  }
}

TEST(Identification, DualNumbers) {
  const auto rep = identify_phh_tor(dual_numbers(7), make_context(3, 7, 2), 5);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.degrees.front().tensor_dim, 2u);
}

TEST(Identification, OtherAlgebras) {
  EXPECT_TRUE(identify_phh_tor(upper_triangular(7), make_context(3, 7, 2), 3).ok());
  EXPECT_TRUE(identify_phh_tor(dual_numbers(3), make_context(3, 3, 1), 4).ok());
}
