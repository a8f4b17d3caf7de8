#include <gtest/gtest.h>

#include "qhh/derived.hpp"

using namespace qhh;

namespace {

AlgebraPtr dual7() { return std::make_shared<const FinDimAlgebra>(dual_numbers(7)); }

FDModule trivial(const AlgebraPtr& a, Side s) { return character_module(a, s, Vec{1, 0}); }

FDModule sum(const FDModule& x, const FDModule& y) {
  std::vector<FMatrix> act;
  for (std::size_t i = 0; i < x.algebra().dim(); ++i) act.push_back(direct_sum(x.action(i), y.action(i)));
  return {x.algebra_ptr(), x.side(), x.dim() + y.dim(), std::move(act)};
}

FMatrix block(std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0, std::size_t n) {
  FMatrix m(rows, cols, 7);
  for (std::size_t k = 0; k < n; ++k) m.set(r0 + k, c0 + k, 1);
  return m;
}

}  // namespace

TEST(ModuleDims, TensorAndHom) {
  const auto a = dual7();
  const auto kr = trivial(a, Side::right), kl = trivial(a, Side::left);
  const auto ar = regular_module(a, Side::right), al = regular_module(a, Side::left);
  EXPECT_EQ(tensor_dim(kr, kl), 1u);
  EXPECT_EQ(tensor_dim(ar, kl), 1u);
  EXPECT_EQ(tensor_dim(ar, al), 2u);
  EXPECT_EQ(hom_dim(kl, kl), 1u);
  EXPECT_EQ(hom_dim(al, kl), 1u);
  EXPECT_EQ(hom_dim(kl, al), 1u);  // onto the socle
  EXPECT_EQ(hom_dim(al, al), 2u);
  EXPECT_THROW(tensor_dim(kl, kl), error);
  EXPECT_THROW(hom_dim(kr, kl), error);
}

TEST(ClassicalOracles, TorAndExtOfTrivialModule) {
  const auto a = dual7();
  const auto kr = trivial(a, Side::right), kl = trivial(a, Side::left);
  const auto t = classical_tor_signed(kr, kl, 4);
  for (int j = 0; j <= 3; ++j) EXPECT_EQ(t.at(j), 1u) << j;
  const auto e = classical_ext_signed(kl, kl, 4);
  for (int j = 0; j <= 3; ++j) EXPECT_EQ(e.at(j), 1u) << j;
}

TEST(RelativeBar, Acyclic) {
  const auto a = dual7();
  const auto ctx = make_context(3, 7, 2);
  for (Side s : {Side::left, Side::right}) {
    const auto bar = relative_bar_nresolution(trivial(a, s), ctx, 4);
    EXPECT_NO_THROW(validate_resolution(bar.resolution));
    for (int p = 1; p <= 2; ++p) EXPECT_TRUE(is_acyclic(*bar.resolution.complex, p));
  }
}

TEST(RelativeTor, TrivialModules) {
  const auto a = dual7();
  const auto rep = cor33_check(trivial(a, Side::right), trivial(a, Side::left), make_context(3, 7, 2), 6);
  EXPECT_TRUE(rep.all_pass());
  for (const auto& c : rep.cells)
    if (c.rhs_alt) {
      EXPECT_EQ(c.rhs, *c.rhs_alt);
    }
}

TEST(RelativeExt, TrivialModules) {
  const auto a = dual7();
  const auto rep = cor46_check(trivial(a, Side::left), trivial(a, Side::left), make_context(3, 7, 2), 6);
  EXPECT_TRUE(rep.all_pass());
}

TEST(RelativeTor, OtherContexts) {
  const auto a = std::make_shared<const FinDimAlgebra>(dual_numbers(5));
  const auto kr = character_module(a, Side::right, Vec{1, 0});
  const auto kl = character_module(a, Side::left, Vec{1, 0});
  EXPECT_TRUE(cor33_check(kr, kl, make_context(4, 5, 2), 6).all_pass());
  EXPECT_TRUE(cor46_check(kl, kl, make_context(4, 5, 2), 6).all_pass());
}

TEST(Anchors, DegreeZeroGroups) {
  const auto a = dual7();
  const auto ctx = make_context(3, 7, 2);
  const auto kr = trivial(a, Side::right), kl = trivial(a, Side::left), al = regular_module(a, Side::left);
  for (int p = 1; p <= 2; ++p) {
    const auto [t, td] = tor_anchor(kr, al, ctx, p);
    EXPECT_EQ(t, td);
    EXPECT_EQ(t, 1u);
    const auto [e, hd] = ext_anchor(kl, al, ctx, p);
    EXPECT_EQ(e, hd);
    EXPECT_EQ(e, 1u);
  }
}

TEST(Projective, HigherTorVanishes) {
  const auto a = dual7();
  const auto rep = cor33_check(regular_module(a, Side::right), trivial(a, Side::left), make_context(3, 7, 2), 5);
  EXPECT_TRUE(rep.all_pass());
  for (const auto& c : rep.cells)
    if (c.branch.branch != Branch::zero && c.branch.index > 0) {
      EXPECT_EQ(c.lhs, 0u);
    }
}

TEST(TorSymmetry, BothSides) {
  const auto a = dual7();
  const auto ctx = make_context(3, 7, 2);
  const auto kr = trivial(a, Side::right), kl = trivial(a, Side::left);
  for (int p = 1; p <= 2; ++p)
    for (int n = 0; n <= 3; ++n) {
      const int top = n + ctx.N() - p;
      EXPECT_EQ(homology_dim(*tor_complex(kr, kl, ctx, top).complex, p, n),
                homology_dim(*tor_complex_other_side(kr, kl, ctx, top).complex, p, n))
          << p << "," << n;
    }
}

TEST(TorLes, SplitSequence) {
  const auto a = dual7();
  const auto kl = trivial(a, Side::left), al = regular_module(a, Side::left);
  ModuleSES s{kl, sum(kl, al), al, block(3, 1, 0, 0, 1), block(2, 3, 0, 1, 2)};
  for (int p = 1; p <= 2; ++p) {
    const auto r = tor_les_check(s, trivial(a, Side::right), make_context(3, 7, 2), p, 5);
    EXPECT_TRUE(r.ok) << r.first_failure;
    EXPECT_GT(r.nodes_checked, 0u);
  }
}

TEST(TorLes, RadicalSequence) {
  const auto a = dual7();
  const auto al = regular_module(a, Side::left);
  const auto [rad, inc] = submodule(al, FMatrix(2, 1, 7, {0, 1}));
  const auto [top, proj] = quotient_module(al, inc);
  ModuleSES s{rad, al, top, inc, proj};
  for (int p = 1; p <= 2; ++p) {
    const auto r = tor_les_check(s, trivial(a, Side::right), make_context(3, 7, 2), p, 5);
    EXPECT_TRUE(r.ok) << r.first_failure;
  }
}

TEST(TorLes, RejectsNonExactSequence) {
  const auto a = dual7();
  const auto kl = trivial(a, Side::left);
  ModuleSES s{kl, sum(kl, kl), kl, block(2, 1, 0, 0, 1), block(1, 2, 0, 0, 1)};
  try {
    tor_ses(s, trivial(a, Side::right), make_context(3, 7, 2), 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_exact);
  }
}
