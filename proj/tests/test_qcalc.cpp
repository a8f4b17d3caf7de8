#include <gtest/gtest.h>

#include "qhh/qcalc.hpp"

using namespace qhh;

TEST(QContext, PrimitiveCubeRootIsH1) {
  auto c = make_context(3, 7, 2);
  EXPECT_EQ(c.level(), hypothesis::h1);
  EXPECT_EQ(c.qint(3), 0u);
}

TEST(QContext, CharacteristicNIsH1) {
  auto c = make_context(3, 3, 1);
  EXPECT_TRUE(c.is_h1());
}

TEST(QContext, OnlyH0WhenSmallerIntegerVanishes) {
  auto c = make_context(4, 2, 1);
  EXPECT_EQ(c.level(), hypothesis::h0);
  EXPECT_EQ(c.qint(2), 0u);
}

TEST(QContext, Rejections) {
  try {
    make_context(3, 9, 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_prime);
  }
  try {
    make_context(3, 7, 3);  // 3 has order 6 mod 7
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h0_violated);
  }
  EXPECT_THROW(make_context(1, 7, 1), error);
  EXPECT_THROW(make_context(3, 7, 7), error);
}

TEST(QContext, FindContextTable) {
  // smallest prime = 1 mod N, smallest generator g, q = g^((p-1)/N); checked by hand
  struct Row { int N; unsigned p, q; };
  for (auto r : {Row{2, 3, 2}, Row{3, 7, 2}, Row{4, 5, 2}, Row{5, 11, 4}, Row{6, 7, 3}}) {
    auto c = find_context(r.N);
    EXPECT_EQ(c.p(), r.p) << r.N;
    EXPECT_EQ(c.q(), r.q) << r.N;
    EXPECT_TRUE(c.is_h1());
    EXPECT_EQ(fp::order(c.q(), c.p()), static_cast<std::uint64_t>(r.N));
  }
}

TEST(QInt, Values) {
  auto c = make_context(3, 7, 2);
  EXPECT_EQ(qint(c, 2), 3u);
  EXPECT_EQ(qint(c, 3), 0u);
  // [-1] = -q^{-1}: q^{-1} = 4, so 7 - 4 = 3
  EXPECT_EQ(qint(c, -1), 3u);
  EXPECT_EQ(qint(c, -1), fp::neg(fp::inv(2, 7), 7));
}

TEST(QInt, PeriodicAndReflection) {
  for (int N = 2; N <= 8; ++N) {
    auto c = find_context(N);
    for (int n = -3 * N; n <= 3 * N; ++n) {
      EXPECT_EQ(c.qint(n + N), c.qint(n));
      // q^{N-l}[l] + [-l] = 0
      EXPECT_EQ(fp::add(fp::mul(c.qpow(N - n), c.qint(n), c.p()), c.qint(-n), c.p()), 0u);
    }
  }
  auto b = make_context(5, 5, 1);
  EXPECT_EQ(b.qint(-2), 3u);
  EXPECT_EQ(b.qint(7), 2u);
}

TEST(QBinom, Examples) {
  auto c = make_context(3, 7, 2);
  EXPECT_EQ(qbinom(c, 1, 1), 3u);
  EXPECT_EQ(qbinom(c, 2, 2), 0u);
  EXPECT_EQ(qbinom(c, 0, 2), 1u);
}

TEST(QBinom, Errors) {
  auto c = make_context(3, 7, 2);
  try {
    qbinom(c, 3, 0);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::out_of_range);
  }
  try {
    qbinom(make_context(4, 2, 1), 1, 1);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h1_required);
  }
}

TEST(QBinom, PascalRecursion) {
  for (int N = 2; N <= 8; ++N) {
    for (const auto& c : {find_context(N)}) {
      QScalarTable t(c);
      for (int r = 0; r < N; ++r)
        for (int s = 0; r + s <= N - 1; ++s) {
          if (r == 0 || s == 0) {
            EXPECT_EQ(t.qbinom(r, s), 1u);
            continue;
          }
          auto rhs = fp::add(t.qbinom(r - 1, s), fp::mul(c.qpow(r), t.qbinom(r, s - 1), c.p()), c.p());
          EXPECT_EQ(t.qbinom(r, s), rhs) << N << " " << r << " " << s;
        }
      for (int r = 0; r < N; ++r)
        for (int s = N - r; s < N; ++s) EXPECT_EQ(t.qbinom(r, s), 0u);
    }
  }
  // q = 1 contexts reduce to ordinary binomials mod N
  QScalarTable t(make_context(5, 5, 1));
  EXPECT_EQ(t.qbinom(2, 2), 1u);  // 6 mod 5
  EXPECT_EQ(t.qbinom(1, 2), 3u);
}

TEST(QScalarTable, Tables) {
  QScalarTable t(make_context(3, 7, 2));
  ASSERT_EQ(t.qints().size(), 5u);
  EXPECT_EQ(t.qints()[4], 1u);  // 1+2+4+8 = 15
  EXPECT_EQ(t.qfacts()[2], 3u);
  EXPECT_EQ(t.qfacts()[3], 0u);
}
