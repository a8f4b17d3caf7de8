#include <gtest/gtest.h>

#include <random>

#include "qhh/dq.hpp"

using namespace qhh;

namespace {

DqElement random_element(const QContext& ctx, std::mt19937_64& rng, int max_deg = 3, int terms = 3) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<fp::elem> coef(0, ctx.p() - 1);
  DqElement e(ctx);
  for (int t = 0; t < terms; ++t) e.add_term(deg(rng), deg(rng), coef(rng));
  return e;
}

}  // namespace

TEST(Dq, DefiningRelation) {
  for (int N = 2; N <= 6; ++N) {
    const auto ctx = find_context(N);
    const auto X = DqElement::X(ctx), Y = DqElement::Y(ctx);
    const auto yx = dq_mul(Y, X);
    EXPECT_EQ(yx.coefficient(1, 1), ctx.q());
    EXPECT_EQ(yx.coefficient(0, 0), 1u);
    EXPECT_EQ(yx.terms().size(), 2u);
  }
}

TEST(Dq, ReorderingByHand) {
  const auto ctx = make_context(3, 7, 2);
  const auto X = DqElement::X(ctx), Y = DqElement::Y(ctx);
  // Y X^2 = q^2 X^2 Y + [2] X = 4 X^2 Y + 3 X
  const auto e = dq_mul(Y, dq_pow(X, 2));
  EXPECT_EQ(e.coefficient(2, 1), 4u);
  EXPECT_EQ(e.coefficient(1, 0), 3u);
  EXPECT_EQ(e.terms().size(), 2u);
}

TEST(Dq, AssociativeAndDistributive) {
  std::mt19937_64 rng(9);
  for (int N : {2, 3, 4, 5}) {
    const auto ctx = find_context(N);
    for (int k = 0; k < 20; ++k) {
      const auto a = random_element(ctx, rng), b = random_element(ctx, rng), c = random_element(ctx, rng);
      EXPECT_EQ(dq_mul(dq_mul(a, b), c), dq_mul(a, dq_mul(b, c)));
      EXPECT_EQ(dq_mul(a, b + c), dq_mul(a, b) + dq_mul(a, c));
      EXPECT_EQ(dq_mul(a + b, c), dq_mul(a, c) + dq_mul(b, c));
    }
  }
}

TEST(Dq, ExhaustiveMonomialAssociativity) {
  const auto ctx = make_context(3, 7, 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const auto x = DqElement::monomial(ctx, a, b), y = DqElement::monomial(ctx, c, d), z = DqElement::monomial(ctx, b, c);
          EXPECT_EQ(dq_mul(dq_mul(x, y), z), dq_mul(x, dq_mul(y, z)));
        }
}

TEST(Dq, ClosedReorderingAgreesWithIteration) {
  for (int N = 2; N <= 6; ++N) {
    const auto ctx = find_context(N);
    const auto X = DqElement::X(ctx), Y = DqElement::Y(ctx);
    for (int l = 0; l < N; ++l)
      for (int k = 0; k < N; ++k) EXPECT_EQ(eq54(ctx, l, k), dq_mul(dq_pow(Y, l), dq_pow(X, k))) << N << ' ' << l << ' ' << k;
  }
  const auto b = make_context(3, 3, 1);
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      EXPECT_EQ(eq54(b, l, k), dq_mul(dq_pow(DqElement::Y(b), l), dq_pow(DqElement::X(b), k)));
}

TEST(Dq, ContextMismatch) {
  const auto a = DqElement::X(make_context(3, 7, 2));
  const auto b = DqElement::X(make_context(3, 7, 4));
  try {
    dq_mul(a, b);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::context_mismatch);
  }
}

TEST(FactorialIdentities, SignedCase) {
  const auto ctx = make_context(2, 5, 4);
  const auto s = lemma55_sides(ctx);
  EXPECT_TRUE(s.first());
  EXPECT_EQ(s.first_rhs, 1u);
}

TEST(FactorialIdentities, BothIdentities) {
  for (int N = 2; N <= 6; ++N) {
    const auto [a, b] = verify_lemma55(find_context(N));
    EXPECT_TRUE(a) << N;
    EXPECT_TRUE(b) << N;
  }
  const auto [a, b] = verify_lemma55(make_context(3, 7, 2));
  EXPECT_TRUE(a && b);
  const auto [c, d] = verify_lemma55(make_context(5, 5, 1));
  EXPECT_TRUE(c && d);
}

TEST(FactorialIdentities, SecondTargetValue) {
  // N = 3, q = 2 in F_7: (-1)^2 q^{-3} [2]! = 8^{-1} * 3 = 1 * 3 = 3
  const auto s = lemma55_sides(make_context(3, 7, 2));
  EXPECT_EQ(s.second_rhs, 3u);
}

TEST(FactorialIdentities, NeedsH1) {
  try {
    verify_lemma55(make_context(4, 2, 1));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h1_required);
  }
}

TEST(Alpha, IsAnAlgebraMapAndBridges) {
  std::mt19937_64 rng(5);
  for (int N = 2; N <= 6; ++N) {
    const auto ctx = find_context(N);
    const auto inv = make_context(N, ctx.p(), ctx.qpow(-1));
    for (int k = 0; k < 10; ++k) {
      const auto a = random_element(inv, rng, 2), b = random_element(inv, rng, 2);
      EXPECT_EQ(alpha(dq_mul(a, b), ctx), dq_mul(alpha(a, ctx), alpha(b, ctx)));
    }
    EXPECT_TRUE(verify_alpha_bridge(ctx)) << N;
  }
}

TEST(Polynomial, Arithmetic) {
  QPolynomial f(7, {1, 2, 3}), g(7, {6, 1});
  EXPECT_EQ((f * g).coeffs(), (std::vector<fp::elem>{6, 6, 6, 3}));
  auto [q, r] = (f * g + QPolynomial(7, {2})).divmod(g);
  EXPECT_EQ(q, f);
  EXPECT_EQ(r, QPolynomial(7, {2}));
  EXPECT_EQ(f.eval(2), 3u);  // 1 + 4 + 12 = 17
  EXPECT_TRUE((f - f).is_zero());
  try {
    f.exact_div(g);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::division_failure);
  }
}

TEST(Polynomial, DifferenceOperator) {
  const auto ctx = make_context(3, 7, 2);
  const auto x3 = QPolynomial::monomial(7, 3, 1);
  EXPECT_EQ(del_q(ctx, x3), QPolynomial::monomial(7, 2, ctx.qint(3)));
  EXPECT_EQ(tau_q(ctx, x3), QPolynomial::monomial(7, 3, ctx.qpow(3)));
  // (f(qx) - f(x)) / ((q-1) x) at a point
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<fp::elem> c(0, 6);
  QPolynomial f(7, {c(rng), c(rng), c(rng), c(rng), c(rng)});
  for (fp::elem x = 1; x < 7; ++x) {
    const fp::elem num = fp::sub(f.eval(fp::mul(2, x, 7)), f.eval(x), 7);
    EXPECT_EQ(del_q(ctx, f).eval(x), fp::mul(num, fp::inv(fp::mul(1, x, 7), 7), 7));
  }
}

TEST(Polynomial, TwistedLeibniz) {
  std::mt19937_64 rng(2);
  for (int N = 2; N <= 6; ++N) {
    const auto ctx = find_context(N);
    std::uniform_int_distribution<fp::elem> c(0, ctx.p() - 1);
    for (int k = 0; k < 10; ++k) {
      std::vector<QPolynomial> fs;
      for (int j = 0; j < 1 + k % 4; ++j) fs.emplace_back(ctx.p(), std::vector<fp::elem>{c(rng), c(rng), c(rng), c(rng)});
      EXPECT_TRUE(leibniz_holds(ctx, fs));
    }
  }
}

TEST(PolynomialClosedForm, AllRanks) {
  for (int N = 2; N <= 6; ++N) {
    const auto ctx = find_context(N);
    for (int r = 0; r < N; ++r) {
      EXPECT_TRUE(verify_eq56(ctx, r)) << N << ' ' << r;
      if (r < N - 1) {
        EXPECT_EQ(a_coefficient(ctx, r), 0u);
      }
    }
    EXPECT_EQ(a_coefficient(ctx, N - 1), ctx.qfactorial(N - 1));
  }
  for (int r = 0; r < 3; ++r) EXPECT_TRUE(verify_eq56(make_context(3, 3, 1), r));
}

TEST(PolynomialClosedForm, PointwiseAgainstRationalForm) {
  for (int N = 2; N <= 6; ++N) {
    const auto ctx = find_context(N);
    const fp::elem p = ctx.p();
    for (int r = 0; r < N; ++r) {
      const auto lhs = eq56_sides(ctx, r).lhs;
      for (fp::elem x = 0; x < p; ++x) {
        fp::elem den = 1;
        for (int i = 0; i <= r; ++i) den = fp::mul(den, fp::sub(fp::mul(ctx.qpow(i), x, p), 1, p), p);
        if (den == 0) continue;
        fp::elem num = fp::sub(fp::pow(x, static_cast<std::uint64_t>(N), p), 1, p);
        fp::elem rhs = fp::mul(fp::mul(num, fp::inv(den, p), p), ctx.qfactorial(r), p);
        if (r % 2) rhs = fp::neg(rhs, p);
        EXPECT_EQ(lhs.eval(x), rhs) << N << ' ' << r << ' ' << x;
      }
    }
  }
}

TEST(PolynomialClosedForm, Preconditions) {
  EXPECT_THROW(verify_eq56(find_context(3), 3), error);
  try {
    verify_eq56(make_context(4, 2, 1), 0);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::h1_required);
  }
}
