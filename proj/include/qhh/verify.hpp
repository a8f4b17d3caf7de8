#pragma once

// Verification workflows shared by the command-line tool and the acceptance
// runner. Each returns a RunReport with one record per elementary check.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhh/derived.hpp"
#include "qhh/dq.hpp"
#include "qhh/hochschild.hpp"
#include "qhh/homology.hpp"
#include "qhh/random.hpp"
#include "qhh/report.hpp"

namespace qhh::verify {

inline constexpr std::uint64_t default_seed = 20240611;

inline std::string seed_tag(std::uint64_t seed, int k) { return "seed " + std::to_string(seed) + " #" + std::to_string(k); }

/// An H1 parameter q in F_p for this N: a primitive N-th root of unity, or
/// q = 1 when p = N.
inline std::optional<QContext> h1_context_over(int N, fp::elem p) {
  for (fp::elem q = 1; q < p; ++q) {
    try {
      auto c = make_context(N, p, q);
      if (c.is_h1()) return c;
    } catch (const error&) {
    }
  }
  return std::nullopt;
}

inline RunReport theorem1(const FinDimAlgebra& a, const QContext& ctx, int n_max) {
  RunReport r{"theorem1", report_context(ctx), {}, {}};
  r.add(theorem1_check(a, ctx, n_max), a.name().empty() ? "A" : a.name());
  return r;
}

inline RunReport lemma55(const QContext& ctx) {
  RunReport r{"verify lemma55", report_context(ctx), {}, {}};
  const auto sides = lemma55_sides(ctx);
  r.add("first identity", "", sides.first(), {{"target", sides.first_rhs}, {"terms", sides.first_lhs.terms().size()}});
  r.add("second identity", "", sides.second(), {{"target", sides.second_rhs}, {"terms", sides.second_lhs.terms().size()}});
  r.add("alpha bridge", "", verify_alpha_bridge(ctx));
  const auto X = DqElement::X(ctx), Y = DqElement::Y(ctx);
  r.add("defining relation", "", dq_mul(Y, X) == dq_mul(X, Y).scaled(ctx.q()) + DqElement::scalar(ctx, 1));
  bool agree = true;
  for (int l = 0; l < ctx.N(); ++l)
    for (int k = 0; k < ctx.N(); ++k) agree = agree && eq54(ctx, l, k) == dq_mul(dq_pow(Y, l), dq_pow(X, k));
  r.add("closed reordering vs iterated", "0 <= k, l <= N-1", agree);
  return r;
}

inline RunReport eq56(const QContext& ctx) {
  RunReport r{"verify eq56", report_context(ctx), {}, {}};
  for (int k = 0; k < ctx.N(); ++k) {
    const auto s = eq56_sides(ctx, k);
    const bool vanish = k == ctx.N() - 1 || s.a == 0;
    r.add("closed form", "r=" + std::to_string(k), s.holds() && vanish,
          {{"r", k}, {"degree", s.lhs.degree()}, {"a", s.a}});
  }
  const fp::elem p = ctx.p();
  QPolynomial f(p, {1, 2, 0, 3}), g(p, {0, 1, 1}), h(p, {4, 0, 0, 0, 1});
  r.add("twisted Leibniz", "three factors", leibniz_holds(ctx, {f, g, h}) && leibniz_holds(ctx, {g, f}));
  return r;
}

/// delta^N = 0 on random simplicial modules for the weighted differentials
/// (all of -1, 0, 1, 2, N+1 when ell is not given), plus the closed expansion
/// of delta^N against matrix composition for random coefficient sequences.
inline RunReport delta_nilpotent(const QContext& ctx, std::uint64_t seed, int count, std::optional<std::int64_t> ell,
                                 int lemma_count, std::vector<NComplex>* keep = nullptr) {
  RunReport r{"verify delta-nilpotent", report_context(ctx), {}, {}};
  Rng rng(seed);
  const int N = ctx.N();
  std::vector<std::int64_t> ells = ell ? std::vector<std::int64_t>{*ell} : std::vector<std::int64_t>{-1, 0, 1, 2, N + 1};
  for (int k = 0; k < count; ++k) {
    const int top = uniform_int(rng, 2, 5);
    const auto sm = random_simplicial(ctx.p(), top, rng);
    for (auto e : ells) {
      bool ok = true;
      try {
        auto c = q_differential(sm, ctx, DifferentialSpec::weighted(e));
        if (keep) keep->push_back(std::move(c));
      } catch (const error& ex) {
        if (ex.code() != errc::nilpotency_failure) throw;
        ok = false;
      }
      r.add("delta^N = 0", seed_tag(seed, k), ok, {{"ell", e}, {"levels", top + 1}});
    }
  }
  for (int k = 0; k < lemma_count; ++k) {
    const int top = uniform_int(rng, N, 5);
    const auto sm = random_simplicial(ctx.p(), top, rng);
    std::vector<std::int64_t> a;
    for (int i = 0; i <= top; ++i) a.push_back(uniform_int(rng, 0, static_cast<int>(ctx.p()) - 1));
    const auto spec = DifferentialSpec::general(a);
    // the general differential on C_n uses a_0..a_{n-1}
    std::vector<FMatrix> diffs;
    for (int n = 1; n <= top; ++n) diffs.push_back(q_face_sum(sm, ctx, spec, n));
    bool ok = true;
    for (int n = N; n <= top; ++n) {
      FMatrix m = FMatrix::identity(sm.dim(n), ctx.p());
      for (int j = 0; j < N; ++j) m = matmul(diffs[static_cast<std::size_t>(n - j - 1)], m);
      ok = ok && m == lemma53_rhs(sm, ctx, a, n);
    }
    r.add("closed expansion of delta^N", seed_tag(seed, k), ok, {{"levels", top + 1}});
  }
  return r;
}

/// Random N-complexes for the exactness checks: expansion of a random
/// classical complex plus extra segments, conjugated.
inline std::vector<NComplex> random_complexes(int N, fp::elem p, std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<NComplex> out;
  for (int k = 0; k < count; ++k) out.push_back(random_expanded_complex(N, p, uniform_int(rng, 2, 4), rng));
  return out;
}

inline RunReport hexagon(int N, fp::elem p, std::uint64_t seed, int count) {
  RunReport r{"verify hexagon", std::nullopt, {}, {}};
  const auto cs = random_complexes(N, p, seed, count);
  for (std::size_t k = 0; k < cs.size(); ++k)
    for (int a = 1; a < N; ++a)
      for (int b = 1; a + b < N; ++b) {
        const auto rep = hexagon_check(cs[k], a, b);
        r.add("hexagon", seed_tag(seed, static_cast<int>(k)), rep.ok,
              {{"p", a}, {"r", b}, {"nodes", rep.nodes_checked}, {"failure", rep.first_failure}});
      }
  return r;
}

inline RunReport snake(int N, fp::elem p, std::uint64_t seed, int count) {
  RunReport r{"verify snake", std::nullopt, {}, {}};
  const auto cs = random_complexes(N, p, seed, count);
  Rng rng(seed ^ 0x5eedULL);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto ses = random_ses(cs[k], rng);
    for (int a = 1; a < N; ++a) {
      const auto rep = les_check(ses, a);
      r.add("long exact sequence", seed_tag(seed, static_cast<int>(k)), rep.ok,
            {{"p", a}, {"connecting_degrees", {-a, -(N - a)}}, {"nodes", rep.nodes_checked}, {"failure", rep.first_failure}});
    }
  }
  return r;
}

inline RunReport kapranov(const std::vector<NComplex>& cs, const std::string& label) {
  RunReport r{"verify kapranov", std::nullopt, {}, {}};
  for (std::size_t k = 0; k < cs.size(); ++k) {
    io::json acyc = io::json::array();
    for (int p = 1; p < cs[k].N(); ++p) acyc.push_back(is_acyclic(cs[k], p, false));
    r.add("one p acyclic iff all p", label + " #" + std::to_string(k), kapranov_check(cs[k]), {{"N", cs[k].N()}, {"acyclic", acyc}});
  }
  return r;
}

/// Bar complex of A: the relation delta sigma - q^{-1} sigma
/// delta = id on every level, the homotopy identity, and acyclicity.
inline RunReport sigma_contraction(const FinDimAlgebra& a, const QContext& ctx, int n_max) {
  RunReport r{"verify sigma", report_context(ctx), {}, {}};
  const auto sm = bar_simplicial(a, n_max);
  const auto ch = contracting_homotopy_sigma(sm, ctx);
  r.add("commutation relation", "all levels", static_cast<int>(ch.relation_levels.size()) == sm.n_max(),
        {{"levels", ch.relation_levels.size()}});
  r.add("homotopy id ~ 0", "", ch.certified && !ch.certified_degrees.empty(), {{"degrees", ch.certified_degrees.size()}});
  for (int p = 1; p < ctx.N(); ++p) r.add("acyclic", "p=" + std::to_string(p), is_acyclic(*ch.complex, p), {{"p", p}});
  return r;
}

inline RunReport identification(const FinDimAlgebra& a, const QContext& ctx, int n_max) {
  RunReport r{"verify identification", report_context(ctx), {}, {}};
  for (const auto& g : identify_phh_tor(a, ctx, n_max).degrees)
    r.add("A (x)_B P = C(A)", "n=" + std::to_string(g.n), g.relations_killed && g.bijective && g.differential_match,
          {{"n", g.n}, {"dim", g.tensor_dim}});
  return r;
}

inline RunReport cor33(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  RunReport r{"verify cor33", report_context(ctx), {}, {}};
  r.add(cor33_check(m, n, ctx, n_max), "M=" + m.name() + " N=" + n.name());
  for (int p = 1; p < ctx.N(); ++p) {
    const auto [lhs, rhs] = tor_anchor(m, n, ctx, p);
    r.add("Tor anchor", "p=" + std::to_string(p), lhs == rhs, {{"ptor", lhs}, {"tensor", rhs}});
  }
  return r;
}

inline RunReport cor46(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  RunReport r{"verify cor46", report_context(ctx), {}, {}};
  r.add(cor46_check(m, n, ctx, n_max), "M=" + m.name() + " N=" + n.name());
  for (int p = 1; p < ctx.N(); ++p) {
    const auto [lhs, rhs] = ext_anchor(m, n, ctx, p);
    r.add("Ext anchor", "p=" + std::to_string(p), lhs == rhs, {{"pext", lhs}, {"hom", rhs}});
  }
  return r;
}

/// _pTor from a resolution of M against one of N, on cells safe for both.
inline RunReport tor_symmetry(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  RunReport r{"verify tor-symmetry", report_context(ctx), {}, {}};
  const auto a = tor_complex(m, n, ctx, n_max);
  const auto b = tor_complex_other_side(m, n, ctx, n_max);
  HomologyEngine ea(*a.complex), eb(*b.complex);
  for (int p = 1; p < ctx.N(); ++p)
    for (int k = 0; k <= n_max; ++k) {
      if (!ea.safe(p, k) || !eb.safe(p, k)) continue;
      const auto x = ea.dim(p, k), y = eb.dim(p, k);
      r.add("resolve M vs resolve N", "", x == y, {{"p", p}, {"n", k}, {"left", x}, {"right", y}});
    }
  return r;
}

inline RunReport homology(const NComplex& c, std::optional<int> only_p) {
  RunReport r{"homology", std::nullopt, {}, {}};
  if (c.context()) r.context = report_context(*c.context());
  for (const auto& [key, d] : homology_table(c, only_p).entries)
    r.add("H", "", true, {{"p", key.first}, {"n", key.second}, {"dim", d}});
  return r;
}

}  // namespace qhh::verify
