#pragma once

// Seeded generators for property tests: N-complexes assembled from segments
// and expansions, short exact sequences from random subcomplexes, simplicial
// modules, and homotopic pairs.

#include <memory>
#include <random>
#include <vector>

#include "qhh/hochschild.hpp"
#include "qhh/ncomplex.hpp"
#include "qhh/resolution.hpp"
#include "qhh/simplicial.hpp"

namespace qhh {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Conjugates c by random automorphisms in every degree.
inline NComplex random_conjugate(const NComplex& c, Rng& rng) {
  std::vector<FMatrix> g;
  for (int n = c.lo(); n <= c.hi(); ++n) g.push_back(random_invertible(c.dim(n), c.modulus(), rng));
  return change_basis(c, g);
}

/// Direct sum of `pieces` segments k -> k -> ... -> k of length 1..N placed in
/// [lo, hi], then conjugated.
inline NComplex random_segment_complex(int N, fp::elem p, int lo, int hi, int pieces, Rng& rng) {
  if (hi < lo) throw error(errc::invalid_input, "empty window");
  std::vector<std::size_t> dims(static_cast<std::size_t>(hi - lo + 1), 0);
  std::vector<std::pair<int, int>> segs;  // (top degree, length)
  for (int k = 0; k < pieces; ++k) {
    const int top = uniform_int(rng, lo, hi);
    const int len = uniform_int(rng, 1, std::min(N, top - lo + 1));
    segs.emplace_back(top, len);
  }
  std::vector<std::vector<int>> slot(dims.size());  // segment index per basis vector
  for (std::size_t s = 0; s < segs.size(); ++s)
    for (int n = segs[s].first; n > segs[s].first - segs[s].second; --n) {
      slot[static_cast<std::size_t>(n - lo)].push_back(static_cast<int>(s));
      ++dims[static_cast<std::size_t>(n - lo)];
    }
  std::vector<FMatrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    const auto& up = slot[static_cast<std::size_t>(n - lo)];
    const auto& down = slot[static_cast<std::size_t>(n - 1 - lo)];
    FMatrix d(down.size(), up.size(), p);
    for (std::size_t c = 0; c < up.size(); ++c)
      for (std::size_t r = 0; r < down.size(); ++r)
        if (down[r] == up[c]) d.set(r, c, 1);
    diffs.push_back(std::move(d));
  }
  return random_conjugate(NComplex(N, p, lo, std::move(dims), std::move(diffs)), rng);
}

/// Random classical complex on classical degrees [0, top], expanded to an
/// N-complex, summed with a few extra segments and conjugated.
inline NComplex random_expanded_complex(int N, fp::elem p, int top, Rng& rng, bool extra_segments = true) {
  auto q = random_segment_complex(2, p, 0, top, uniform_int(rng, 1, 2 * top + 2), rng);
  auto c = expand(q, N);
  if (extra_segments) c = direct_sum(c, random_segment_complex(N, p, c.lo(), c.hi(), uniform_int(rng, 0, 3), rng));
  return random_conjugate(c, rng);
}

/// A d-stable subspace per degree: S_n = W_n + d(S_{n+1}), top down, with W_n random.
inline std::vector<Subspace> random_subcomplex(const NComplex& c, Rng& rng) {
  std::vector<Subspace> s(c.dims().size());
  for (int n = c.hi(); n >= c.lo(); --n) {
    const std::size_t dn = c.dim(n);
    auto w = Subspace::span(random_matrix(dn, static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(dn))), c.modulus(), rng));
    if (n < c.hi()) w = sum(w, image(matmul(c.diff(n + 1), s[static_cast<std::size_t>(n + 1 - c.lo())].basis())));
    s[static_cast<std::size_t>(n - c.lo())] = std::move(w);
  }
  return s;
}

/// 0 -> S -> C -> C/S -> 0 for a random subcomplex S of c, with both ends
/// re-based by random automorphisms.
inline ShortExactSequence random_ses(const NComplex& c, Rng& rng) {
  const fp::elem p = c.modulus();
  auto s = random_subcomplex(c, rng);
  auto at = [&](int n) -> const Subspace& { return s[static_cast<std::size_t>(n - c.lo())]; };
  std::vector<QuotientSpace> quot;
  for (int n = c.lo(); n <= c.hi(); ++n) quot.emplace_back(at(n), Subspace::full(c.dim(n), p));
  auto qt = [&](int n) -> const QuotientSpace& { return quot[static_cast<std::size_t>(n - c.lo())]; };

  std::vector<FMatrix> gs, gq, u, v, ds, dq;
  std::vector<std::size_t> dims_s, dims_q;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    gs.push_back(random_invertible(at(n).dim(), p, rng));
    gq.push_back(random_invertible(qt(n).dim(), p, rng));
    dims_s.push_back(at(n).dim());
    dims_q.push_back(qt(n).dim());
  }
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - c.lo());
    // new bases: B_n g^{-1} for S, g * coordinates for the quotient
    u.push_back(matmul(at(n).basis(), inverse(gs[k])));
    v.push_back(matmul(gq[k], qt(n).coordinates(FMatrix::identity(c.dim(n), p))));
    if (n == c.lo()) continue;
    auto img = matmul(c.diff(n), u.back());
    auto coords = solve(u[k - 1], img);
    if (!coords) throw error(errc::not_a_complex, "subcomplex not closed under d");
    ds.push_back(*coords);
    const FMatrix lift = matmul(qt(n).representatives(), inverse(gq[k]));
    dq.push_back(matmul(v[k - 1], matmul(c.diff(n), lift)));
  }
  auto cs = std::make_shared<const NComplex>(c.N(), p, c.lo(), dims_s, ds, c.truncation());
  auto cq = std::make_shared<const NComplex>(c.N(), p, c.lo(), dims_q, dq, c.truncation());
  auto cm = std::make_shared<const NComplex>(c);
  return {NComplexMorphism(cs, cm, std::move(u)), NComplexMorphism(cm, cq, std::move(v))};
}

/// f = id + (null-homotopic part from h1) and g = f - (null-homotopic part from h).
inline Homotopy random_homotopic_pair(std::shared_ptr<const NComplex> c, Rng& rng) {
  const int N = c->N();
  auto random_h = [&] {
    std::vector<FMatrix> h;
    for (int n = c->lo(); n <= c->hi(); ++n) h.push_back(random_matrix(c->dim(n + N - 1), c->dim(n), c->modulus(), rng));
    return h;
  };
  auto f = morphism_sum(identity_morphism(c), null_homotopic_morphism(c, c, c->lo(), random_h()));
  auto h = random_h();
  auto nh = null_homotopic_morphism(c, c, c->lo(), h);
  std::vector<FMatrix> gm;
  for (int n = c->lo(); n <= c->hi(); ++n) gm.push_back(sub(f.at(n), nh.at(n)));
  NComplexMorphism g(c, c, std::move(gm));
  return {std::move(f), std::move(g), c->lo(), std::move(h)};
}

/// A small simplicial module with degeneracies and all faces: a standard
/// simplex, a Hochschild module of a base algebra of dimension <= 4, or a sum
/// of two, re-based by random automorphisms.
inline SimplicialModule random_simplicial(fp::elem p, int n_max, Rng& rng, int depth = 0) {
  const int kind = uniform_int(rng, 0, depth == 0 ? 2 : 1);
  SimplicialModule sm;
  if (kind == 0) {
    sm = simplex_module(p, uniform_int(rng, 0, n_max <= 3 ? 2 : 1), static_cast<std::size_t>(uniform_int(rng, 1, 2)), n_max);
  } else if (kind == 1) {
    FinDimAlgebra a = ground_field(p);
    switch (uniform_int(rng, 0, n_max <= 3 ? 4 : 3)) {
      case 0: a = ground_field(p); break;
      case 1: a = dual_numbers(p); break;
      case 2: a = split_product(p); break;
      case 3: a = n_max <= 3 ? truncated_polynomial(p, 3) : dual_numbers(p); break;
      default: a = upper_triangular(p); break;
    }
    sm = hochschild_simplicial(a, n_max);
  } else {
    sm = direct_sum(random_simplicial(p, n_max, rng, 1), random_simplicial(p, n_max, rng, 1));
  }
  std::vector<FMatrix> g;
  for (int n = 0; n <= n_max; ++n) g.push_back(random_invertible(sm.dim(n), p, rng));
  return change_basis(sm, g);
}

}  // namespace qhh
