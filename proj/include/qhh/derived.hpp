#pragma once

// Relative (k-split) Tor and Ext through N-resolutions, with classical
// oracles from the contracted resolution and from the alternating-sign bar.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "qhh/algebra.hpp"
#include "qhh/hochschild.hpp"
#include "qhh/homology.hpp"
#include "qhh/resolution.hpp"
#include "qhh/simplicial.hpp"
#include "qhh/tensor.hpp"

namespace qhh {

/// A relative bar N-resolution with the simplicial module it comes from and
/// the contracting homotopy that certifies acyclicity.
struct RelativeBar {
  SimplicialModule simplicial;
  NResolution resolution;
  ContractingHomotopy contraction;  // on the unshifted simplicial complex
};

namespace detail {

/// A (x) X -> X for a left module X, as a matrix on the index a * dim X + x.
inline FMatrix left_action_map(const FDModule& x) {
  const std::size_t d = x.algebra().dim();
  FMatrix f(x.dim(), d * x.dim(), x.algebra().modulus());
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t r = 0; r < x.dim(); ++r)
      for (std::size_t c = 0; c < x.dim(); ++c) f.set(r, a * x.dim() + c, x.action(a)(r, c));
  return f;
}

/// X (x) A -> X for a right module X, on the index x * dim A + a.
inline FMatrix right_action_map(const FDModule& x) {
  const std::size_t d = x.algebra().dim();
  FMatrix f(x.dim(), x.dim() * d, x.algebra().modulus());
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t r = 0; r < x.dim(); ++r)
      for (std::size_t c = 0; c < x.dim(); ++c) f.set(r, c * d + a, x.action(a)(r, c));
  return f;
}

inline void check_bar_context(const FDModule& m, const QContext& ctx) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "relative bar resolutions need an H1 context");
  if (ctx.p() != m.algebra().modulus()) throw error(errc::modulus_mismatch, "module and context over different fields");
}

}  // namespace detail

/// Resolution of a right module M: P_n = M (x) A^{(x)(n+1)}, faces "act on M
/// by the first factor" and adjacent products, A acting on the last factor.
/// Certified by sigma = q^{-n} (unit inserted at the right end).
inline RelativeBar right_relative_bar(const FDModule& m, const QContext& ctx, int n_max,
                                      std::size_t cap = default_dimension_cap) {
  if (m.side() != Side::right) throw error(errc::invalid_input, "right_relative_bar needs a right module");
  detail::check_bar_context(m, ctx);
  const auto& a = m.algebra();
  const std::size_t d = a.dim();
  const fp::elem p = a.modulus();
  const int top = n_max + 1;
  std::vector<std::size_t> dims;
  for (int k = 0; k <= top; ++k) dims.push_back(m.dim() * checked_power(d, static_cast<std::size_t>(k), cap));
  if (dims.back() > cap) throw error(errc::resource_bound, "bar level exceeds cap " + std::to_string(cap));
  const auto Im = FMatrix::identity(m.dim(), p);
  const auto act = detail::right_action_map(m);
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(top) + 1), degens;
  for (int k = 1; k <= top; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    faces[uk].push_back(kron(act, FMatrix::identity(detail::ipow(d, uk - 1), p)));
    for (std::size_t i = 1; i < uk; ++i) faces[uk].push_back(kron(Im, detail::adjacent_product(a, uk, i - 1)));
  }
  for (int k = 0; k < top; ++k) {
    degens.emplace_back();
    for (int j = 0; j <= k; ++j)
      degens.back().push_back(kron(Im, detail::insert_unit(a, static_cast<std::size_t>(k), static_cast<std::size_t>(j))));
  }
  SimplicialModule sm(p, std::move(dims), std::move(faces), std::move(degens), false);
  auto contraction = contracting_homotopy_sigma(sm, ctx);
  auto complex = std::make_shared<const NComplex>(shift(*contraction.complex, -1));
  NResolution r{complex, {m}, {}};
  const auto u = column_vector(a.unit(), p);
  for (int n = 0; n <= n_max; ++n) {
    const std::size_t base = m.dim() * detail::ipow(d, static_cast<std::size_t>(n));
    std::vector<FMatrix> acts;
    for (std::size_t i = 0; i < d; ++i) acts.push_back(kron(FMatrix::identity(base, p), a.right_mult(i)));
    r.modules.emplace_back(m.algebra_ptr(), Side::right, base * d, std::move(acts), "P", false);
    r.generators.push_back(kron(FMatrix::identity(base, p), u));
  }
  return {std::move(sm), std::move(r), std::move(contraction)};
}

/// Resolution of a left module M: P_n = A^{(x)(n+1)} (x) M, adjacent products
/// and "last factor acts on M", A acting on the first factor. Certified by the
/// extra degeneracy 1 (x) - (weight ell = 1).
inline RelativeBar left_relative_bar(const FDModule& m, const QContext& ctx, int n_max,
                                     std::size_t cap = default_dimension_cap) {
  if (m.side() != Side::left) throw error(errc::invalid_input, "left_relative_bar needs a left module");
  detail::check_bar_context(m, ctx);
  const auto& a = m.algebra();
  const std::size_t d = a.dim();
  const fp::elem p = a.modulus();
  const int top = n_max + 1;
  std::vector<std::size_t> dims;
  for (int k = 0; k <= top; ++k) dims.push_back(checked_power(d, static_cast<std::size_t>(k), cap) * m.dim());
  if (dims.back() > cap) throw error(errc::resource_bound, "bar level exceeds cap " + std::to_string(cap));
  const auto Im = FMatrix::identity(m.dim(), p);
  const auto act = detail::left_action_map(m);
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(top) + 1);
  for (int k = 1; k <= top; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i + 1 < uk; ++i) faces[uk].push_back(kron(detail::adjacent_product(a, uk, i), Im));
    faces[uk].push_back(kron(FMatrix::identity(detail::ipow(d, uk - 1), p), act));
  }
  std::vector<FMatrix> s;
  for (int k = 0; k < top; ++k) s.push_back(kron(detail::insert_unit(a, static_cast<std::size_t>(k), 0), Im));
  SimplicialModule sm(p, std::move(dims), std::move(faces), {}, false);
  auto contraction = contracting_homotopy_extra(sm, ctx, s, 1);
  auto complex = std::make_shared<const NComplex>(shift(*contraction.complex, -1));
  NResolution r{complex, {m}, {}};
  const auto u = column_vector(a.unit(), p);
  for (int n = 0; n <= n_max; ++n) {
    const std::size_t base = detail::ipow(d, static_cast<std::size_t>(n)) * m.dim();
    std::vector<FMatrix> acts;
    for (std::size_t i = 0; i < d; ++i) acts.push_back(kron(a.left_mult(i), FMatrix::identity(base, p)));
    r.modules.emplace_back(m.algebra_ptr(), Side::left, d * base, std::move(acts), "P", false);
    r.generators.push_back(kron(u, FMatrix::identity(base, p)));
  }
  return {std::move(sm), std::move(r), std::move(contraction)};
}

/// The relative bar resolution on the module's own side.
inline RelativeBar relative_bar_nresolution(const FDModule& m, const QContext& ctx, int n_max) {
  return m.side() == Side::right ? right_relative_bar(m, ctx, n_max) : left_relative_bar(m, ctx, n_max);
}

/// P (x)_A N for the right bar resolution P of M, on degrees 0..n_max.
inline TensorComplex tor_complex(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  return tensor_resolution(right_relative_bar(m, ctx, n_max).resolution, n);
}

/// M (x)_A Q for the left bar resolution Q of N.
inline TensorComplex tor_complex_other_side(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  return tensor_resolution(left_relative_bar(n, ctx, n_max).resolution, m);
}

/// Hom_A(P, N) for the left bar resolution P of M.
inline HomComplex ext_complex(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  return hom_complex(left_relative_bar(m, ctx, n_max).resolution, n);
}

/// dim _pTor_deg(M, N).
inline std::size_t ptor(const FDModule& m, const FDModule& n, const QContext& ctx, int p, int deg) {
  return homology_dim(*tor_complex(m, n, ctx, deg + ctx.N() - p).complex, p, deg);
}

/// dim _pExt^deg(M, N), i.e. _pH_{-deg} of Hom_A(P, N).
inline std::size_t pext(const FDModule& m, const FDModule& n, const QContext& ctx, int p, int deg) {
  return homology_dim(*ext_complex(m, n, ctx, deg + p).complex, p, -deg);
}

/// Classical Tor_j for 0 <= j <= j_max from Delta_1 of the N-resolution.
inline std::map<int, std::size_t> classical_tor_contracted(const NResolution& r, const FDModule& n) {
  const auto tc = tensor_resolution(contract(r, 1), n);
  HomologyEngine eng(*tc.complex);
  std::map<int, std::size_t> out;
  for (int j = tc.complex->lo(); j <= tc.complex->hi(); ++j)
    if (eng.safe(1, j)) out[j] = eng.dim(1, j);
  return out;
}

/// Classical Tor_j from the alternating-sign bar resolution (N = 2, q = -1).
inline std::map<int, std::size_t> classical_tor_signed(const FDModule& m, const FDModule& n, int top) {
  const auto tc = tor_complex(m, n, classical_context(m.algebra().modulus()), top);
  HomologyEngine eng(*tc.complex);
  std::map<int, std::size_t> out;
  for (int j = 0; j <= top; ++j)
    if (eng.safe(1, j)) out[j] = eng.dim(1, j);
  return out;
}

/// Classical Ext^j from Hom_A(Delta_1 P, N), read off the N-complex Hom_A(P, N).
inline std::map<int, std::size_t> classical_ext_contracted(const HomComplex& h) {
  const auto c = contract_cohomological(*h.complex, 1);
  HomologyEngine eng(c);
  std::map<int, std::size_t> out;
  for (int j = 0; -j >= c.lo(); ++j)
    if (eng.safe(1, -j)) out[j] = eng.dim(1, -j);
  return out;
}

/// Classical Ext^j from the alternating-sign bar resolution.
inline std::map<int, std::size_t> classical_ext_signed(const FDModule& m, const FDModule& n, int top) {
  const auto h = ext_complex(m, n, classical_context(m.algebra().modulus()), top);
  HomologyEngine eng(*h.complex);
  std::map<int, std::size_t> out;
  for (int j = 0; j <= top; ++j)
    if (eng.safe(1, -j)) out[j] = eng.dim(1, -j);
  return out;
}

namespace detail {

inline void fill_rhs(ReindexCell& cell, const std::map<int, std::size_t>& main,
                     const std::map<int, std::size_t>& alt) {
  if (cell.branch.branch == Branch::zero) {
    cell.pass = cell.lhs == 0;
    return;
  }
  const int j = cell.branch.index;
  auto it = main.find(j);
  auto jt = alt.find(j);
  if (it == main.end()) throw error(errc::unsafe_degree, "classical degree " + std::to_string(j) + " outside the window");
  cell.rhs = it->second;
  if (jt != alt.end()) cell.rhs_alt = jt->second;
  cell.pass = cell.lhs == cell.rhs && (!cell.rhs_alt || *cell.rhs_alt == cell.rhs);
}

}  // namespace detail

/// Every safe _pTor_n against the classical Tor the reindexing names.
inline ReindexReport cor33_check(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the comparison needs an H1 context");
  const auto bar = right_relative_bar(m, ctx, n_max);
  const auto tc = tensor_resolution(bar.resolution, n);
  const auto main = classical_tor_contracted(bar.resolution, n);
  const auto alt = classical_tor_signed(m, n, n_max);
  HomologyEngine eng(*tc.complex);
  ReindexReport rep{"cor33", {}};
  for (int p = 1; p < ctx.N(); ++p)
    for (int k = 0; k <= n_max; ++k) {
      if (!eng.safe(p, k)) continue;
      ReindexCell cell{p, k, eng.dim(p, k), reindex(ctx.N(), p, k), 0, std::nullopt, false};
      detail::fill_rhs(cell, main, alt);
      rep.cells.push_back(cell);
    }
  return rep;
}

/// Every safe _pExt^n against the classical Ext: n+1 = N-p gives
/// Ext^{2(n+1-(N-p))/N}, n+1 = 0 gives Ext^{(2n+2-N)/N}, otherwise zero.
inline ReindexReport cor46_check(const FDModule& m, const FDModule& n, const QContext& ctx, int n_max) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the comparison needs an H1 context");
  const auto h = ext_complex(m, n, ctx, n_max);
  const auto main = classical_ext_contracted(h);
  const auto alt = classical_ext_signed(m, n, n_max);
  HomologyEngine eng(*h.complex);
  const int N = ctx.N();
  ReindexReport rep{"cor46", {}};
  for (int p = 1; p < N; ++p)
    for (int k = 0; k <= n_max; ++k) {
      if (!eng.safe(p, -k)) continue;
      ReindexCell cell{p, k, eng.dim(p, -k), reindex(N, N - p, k), 0, std::nullopt, false};
      detail::fill_rhs(cell, main, alt);
      rep.cells.push_back(cell);
    }
  return rep;
}

/// _pTor_{p-1}(M, N) next to dim M (x)_A N.
inline std::pair<std::size_t, std::size_t> tor_anchor(const FDModule& m, const FDModule& n, const QContext& ctx, int p) {
  return {ptor(m, n, ctx, p, p - 1), tensor_dim(m, n)};
}

/// _pExt^{N-p-1}(M, N) next to dim Hom_A(M, N).
inline std::pair<std::size_t, std::size_t> ext_anchor(const FDModule& m, const FDModule& n, const QContext& ctx, int p) {
  return {pext(m, n, ctx, p, ctx.N() - p - 1), hom_dim(m, n)};
}

/// 0 -> N' -i-> N -pi-> N'' -> 0 of left modules.
struct ModuleSES {
  FDModule sub;
  FDModule middle;
  FDModule quotient;
  FMatrix inclusion;
  FMatrix projection;
};

inline void validate_module_ses(const ModuleSES& s) {
  if (!is_module_map(s.sub, s.middle, s.inclusion) || !is_module_map(s.middle, s.quotient, s.projection))
    throw error(errc::not_exact, "maps of the module sequence are not module maps");
  if (rank(s.inclusion) != s.sub.dim()) throw error(errc::not_exact, "inclusion is not injective");
  if (rank(s.projection) != s.quotient.dim()) throw error(errc::not_exact, "projection is not surjective");
  if (!subspace_equal(image(s.inclusion), kernel(s.projection))) throw error(errc::not_exact, "image differs from kernel");
}

/// The sequence of N-complexes P (x)_A N' -> P (x)_A N -> P (x)_A N'' for the
/// bar resolution P of M.
inline ShortExactSequence tor_ses(const ModuleSES& s, const FDModule& m, const QContext& ctx, int n_max) {
  validate_module_ses(s);
  const auto bar = right_relative_bar(m, ctx, n_max);
  const auto t1 = tensor_resolution(bar.resolution, s.sub);
  const auto t = tensor_resolution(bar.resolution, s.middle);
  const auto t2 = tensor_resolution(bar.resolution, s.quotient);
  std::vector<FMatrix> u, v;
  for (int k = 0; k <= n_max; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const std::size_t dp = bar.resolution.module(k).dim();
    u.push_back(tensor_map_second(t1.levels[uk], t.levels[uk], dp, s.inclusion));
    v.push_back(tensor_map_second(t.levels[uk], t2.levels[uk], dp, s.projection));
  }
  return {NComplexMorphism(t1.complex, t.complex, std::move(u)), NComplexMorphism(t.complex, t2.complex, std::move(v))};
}

/// Exactness of the long Tor sequence with connecting maps of degrees -p and -(N-p).
inline ExactnessReport tor_les_check(const ModuleSES& s, const FDModule& m, const QContext& ctx, int p, int n_max) {
  return les_check(tor_ses(s, m, ctx, n_max), p);
}

}  // namespace qhh
