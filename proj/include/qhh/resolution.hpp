#pragma once

// N-resolutions of modules, the expansion of classical complexes into
// N-complexes, the contractions Delta_p back to classical complexes, and
// comparison maps between resolutions.

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "qhh/algebra.hpp"
#include "qhh/homology.hpp"
#include "qhh/ncomplex.hpp"

namespace qhh {

/// The same complex with every degree moved by `by`.
inline NComplex shift(const NComplex& c, int by) {
  std::vector<FMatrix> diffs;
  for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.push_back(c.diff(n));
  return {c.N(), c.modulus(), c.lo() + by, c.dims(), std::move(diffs), c.truncation(), c.context()};
}

/// The classical (N = 2, q = -1) context over F_p.
inline QContext classical_context(fp::elem p) { return make_context(2, p, static_cast<std::int64_t>(p) - 1); }

namespace detail {

/// Degree of the classical position j inside an N-complex under Delta_p.
inline int contraction_degree(int j, int N, int p) {
  if (j == -1) return -1;
  const int k = j >= 0 ? j / 2 : -((-j + 1) / 2);
  return j % 2 == 0 ? k * N + p - 1 : (k + 1) * N - 1;
}

/// First and last N-degree of the block of classical degree j under expansion.
inline std::pair<int, int> expansion_block(int j, int N) {
  const int i = j >= 0 ? j / 2 : -((-j + 1) / 2);
  if (j - 2 * i == 0) return {i * N, i * N + N - 2};
  return {i * N + N - 1, i * N + N - 1};
}

/// Classical degree whose block contains the N-degree n.
inline int expansion_source(int n, int N) {
  const int i = n >= 0 ? n / N : -((-n + N - 1) / N);
  return n - i * N == N - 1 ? 2 * i + 1 : 2 * i;
}

}  // namespace detail

/// Expansion of a classical complex (N = 2): classical degree 2i becomes the
/// N-1 degrees iN..iN+N-2 joined by identities, 2i+1 becomes iN+N-1.
inline NComplex expand(const NComplex& q, int N, std::optional<QContext> ctx = std::nullopt) {
  if (q.N() != 2) throw error(errc::invalid_input, "expand takes a classical complex");
  if (N < 2) throw error(errc::invalid_input, "N must be at least 2");
  if (ctx && (ctx->N() != N || ctx->p() != q.modulus())) throw error(errc::context_mismatch, "expand: context");
  const int lo = detail::expansion_block(q.lo(), N).first;
  const int hi = detail::expansion_block(q.hi(), N).second;
  std::vector<std::size_t> dims;
  std::vector<FMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    const int j = detail::expansion_source(n, N);
    dims.push_back(q.dim(j));
    if (n == lo) continue;
    const int jm = detail::expansion_source(n - 1, N);
    diffs.push_back(j == jm ? FMatrix::identity(q.dim(j), q.modulus()) : q.diff(j));
  }
  return {N, q.modulus(), lo, std::move(dims), std::move(diffs), q.truncation(), ctx};
}

/// Delta_p: the classical complex of the degrees kN+p-1 (position 2k) and
/// (k+1)N-1 (position 2k+1), with d^{N-p} and d^p between them. Degree -1
/// stays -1, so an augmented N-complex contracts to an augmented complex.
inline NComplex contract(const NComplex& c, int p) {
  const int N = c.N();
  if (p < 1 || p > N - 1) throw error(errc::out_of_range, "contraction index must satisfy 1 <= p <= N-1");
  if (c.lo() < -1) throw error(errc::invalid_input, "contraction expects a complex starting at degree -1 or above");
  int j0 = -1;
  while (detail::contraction_degree(j0, N, p) < c.lo()) ++j0;
  std::vector<int> pos;
  for (int j = j0; detail::contraction_degree(j, N, p) <= c.hi(); ++j) pos.push_back(detail::contraction_degree(j, N, p));
  if (pos.empty()) throw error(errc::invalid_input, "window too short to contract");
  std::vector<std::size_t> dims;
  std::vector<FMatrix> diffs;
  PowerCache pw(c);
  for (std::size_t k = 0; k < pos.size(); ++k) {
    dims.push_back(c.dim(pos[k]));
    if (k > 0) diffs.push_back(pw.get(pos[k], pos[k] - pos[k - 1]));
  }
  return {2, c.modulus(), j0, std::move(dims), std::move(diffs), c.truncation(), classical_context(c.modulus())};
}

/// Contraction of a negative N-complex (Hom into a resolution): classical
/// degree -j sits at N-degree -phi_p(j), j >= 0.
inline NComplex contract_cohomological(const NComplex& h, int p) {
  const int N = h.N();
  if (p < 1 || p > N - 1) throw error(errc::out_of_range, "contraction index must satisfy 1 <= p <= N-1");
  if (h.hi() > 0) throw error(errc::invalid_input, "expected a complex concentrated in degrees <= 0");
  std::vector<int> pos;  // N-degrees for j = jmax..0, ascending
  int jmax = 0;
  while (-detail::contraction_degree(jmax + 1, N, p) >= h.lo()) ++jmax;
  for (int j = jmax; j >= 0; --j) pos.push_back(-detail::contraction_degree(j, N, p));
  std::vector<std::size_t> dims;
  std::vector<FMatrix> diffs;
  PowerCache pw(h);
  for (std::size_t k = 0; k < pos.size(); ++k) {
    dims.push_back(h.dim(pos[k]));
    if (k > 0) diffs.push_back(pw.get(pos[k], pos[k] - pos[k - 1]));
  }
  return {2, h.modulus(), -jmax, std::move(dims), std::move(diffs), h.truncation(), classical_context(h.modulus())};
}

/// An augmented N-complex P -> M of modules over one algebra: degree -1 holds
/// M, d_0 is the augmentation, and each P_n (n >= 0) is relatively free on
/// generators iota_n: V_n -> P_n, meaning (v, b) -> e_b iota_n(v) is bijective.
struct NResolution {
  std::shared_ptr<const NComplex> complex;
  std::vector<FDModule> modules;     // modules[n + 1] lives in degree n
  std::vector<FMatrix> generators;   // generators[n] = iota_n

  int top() const { return complex->hi(); }
  const FDModule& module(int n) const { return modules.at(static_cast<std::size_t>(n + 1)); }
  const FDModule& resolved() const { return modules.front(); }
  const FinDimAlgebra& algebra() const { return modules.front().algebra(); }
  FMatrix augmentation() const { return complex->diff(0); }

  /// The columns (v, b) -> e_b iota_n(v), indexed v * dim A + b.
  FMatrix free_extension(int n) const {
    const auto& m = module(n);
    const auto& gen = generators.at(static_cast<std::size_t>(n));
    const std::size_t d = algebra().dim();
    FMatrix e(m.dim(), gen.cols() * d, complex->modulus());
    for (std::size_t b = 0; b < d; ++b) {
      const auto img = matmul(m.action(b), gen);
      for (std::size_t v = 0; v < gen.cols(); ++v)
        for (std::size_t r = 0; r < m.dim(); ++r) e.set(r, v * d + b, img(r, v));
    }
    return e;
  }

  /// P without the augmentation, on degrees 0..top.
  NComplex positive_part() const {
    const auto& c = *complex;
    std::vector<std::size_t> dims(c.dims().begin() + 1, c.dims().end());
    std::vector<FMatrix> diffs;
    for (int n = 1; n <= c.hi(); ++n) diffs.push_back(c.diff(n));
    return {c.N(), c.modulus(), 0, std::move(dims), std::move(diffs), Truncation{false, c.truncation().above}, c.context()};
  }
};

/// Throws invalid_resolution unless the differentials are module maps, every
/// level is relatively free on its generators, and (optionally) the augmented
/// complex is acyclic for every p on its safe window.
inline void validate_resolution(const NResolution& r, bool check_acyclic = true) {
  if (!r.complex || r.complex->lo() != -1) throw error(errc::invalid_resolution, "resolution must start at degree -1");
  const auto& c = *r.complex;
  if (r.modules.size() != c.dims().size()) throw error(errc::invalid_resolution, "one module per degree");
  if (r.generators.size() != c.dims().size() - 1) throw error(errc::invalid_resolution, "one generator map per degree >= 0");
  const Side side = r.resolved().side();
  for (int n = -1; n <= c.hi(); ++n) {
    const auto& m = r.module(n);
    if (m.side() != side || m.algebra_ptr() != r.resolved().algebra_ptr())
      throw error(errc::invalid_resolution, "degree " + std::to_string(n) + " lives over another algebra or side");
    if (m.dim() != c.dim(n)) throw error(errc::invalid_resolution, "module dimension in degree " + std::to_string(n));
    if (n >= 0) {
      if (!is_module_map(m, r.module(n - 1), c.diff(n)))
        throw error(errc::invalid_resolution, "d_" + std::to_string(n) + " is not a module map");
      if (!is_invertible(r.free_extension(n)))
        throw error(errc::invalid_resolution, "degree " + std::to_string(n) + " is not free on its generators");
    }
  }
  if (!check_acyclic) return;
  for (int p = 1; p < c.N(); ++p)
    if (!is_acyclic(c, p)) throw error(errc::invalid_resolution, "augmented complex has homology for p = " + std::to_string(p));
}

/// Delta_p of a resolution: modules and generators follow their degrees.
inline NResolution contract(const NResolution& r, int p) {
  auto c = std::make_shared<const NComplex>(contract(*r.complex, p));
  NResolution out{c, {}, {}};
  for (int j = c->lo(); j <= c->hi(); ++j) {
    const int n = detail::contraction_degree(j, r.complex->N(), p);
    out.modules.push_back(r.module(n));
    if (j >= 0) out.generators.push_back(r.generators.at(static_cast<std::size_t>(n)));
  }
  return out;
}

/// Expansion of a classical resolution into an N-resolution.
inline NResolution expand(const NResolution& r, int N, std::optional<QContext> ctx = std::nullopt) {
  auto c = std::make_shared<const NComplex>(expand(*r.complex, N, ctx));
  NResolution out{c, {}, {}};
  for (int n = c->lo(); n <= c->hi(); ++n) {
    const int j = detail::expansion_source(n, N);
    out.modules.push_back(r.module(j));
    if (n >= 0) out.generators.push_back(r.generators.at(static_cast<std::size_t>(j)));
  }
  return out;
}

namespace detail {

/// The module map P_n -> T with iota_n(v) -> values(:, v); T carries `target`.
inline FMatrix extend_from_generators(const NResolution& r, int n, const FDModule& target, const FMatrix& values) {
  const std::size_t d = r.algebra().dim();
  FMatrix img(target.dim(), values.cols() * d, values.modulus());
  for (std::size_t b = 0; b < d; ++b) {
    const auto col = matmul(target.action(b), values);
    for (std::size_t v = 0; v < values.cols(); ++v)
      for (std::size_t i = 0; i < target.dim(); ++i) img.set(i, v * d + b, col(i, v));
  }
  return matmul(img, inverse(r.free_extension(n)));
}

}  // namespace detail

/// A chain map f between augmented resolutions with f_{-1} = u, built degree
/// by degree on generators. With an rng, each step adds a random element of
/// ker d' so that independent calls give different lifts.
inline NComplexMorphism comparison_lift(const FMatrix& u, const NResolution& src, const NResolution& dst,
                                        std::mt19937_64* rng = nullptr) {
  const auto& s = *src.complex;
  const auto& t = *dst.complex;
  if (s.N() != t.N()) throw error(errc::context_mismatch, "resolutions with different N");
  if (src.resolved().algebra_ptr() != dst.resolved().algebra_ptr() && src.algebra().dim() != dst.algebra().dim())
    throw error(errc::context_mismatch, "resolutions over different algebras");
  if (!is_module_map(src.resolved(), dst.resolved(), u)) throw error(errc::invalid_input, "u is not a module map");
  std::vector<FMatrix> maps{u};
  for (int n = 0; n <= s.hi(); ++n) {
    if (n > t.hi()) {
      maps.emplace_back(0, s.dim(n), s.modulus());
      continue;
    }
    const auto rhs = matmul(maps.back(), matmul(s.diff(n), src.generators[static_cast<std::size_t>(n)]));
    const auto dn = t.diff(n);
    auto x = solve(dn, rhs);
    if (!x) throw error(errc::no_lift, "no lift in degree " + std::to_string(n) + ": target is not a resolution");
    if (rng) {
      const auto k = kernel(dn).basis();
      *x = add(*x, matmul(k, random_matrix(k.cols(), x->cols(), s.modulus(), *rng)));
    }
    maps.push_back(detail::extend_from_generators(src, n, dst.module(n), *x));
  }
  return {src.complex, dst.complex, std::move(maps)};
}

/// A homotopy between two lifts f, g of the same map, solved inductively on
/// generators (h_{-1} = 0). Degrees whose equation would need data above the
/// target window are left out; an unsolvable equation inside it throws no_lift.
inline Homotopy unique_up_to_homotopy(const NComplexMorphism& f, const NComplexMorphism& g, const NResolution& src,
                                      const NResolution& dst) {
  const auto& s = *src.complex;
  const auto& t = *dst.complex;
  const int N = s.N();
  if (!(f.at(-1) == g.at(-1))) throw error(errc::invalid_input, "lifts of different maps");
  Homotopy H{f, g, -1, {FMatrix(t.dim(N - 2), s.dim(-1), s.modulus())}};
  PowerCache ps(s), pt(t);
  for (int n = 0; n <= s.hi() && n + N - 1 <= t.hi(); ++n) {
    FMatrix rest = sub(f.at(n), g.at(n));
    for (int i = 1; i < N; ++i)
      rest = sub(rest, matmul(pt.get(n - i + N - 1, N - 1 - i), matmul(H.at(n - i), ps.get(n, i))));
    const auto rhs = matmul(rest, src.generators[static_cast<std::size_t>(n)]);
    auto x = solve(pt.get(n + N - 1, N - 1), rhs);
    if (!x) {
      if (n + 2 * N - 3 <= t.hi()) throw error(errc::no_lift, "no homotopy in degree " + std::to_string(n));
      break;
    }
    H.h.push_back(detail::extend_from_generators(src, n, dst.module(n + N - 1), *x));
  }
  return H;
}

}  // namespace qhh
