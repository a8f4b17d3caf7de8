#pragma once

// Tensor products over an algebra as coequalizers and Hom over an algebra as
// equalizers, levelwise on complexes of modules.

#include <memory>
#include <vector>

#include "qhh/algebra.hpp"
#include "qhh/ncomplex.hpp"
#include "qhh/resolution.hpp"

namespace qhh {

/// X (x)_R Y as the quotient of X (x) Y (index x * dim Y + y) by the span of
/// x r (x) y - x (x) r y.
struct Coequalizer {
  QuotientSpace quotient;
  FMatrix projection;  // X (x) Y -> X (x)_R Y in representative coordinates

  std::size_t dim() const noexcept { return quotient.dim(); }
  const FMatrix& representatives() const noexcept { return quotient.representatives(); }
};

/// The relation vectors spanning the kernel of X (x) Y -> X (x)_R Y.
inline FMatrix tensor_relations(const FDModule& right, const FDModule& left) {
  if (right.side() != Side::right || left.side() != Side::left)
    throw error(errc::invalid_input, "tensor product needs a right module and a left module");
  if (right.algebra().dim() != left.algebra().dim())
    throw error(errc::context_mismatch, "tensor product over different algebras");
  const fp::elem p = right.algebra().modulus();
  const auto Ix = FMatrix::identity(right.dim(), p), Iy = FMatrix::identity(left.dim(), p);
  FMatrix rel(right.dim() * left.dim(), 0, p);
  for (std::size_t i = 0; i < right.algebra().dim(); ++i)
    rel = hstack(rel, sub(kron(right.action(i), Iy), kron(Ix, left.action(i))));
  return rel;
}

inline Coequalizer tensor_over(const FDModule& right, const FDModule& left) {
  const fp::elem p = right.algebra().modulus();
  const std::size_t n = right.dim() * left.dim();
  QuotientSpace q(image(tensor_relations(right, left)), Subspace::full(n, p));
  auto proj = q.coordinates(FMatrix::identity(n, p));
  return {std::move(q), std::move(proj)};
}

/// A complex of tensor products together with the levelwise presentations.
struct TensorComplex {
  std::shared_ptr<const NComplex> complex;
  std::vector<Coequalizer> levels;  // levels[k] for degree lo + k
};

namespace detail {

inline TensorComplex tensor_levels(const NComplex& c, const std::vector<const FDModule*>& rights,
                                   const std::vector<const FDModule*>& lefts, bool resolve_right) {
  std::vector<Coequalizer> levels;
  std::vector<std::size_t> dims;
  std::vector<FMatrix> diffs;
  const fp::elem p = c.modulus();
  for (std::size_t k = 0; k < c.dims().size(); ++k) {
    levels.push_back(tensor_over(*rights[k], *lefts[k]));
    dims.push_back(levels.back().dim());
    if (k == 0) continue;
    const int n = c.lo() + static_cast<int>(k);
    const auto lift = resolve_right ? kron(c.diff(n), FMatrix::identity(lefts[k]->dim(), p))
                                    : kron(FMatrix::identity(rights[k]->dim(), p), c.diff(n));
    diffs.push_back(matmul(levels[k - 1].projection, matmul(lift, levels[k].representatives())));
  }
  auto out = std::make_shared<const NComplex>(c.N(), p, c.lo(), std::move(dims), std::move(diffs), c.truncation(),
                                              c.context());
  return {std::move(out), std::move(levels)};
}

}  // namespace detail

/// M (x)_A P for a right module M and a complex P of left modules
/// (modules[k] sits in degree P.lo() + k).
inline TensorComplex tensor_complex(const FDModule& m, const NComplex& P, const std::vector<FDModule>& modules) {
  if (modules.size() != P.dims().size()) throw error(errc::shape_mismatch, "one module per degree");
  std::vector<const FDModule*> rights(modules.size(), &m), lefts;
  for (const auto& x : modules) lefts.push_back(&x);
  return detail::tensor_levels(P, rights, lefts, false);
}

/// P (x)_A N for a complex P of right modules and a left module N.
inline TensorComplex tensor_complex(const NComplex& P, const std::vector<FDModule>& modules, const FDModule& n) {
  if (modules.size() != P.dims().size()) throw error(errc::shape_mismatch, "one module per degree");
  std::vector<const FDModule*> rights, lefts(modules.size(), &n);
  for (const auto& x : modules) rights.push_back(&x);
  return detail::tensor_levels(P, rights, lefts, true);
}

/// Positive part of a resolution tensored with a module on the free side.
inline TensorComplex tensor_resolution(const NResolution& r, const FDModule& other) {
  const auto P = r.positive_part();
  std::vector<FDModule> mods(r.modules.begin() + 1, r.modules.end());
  if (r.resolved().side() == Side::right) return tensor_complex(P, mods, other);
  return tensor_complex(other, P, mods);
}

/// The map X (x)_R Y -> X (x)_R Y' induced by a module map f: Y -> Y'.
inline FMatrix tensor_map_second(const Coequalizer& from, const Coequalizer& to, std::size_t dim_x,
                                       const FMatrix& f) {
  const auto lift = kron(FMatrix::identity(dim_x, f.modulus()), f);
  return matmul(to.projection, matmul(lift, from.representatives()));
}

/// The map X (x)_R Y -> X' (x)_R Y induced by a module map f: X -> X'.
inline FMatrix tensor_map_first(const Coequalizer& from, const Coequalizer& to, std::size_t dim_y,
                                        const FMatrix& f) {
  const auto lift = kron(f, FMatrix::identity(dim_y, f.modulus()));
  return matmul(to.projection, matmul(lift, from.representatives()));
}

/// Hom_R(X, Y) inside Hom_k(X, Y), g stored row-major (index y * dim X + x):
/// the kernel of g -> g a - a g over the basis of R.
inline Subspace hom_equalizer(const FDModule& x, const FDModule& y) {
  if (x.side() != y.side()) throw error(errc::invalid_input, "Hom between modules on different sides");
  if (x.algebra().dim() != y.algebra().dim()) throw error(errc::context_mismatch, "Hom over different algebras");
  const fp::elem p = x.algebra().modulus();
  const auto Ix = FMatrix::identity(x.dim(), p), Iy = FMatrix::identity(y.dim(), p);
  FMatrix rows(0, x.dim() * y.dim(), p);
  for (std::size_t i = 0; i < x.algebra().dim(); ++i)
    rows = vstack(rows, sub(kron(Iy, transpose(x.action(i))), kron(y.action(i), Ix)));
  return kernel(rows);
}

/// Hom_A(P, N) as a negative N-complex: degree -n holds Hom_A(P_n, N) and the
/// differential is g -> g d. Degrees run from -top to 0, open below.
struct HomComplex {
  std::shared_ptr<const NComplex> complex;
  std::vector<Subspace> levels;  // levels[n] = Hom_A(P_n, N)
};

inline HomComplex hom_complex(const NResolution& r, const FDModule& n) {
  const auto& c = *r.complex;
  const int top = c.hi();
  const fp::elem p = c.modulus();
  std::vector<Subspace> levels;
  for (int k = 0; k <= top; ++k) levels.push_back(hom_equalizer(r.module(k), n));
  std::vector<std::size_t> dims;
  std::vector<FMatrix> diffs;
  for (int k = top; k >= 0; --k) {
    dims.push_back(levels[static_cast<std::size_t>(k)].dim());
    if (k == top) continue;
    // degree -k maps to degree -(k+1)
    const auto& from = levels[static_cast<std::size_t>(k)];
    const auto& to = levels[static_cast<std::size_t>(k + 1)];
    const auto pre = kron(FMatrix::identity(n.dim(), p), transpose(c.diff(k + 1)));
    const auto img = matmul(pre, from.basis());
    FMatrix coords(to.dim(), from.dim(), p);
    if (from.dim() > 0) {
      if (to.dim() == 0) {
        if (!img.is_zero()) throw error(errc::invalid_resolution, "precomposition leaves Hom_A");
      } else {
        auto x = solve(to.basis(), img);
        if (!x) throw error(errc::invalid_resolution, "precomposition leaves Hom_A");
        coords = *x;
      }
    }
    diffs.push_back(std::move(coords));
  }
  auto out = std::make_shared<const NComplex>(c.N(), p, -top, std::move(dims), std::move(diffs), Truncation{true, false},
                                              c.context());
  return {std::move(out), std::move(levels)};
}

}  // namespace qhh
