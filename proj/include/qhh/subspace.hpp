#pragma once

// Subspaces of F_p^n in canonical form, plus kernels, images and quotients.

#include <cstdint>
#include <optional>
#include <vector>

#include "qhh/matrix.hpp"

namespace qhh {

/// A subspace of F_p^ambient. The basis columns are the rows of the reduced
/// row echelon form of any spanning set, so equal subspaces have identical bases.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient, fp::elem p) {
    Subspace s;
    s.basis_ = FMatrix(ambient, 0, p);
    return s;
  }
  static Subspace full(std::size_t ambient, fp::elem p) {
    Subspace s;
    s.basis_ = FMatrix::identity(ambient, p);
    return s;
  }
  /// Span of the columns of `generators`.
  static Subspace span(const FMatrix& generators) {
    Subspace s;
    const fp::elem p = generators.modulus();
    if (generators.cols() == 0) {
      s.basis_ = FMatrix(generators.rows(), 0, p);
      return s;
    }
    auto ech = rref(transpose(generators));
    FMatrix b(generators.rows(), ech.rank(), p);
    for (std::size_t k = 0; k < ech.rank(); ++k)
      for (std::size_t i = 0; i < generators.rows(); ++i) b.set(i, k, ech.reduced(k, i));
    s.basis_ = std::move(b);
    return s;
  }

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  fp::elem modulus() const noexcept { return basis_.modulus(); }
  const FMatrix& basis() const noexcept { return basis_; }

  /// Whether every column of `vectors` lies in this subspace.
  bool contains(const FMatrix& vectors) const {
    if (vectors.rows() != ambient_dim()) throw error(errc::shape_mismatch, "Subspace::contains");
    if (vectors.cols() == 0) return true;
    if (dim() == 0) return vectors.is_zero();
    return solve(basis_, vectors).has_value();
  }
  bool contains(const Subspace& other) const { return contains(other.basis_); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  FMatrix basis_;
};

/// Canonical basis of {v : m v = 0}.
inline Subspace kernel(const FMatrix& m) {
  const fp::elem p = m.modulus();
  if (m.rows() == 0) return Subspace::full(m.cols(), p);
  auto ech = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  FMatrix gens(m.cols(), m.cols() - ech.rank(), p);
  std::size_t k = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    gens.set(j, k, 1);
    for (std::size_t i = 0; i < ech.rank(); ++i)
      gens.set(ech.pivots[i], k, fp::neg(ech.reduced(i, j), p));
    ++k;
  }
  return Subspace::span(gens);
}

/// Canonical basis of the column space.
inline Subspace image(const FMatrix& m) { return Subspace::span(m); }

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw error(errc::shape_mismatch, "ambient dimensions " + std::to_string(a.ambient_dim()) +
                                          " and " + std::to_string(b.ambient_dim()));
}

/// dim(outer / inner); inner must be contained in outer.
inline std::size_t quotient_dim(const Subspace& inner, const Subspace& outer) {
  require_same_ambient(inner, outer);
  if (!outer.contains(inner)) throw error(errc::not_contained, "inner subspace escapes outer");
  return outer.dim() - inner.dim();
}

inline bool subspace_equal(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return a == b;
}

inline Subspace intersection(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  // x = A s = B t  <=>  [A | -B] (s,t) = 0
  auto k = kernel(hstack(a.basis(), scaled(b.basis(), fp::neg(1, a.modulus()))));
  return Subspace::span(matmul(a.basis(), row_block(k.basis(), 0, a.dim())));
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return Subspace::span(hstack(a.basis(), b.basis()));
}

/// Incremental echelon set used to pick canonical complements.
class EchelonSet {
 public:
  EchelonSet(std::size_t ambient, fp::elem p) : ambient_(ambient), p_(p) {}

  /// Reduce v against the stored rows; returns true and keeps it if independent.
  bool insert(std::vector<fp::elem> v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < ambient_ && v[lead] == 0) ++lead;
    if (lead == ambient_) return false;
    const fp::elem inv = fp::inv(v[lead], p_);
    for (auto& e : v) e = fp::mul(e, inv, p_);
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  void reduce(std::vector<fp::elem>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const fp::elem f = v[leads_[k]];
      if (f == 0) continue;
      const fp::elem nf = fp::neg(f, p_);
      const auto& r = rows_[k];
      for (std::size_t j = leads_[k]; j < ambient_; ++j)
        if (r[j] != 0) v[j] = fp::add(v[j], fp::mul(nf, r[j], p_), p_);
    }
  }

  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::size_t ambient_;
  fp::elem p_;
  std::vector<std::vector<fp::elem>> rows_;
  std::vector<std::size_t> leads_;
};

/// outer / inner with canonical representatives: the outer basis vectors that
/// are independent modulo inner and the previously chosen ones.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(Subspace inner, Subspace outer) : inner_(std::move(inner)), outer_(std::move(outer)) {
    require_same_ambient(inner_, outer_);
    const fp::elem p = outer_.modulus();
    if (!outer_.contains(inner_)) throw error(errc::not_contained, "QuotientSpace: inner escapes outer");
    EchelonSet set(outer_.ambient_dim(), p);
    for (std::size_t k = 0; k < inner_.dim(); ++k) set.insert(inner_.basis().column(k));
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < outer_.dim(); ++k)
      if (set.insert(outer_.basis().column(k))) chosen.push_back(k);
    reps_ = FMatrix(outer_.ambient_dim(), chosen.size(), p);
    for (std::size_t c = 0; c < chosen.size(); ++c)
      for (std::size_t i = 0; i < outer_.ambient_dim(); ++i)
        reps_.set(i, c, outer_.basis()(i, chosen[c]));
    frame_ = hstack(reps_, inner_.basis());
  }

  std::size_t dim() const noexcept { return reps_.cols(); }
  const FMatrix& representatives() const noexcept { return reps_; }
  const Subspace& inner() const noexcept { return inner_; }
  const Subspace& outer() const noexcept { return outer_; }

  /// Coordinates (w.r.t. the representatives) of the classes of the columns of
  /// `vectors`, which must lie in outer.
  FMatrix coordinates(const FMatrix& vectors) const {
    const fp::elem p = outer_.modulus();
    if (vectors.rows() != outer_.ambient_dim()) throw error(errc::shape_mismatch, "QuotientSpace::coordinates");
    if (vectors.cols() == 0 || frame_.cols() == 0) {
      if (!vectors.is_zero()) throw error(errc::not_contained, "vector outside the quotient's outer space");
      return FMatrix(dim(), vectors.cols(), p);
    }
    auto x = solve(frame_, vectors);
    if (!x) throw error(errc::not_contained, "vector outside the quotient's outer space");
    return row_block(*x, 0, dim());
  }

 private:
  Subspace inner_, outer_;
  FMatrix reps_;
  FMatrix frame_;
};

}  // namespace qhh
