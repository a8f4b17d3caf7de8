#pragma once

// Finite-dimensional associative unital algebras over F_p given by structure
// constants, their modules, and lexicographic tensor bases.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qhh/matrix.hpp"
#include "qhh/subspace.hpp"

namespace qhh {

using Vec = std::vector<fp::elem>;

/// Multi-indices (i_0, ..., i_{m-1}) in [0, d)^m, i_0 most significant.
class TensorBasis {
 public:
  TensorBasis(std::size_t d, std::size_t m) : d_(d), m_(m), size_(1) {
    for (std::size_t k = 0; k < m; ++k) size_ *= d;
  }
  std::size_t factor_dim() const noexcept { return d_; }
  std::size_t power() const noexcept { return m_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t index(const std::vector<std::size_t>& multi) const {
    if (multi.size() != m_) throw error(errc::shape_mismatch, "multi-index length");
    std::size_t x = 0;
    for (auto i : multi) {
      if (i >= d_) throw error(errc::out_of_range, "multi-index entry");
      x = x * d_ + i;
    }
    return x;
  }
  std::vector<std::size_t> multi(std::size_t x) const {
    if (x >= size_) throw error(errc::out_of_range, "tensor index");
    std::vector<std::size_t> out(m_);
    for (std::size_t k = m_; k-- > 0;) {
      out[k] = x % d_;
      x /= d_;
    }
    return out;
  }

 private:
  std::size_t d_, m_, size_;
};

/// d^m, refusing results above `cap`.
inline std::size_t checked_power(std::size_t d, std::size_t m, std::size_t cap) {
  std::size_t x = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (d != 0 && x > cap / d) throw error(errc::resource_bound, "dimension exceeds cap " + std::to_string(cap));
    x *= d;
  }
  if (x > cap) throw error(errc::resource_bound, "dimension " + std::to_string(x) + " exceeds cap " + std::to_string(cap));
  return x;
}

class FinDimAlgebra {
 public:
  struct Term {
    std::size_t k;
    fp::elem c;
  };

  /// mult[i][j] holds the coordinates of e_i e_j. Throws invalid_input on a
  /// shape problem, a failed associativity check (naming the triple) or a bad unit.
  FinDimAlgebra(fp::elem p, std::size_t dim, Vec unit, std::vector<std::vector<Vec>> mult, std::string name = {})
      : p_(p), d_(dim), unit_(std::move(unit)), name_(std::move(name)) {
    if (!fp::is_prime(p)) throw error(errc::not_prime, std::to_string(p));
    if (d_ == 0) throw error(errc::invalid_input, "algebra of dimension 0");
    if (unit_.size() != d_ || mult.size() != d_) throw error(errc::invalid_input, "structure constant shape");
    for (auto& u : unit_)
      if (u >= p) throw error(errc::invalid_input, "unit entry not reduced mod p");
    table_.resize(d_ * d_);
    for (std::size_t i = 0; i < d_; ++i) {
      if (mult[i].size() != d_) throw error(errc::invalid_input, "structure constant shape");
      for (std::size_t j = 0; j < d_; ++j) {
        if (mult[i][j].size() != d_) throw error(errc::invalid_input, "structure constant shape");
        for (std::size_t k = 0; k < d_; ++k) {
          const auto c = mult[i][j][k];
          if (c >= p) throw error(errc::invalid_input, "structure constant not reduced mod p");
          if (c != 0) table_[i * d_ + j].push_back({k, c});
        }
      }
    }
    validate();
  }

  fp::elem modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return d_; }
  const Vec& unit() const noexcept { return unit_; }
  const std::string& name() const noexcept { return name_; }

  /// Sparse coordinates of e_i e_j.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return table_[i * d_ + j]; }

  fp::elem structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    for (const auto& t : product(i, j))
      if (t.k == k) return t.c;
    return 0;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec out(d_, 0);
    for (std::size_t i = 0; i < d_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) {
        if (y[j] == 0) continue;
        const fp::elem c = fp::mul(x[i], y[j], p_);
        for (const auto& t : product(i, j)) out[t.k] = fp::add(out[t.k], fp::mul(c, t.c, p_), p_);
      }
    }
    return out;
  }

  Vec basis_vector(std::size_t i) const {
    Vec v(d_, 0);
    v.at(i) = 1;
    return v;
  }

  /// Matrix of x -> e_i x.
  FMatrix left_mult(std::size_t i) const {
    FMatrix m(d_, d_, p_);
    for (std::size_t j = 0; j < d_; ++j)
      for (const auto& t : product(i, j)) m.set(t.k, j, t.c);
    return m;
  }
  /// Matrix of x -> x e_i.
  FMatrix right_mult(std::size_t i) const {
    FMatrix m(d_, d_, p_);
    for (std::size_t j = 0; j < d_; ++j)
      for (const auto& t : product(j, i)) m.set(t.k, j, t.c);
    return m;
  }

  FinDimAlgebra opposite() const {
    std::vector<std::vector<Vec>> mult(d_, std::vector<Vec>(d_, Vec(d_, 0)));
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        for (const auto& t : product(j, i)) mult[i][j][t.k] = t.c;
    return {p_, d_, unit_, std::move(mult), name_.empty() ? "" : name_ + "^op"};
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        for (std::size_t k = 0; k < d_; ++k) {
          auto lhs = multiply(multiply(basis_vector(i), basis_vector(j)), basis_vector(k));
          auto rhs = multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
          if (lhs != rhs)
            throw error(errc::invalid_input, "associativity fails at (i,j,k) = (" + std::to_string(i) + "," +
                                                 std::to_string(j) + "," + std::to_string(k) + ")");
        }
    for (std::size_t i = 0; i < d_; ++i) {
      auto e = basis_vector(i);
      if (multiply(unit_, e) != e || multiply(e, unit_) != e)
        throw error(errc::invalid_input, "unit law fails for e_" + std::to_string(i));
    }
  }

  fp::elem p_;
  std::size_t d_;
  Vec unit_;
  std::string name_;
  std::vector<std::vector<Term>> table_;
};

using AlgebraPtr = std::shared_ptr<const FinDimAlgebra>;

/// F_p itself.
inline FinDimAlgebra ground_field(fp::elem p) { return {p, 1, {1}, {{{1}}}, "k"}; }

/// F_p[x]/(x^m) in the basis 1, x, ..., x^{m-1}.
inline FinDimAlgebra truncated_polynomial(fp::elem p, std::size_t m) {
  std::vector<std::vector<Vec>> mult(m, std::vector<Vec>(m, Vec(m, 0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; i + j < m; ++j) mult[i][j][i + j] = 1;
  Vec unit(m, 0);
  unit[0] = 1;
  return {p, m, std::move(unit), std::move(mult), "k[x]/(x^" + std::to_string(m) + ")"};
}

inline FinDimAlgebra dual_numbers(fp::elem p) { return truncated_polynomial(p, 2); }

/// F_p x F_p with orthogonal idempotents e_0, e_1.
inline FinDimAlgebra split_product(fp::elem p) {
  std::vector<std::vector<Vec>> mult{{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}};
  return {p, 2, {1, 1}, std::move(mult), "k x k"};
}

/// Upper triangular 2x2 matrices, basis E11, E12, E22.
inline FinDimAlgebra upper_triangular(fp::elem p) {
  std::vector<std::vector<Vec>> mult(3, std::vector<Vec>(3, Vec(3, 0)));
  mult[0][0][0] = 1;  // E11 E11
  mult[0][1][1] = 1;  // E11 E12
  mult[1][2][1] = 1;  // E12 E22
  mult[2][2][2] = 1;  // E22 E22
  return {p, 3, {1, 0, 1}, std::move(mult), "T2"};
}

/// B = A (x) A^op with (x (x) x')(y (x) y') = xy (x) y'x', basis e_i (x) e_j at i*d + j.
inline FinDimAlgebra envelope(const FinDimAlgebra& a) {
  const std::size_t d = a.dim(), D = d * d;
  const fp::elem p = a.modulus();
  std::vector<std::vector<Vec>> mult(D, std::vector<Vec>(D, Vec(D, 0)));
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t xp = 0; xp < d; ++xp)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t yp = 0; yp < d; ++yp)
          for (const auto& s : a.product(x, y))
            for (const auto& t : a.product(yp, xp)) {
              auto& e = mult[x * d + xp][y * d + yp][s.k * d + t.k];
              e = fp::add(e, fp::mul(s.c, t.c, p), p);
            }
  Vec unit(D, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) unit[i * d + j] = fp::mul(a.unit()[i], a.unit()[j], p);
  return {p, D, std::move(unit), std::move(mult), a.name().empty() ? "" : a.name() + " (x) " + a.name() + "^op"};
}

enum class Side { left, right };

inline std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// A finite-dimensional module: action[i] is the matrix of e_i acting on the
/// module (m -> e_i m for left modules, m -> m e_i for right modules).
class FDModule {
 public:
  /// `check_axioms = false` is for constructions that hold by design (bar levels).
  FDModule(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<FMatrix> action, std::string name = {},
           bool check_axioms = true)
      : alg_(std::move(algebra)), side_(side), dim_(dim), action_(std::move(action)), name_(std::move(name)) {
    if (!alg_) throw error(errc::invalid_input, "module without algebra");
    const fp::elem p = alg_->modulus();
    if (action_.size() != alg_->dim()) throw error(errc::invalid_input, "one action matrix per algebra basis element");
    for (const auto& m : action_) {
      if (m.modulus() != p) throw error(errc::modulus_mismatch, "action modulus");
      if (m.rows() != dim_ || m.cols() != dim_) throw error(errc::invalid_input, "action matrix shape");
    }
    if (!check_axioms) return;
    for (std::size_t i = 0; i < alg_->dim(); ++i)
      for (std::size_t j = 0; j < alg_->dim(); ++j) {
        auto lhs = side_ == Side::left ? matmul(action_[i], action_[j]) : matmul(action_[j], action_[i]);
        if (!(lhs == act(alg_->multiply(alg_->basis_vector(i), alg_->basis_vector(j)))))
          throw error(errc::invalid_input, "module axiom fails for (e_" + std::to_string(i) + ", e_" +
                                               std::to_string(j) + ")");
      }
    if (!(act(alg_->unit()) == FMatrix::identity(dim_, p)))
      throw error(errc::invalid_input, "unit does not act as the identity");
  }

  const FinDimAlgebra& algebra() const noexcept { return *alg_; }
  const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
  Side side() const noexcept { return side_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<FMatrix>& actions() const noexcept { return action_; }
  const FMatrix& action(std::size_t i) const { return action_.at(i); }
  const std::string& name() const noexcept { return name_; }

  /// Matrix of a general algebra element.
  FMatrix act(const Vec& a) const {
    FMatrix m(dim_, dim_, alg_->modulus());
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) m = add(m, scaled(action_[i], a[i]));
    return m;
  }

 private:
  AlgebraPtr alg_;
  Side side_;
  std::size_t dim_;
  std::vector<FMatrix> action_;
  std::string name_;
};

inline FDModule regular_module(AlgebraPtr a, Side side) {
  std::vector<FMatrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(side == Side::left ? a->left_mult(i) : a->right_mult(i));
  const auto d = a->dim();
  return {std::move(a), side, d, std::move(act), "A"};
}

/// The one-dimensional module on which e_i acts by chi[i], for an algebra map chi: A -> F_p.
inline FDModule character_module(AlgebraPtr a, Side side, const Vec& chi) {
  std::vector<FMatrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(FMatrix(1, 1, a->modulus(), {chi.at(i)}));
  return {std::move(a), side, 1, std::move(act), "k"};
}

/// Whether f: M -> M' commutes with the actions.
inline bool is_module_map(const FDModule& m, const FDModule& mp, const FMatrix& f) {
  if (f.rows() != mp.dim() || f.cols() != m.dim()) return false;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    if (!(matmul(f, m.action(i)) == matmul(mp.action(i), f))) return false;
  return true;
}

/// Submodule spanned by the columns of `basis` (must be stable), with its inclusion.
inline std::pair<FDModule, FMatrix> submodule(const FDModule& m, const FMatrix& generators) {
  auto s = Subspace::span(generators);
  std::vector<FMatrix> act;
  for (const auto& a : m.actions()) {
    auto x = solve(s.basis(), matmul(a, s.basis()));
    if (!x) throw error(errc::invalid_input, "subspace is not a submodule");
    act.push_back(*x);
  }
  return {FDModule(m.algebra_ptr(), m.side(), s.dim(), std::move(act)), s.basis()};
}

/// Quotient M / S for a submodule S given by spanning columns, with the projection.
inline std::pair<FDModule, FMatrix> quotient_module(const FDModule& m, const FMatrix& generators) {
  QuotientSpace q(Subspace::span(generators), Subspace::full(m.dim(), m.algebra().modulus()));
  const auto proj = q.coordinates(FMatrix::identity(m.dim(), m.algebra().modulus()));
  std::vector<FMatrix> act;
  for (const auto& a : m.actions()) act.push_back(matmul(proj, matmul(a, q.representatives())));
  return {FDModule(m.algebra_ptr(), m.side(), q.dim(), std::move(act)), proj};
}

/// dim M (x)_A N for a right module M and a left module N.
inline std::size_t tensor_dim(const FDModule& m, const FDModule& n) {
  if (m.side() != Side::right || n.side() != Side::left) throw error(errc::invalid_input, "need right (x) left");
  const fp::elem p = m.algebra().modulus();
  FMatrix rel(m.dim() * n.dim(), 0, p);
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    rel = hstack(rel, sub(kron(m.action(i), FMatrix::identity(n.dim(), p)),
                          kron(FMatrix::identity(m.dim(), p), n.action(i))));
  return m.dim() * n.dim() - rank(rel);
}

/// dim Hom_A(M, N) for two modules on the same side.
inline std::size_t hom_dim(const FDModule& m, const FDModule& n) {
  if (m.side() != n.side()) throw error(errc::invalid_input, "Hom between modules of different sides");
  const fp::elem p = m.algebra().modulus();
  // row-major vec(g L) = (I (x) L^T) vec(g), vec(L g) = (L (x) I) vec(g)
  FMatrix eq(0, n.dim() * m.dim(), p);
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    eq = vstack(eq, sub(kron(FMatrix::identity(n.dim(), p), transpose(m.action(i))),
                        kron(n.action(i), FMatrix::identity(m.dim(), p))));
  return kernel(eq).dim();
}

}  // namespace qhh
