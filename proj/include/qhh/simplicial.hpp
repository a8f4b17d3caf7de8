#pragma once

// Simplicial modules over F_p as explicit matrix families, q-weighted face
// sums, and contracting homotopies obtained from commutation relations.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qhh/homology.hpp"
#include "qhh/ncomplex.hpp"
#include "qhh/qcalc.hpp"

namespace qhh {

/// Levels 0..n_max with faces d_i: C_n -> C_{n-1} and optional degeneracies
/// s_j: C_n -> C_{n+1}. A module built without its last face (bar-type
/// modules) carries d_0..d_{n-1} on C_n and can only feed truncated sums.
class SimplicialModule {
 public:
  SimplicialModule() = default;

  /// faces[n] lists the faces on C_n (faces[0] is empty); degeneracies is
  /// either empty or has, for each n < n_max, the list s_0..s_n on C_n.
  SimplicialModule(fp::elem p, std::vector<std::size_t> dims, std::vector<std::vector<FMatrix>> faces,
                   std::vector<std::vector<FMatrix>> degeneracies = {}, bool last_face = true, bool strict = true)
      : p_(p), dims_(std::move(dims)), faces_(std::move(faces)), degens_(std::move(degeneracies)),
        last_face_(last_face) {
    if (dims_.empty()) throw error(errc::invalid_input, "simplicial module without levels");
    if (faces_.size() != dims_.size()) throw error(errc::shape_mismatch, "one face list per level");
    for (std::size_t n = 0; n < dims_.size(); ++n) {
      const std::size_t want = n == 0 ? 0 : (last_face_ ? n + 1 : n);
      if (faces_[n].size() != want)
        throw error(errc::shape_mismatch, "level " + std::to_string(n) + " needs " + std::to_string(want) + " faces");
      for (const auto& f : faces_[n]) check_shape(f, dims_[n - 1], dims_[n], "face");
    }
    if (!degens_.empty()) {
      if (degens_.size() != dims_.size() - 1) throw error(errc::shape_mismatch, "degeneracies for levels 0..n_max-1");
      for (std::size_t n = 0; n < degens_.size(); ++n) {
        if (degens_[n].size() != n + 1) throw error(errc::shape_mismatch, "level " + std::to_string(n) + " degeneracies");
        for (const auto& s : degens_[n]) check_shape(s, dims_[n + 1], dims_[n], "degeneracy");
      }
    }
    validate(strict);
  }

  fp::elem modulus() const noexcept { return p_; }
  int n_max() const noexcept { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int n) const { return dims_.at(static_cast<std::size_t>(n)); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  bool has_last_face() const noexcept { return last_face_; }
  bool has_degeneracies() const noexcept { return !degens_.empty(); }

  /// Number of faces stored on C_n.
  int face_count(int n) const { return n == 0 ? 0 : static_cast<int>(faces_.at(static_cast<std::size_t>(n)).size()); }

  const FMatrix& face(int n, int i) const {
    if (n < 1 || n > n_max() || i < 0 || i >= face_count(n))
      throw error(errc::out_of_range, "face d_" + std::to_string(i) + " on level " + std::to_string(n));
    return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
  }
  const FMatrix& degeneracy(int n, int j) const {
    if (!has_degeneracies() || n < 0 || n >= n_max() || j < 0 || j > n)
      throw error(errc::out_of_range, "degeneracy s_" + std::to_string(j) + " on level " + std::to_string(n));
    return degens_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
  }

 private:
  void check_shape(const FMatrix& m, std::size_t rows, std::size_t cols, const char* what) const {
    if (m.modulus() != p_) throw error(errc::modulus_mismatch, what);
    if (m.rows() != rows || m.cols() != cols) throw error(errc::shape_mismatch, std::string(what) + " shape " + detail::shape(m));
  }

  [[noreturn]] static void fail(const std::string& what) { throw error(errc::simplicial_identity, what); }

  void validate(bool strict) const {
    const int top = n_max();
    for (int n = 2; n <= top; ++n)
      for (int j = 1; j < face_count(n); ++j)
        for (int i = 0; i < j; ++i)
          if (!(matmul(face(n - 1, i), face(n, j)) == matmul(face(n - 1, j - 1), face(n, i))))
            fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" + std::to_string(j - 1) + " d_" +
                 std::to_string(i) + " on level " + std::to_string(n));
    if (!has_degeneracies()) return;
    for (int n = 0; n < top; ++n)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i < face_count(n + 1); ++i) {
          const auto lhs = matmul(face(n + 1, i), degeneracy(n, j));
          FMatrix rhs;
          if (i < j) {
            rhs = matmul(degeneracy(n - 1, j - 1), face(n, i));
          } else if (i == j || i == j + 1) {
            rhs = FMatrix::identity(dim(n), p_);
          } else {
            rhs = matmul(degeneracy(n - 1, j), face(n, i - 1));
          }
          if (!(lhs == rhs))
            fail("d_" + std::to_string(i) + " s_" + std::to_string(j) + " on level " + std::to_string(n));
        }
    if (!strict) return;
    for (int n = 0; n + 2 <= top; ++n)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (!(matmul(degeneracy(n + 1, i), degeneracy(n, j)) == matmul(degeneracy(n + 1, j + 1), degeneracy(n, i))))
            fail("s_" + std::to_string(i) + " s_" + std::to_string(j) + " on level " + std::to_string(n));
  }

  fp::elem p_ = 2;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<FMatrix>> faces_;
  std::vector<std::vector<FMatrix>> degens_;
  bool last_face_ = true;
};

/// Which weighted face sum to use as the differential.
struct DifferentialSpec {
  enum class Kind { full, truncated, weighted, general };
  Kind kind = Kind::full;
  std::int64_t ell = 1;                 // weighted only
  std::vector<std::int64_t> coeffs;     // general only: a_0, a_1, ...

  static DifferentialSpec full() { return {Kind::full, 1, {}}; }
  static DifferentialSpec truncated() { return {Kind::truncated, 1, {}}; }
  static DifferentialSpec weighted(std::int64_t ell) { return {Kind::weighted, ell, {}}; }
  static DifferentialSpec general(std::vector<std::int64_t> a) { return {Kind::general, 1, std::move(a)}; }

  std::string describe() const {
    switch (kind) {
      case Kind::full: return "full";
      case Kind::truncated: return "truncated";
      case Kind::weighted: return "weighted(" + std::to_string(ell) + ")";
      case Kind::general: return "general";
    }
    return "?";
  }
};

/// Coefficient of d_i in the differential on C_n (zero when the face is unused).
inline fp::elem face_coefficient(const QContext& ctx, const DifferentialSpec& spec, int n, int i) {
  const fp::elem p = ctx.p();
  using K = DifferentialSpec::Kind;
  switch (spec.kind) {
    case K::full: return i <= n ? ctx.qpow(i) : 0;
    case K::truncated: return i <= n - 1 ? ctx.qpow(i) : 0;
    case K::weighted: {
      if (i <= n - 2) return ctx.qpow(i);
      if (i != n - 1) return 0;
      const std::int64_t l = ((spec.ell % ctx.N()) + ctx.N()) % ctx.N();
      return fp::mul(ctx.qint(l), ctx.qpow(n - 1), p);
    }
    case K::general: {
      if (i > n - 1) return 0;
      const auto idx = static_cast<std::size_t>(n - 1 - i);
      if (idx >= spec.coeffs.size())
        throw error(errc::out_of_range, "coefficient a_" + std::to_string(idx) + " not supplied");
      return fp::mul(fp::reduce(spec.coeffs[idx], p), ctx.qpow(i), p);
    }
  }
  return 0;
}

/// The weighted face sum C_n -> C_{n-1} (zero on C_0).
inline FMatrix q_face_sum(const SimplicialModule& sm, const QContext& ctx, const DifferentialSpec& spec, int n) {
  const fp::elem p = sm.modulus();
  if (n == 0) return FMatrix(0, sm.dim(0), p);
  FMatrix d(sm.dim(n - 1), sm.dim(n), p);
  const int top = spec.kind == DifferentialSpec::Kind::full ? n : n - 1;
  for (int i = 0; i <= top; ++i) {
    const auto c = face_coefficient(ctx, spec, n, i);
    if (c == 0) continue;
    if (i >= sm.face_count(n))
      throw error(errc::invalid_input, "differential needs face d_" + std::to_string(i) + " on level " +
                                           std::to_string(n) + ", which the module does not carry");
    d = add(d, scaled(sm.face(n, i), c));
  }
  return d;
}

/// (C, sum of weighted faces) as an N-complex on degrees 0..n_max, truncated above.
inline NComplex q_differential(const SimplicialModule& sm, const QContext& ctx, const DifferentialSpec& spec) {
  if (ctx.p() != sm.modulus()) throw error(errc::modulus_mismatch, "context and module over different fields");
  std::vector<FMatrix> diffs;
  for (int n = 1; n <= sm.n_max(); ++n) diffs.push_back(q_face_sum(sm, ctx, spec, n));
  return NComplex(ctx.N(), ctx.p(), 0, sm.dims(), std::move(diffs), Truncation{false, true}, ctx);
}

/// Closed-form expansion of delta^K on C_n for delta = sum a_{n-1-i} q^i d_i:
/// sum over 0 <= i_1 <= ... <= i_K <= n-K of q^{i_1+...+i_K} prod_k (K,i_k,k)
/// d_{i_K} ... d_{i_1}, with (K,j,k) = sum_{s=0}^{K-k} q^s a_{n-k-j-s}.
inline FMatrix lemma53_rhs(const SimplicialModule& sm, const QContext& ctx, const std::vector<std::int64_t>& a, int n,
                           int K = 0) {
  if (K == 0) K = ctx.N();
  const fp::elem p = ctx.p();
  if (n < K || n > sm.n_max()) throw error(errc::out_of_range, "need K <= n <= n_max");
  auto coeff = [&](int j, int k) {
    fp::elem t = 0;
    for (int s = 0; s <= K - k; ++s) {
      const int idx = n - k - j - s;
      if (idx < 0 || static_cast<std::size_t>(idx) >= a.size())
        throw error(errc::out_of_range, "coefficient a_" + std::to_string(idx) + " not supplied");
      t = fp::add(t, fp::mul(ctx.qpow(s), fp::reduce(a[static_cast<std::size_t>(idx)], p), p), p);
    }
    return t;
  };
  FMatrix total(sm.dim(n - K), sm.dim(n), p);
  std::vector<int> idx(static_cast<std::size_t>(K), 0);
  const int hi = n - K;
  for (;;) {
    fp::elem c = 1;
    int sum = 0;
    for (int k = 1; k <= K && c != 0; ++k) {
      c = fp::mul(c, coeff(idx[static_cast<std::size_t>(k - 1)], k), p);
      sum += idx[static_cast<std::size_t>(k - 1)];
    }
    if (c != 0) {
      FMatrix term = FMatrix::identity(sm.dim(n), p);
      for (int k = 0; k < K; ++k) term = matmul(sm.face(n - k, idx[static_cast<std::size_t>(k)]), term);
      total = add(total, scaled(term, fp::mul(c, ctx.qpow(sum), p)));
    }
    // next nondecreasing tuple
    int pos = K - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == hi) --pos;
    if (pos < 0) break;
    const int v = idx[static_cast<std::size_t>(pos)] + 1;
    for (int k = pos; k < K; ++k) idx[static_cast<std::size_t>(k)] = v;
  }
  return total;
}

/// A contracting homotopy of (C, delta) assembled from a degree +1 map t with
/// delta t - lambda t delta = id, and the degrees where id - 0 = sum
/// delta^{N-1-i} h delta^i has been verified.
struct ContractingHomotopy {
  std::shared_ptr<const NComplex> complex;
  std::vector<FMatrix> step;              // t_n: C_n -> C_{n+1}, n = 0..n_max-1
  std::vector<int> relation_levels;       // levels where the commutation relation holds
  Homotopy homotopy;                      // between id and 0
  std::vector<int> certified_degrees;     // degrees where the homotopy identity was checked
  bool certified = false;                 // identity holds at every certified degree
};

namespace detail {

inline bool homotopy_holds_at(const Homotopy& H, int n) {
  return sub(H.f.at(n), H.g.at(n)) == homotopy_sum(H, n);
}

/// Common tail of both constructions: h_n = scale * t^{N-1}, checked where the
/// relation holds on every level the identity touches.
inline ContractingHomotopy assemble_homotopy(std::shared_ptr<const NComplex> c, std::vector<FMatrix> step,
                                             const std::vector<bool>& relation_ok, fp::elem scale) {
  const int N = c->N();
  const int top = c->hi();
  ContractingHomotopy out;
  out.complex = c;
  for (std::size_t n = 0; n < relation_ok.size(); ++n)
    if (relation_ok[n]) out.relation_levels.push_back(static_cast<int>(n));
  std::vector<FMatrix> h;
  for (int n = 0; n + N - 1 <= top; ++n) {
    FMatrix m = FMatrix::identity(c->dim(n), c->modulus());
    for (int k = 0; k < N - 1; ++k) m = matmul(step[static_cast<std::size_t>(n + k)], m);
    h.push_back(scaled(m, scale));
  }
  out.homotopy = Homotopy{identity_morphism(c), zero_morphism(c, c), 0, std::move(h)};
  out.step = std::move(step);
  out.certified = true;
  for (int n : homotopy_checkable_degrees(out.homotopy)) {
    bool ok = true;
    for (int m = std::max(0, n - N + 1); m <= n + N - 2 && ok; ++m)
      if (m < static_cast<int>(relation_ok.size()) && !relation_ok[static_cast<std::size_t>(m)]) ok = false;
    if (!ok) continue;
    out.certified_degrees.push_back(n);
    if (!homotopy_holds_at(out.homotopy, n)) out.certified = false;
  }
  return out;
}

}  // namespace detail

/// sigma_n = q^{-n} s_n on the truncated differential; checks
/// delta sigma - q^{-1} sigma delta = id on every level and returns
/// h = (-q^{-1})^{N-1} [N-1]!^{-1} sigma^{N-1}.
inline ContractingHomotopy contracting_homotopy_sigma(const SimplicialModule& sm, const QContext& ctx) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the contracting homotopy needs [N-1]! invertible");
  if (!sm.has_degeneracies()) throw error(errc::invalid_input, "module carries no degeneracies");
  const fp::elem p = ctx.p();
  auto c = std::make_shared<const NComplex>(q_differential(sm, ctx, DifferentialSpec::truncated()));
  std::vector<FMatrix> sigma;
  for (int n = 0; n < sm.n_max(); ++n) sigma.push_back(scaled(sm.degeneracy(n, n), ctx.qpow(-n)));
  const fp::elem qinv = ctx.qpow(-1);
  std::vector<bool> ok;
  for (int n = 0; n < sm.n_max(); ++n) {
    auto lhs = matmul(c->diff(n + 1), sigma[static_cast<std::size_t>(n)]);
    if (n > 0) lhs = sub(lhs, scaled(matmul(sigma[static_cast<std::size_t>(n - 1)], c->diff(n)), qinv));
    if (!(lhs == FMatrix::identity(sm.dim(n), p)))
      throw error(errc::relation_failure, "delta sigma - q^-1 sigma delta != id on level " + std::to_string(n));
    ok.push_back(true);
  }
  const int N = ctx.N();
  fp::elem scale = fp::pow_signed(fp::neg(qinv, p), N - 1, p);
  scale = fp::mul(scale, fp::inv(ctx.qfactorial(N - 1), p), p);
  return detail::assemble_homotopy(c, std::move(sigma), ok, scale);
}

/// Whether s is an extra degeneracy: d_0 s = id and d_i s = s d_{i-1} for
/// 0 < i <= n on every level n (the top face of C_{n+1} is not involved).
inline bool is_extra_degeneracy(const SimplicialModule& sm, const std::vector<FMatrix>& s) {
  if (static_cast<int>(s.size()) != sm.n_max()) return false;
  for (int n = 0; n < sm.n_max(); ++n) {
    const auto& sn = s[static_cast<std::size_t>(n)];
    if (sn.rows() != sm.dim(n + 1) || sn.cols() != sm.dim(n)) return false;
    if (!(matmul(sm.face(n + 1, 0), sn) == FMatrix::identity(sm.dim(n), sm.modulus()))) return false;
    for (int i = 1; i <= n; ++i)
      if (!(matmul(sm.face(n + 1, i), sn) == matmul(s[static_cast<std::size_t>(n - 1)], sm.face(n, i - 1)))) return false;
  }
  return true;
}

/// For the weighted differential with parameter ell: checks
/// delta s - q s delta = id level by level and returns
/// h = s^{N-1} / ((-1)^{N-1} q^{-N(N-1)/2} [N-1]!). On C_0 the relation reads
/// [ell] id = id, so level 0 only counts when [ell] = 1.
inline ContractingHomotopy contracting_homotopy_extra(const SimplicialModule& sm, const QContext& ctx,
                                                      const std::vector<FMatrix>& s, std::int64_t ell) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the contracting homotopy needs [N-1]! invertible");
  if (!is_extra_degeneracy(sm, s)) throw error(errc::relation_failure, "s is not an extra degeneracy");
  const fp::elem p = ctx.p();
  auto c = std::make_shared<const NComplex>(q_differential(sm, ctx, DifferentialSpec::weighted(ell)));
  std::vector<bool> ok;
  for (int n = 0; n < sm.n_max(); ++n) {
    auto lhs = matmul(c->diff(n + 1), s[static_cast<std::size_t>(n)]);
    if (n > 0) lhs = sub(lhs, scaled(matmul(s[static_cast<std::size_t>(n - 1)], c->diff(n)), ctx.q()));
    const bool holds = lhs == FMatrix::identity(sm.dim(n), p);
    if (!holds && n > 0)
      throw error(errc::relation_failure, "delta s - q s delta != id on level " + std::to_string(n));
    ok.push_back(holds);
  }
  const int N = ctx.N();
  fp::elem c2 = (N - 1) % 2 ? fp::neg(1, p) : 1;
  c2 = fp::mul(c2, ctx.qpow(-static_cast<std::int64_t>(N) * (N - 1) / 2), p);
  c2 = fp::mul(c2, ctx.qfactorial(N - 1), p);
  return detail::assemble_homotopy(c, s, ok, fp::inv(c2, p));
}

/// Simplicial module of the linearized standard simplex k[Delta^m] tensored with
/// a vector space of dimension v, up to level n_max: n-simplices are
/// nondecreasing sequences in [0, m] of length n+1.
inline SimplicialModule simplex_module(fp::elem p, int m, std::size_t v, int n_max) {
  std::vector<std::vector<std::vector<int>>> simplices(static_cast<std::size_t>(n_max) + 2);
  // level n+1 sequences, including one level above n_max for degeneracy targets
  for (int n = 0; n <= n_max; ++n) {
    std::vector<int> cur(static_cast<std::size_t>(n + 1), 0);
    for (;;) {
      simplices[static_cast<std::size_t>(n)].push_back(cur);
      int pos = n;
      while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == m) --pos;
      if (pos < 0) break;
      const int val = cur[static_cast<std::size_t>(pos)] + 1;
      for (int k = pos; k <= n; ++k) cur[static_cast<std::size_t>(k)] = val;
    }
  }
  auto index_of = [&](int n, const std::vector<int>& s) {
    const auto& list = simplices[static_cast<std::size_t>(n)];
    return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), s) - list.begin());
  };
  const auto I = FMatrix::identity(v, p);
  std::vector<std::size_t> dims;
  for (int n = 0; n <= n_max; ++n) dims.push_back(simplices[static_cast<std::size_t>(n)].size() * v);
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(n_max) + 1), degens;
  for (int n = 1; n <= n_max; ++n)
    for (int i = 0; i <= n; ++i) {
      const auto& src = simplices[static_cast<std::size_t>(n)];
      FMatrix f(simplices[static_cast<std::size_t>(n - 1)].size(), src.size(), p);
      for (std::size_t c = 0; c < src.size(); ++c) {
        auto t = src[c];
        t.erase(t.begin() + i);
        f.set(index_of(n - 1, t), c, 1);
      }
      faces[static_cast<std::size_t>(n)].push_back(kron(f, I));
    }
  for (int n = 0; n < n_max; ++n) {
    degens.emplace_back();
    for (int j = 0; j <= n; ++j) {
      const auto& src = simplices[static_cast<std::size_t>(n)];
      FMatrix s(simplices[static_cast<std::size_t>(n + 1)].size(), src.size(), p);
      for (std::size_t c = 0; c < src.size(); ++c) {
        auto t = src[c];
        t.insert(t.begin() + j, t[static_cast<std::size_t>(j)]);
        s.set(index_of(n + 1, t), c, 1);
      }
      degens.back().push_back(kron(s, I));
    }
  }
  return {p, std::move(dims), std::move(faces), std::move(degens)};
}

/// Levelwise direct sum.
inline SimplicialModule direct_sum(const SimplicialModule& a, const SimplicialModule& b) {
  if (a.modulus() != b.modulus() || a.n_max() != b.n_max() || a.has_last_face() != b.has_last_face())
    throw error(errc::shape_mismatch, "direct sum of incompatible simplicial modules");
  const int top = a.n_max();
  std::vector<std::size_t> dims;
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(top) + 1), degens;
  for (int n = 0; n <= top; ++n) dims.push_back(a.dim(n) + b.dim(n));
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i < a.face_count(n); ++i) faces[static_cast<std::size_t>(n)].push_back(direct_sum(a.face(n, i), b.face(n, i)));
  if (a.has_degeneracies() && b.has_degeneracies())
    for (int n = 0; n < top; ++n) {
      degens.emplace_back();
      for (int j = 0; j <= n; ++j) degens.back().push_back(direct_sum(a.degeneracy(n, j), b.degeneracy(n, j)));
    }
  return {a.modulus(), std::move(dims), std::move(faces), std::move(degens), a.has_last_face()};
}

/// Transport of structure along levelwise automorphisms g_n.
inline SimplicialModule change_basis(const SimplicialModule& sm, const std::vector<FMatrix>& g) {
  const int top = sm.n_max();
  if (static_cast<int>(g.size()) != top + 1) throw error(errc::shape_mismatch, "one automorphism per level");
  std::vector<FMatrix> inv;
  for (const auto& m : g) inv.push_back(inverse(m));
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(top) + 1), degens;
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i < sm.face_count(n); ++i)
      faces[static_cast<std::size_t>(n)].push_back(
          matmul(g[static_cast<std::size_t>(n - 1)], matmul(sm.face(n, i), inv[static_cast<std::size_t>(n)])));
  if (sm.has_degeneracies())
    for (int n = 0; n < top; ++n) {
      degens.emplace_back();
      for (int j = 0; j <= n; ++j)
        degens.back().push_back(
            matmul(g[static_cast<std::size_t>(n + 1)], matmul(sm.degeneracy(n, j), inv[static_cast<std::size_t>(n)])));
    }
  return {sm.modulus(), sm.dims(), std::move(faces), std::move(degens), sm.has_last_face()};
}

}  // namespace qhh
