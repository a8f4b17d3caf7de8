#pragma once

// N-complexes: graded F_p-vector spaces with a degree -1 differential d such
// that d^N = 0, stored on a finite window [lo, hi] with zero padding outside.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhh/matrix.hpp"
#include "qhh/qcalc.hpp"
#include "qhh/subspace.hpp"

namespace qhh {

/// Which ends of the stored window are truncations of a longer complex. At an
/// open end the zero padding is an artefact, so homology next to it is not
/// reported.
struct Truncation {
  bool below = false;
  bool above = false;
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

class NComplex {
 public:
  NComplex() = default;

  /// diffs[k] is d_{lo+1+k}: C_{lo+1+k} -> C_{lo+k}. Throws nilpotency_failure
  /// when d^N != 0 somewhere.
  NComplex(int N, fp::elem p, int lo, std::vector<std::size_t> dims, std::vector<FMatrix> diffs,
           Truncation trunc = {}, std::optional<QContext> ctx = std::nullopt)
      : N_(N), p_(p), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)), trunc_(trunc),
        ctx_(std::move(ctx)) {
    if (N_ < 2) throw error(errc::out_of_range, "N-complex needs N >= 2");
    if (ctx_ && (ctx_->N() != N_ || ctx_->p() != p_))
      throw error(errc::context_mismatch, "context does not match (N, p)");
    if (dims_.empty()) throw error(errc::shape_mismatch, "empty degree window");
    if (diffs_.size() + 1 != dims_.size())
      throw error(errc::shape_mismatch, "need one differential per degree above lo");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      const auto& d = diffs_[k];
      if (d.modulus() != p_) throw error(errc::modulus_mismatch, "differential modulus");
      if (d.rows() != dims_[k] || d.cols() != dims_[k + 1])
        throw error(errc::shape_mismatch, "d_" + std::to_string(lo_ + 1 + static_cast<int>(k)) +
                                              " has shape " + detail::shape(d));
    }
    if (auto bad = first_nilpotency_failure())
      throw error(errc::nilpotency_failure,
                  "d^" + std::to_string(N_) + " != 0 from degree " + std::to_string(*bad) + " to " +
                      std::to_string(*bad - N_));
  }

  int N() const noexcept { return N_; }
  fp::elem modulus() const noexcept { return p_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  const Truncation& truncation() const noexcept { return trunc_; }
  const std::optional<QContext>& context() const noexcept { return ctx_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  std::size_t dim(int n) const noexcept {
    if (n < lo_ || n > hi()) return 0;
    return dims_[static_cast<std::size_t>(n - lo_)];
  }

  /// d_n: C_n -> C_{n-1}, the zero map outside the stored window.
  FMatrix diff(int n) const {
    if (n <= lo_ || n > hi()) return FMatrix(dim(n - 1), dim(n), p_);
    return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
  }

  /// Whether _pH_n is computed without truncation artefacts.
  bool safe(int p, int n) const noexcept {
    if (trunc_.above && n + N_ - p > hi()) return false;
    if (trunc_.below && n - p < lo_) return false;
    return true;
  }

  std::optional<int> first_nilpotency_failure() const {
    for (int n = lo_ + N_; n <= hi(); ++n) {
      FMatrix acc = diff(n);
      for (int k = 1; k < N_; ++k) acc = matmul(diff(n - k), acc);
      if (!acc.is_zero()) return n;
    }
    return std::nullopt;
  }

 private:
  int N_ = 2;
  fp::elem p_ = 2;
  int lo_ = 0;
  std::vector<std::size_t> dims_{0};
  std::vector<FMatrix> diffs_;
  Truncation trunc_;
  std::optional<QContext> ctx_;
};

/// The composite d^k: C_n -> C_{n-k}; k = 0 gives the identity.
inline FMatrix diff_power(const NComplex& c, int n, int k) {
  if (k < 0) throw error(errc::out_of_range, "negative power of d");
  FMatrix acc = FMatrix::identity(c.dim(n), c.modulus());
  for (int j = 0; j < k; ++j) acc = matmul(c.diff(n - j), acc);
  return acc;
}

/// Caches the powers d^k at each degree.
class PowerCache {
 public:
  explicit PowerCache(const NComplex& c) : c_(&c) {}

  const FMatrix& get(int n, int k) {
    auto key = std::make_pair(n, k);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    FMatrix value = k == 0 ? FMatrix::identity(c_->dim(n), c_->modulus())
                           : matmul(c_->diff(n - k + 1), get(n, k - 1));
    return cache_.emplace(key, std::move(value)).first->second;
  }

  const NComplex& complex() const noexcept { return *c_; }

 private:
  const NComplex* c_;
  std::map<std::pair<int, int>, FMatrix> cache_;
};

/// Degree-0 map between N-complexes with d' f = f d. maps[k] is f_{lo+k} where
/// lo is the source's lo; degrees outside the source window carry zero maps.
class NComplexMorphism {
 public:
  NComplexMorphism() = default;
  NComplexMorphism(std::shared_ptr<const NComplex> source, std::shared_ptr<const NComplex> target,
                   std::vector<FMatrix> maps)
      : src_(std::move(source)), dst_(std::move(target)), maps_(std::move(maps)) {
    if (!src_ || !dst_) throw error(errc::invalid_input, "morphism needs both complexes");
    if (src_->N() != dst_->N() || src_->modulus() != dst_->modulus())
      throw error(errc::context_mismatch, "morphism between complexes of different (N, p)");
    if (maps_.size() != src_->dims().size())
      throw error(errc::shape_mismatch, "one map per source degree required");
    for (int n = src_->lo(); n <= src_->hi(); ++n) {
      const auto& f = map(n);
      if (f.rows() != dst_->dim(n) || f.cols() != src_->dim(n))
        throw error(errc::shape_mismatch, "f_" + std::to_string(n) + " has shape " + detail::shape(f));
    }
    if (auto bad = first_chain_failure())
      throw error(errc::invalid_input, "d' f != f d at degree " + std::to_string(*bad));
  }

  const NComplex& source() const noexcept { return *src_; }
  const NComplex& target() const noexcept { return *dst_; }
  const std::shared_ptr<const NComplex>& source_ptr() const noexcept { return src_; }
  const std::shared_ptr<const NComplex>& target_ptr() const noexcept { return dst_; }

  FMatrix at(int n) const {
    if (n < src_->lo() || n > src_->hi()) return FMatrix(dst_->dim(n), src_->dim(n), src_->modulus());
    return map(n);
  }

  std::optional<int> first_chain_failure() const {
    const auto& t = *dst_;
    for (int n = src_->lo(); n <= src_->hi() + 1; ++n) {
      if (t.truncation().above && n > t.hi()) continue;
      if (t.truncation().below && n - 1 < t.lo()) continue;
      if (!(matmul(t.diff(n), at(n)) == matmul(at(n - 1), src_->diff(n)))) return n;
    }
    return std::nullopt;
  }

 private:
  const FMatrix& map(int n) const { return maps_[static_cast<std::size_t>(n - src_->lo())]; }

  std::shared_ptr<const NComplex> src_, dst_;
  std::vector<FMatrix> maps_;
};

inline NComplexMorphism identity_morphism(std::shared_ptr<const NComplex> c) {
  std::vector<FMatrix> maps;
  for (int n = c->lo(); n <= c->hi(); ++n) maps.push_back(FMatrix::identity(c->dim(n), c->modulus()));
  return {c, c, std::move(maps)};
}

inline NComplexMorphism zero_morphism(std::shared_ptr<const NComplex> s, std::shared_ptr<const NComplex> t) {
  std::vector<FMatrix> maps;
  for (int n = s->lo(); n <= s->hi(); ++n) maps.emplace_back(t->dim(n), s->dim(n), s->modulus());
  return {std::move(s), std::move(t), std::move(maps)};
}

/// A map h of degree N-1 witnessing f - g = sum_i d'^{N-1-i} h d^i. h[k] is
/// h_{lo+k}: C_{lo+k} -> C'_{lo+k+N-1}; missing degrees are zero maps.
struct Homotopy {
  NComplexMorphism f;
  NComplexMorphism g;
  int lo = 0;
  std::vector<FMatrix> h;

  FMatrix at(int n) const {
    const auto& s = f.source();
    const auto& t = f.target();
    const int k = n - lo;
    if (k < 0 || k >= static_cast<int>(h.size())) return FMatrix(t.dim(n + s.N() - 1), s.dim(n), s.modulus());
    return h[static_cast<std::size_t>(k)];
  }
};

/// sum_{i=0}^{N-1} d'^{N-1-i} h d^i evaluated on C_n.
inline FMatrix homotopy_sum(const Homotopy& H, int n) {
  const auto& s = H.f.source();
  const auto& t = H.f.target();
  const int N = s.N();
  FMatrix total(t.dim(n), s.dim(n), s.modulus());
  for (int i = 0; i < N; ++i) {
    FMatrix term = matmul(H.at(n - i), diff_power(s, n, i));
    term = matmul(diff_power(t, n - i + N - 1, N - 1 - i), term);
    total = add(total, term);
  }
  return total;
}

/// Degrees of the source at which the homotopy identity is fully determined by
/// the stored data (h supplied for every needed degree, no truncation inside).
inline std::vector<int> homotopy_checkable_degrees(const Homotopy& H) {
  const auto& s = H.f.source();
  const auto& t = H.f.target();
  const int N = s.N();
  std::vector<int> out;
  const int h_hi = H.lo + static_cast<int>(H.h.size()) - 1;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    bool ok = true;
    for (int i = 0; i < N && ok; ++i) {
      const int m = n - i;
      if (m < s.lo()) {
        if (s.truncation().below) ok = false;
        continue;
      }
      if (m < H.lo || m > h_hi) ok = false;
      if (t.truncation().above && m + N - 1 > t.hi()) ok = false;
    }
    if (ok) out.push_back(n);
  }
  return out;
}

/// Whether f - g = sum d'^{N-1-i} h d^i at every checkable degree.
inline bool check_homotopy(const Homotopy& H) {
  if (H.f.source().dims() != H.g.source().dims() || H.f.target().dims() != H.g.target().dims())
    throw error(errc::shape_mismatch, "homotopy between morphisms with different sources");
  for (int n : homotopy_checkable_degrees(H)) {
    const auto& s = H.f.source();
    const auto& t = H.f.target();
    const int N = s.N();
    const auto hn = H.at(n);
    if (hn.rows() != t.dim(n + N - 1) || hn.cols() != s.dim(n))
      throw error(errc::shape_mismatch, "h_" + std::to_string(n) + " has shape " + detail::shape(hn));
    if (!(sub(H.f.at(n), H.g.at(n)) == homotopy_sum(H, n))) return false;
  }
  return true;
}

/// The morphism sum_i d'^{N-1-i} h d^i built from an arbitrary degree N-1 map.
inline NComplexMorphism null_homotopic_morphism(std::shared_ptr<const NComplex> s,
                                                std::shared_ptr<const NComplex> t, int lo,
                                                std::vector<FMatrix> h) {
  Homotopy H{zero_morphism(s, t), zero_morphism(s, t), lo, std::move(h)};
  std::vector<FMatrix> maps;
  for (int n = s->lo(); n <= s->hi(); ++n) maps.push_back(homotopy_sum(H, n));
  return {s, t, std::move(maps)};
}

inline NComplexMorphism morphism_sum(const NComplexMorphism& a, const NComplexMorphism& b) {
  std::vector<FMatrix> maps;
  for (int n = a.source().lo(); n <= a.source().hi(); ++n) maps.push_back(add(a.at(n), b.at(n)));
  return {a.source_ptr(), a.target_ptr(), std::move(maps)};
}

/// 0 -> C' -u-> C -v-> C'' -> 0, degreewise exact.
struct ShortExactSequence {
  NComplexMorphism u;
  NComplexMorphism v;
};

/// Throws not_exact unless u is injective, v surjective and im u = ker v in every degree.
inline void validate_ses(const ShortExactSequence& s) {
  if (s.u.target_ptr() != s.v.source_ptr() && &s.u.target() != &s.v.source())
    throw error(errc::not_exact, "u and v do not compose");
  const auto& c = s.u.target();
  const int lo = std::min({c.lo(), s.u.source().lo(), s.v.target().lo()});
  const int hi = std::max({c.hi(), s.u.source().hi(), s.v.target().hi()});
  for (int n = lo; n <= hi; ++n) {
    const auto u = s.u.at(n), v = s.v.at(n);
    if (rank(u) != u.cols()) throw error(errc::not_exact, "u not injective in degree " + std::to_string(n));
    if (rank(v) != v.rows()) throw error(errc::not_exact, "v not surjective in degree " + std::to_string(n));
    if (!subspace_equal(image(u), kernel(v)))
      throw error(errc::not_exact, "im u != ker v in degree " + std::to_string(n));
  }
}

/// Direct sum of two complexes with the same (N, p) on the union window.
inline NComplex direct_sum(const NComplex& a, const NComplex& b) {
  if (a.N() != b.N() || a.modulus() != b.modulus())
    throw error(errc::context_mismatch, "direct sum of complexes with different (N, p)");
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<std::size_t> dims;
  std::vector<FMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    dims.push_back(a.dim(n) + b.dim(n));
    if (n > lo) diffs.push_back(direct_sum(a.diff(n), b.diff(n)));
  }
  Truncation t{a.truncation().below || b.truncation().below, a.truncation().above || b.truncation().above};
  auto ctx = a.context() == b.context() ? a.context() : std::nullopt;
  return {a.N(), a.modulus(), lo, std::move(dims), std::move(diffs), t, ctx};
}

/// The complex g d g^{-1} for degreewise automorphisms g (g[k] acts on C_{lo+k}).
inline NComplex change_basis(const NComplex& c, const std::vector<FMatrix>& g) {
  if (g.size() != c.dims().size()) throw error(errc::shape_mismatch, "one automorphism per degree");
  std::vector<FMatrix> inv;
  for (const auto& m : g) inv.push_back(inverse(m));
  std::vector<FMatrix> diffs;
  for (int n = c.lo() + 1; n <= c.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - c.lo());
    diffs.push_back(matmul(g[k - 1], matmul(c.diff(n), inv[k])));
  }
  return {c.N(), c.modulus(), c.lo(), c.dims(), std::move(diffs), c.truncation(), c.context()};
}

}  // namespace qhh
