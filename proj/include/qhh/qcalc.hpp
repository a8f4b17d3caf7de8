#pragma once

// q-integers, q-factorials and q-binomials over a prime field, together with
// the root-of-unity context they live in.

#include <cstdint>
#include <string>
#include <vector>

#include "qhh/error.hpp"
#include "qhh/fp.hpp"

namespace qhh {

enum class hypothesis { h0, h1 };

inline std::string to_string(hypothesis h) { return h == hypothesis::h1 ? "H1" : "H0"; }

/// The triple (N, p, q): nilpotency order, field modulus and the deformation
/// scalar. A constructed context always satisfies [N] = 0 in F_p.
class QContext {
 public:
  int N() const noexcept { return N_; }
  fp::elem p() const noexcept { return p_; }
  fp::elem q() const noexcept { return q_; }
  hypothesis level() const noexcept { return level_; }
  bool is_h1() const noexcept { return level_ == hypothesis::h1; }

  /// q^e for any integer e (q is a unit under H0).
  fp::elem qpow(std::int64_t e) const { return fp::pow_signed(q_, e, p_); }

  /// [n] = (q^n - 1)/(q - 1), or n mod p when q = 1.
  fp::elem qint(std::int64_t n) const {
    if (q_ == 1) return fp::reduce(n, p_);
    fp::elem num = fp::sub(qpow(n), 1, p_);
    return fp::mul(num, fp::inv(fp::sub(q_, 1, p_), p_), p_);
  }

  /// [r]! = [1][2]...[r], [0]! = 1.
  fp::elem qfactorial(int r) const {
    if (r < 0) throw error(errc::out_of_range, "negative q-factorial");
    fp::elem f = 1;
    for (int i = 1; i <= r; ++i) f = fp::mul(f, qint(i), p_);
    return f;
  }

  /// Same N and p with q replaced by q^{-1}; still satisfies H0 (and H1 if this does).
  QContext inverse() const {
    QContext c = *this;
    c.q_ = fp::inv(q_, p_);
    return c;
  }

  friend bool operator==(const QContext&, const QContext&) = default;

 private:
  friend QContext make_context(int N, std::uint64_t p, std::int64_t q);
  int N_ = 2;
  fp::elem p_ = 3;
  fp::elem q_ = 2;
  hypothesis level_ = hypothesis::h1;
};

inline QContext make_context(int N, std::uint64_t p, std::int64_t q) {
  if (N < 2) throw error(errc::out_of_range, "N must be at least 2, got " + std::to_string(N));
  if (p > fp::max_modulus || !fp::is_prime(p)) throw error(errc::not_prime, std::to_string(p));
  if (q < 0 || static_cast<std::uint64_t>(q) >= p)
    throw error(errc::out_of_range, "q must lie in [0, p)");
  QContext c;
  c.N_ = N;
  c.p_ = static_cast<fp::elem>(p);
  c.q_ = static_cast<fp::elem>(q);
  if (c.q_ == 0) throw error(errc::h0_violated, "[N] = 1 when q = 0");
  if (c.qint(N) != 0)
    throw error(errc::h0_violated, "[" + std::to_string(N) + "] != 0 in F_" + std::to_string(p) +
                                       " for q = " + std::to_string(q));
  c.level_ = hypothesis::h1;
  for (int i = 1; i < N; ++i)
    if (c.qint(i) == 0) {
      c.level_ = hypothesis::h0;
      break;
    }
  return c;
}

/// Deterministic H1 context: the smallest prime p = 1 mod N and q = g^((p-1)/N)
/// for the smallest primitive root g mod p.
inline QContext find_context(int N) {
  if (N < 2) throw error(errc::out_of_range, "N must be at least 2");
  for (std::uint64_t p = static_cast<std::uint64_t>(N) + 1;; p += static_cast<std::uint64_t>(N)) {
    if (p > fp::max_modulus) throw error(errc::out_of_range, "no admissible prime below 2^31");
    if (!fp::is_prime(p)) continue;
    auto g = fp::primitive_root(static_cast<fp::elem>(p));
    auto q = fp::pow(g, (p - 1) / static_cast<std::uint64_t>(N), static_cast<fp::elem>(p));
    return make_context(N, p, q);
  }
}

inline fp::elem qint(const QContext& ctx, std::int64_t n) { return ctx.qint(n); }

/// Precomputed [0..2N-2] and [0]!..[2N-2]!.
class QScalarTable {
 public:
  explicit QScalarTable(const QContext& ctx) : ctx_(ctx) {
    const int top = 2 * ctx.N() - 2;
    qints_.resize(top + 1);
    qfacts_.resize(top + 1);
    qfacts_[0] = 1;
    for (int n = 0; n <= top; ++n) qints_[n] = ctx.qint(n);
    for (int r = 1; r <= top; ++r) qfacts_[r] = fp::mul(qfacts_[r - 1], qints_[r], ctx.p());
  }

  const QContext& context() const noexcept { return ctx_; }
  const std::vector<fp::elem>& qints() const noexcept { return qints_; }
  const std::vector<fp::elem>& qfacts() const noexcept { return qfacts_; }

  /// (r,s) = [r+s]! / ([r]! [s]!) for 0 <= r, s <= N-1; requires H1.
  fp::elem qbinom(int r, int s) const {
    const int N = ctx_.N();
    if (r < 0 || s < 0 || r > N - 1 || s > N - 1)
      throw error(errc::out_of_range, "q-binomial (" + std::to_string(r) + "," + std::to_string(s) +
                                          ") outside 0..N-1");
    if (!ctx_.is_h1()) throw error(errc::h1_required, "q-binomials need invertible [i]!");
    const auto p = ctx_.p();
    fp::elem den = fp::mul(qfacts_[r], qfacts_[s], p);
    return fp::mul(qfacts_[r + s], fp::inv(den, p), p);
  }

 private:
  QContext ctx_;
  std::vector<fp::elem> qints_;
  std::vector<fp::elem> qfacts_;
};

inline fp::elem qbinom(const QContext& ctx, int r, int s) { return QScalarTable(ctx).qbinom(r, s); }

}  // namespace qhh
