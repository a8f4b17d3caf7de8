#pragma once

// The q-difference operator algebra k<X,Y>/(YX - qXY - 1) in the X^a Y^b
// basis, and the q-difference calculus on k[X].

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qhh/qcalc.hpp"

namespace qhh {

/// sum c_{ab} X^a Y^b, zero coefficients never stored.
class DqElement {
 public:
  using Monomial = std::pair<int, int>;  // (a, b)

  explicit DqElement(QContext ctx) : ctx_(std::move(ctx)) {}

  static DqElement scalar(const QContext& ctx, fp::elem c) { return monomial(ctx, 0, 0, c); }
  static DqElement monomial(const QContext& ctx, int a, int b, fp::elem c = 1) {
    DqElement e(ctx);
    e.add_term(a, b, c);
    return e;
  }
  static DqElement X(const QContext& ctx) { return monomial(ctx, 1, 0); }
  static DqElement Y(const QContext& ctx) { return monomial(ctx, 0, 1); }

  const QContext& context() const noexcept { return ctx_; }
  const std::map<Monomial, fp::elem>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  fp::elem coefficient(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(int a, int b, fp::elem c) {
    c = fp::reduce(c, ctx_.p());
    if (c == 0) return;
    auto& slot = terms_[{a, b}];
    slot = fp::add(slot, c, ctx_.p());
    if (slot == 0) terms_.erase({a, b});
  }

  DqElement& operator+=(const DqElement& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, c);
    return *this;
  }
  DqElement& operator-=(const DqElement& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, fp::neg(c, ctx_.p()));
    return *this;
  }
  DqElement scaled(fp::elem s) const {
    DqElement out(ctx_);
    for (const auto& [m, c] : terms_) out.add_term(m.first, m.second, fp::mul(c, s, ctx_.p()));
    return out;
  }

  bool operator==(const DqElement& o) const {
    return ctx_.p() == o.ctx_.p() && ctx_.q() == o.ctx_.q() && terms_ == o.terms_;
  }

  void require_same(const DqElement& o) const {
    if (ctx_.p() != o.ctx_.p() || ctx_.q() != o.ctx_.q() || ctx_.N() != o.ctx_.N())
      throw error(errc::context_mismatch, "elements of different q-difference algebras");
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(c);
      if (m.first) s += "*X^" + std::to_string(m.first);
      if (m.second) s += "*Y^" + std::to_string(m.second);
    }
    return s;
  }

 private:
  QContext ctx_;
  std::map<Monomial, fp::elem> terms_;
};

inline DqElement operator+(DqElement a, const DqElement& b) { return a += b; }
inline DqElement operator-(DqElement a, const DqElement& b) { return a -= b; }

namespace detail {

/// Normal form of Y^b X^c by Y X^c = q^c X^c Y + [c] X^{c-1}, applied from the
/// innermost Y outwards.
class Reorderer {
 public:
  explicit Reorderer(const QContext& ctx) : ctx_(ctx) {}

  const std::map<DqElement::Monomial, fp::elem>& get(int b, int c) {
    auto it = memo_.find({b, c});
    if (it != memo_.end()) return it->second;
    std::map<DqElement::Monomial, fp::elem> out;
    const fp::elem p = ctx_.p();
    auto put = [&](int x, int y, fp::elem v) {
      if (v == 0) return;
      auto& slot = out[{x, y}];
      slot = fp::add(slot, v, p);
      if (slot == 0) out.erase({x, y});
    };
    if (b == 0 || c == 0) {
      put(c, b, 1);
    } else {
      // Y^b X^c = Y^{b-1} (q^c X^c Y + [c] X^{c-1})
      const auto first = get(b - 1, c);
      for (const auto& [m, v] : first) put(m.first, m.second + 1, fp::mul(v, ctx_.qpow(c), p));
      const auto second = get(b - 1, c - 1);
      for (const auto& [m, v] : second) put(m.first, m.second, fp::mul(v, ctx_.qint(c), p));
    }
    return memo_.emplace(std::make_pair(b, c), std::move(out)).first->second;
  }

 private:
  QContext ctx_;
  std::map<std::pair<int, int>, std::map<DqElement::Monomial, fp::elem>> memo_;
};

}  // namespace detail

/// Product in normal form: X^a Y^b X^c Y^d = X^a (Y^b X^c) Y^d.
inline DqElement dq_mul(const DqElement& x, const DqElement& y) {
  x.require_same(y);
  const auto& ctx = x.context();
  const fp::elem p = ctx.p();
  detail::Reorderer ro(ctx);
  DqElement out(ctx);
  for (const auto& [m1, c1] : x.terms())
    for (const auto& [m2, c2] : y.terms()) {
      const fp::elem c = fp::mul(c1, c2, p);
      for (const auto& [m, v] : ro.get(m1.second, m2.first))
        out.add_term(m1.first + m.first, m.second + m2.second, fp::mul(c, v, p));
    }
  return out;
}

inline DqElement dq_pow(const DqElement& x, int k) {
  DqElement out = DqElement::scalar(x.context(), 1);
  for (int i = 0; i < k; ++i) out = dq_mul(out, x);
  return out;
}

/// Y^l X^k from the closed formula
/// sum_r q^{(l-r)(k-r)} (l-r, r) [k][k-1]...[k-r+1] X^{k-r} Y^{l-r}; needs
/// 0 <= k, l <= N-1 and H1 for the q-binomials.
inline DqElement eq54(const QContext& ctx, int l, int k) {
  if (l < 0 || k < 0 || l > ctx.N() - 1 || k > ctx.N() - 1)
    throw error(errc::out_of_range, "closed reordering formula needs 0 <= k, l <= N-1");
  const fp::elem p = ctx.p();
  QScalarTable tab(ctx);
  DqElement out(ctx);
  for (int r = 0; r <= std::min(l, k); ++r) {
    fp::elem falling = 1;
    for (int i = 0; i < r; ++i) falling = fp::mul(falling, ctx.qint(k - i), p);
    fp::elem c = fp::mul(ctx.qpow(static_cast<std::int64_t>(l - r) * (k - r)), tab.qbinom(l - r, r), p);
    out.add_term(k - r, l - r, fp::mul(c, falling, p));
  }
  return out;
}

/// The two sums of the identities and their targets.
struct Lemma55Result {
  DqElement first_lhs;
  fp::elem first_rhs;
  DqElement second_lhs;
  fp::elem second_rhs;
  bool first() const { return first_lhs == DqElement::scalar(first_lhs.context(), first_rhs); }
  bool second() const { return second_lhs == DqElement::scalar(second_lhs.context(), second_rhs); }
};

/// sum_k X^{N-k-1} Y^{N-1} X^k and sum_k Y^{N-k-1} X^{N-1} Y^k.
inline Lemma55Result lemma55_sides(const QContext& ctx) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the identities need [N-1]! invertible");
  const int N = ctx.N();
  const fp::elem p = ctx.p();
  const auto X = DqElement::X(ctx), Y = DqElement::Y(ctx);
  DqElement s1(ctx), s2(ctx);
  const auto YN = dq_pow(Y, N - 1), XN = dq_pow(X, N - 1);
  for (int k = 0; k < N; ++k) {
    s1 += dq_mul(dq_mul(dq_pow(X, N - k - 1), YN), dq_pow(X, k));
    s2 += dq_mul(dq_mul(dq_pow(Y, N - k - 1), XN), dq_pow(Y, k));
  }
  const fp::elem fact = ctx.qfactorial(N - 1);
  fp::elem second = fp::mul(ctx.qpow(-static_cast<std::int64_t>(N) * (N - 1) / 2), fact, p);
  if ((N - 1) % 2) second = fp::neg(second, p);
  return {s1, fact, s2, second};
}

inline std::pair<bool, bool> verify_lemma55(const QContext& ctx) {
  const auto r = lemma55_sides(ctx);
  return {r.first(), r.second()};
}

/// The morphism X~ -> -qY, Y~ -> X from the algebra with parameter q^{-1}
/// into the one with parameter q, applied termwise.
inline DqElement alpha(const DqElement& e, const QContext& target) {
  const fp::elem p = target.p();
  if (fp::mul(e.context().q(), target.q(), p) != 1 || e.context().p() != p)
    throw error(errc::context_mismatch, "alpha goes from the q^{-1} algebra to the q algebra");
  const auto mqY = DqElement::Y(target).scaled(fp::neg(target.q(), p));
  const auto X = DqElement::X(target);
  DqElement out(target);
  for (const auto& [m, c] : e.terms()) out += dq_mul(dq_pow(mqY, m.first), dq_pow(X, m.second)).scaled(c);
  return out;
}

/// Computes the first identity with parameter q^{-1}, checks its value
/// q^{-(N-1)(N-2)/2}[N-1]!, and that alpha carries its left side to
/// (-q)^{N-1} times the second left side with parameter q.
inline bool verify_alpha_bridge(const QContext& ctx) {
  const fp::elem p = ctx.p();
  const auto inv = make_context(ctx.N(), p, ctx.qpow(-1));
  const auto primed = lemma55_sides(inv);
  const auto plain = lemma55_sides(ctx);
  const int N = ctx.N();
  const fp::elem value = fp::mul(ctx.qpow(-static_cast<std::int64_t>(N - 1) * (N - 2) / 2), ctx.qfactorial(N - 1), p);
  if (!(primed.first_lhs == DqElement::scalar(inv, value))) return false;
  const fp::elem mq = fp::pow_signed(fp::neg(ctx.q(), p), N - 1, p);
  return alpha(primed.first_lhs, ctx) == plain.second_lhs.scaled(mq);
}

/// A polynomial in k[X], trailing zeros trimmed.
class QPolynomial {
 public:
  QPolynomial(fp::elem p, std::vector<fp::elem> coeffs = {}) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x = fp::reduce(x, p_);
    trim();
  }
  static QPolynomial monomial(fp::elem p, std::size_t k, fp::elem c = 1) {
    std::vector<fp::elem> v(k + 1, 0);
    v[k] = c;
    return {p, std::move(v)};
  }

  fp::elem modulus() const noexcept { return p_; }
  const std::vector<fp::elem>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  fp::elem operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  bool operator==(const QPolynomial& o) const { return p_ == o.p_ && c_ == o.c_; }

  fp::elem eval(fp::elem x) const {
    fp::elem r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = fp::add(fp::mul(r, x, p_), *it, p_);
    return r;
  }

  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
    std::vector<fp::elem> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = fp::add(a[k], b[k], a.p_);
    return {a.p_, std::move(v)};
  }
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
    std::vector<fp::elem> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = fp::sub(a[k], b[k], a.p_);
    return {a.p_, std::move(v)};
  }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {a.p_};
    std::vector<fp::elem> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = fp::add(v[i + j], fp::mul(a.c_[i], b.c_[j], a.p_), a.p_);
    return {a.p_, std::move(v)};
  }
  QPolynomial scaled(fp::elem s) const {
    auto v = c_;
    for (auto& x : v) x = fp::mul(x, s, p_);
    return {p_, std::move(v)};
  }

  /// Quotient and remainder by a nonzero divisor.
  std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& d) const {
    if (d.is_zero()) throw error(errc::division_failure, "division by the zero polynomial");
    auto r = c_;
    const std::size_t dd = d.c_.size();
    if (r.size() < dd) return {QPolynomial(p_), *this};
    std::vector<fp::elem> q(r.size() - dd + 1, 0);
    const fp::elem lead = fp::inv(d.c_.back(), p_);
    for (std::size_t k = r.size(); k-- >= dd;) {
      const fp::elem f = fp::mul(r[k], lead, p_);
      q[k - dd + 1] = f;
      for (std::size_t j = 0; j < dd; ++j) r[k - dd + 1 + j] = fp::sub(r[k - dd + 1 + j], fp::mul(f, d.c_[j], p_), p_);
      if (k == dd - 1) break;
    }
    return {QPolynomial(p_, std::move(q)), QPolynomial(p_, std::move(r))};
  }

  /// Exact quotient; throws division_failure on a nonzero remainder.
  QPolynomial exact_div(const QPolynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw error(errc::division_failure, "polynomial division leaves a remainder");
    return q;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  fp::elem p_;
  std::vector<fp::elem> c_;
};

/// X^k -> [k] X^{k-1}.
inline QPolynomial del_q(const QContext& ctx, const QPolynomial& f) {
  std::vector<fp::elem> v(f.coeffs().empty() ? 0 : f.coeffs().size() - 1, 0);
  for (std::size_t k = 1; k < f.coeffs().size(); ++k)
    v[k - 1] = fp::mul(f.coeffs()[k], ctx.qint(static_cast<std::int64_t>(k)), ctx.p());
  return {ctx.p(), std::move(v)};
}

/// X -> qX.
inline QPolynomial tau_q(const QContext& ctx, const QPolynomial& f) {
  auto v = f.coeffs();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = fp::mul(v[k], ctx.qpow(static_cast<std::int64_t>(k)), ctx.p());
  return {ctx.p(), std::move(v)};
}

/// del(P_1...P_n) = sum_i tau(P_1...P_{i-1}) del(P_i) P_{i+1}...P_n.
inline bool leibniz_holds(const QContext& ctx, const std::vector<QPolynomial>& factors) {
  const fp::elem p = ctx.p();
  QPolynomial prod(p, {1});
  for (const auto& f : factors) prod = prod * f;
  QPolynomial rhs(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    QPolynomial term(p, {1});
    for (std::size_t j = 0; j < i; ++j) term = term * tau_q(ctx, factors[j]);
    term = term * del_q(ctx, factors[i]);
    for (std::size_t j = i + 1; j < factors.size(); ++j) term = term * factors[j];
    rhs = rhs + term;
  }
  return del_q(ctx, prod) == rhs;
}

/// sum_{k=r}^{N-1} q^{(N-1-r)(k-r)} [k][k-1]...[k-r+1].
inline fp::elem a_coefficient(const QContext& ctx, int r) {
  const fp::elem p = ctx.p();
  fp::elem total = 0;
  for (int k = r; k < ctx.N(); ++k) {
    fp::elem falling = 1;
    for (int i = 0; i < r; ++i) falling = fp::mul(falling, ctx.qint(k - i), p);
    total = fp::add(total, fp::mul(ctx.qpow(static_cast<std::int64_t>(ctx.N() - 1 - r) * (k - r)), falling, p), p);
  }
  return total;
}

struct Eq56Result {
  QPolynomial lhs;           // del_q^r (1 + X + ... + X^{N-1})
  QPolynomial rhs;           // (-1)^r [r]! (X^N - 1) / prod_{i<=r} (q^i X - 1)
  fp::elem a = 0;            // a(r)
  fp::elem lhs_at_point = 0; // lhs at X = q^{N-1-r}
  bool holds() const { return lhs == rhs && a == lhs_at_point; }
};

inline Eq56Result eq56_sides(const QContext& ctx, int r) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the closed form needs an H1 context");
  const int N = ctx.N();
  if (r < 0 || r > N - 1) throw error(errc::out_of_range, "r must satisfy 0 <= r <= N-1");
  const fp::elem p = ctx.p();
  QPolynomial lhs(p, std::vector<fp::elem>(static_cast<std::size_t>(N), 1));
  for (int i = 0; i < r; ++i) lhs = del_q(ctx, lhs);
  QPolynomial den(p, {1});
  for (int i = 0; i <= r; ++i) den = den * QPolynomial(p, {p - 1, ctx.qpow(i)});
  auto num = QPolynomial::monomial(p, static_cast<std::size_t>(N)) - QPolynomial(p, {1});
  fp::elem c = ctx.qfactorial(r);
  if (r % 2) c = fp::neg(c, p);
  auto rhs = num.scaled(c).exact_div(den);
  const fp::elem point = ctx.qpow(N - 1 - r);
  return {lhs, rhs, a_coefficient(ctx, r), lhs.eval(point)};
}

/// The closed form for r and, when r < N-1, the vanishing of a(r).
inline bool verify_eq56(const QContext& ctx, int r) {
  const auto res = eq56_sides(ctx, r);
  return res.holds() && (r == ctx.N() - 1 || res.a == 0);
}

}  // namespace qhh
