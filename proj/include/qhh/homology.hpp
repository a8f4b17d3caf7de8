#pragma once

// Homology _pH_n = ker d^p / im d^{N-p} of N-complexes, the maps i_* and d_*,
// and the two long exact sequences (hexagon and snake).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhh/ncomplex.hpp"
#include "qhh/subspace.hpp"

namespace qhh {

struct HomologyCell {
  int p = 1;
  int n = 0;
  QuotientSpace quotient;  // ker d^p over im d^{N-p}
  std::size_t dim() const noexcept { return quotient.dim(); }
  const FMatrix& representatives() const noexcept { return quotient.representatives(); }
};

/// Memoizing homology calculator bound to one complex, which must outlive it.
class HomologyEngine {
 public:
  explicit HomologyEngine(const NComplex& c, bool respect_truncation = true)
      : c_(&c), powers_(c), respect_truncation_(respect_truncation) {}

  const NComplex& complex() const noexcept { return *c_; }

  bool safe(int p, int n) const { return !respect_truncation_ || c_->safe(p, n); }

  const HomologyCell& cell(int p, int n) {
    const int N = c_->N();
    if (p < 1 || p > N - 1) throw error(errc::out_of_range, "p = " + std::to_string(p) + " outside 1..N-1");
    if (!safe(p, n))
      throw error(errc::unsafe_degree, "(p, n) = (" + std::to_string(p) + ", " + std::to_string(n) +
                                           ") touches a truncated end");
    auto key = std::make_pair(p, n);
    if (auto it = cells_.find(key); it != cells_.end()) return it->second;
    auto ker = kernel(powers_.get(n, p));
    auto im = image(powers_.get(n + N - p, N - p));
    if (!ker.contains(im))
      throw error(errc::not_a_complex, "im d^" + std::to_string(N - p) + " not inside ker d^" +
                                           std::to_string(p) + " at degree " + std::to_string(n));
    HomologyCell cell{p, n, QuotientSpace(std::move(im), std::move(ker))};
    return cells_.emplace(key, std::move(cell)).first->second;
  }

  std::size_t dim(int p, int n) { return cell(p, n).dim(); }

  const FMatrix& power(int n, int k) { return powers_.get(n, k); }

 private:
  const NComplex* c_;
  PowerCache powers_;
  bool respect_truncation_;
  std::map<std::pair<int, int>, HomologyCell> cells_;
};

inline std::size_t homology_dim(const NComplex& c, int p, int n) { return HomologyEngine(c).dim(p, n); }

/// Matrix of the map on homology induced by m: C_from.n -> C'_to.n, in the
/// canonical representative bases.
inline FMatrix induced(const HomologyCell& from, const HomologyCell& to, const FMatrix& m) {
  return to.quotient.coordinates(matmul(m, from.representatives()));
}

/// The (p, n) cells of the safe window, sorted by (p, n).
struct HomologyTable {
  int N = 2;
  std::map<std::pair<int, int>, std::size_t> entries;
};

inline HomologyTable homology_table(const NComplex& c, std::optional<int> only_p = std::nullopt) {
  HomologyEngine eng(c);
  HomologyTable t{c.N(), {}};
  for (int p = 1; p < c.N(); ++p) {
    if (only_p && *only_p != p) continue;
    for (int n = c.lo(); n <= c.hi(); ++n)
      if (eng.safe(p, n)) t.entries[{p, n}] = eng.dim(p, n);
  }
  return t;
}

/// _pH_n = 0 at every safe degree. With respect_truncation = false the stored
/// window is treated as the whole complex.
inline bool is_acyclic(const NComplex& c, int p, bool respect_truncation = true) {
  HomologyEngine eng(c, respect_truncation);
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (eng.safe(p, n) && eng.dim(p, n) != 0) return false;
  return true;
}

/// Whether "acyclic for one p" and "acyclic for all p" agree on c, viewed as
/// the finite N-complex it stores.
inline bool kapranov_check(const NComplex& c) {
  bool any = false, all = true;
  for (int p = 1; p < c.N(); ++p) {
    const bool a = is_acyclic(c, p, false);
    any = any || a;
    all = all && a;
  }
  return any == all;
}

/// i_*^r: _pH_n -> _{p+r}H_n.
inline FMatrix istar_map(HomologyEngine& eng, int p, int n, int r = 1) {
  const int N = eng.complex().N();
  if (N < 3 || r < 1 || p < 1 || p + r > N - 1) throw error(errc::out_of_range, "i_* needs 1 <= p < p+r <= N-1");
  const auto& a = eng.cell(p, n);
  const auto& b = eng.cell(p + r, n);
  return induced(a, b, FMatrix::identity(eng.complex().dim(n), eng.complex().modulus()));
}

/// d_*^k: _pH_n -> _{p-k}H_{n-k}.
inline FMatrix dstar_map(HomologyEngine& eng, int p, int n, int k = 1) {
  const int N = eng.complex().N();
  if (N < 3 || k < 1 || p - k < 1 || p > N - 1) throw error(errc::out_of_range, "d_* needs 1 <= p-k < p <= N-1");
  const auto& a = eng.cell(p, n);
  const auto& b = eng.cell(p - k, n - k);
  return induced(a, b, eng.power(n, k));
}

inline FMatrix istar_map(const NComplex& c, int p, int n) {
  HomologyEngine eng(c);
  return istar_map(eng, p, n);
}
inline FMatrix dstar_map(const NComplex& c, int p, int n) {
  HomologyEngine eng(c);
  return dstar_map(eng, p, n);
}

struct ExactnessReport {
  bool ok = true;
  std::size_t nodes_checked = 0;
  std::string first_failure;

  void record(bool exact, const std::string& where) {
    ++nodes_checked;
    if (!exact && ok) {
      ok = false;
      first_failure = where;
    }
  }
};

/// im(in) = ker(out) at a node, both as subspaces of its coordinate space.
inline bool exact_at(const FMatrix& in, const FMatrix& out) {
  return subspace_equal(image(in), kernel(out));
}

namespace detail {
inline std::string node_name(int p, int n) { return "_" + std::to_string(p) + "H_" + std::to_string(n); }
}  // namespace detail

/// Exactness of the six-term periodic sequence built from i_*^r, d_*^p,
/// i_*^{N-p-r}, d_*^r, i_*^p, d_*^{N-p-r}, at every node whose neighbours are safe.
inline ExactnessReport hexagon_check(const NComplex& c, int p, int r) {
  const int N = c.N();
  if (p < 1 || r < 1 || p + r >= N) throw error(errc::out_of_range, "hexagon needs p, r > 0 and p + r < N");
  HomologyEngine eng(c);
  const fp::elem mod = c.modulus();
  // arrow k leaves node k; node (flavour, degree offset)
  struct Node { int flavour, offset; };
  const Node nodes[7] = {{p, 0},         {p + r, 0},         {r, -p},         {N - p, -p},
                         {N - p - r, -p - r}, {N - r, -p - r}, {p, -N}};
  // kind: 0 = i_* (degree 0), 1 = d_* (lowers degree by the flavour drop)
  const int kind[6] = {0, 1, 0, 1, 0, 1};
  auto arrow = [&](int k, int base) -> std::optional<FMatrix> {
    const Node a = nodes[k], b = nodes[k + 1];
    const int na = base + a.offset, nb = base + b.offset;
    if (!eng.safe(a.flavour, na) || !eng.safe(b.flavour, nb)) return std::nullopt;
    const auto& ca = eng.cell(a.flavour, na);
    const auto& cb = eng.cell(b.flavour, nb);
    if (kind[k] == 0) return induced(ca, cb, FMatrix::identity(c.dim(na), mod));
    return induced(ca, cb, eng.power(na, na - nb));
  };
  ExactnessReport rep;
  for (int base = c.lo(); base <= c.hi() + N; ++base) {
    for (int k = 0; k < 6; ++k) {
      // node k+1 of this period, between arrows k and k+1 (arrow 6 = arrow 0 of the next period)
      auto in = arrow(k, base);
      auto out = k + 1 < 6 ? arrow(k + 1, base) : arrow(0, base - N);
      if (!in || !out) continue;
      const Node x = nodes[k + 1];
      rep.record(exact_at(*in, *out), detail::node_name(x.flavour, base + x.offset));
    }
  }
  return rep;
}

namespace detail {

/// Connecting map of degree -k from _kH_n(C'') to _{N-k}H_{n-k}(C'): lift along
/// v, apply d^k, pull back along u.
inline std::optional<FMatrix> connecting_map(const ShortExactSequence& s, HomologyEngine& e1,
                                             HomologyEngine& e, HomologyEngine& e2, int k, int n) {
  const int N = e.complex().N();
  if (!e2.safe(k, n) || !e1.safe(N - k, n - k)) return std::nullopt;
  const auto& from = e2.cell(k, n);
  const auto& to = e1.cell(N - k, n - k);
  auto lifted = solve(s.v.at(n), from.representatives());
  if (!lifted) throw error(errc::not_exact, "v not surjective in degree " + std::to_string(n));
  auto pushed = matmul(diff_power(e.complex(), n, k), *lifted);
  auto pulled = solve(s.u.at(n - k), pushed);
  if (!pulled) throw error(errc::not_exact, "connecting map leaves im u in degree " + std::to_string(n - k));
  return to.quotient.coordinates(*pulled);
}

}  // namespace detail

/// Exactness of the long sequence of an exact sequence 0 -> C' -> C -> C'' -> 0
/// of N-complexes, with connecting maps of degrees -p and -(N-p).
inline ExactnessReport les_check(const ShortExactSequence& s, int p) {
  validate_ses(s);
  const auto& C1 = s.u.source();
  const auto& C = s.u.target();
  const auto& C2 = s.v.target();
  const int N = C.N();
  if (p < 1 || p > N - 1) throw error(errc::out_of_range, "p outside 1..N-1");
  HomologyEngine e1(C1), e(C), e2(C2);
  HomologyEngine* eng[3] = {&e1, &e, &e2};
  // nodes: (complex index, flavour, degree offset)
  struct Node { int cx, flavour, offset; };
  const Node nodes[7] = {{0, p, 0},          {1, p, 0},          {2, p, 0},      {0, N - p, -p},
                         {1, N - p, -p}, {2, N - p, -p}, {0, p, -N}};
  auto arrow = [&](int k, int base) -> std::optional<FMatrix> {
    const Node a = nodes[k], b = nodes[k + 1];
    const int na = base + a.offset, nb = base + b.offset;
    if (!eng[a.cx]->safe(a.flavour, na) || !eng[b.cx]->safe(b.flavour, nb)) return std::nullopt;
    if (k == 2) return detail::connecting_map(s, e1, e, e2, p, na);
    if (k == 5) return detail::connecting_map(s, e1, e, e2, N - p, na);
    const auto& m = a.cx == 0 ? s.u : s.v;
    return induced(eng[a.cx]->cell(a.flavour, na), eng[b.cx]->cell(b.flavour, nb), m.at(na));
  };
  const int lo = std::min({C1.lo(), C.lo(), C2.lo()});
  const int hi = std::max({C1.hi(), C.hi(), C2.hi()});
  ExactnessReport rep;
  for (int base = lo; base <= hi + N; ++base) {
    for (int k = 0; k < 6; ++k) {
      auto in = arrow(k, base);
      auto out = k + 1 < 6 ? arrow(k + 1, base) : arrow(0, base - N);
      if (!in || !out) continue;
      const Node x = nodes[k + 1];
      rep.record(exact_at(*in, *out),
                 std::string(x.cx == 0 ? "C'" : x.cx == 1 ? "C" : "C''") + ":" +
                     detail::node_name(x.flavour, base + x.offset));
    }
  }
  return rep;
}

/// f_* = g_* on _pH_n.
inline bool induced_equal(const NComplexMorphism& f, const NComplexMorphism& g, int p, int n) {
  HomologyEngine es(f.source()), et(f.target());
  const auto& a = es.cell(p, n);
  const auto& b = et.cell(p, n);
  return induced(a, b, f.at(n)) == induced(a, b, g.at(n));
}

}  // namespace qhh
