#pragma once

// The Hochschild simplicial module, its q-weighted N-complex, a classical
// Hochschild oracle, the bar N-resolution over the enveloping algebra and the
// comparison between the two.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhh/algebra.hpp"
#include "qhh/homology.hpp"
#include "qhh/resolution.hpp"
#include "qhh/simplicial.hpp"
#include "qhh/tensor.hpp"

namespace qhh {

inline constexpr std::size_t default_dimension_cap = 20000;

namespace detail {

inline std::size_t ipow(std::size_t d, std::size_t m) {
  std::size_t x = 1;
  while (m--) x *= d;
  return x;
}

/// A^{(x)m} -> A^{(x)(m-1)}, multiplying factors pos and pos+1.
inline FMatrix adjacent_product(const FinDimAlgebra& a, std::size_t m, std::size_t pos) {
  const std::size_t d = a.dim(), total = ipow(d, m);
  const std::size_t low = ipow(d, m - pos - 2);
  FMatrix f(total / d, total, a.modulus());
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t lo = x % low, v = (x / low) % d, u = (x / low / d) % d, hi = x / low / d / d;
    for (const auto& t : a.product(u, v)) f.add_to((hi * d + t.k) * low + lo, x, t.c);
  }
  return f;
}

/// A^{(x)m} -> A^{(x)(m-1)}: a_0 (x) ... (x) a_{m-1} -> a_{m-1} a_0 (x) a_1 (x) ... (x) a_{m-2}.
inline FMatrix cyclic_product(const FinDimAlgebra& a, std::size_t m) {
  const std::size_t d = a.dim(), total = ipow(d, m), mid = ipow(d, m - 2);
  FMatrix f(total / d, total, a.modulus());
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t last = x % d, middle = (x / d) % mid, first = x / d / mid;
    for (const auto& t : a.product(last, first)) f.add_to(t.k * mid + middle, x, t.c);
  }
  return f;
}

/// A^{(x)m} -> A^{(x)(m+1)} inserting the unit as the new factor number pos.
inline FMatrix insert_unit(const FinDimAlgebra& a, std::size_t m, std::size_t pos) {
  const std::size_t d = a.dim(), total = ipow(d, m), low = ipow(d, m - pos);
  FMatrix f(total * d, total, a.modulus());
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t lo = x % low, hi = x / low;
    for (std::size_t k = 0; k < d; ++k)
      if (a.unit()[k] != 0) f.set((hi * d + k) * low + lo, x, a.unit()[k]);
  }
  return f;
}

inline std::vector<std::size_t> tensor_dims(const FinDimAlgebra& a, int top, std::size_t cap) {
  std::vector<std::size_t> dims;
  for (int n = 0; n <= top; ++n) dims.push_back(checked_power(a.dim(), static_cast<std::size_t>(n + 1), cap));
  return dims;
}

inline std::vector<std::vector<FMatrix>> unit_insertions(const FinDimAlgebra& a, int top) {
  std::vector<std::vector<FMatrix>> degens;
  for (int n = 0; n < top; ++n) {
    degens.emplace_back();
    for (int j = 0; j <= n; ++j)
      degens.back().push_back(insert_unit(a, static_cast<std::size_t>(n + 1), static_cast<std::size_t>(j + 1)));
  }
  return degens;
}

}  // namespace detail

/// C_n(A) = A^{(x)(n+1)} for n <= n_max with the adjacent-product faces, the
/// cyclic last face and unit insertions as degeneracies.
inline SimplicialModule hochschild_simplicial(const FinDimAlgebra& a, int n_max, bool with_degeneracies = true,
                                              std::size_t cap = default_dimension_cap) {
  if (n_max < 0) throw error(errc::out_of_range, "n_max must be nonnegative");
  auto dims = detail::tensor_dims(a, n_max, cap);
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) {
    const auto m = static_cast<std::size_t>(n + 1);
    for (int i = 0; i < n; ++i) faces[static_cast<std::size_t>(n)].push_back(detail::adjacent_product(a, m, static_cast<std::size_t>(i)));
    faces[static_cast<std::size_t>(n)].push_back(detail::cyclic_product(a, m));
  }
  auto degens = with_degeneracies ? detail::unit_insertions(a, n_max) : std::vector<std::vector<FMatrix>>{};
  return {a.modulus(), std::move(dims), std::move(faces), std::move(degens), true};
}

/// The same tensor powers without the cyclic face: S_m = A^{(x)(m+1)} with
/// faces d_0..d_{m-1}. Shifted down by one this is the bar resolution of A.
inline SimplicialModule bar_simplicial(const FinDimAlgebra& a, int top, bool with_degeneracies = true,
                                       std::size_t cap = default_dimension_cap) {
  auto dims = detail::tensor_dims(a, top, cap);
  std::vector<std::vector<FMatrix>> faces(static_cast<std::size_t>(top) + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i < n; ++i)
      faces[static_cast<std::size_t>(n)].push_back(
          detail::adjacent_product(a, static_cast<std::size_t>(n + 1), static_cast<std::size_t>(i)));
  auto degens = with_degeneracies ? detail::unit_insertions(a, top) : std::vector<std::vector<FMatrix>>{};
  return {a.modulus(), std::move(dims), std::move(faces), std::move(degens), false};
}

/// (C(A), b) with b = sum_{i=0}^n q^i d_i.
inline NComplex hochschild_ncomplex(const FinDimAlgebra& a, const QContext& ctx, int n_max,
                                    std::size_t cap = default_dimension_cap) {
  if (ctx.p() != a.modulus()) throw error(errc::modulus_mismatch, "algebra and context over different fields");
  return q_differential(hochschild_simplicial(a, n_max, false, cap), ctx, DifferentialSpec::full());
}

/// dim _pHH_n(A), computed on a window just large enough for (p, n).
inline std::size_t phh(const FinDimAlgebra& a, const QContext& ctx, int p, int n, int n_max = -1) {
  if (n_max < 0) n_max = n + ctx.N() - p;
  return homology_dim(hochschild_ncomplex(a, ctx, n_max), p, n);
}

/// dim HH_n(A) from the alternating-sign Hochschild complex, built tuple by
/// tuple from the multiplication map.
inline std::size_t classical_hh(const FinDimAlgebra& a, int n, std::size_t cap = default_dimension_cap) {
  if (n < 0) throw error(errc::out_of_range, "negative Hochschild degree");
  const fp::elem p = a.modulus();
  const std::size_t d = a.dim();
  auto boundary = [&](int m) {  // b: C_m -> C_{m-1}
    const auto sm = static_cast<std::size_t>(m);
    TensorBasis src(d, sm + 1), dst(d, sm);
    checked_power(d, sm + 1, cap);
    FMatrix b(dst.size(), src.size(), p);
    for (std::size_t x = 0; x < src.size(); ++x) {
      const auto t = src.multi(x);
      for (std::size_t i = 0; i <= sm; ++i) {
        const fp::elem sign = i % 2 ? p - 1 : 1;
        const std::size_t l = i == sm ? sm : i, r = i == sm ? 0 : i + 1;
        const auto prod = a.multiply(a.basis_vector(t[l]), a.basis_vector(t[r]));
        for (std::size_t k = 0; k < d; ++k) {
          if (prod[k] == 0) continue;
          std::vector<std::size_t> out;
          if (i == sm) {
            out.push_back(k);
            out.insert(out.end(), t.begin() + 1, t.end() - 1);
          } else {
            out.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(k);
            out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end());
          }
          b.add_to(dst.index(out), x, fp::mul(sign, prod[k], p));
        }
      }
    }
    return b;
  };
  const std::size_t dim_n = checked_power(d, static_cast<std::size_t>(n) + 1, cap);
  const std::size_t out_rank = n == 0 ? 0 : rank(boundary(n));
  const std::size_t in_rank = rank(boundary(n + 1));
  return dim_n - out_rank - in_rank;
}

/// Which case of the reindexing applies at (p, n) and the classical degree it names.
enum class Branch { congruent_p, congruent_zero, zero };

inline std::string to_string(Branch b) {
  switch (b) {
    case Branch::congruent_p: return "n+1=p";
    case Branch::congruent_zero: return "n+1=0";
    case Branch::zero: return "zero";
  }
  return "?";
}

struct BranchInfo {
  Branch branch = Branch::zero;
  int index = -1;  // classical degree, -1 on the zero branch
};

/// n+1 = p mod N gives 2(n-p+1)/N, n+1 = 0 mod N gives (2n+2-N)/N, otherwise zero.
inline BranchInfo reindex(int N, int p, int n) {
  const int r = ((n + 1) % N + N) % N;
  if (r == ((p % N) + N) % N) return {Branch::congruent_p, 2 * (n - p + 1) / N};
  if (r == 0) return {Branch::congruent_zero, (2 * n + 2 - N) / N};
  return {};
}

/// One compared cell of a reindexing check.
struct ReindexCell {
  int p = 0;
  int n = 0;
  std::size_t lhs = 0;
  BranchInfo branch;
  std::size_t rhs = 0;
  std::optional<std::size_t> rhs_alt;  // second oracle, when one is run
  bool pass = false;
};

struct ReindexReport {
  std::string name;
  std::vector<ReindexCell> cells;
  bool all_pass() const {
    for (const auto& c : cells)
      if (!c.pass) return false;
    return !cells.empty();
  }
};

/// Compares every safe _pHH_n with the classical Hochschild group the
/// reindexing names.
inline ReindexReport theorem1_check(const FinDimAlgebra& a, const QContext& ctx, int n_max) {
  if (!ctx.is_h1()) throw error(errc::h1_required, "the comparison needs an H1 context");
  const auto c = hochschild_ncomplex(a, ctx, n_max);
  HomologyEngine eng(c);
  std::map<int, std::size_t> classical;
  ReindexReport rep{"theorem1", {}};
  for (int p = 1; p < ctx.N(); ++p)
    for (int n = 0; n <= n_max; ++n) {
      if (!eng.safe(p, n)) continue;
      ReindexCell cell{p, n, eng.dim(p, n), reindex(ctx.N(), p, n), 0, std::nullopt, false};
      if (cell.branch.branch != Branch::zero) {
        auto it = classical.find(cell.branch.index);
        if (it == classical.end()) it = classical.emplace(cell.branch.index, classical_hh(a, cell.branch.index)).first;
        cell.rhs = it->second;
      }
      cell.pass = cell.lhs == cell.rhs;
      rep.cells.push_back(cell);
    }
  return rep;
}

/// The bar N-resolution of A over B = A (x) A^o together with the
/// contracting homotopy that certifies it.
struct BarResolution {
  AlgebraPtr envelope;
  NResolution resolution;
  ContractingHomotopy contraction;  // on the unshifted simplicial complex
};

namespace detail {

inline FMatrix outer_action(const FinDimAlgebra& a, std::size_t i, std::size_t j, std::size_t middle_factors) {
  const auto I = FMatrix::identity(ipow(a.dim(), middle_factors), a.modulus());
  return kron(kron(a.left_mult(i), I), a.right_mult(j));
}

}  // namespace detail

/// P_n = A^{(x)(n+2)} for 0 <= n <= n_max, d' = sum_{i<=n} q^i (adjacent
/// products), epsilon the multiplication, B acting on the outer factors.
inline BarResolution bar_nresolution(const FinDimAlgebra& a, const QContext& ctx, int n_max,
                                     std::size_t cap = default_dimension_cap) {
  if (ctx.p() != a.modulus()) throw error(errc::modulus_mismatch, "algebra and context over different fields");
  const std::size_t d = a.dim();
  const std::size_t top_dim = checked_power(d, static_cast<std::size_t>(n_max) + 2, cap);
  if (d * d * top_dim * top_dim > 40'000'000)
    throw error(errc::resource_bound, "outer action matrices of the bar resolution exceed the storage cap");
  auto env = std::make_shared<const FinDimAlgebra>(envelope(a));
  const auto sm = bar_simplicial(a, n_max + 1, true, cap);
  auto contraction = contracting_homotopy_sigma(sm, ctx);
  auto complex = std::make_shared<const NComplex>(shift(*contraction.complex, -1));
  NResolution r{complex, {}, {}};
  for (int n = -1; n <= n_max; ++n) {
    std::vector<FMatrix> act;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        act.push_back(n < 0 ? matmul(a.left_mult(i), a.right_mult(j))
                            : detail::outer_action(a, i, j, static_cast<std::size_t>(n)));
    r.modules.emplace_back(env, Side::left, complex->dim(n), std::move(act), n < 0 ? "A" : "P", false);
    if (n >= 0) {
      const auto u = column_vector(a.unit(), a.modulus());
      r.generators.push_back(
          kron(kron(u, FMatrix::identity(detail::ipow(d, static_cast<std::size_t>(n)), a.modulus())), u));
    }
  }
  return {env, std::move(r), std::move(contraction)};
}

/// A as a right B-module: a (x.y) = y a x for x (x) y in B.
inline FDModule envelope_right_module(const FinDimAlgebra& a, AlgebraPtr env) {
  std::vector<FMatrix> act;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) act.push_back(matmul(a.left_mult(j), a.right_mult(i)));
  return {std::move(env), Side::right, a.dim(), std::move(act), "A"};
}

/// Per-degree result of comparing A (x)_B P with the Hochschild complex.
struct IdentificationDegree {
  int n = 0;
  std::size_t tensor_dim = 0;
  bool relations_killed = false;  // psi vanishes on the coequalizer relations
  bool bijective = false;         // psi induces an isomorphism onto A^{(x)(n+1)}
  bool differential_match = true; // transported differential equals b
};

struct IdentificationReport {
  std::vector<IdentificationDegree> degrees;
  bool ok() const {
    for (const auto& g : degrees)
      if (!g.relations_killed || !g.bijective || !g.differential_match) return false;
    return !degrees.empty();
  }
};

/// Builds A (x)_B P from the bar resolution as a coequalizer, maps it to the
/// Hochschild complex by a (x) (a_0 (x) v (x) a_{n+1}) -> a_{n+1} a a_0 (x) v
/// and compares differentials.
inline IdentificationReport identify_phh_tor(const FinDimAlgebra& a, const QContext& ctx, int n_max) {
  const auto bar = bar_nresolution(a, ctx, n_max);
  const auto arm = envelope_right_module(a, bar.envelope);
  const auto tc = tensor_resolution(bar.resolution, arm);
  const auto hh = hochschild_ncomplex(a, ctx, n_max);
  const std::size_t d = a.dim();
  const fp::elem p = a.modulus();
  IdentificationReport rep;
  std::vector<FMatrix> iso;
  for (int n = 0; n <= n_max; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const std::size_t dp = bar.resolution.module(n).dim(), mid = detail::ipow(d, un);
    FMatrix psi(detail::ipow(d, un + 1), d * dp, p);
    for (std::size_t x = 0; x < d * dp; ++x) {
      const std::size_t ax = x / dp, rest = x % dp;
      const std::size_t last = rest % d, v = (rest / d) % mid, first = rest / d / mid;
      for (const auto& t1 : a.product(ax, first))
        for (const auto& t2 : a.product(last, t1.k)) psi.add_to(t2.k * mid + v, x, fp::mul(t1.c, t2.c, p));
    }
    const auto& level = tc.levels[un];
    IdentificationDegree g;
    g.n = n;
    g.tensor_dim = level.dim();
    g.relations_killed = matmul(psi, tensor_relations(arm, bar.resolution.module(n))).is_zero();
    iso.push_back(matmul(psi, level.representatives()));
    g.bijective = level.dim() == psi.rows() && is_invertible(iso.back());
    if (n > 0 && g.bijective && rep.degrees.back().bijective) {
      const auto transported = matmul(iso[un - 1], matmul(tc.complex->diff(n), inverse(iso[un])));
      g.differential_match = transported == hh.diff(n);
    } else if (n > 0) {
      g.differential_match = false;
    }
    rep.degrees.push_back(g);
  }
  return rep;
}

}  // namespace qhh
