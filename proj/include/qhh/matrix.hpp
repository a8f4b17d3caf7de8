#pragma once

// Dense matrices over F_p with exact Gaussian elimination.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qhh/error.hpp"
#include "qhh/fp.hpp"

namespace qhh {

class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(std::size_t rows, std::size_t cols, fp::elem modulus)
      : rows_(rows), cols_(cols), p_(modulus), data_(rows * cols, 0) {
    if (modulus < 2 || modulus > fp::max_modulus)
      throw error(errc::out_of_range, "modulus " + std::to_string(modulus));
  }
  FMatrix(std::size_t rows, std::size_t cols, fp::elem modulus, std::vector<fp::elem> entries)
      : FMatrix(rows, cols, modulus) {
    if (entries.size() != rows * cols)
      throw error(errc::shape_mismatch, "entry count " + std::to_string(entries.size()) + " for " +
                                            std::to_string(rows) + "x" + std::to_string(cols));
    for (auto& e : entries)
      if (e >= modulus) throw error(errc::out_of_range, "entry not reduced mod p");
    data_ = std::move(entries);
  }

  static FMatrix zero(std::size_t rows, std::size_t cols, fp::elem p) { return {rows, cols, p}; }
  static FMatrix identity(std::size_t n, fp::elem p) {
    FMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }
  /// Build from signed integers, reducing mod p.
  static FMatrix from_ints(std::size_t rows, std::size_t cols, fp::elem p,
                           const std::vector<std::int64_t>& values) {
    if (values.size() != rows * cols) throw error(errc::shape_mismatch, "from_ints entry count");
    FMatrix m(rows, cols, p);
    for (std::size_t k = 0; k < values.size(); ++k) m.data_[k] = fp::reduce(values[k], p);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  fp::elem modulus() const noexcept { return p_; }

  fp::elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, fp::elem v) noexcept { data_[r * cols_ + c] = v % p_; }
  void add_to(std::size_t r, std::size_t c, fp::elem v) noexcept {
    auto& e = data_[r * cols_ + c];
    e = fp::add(e, v % p_, p_);
  }

  std::span<const fp::elem> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<fp::elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  const std::vector<fp::elem>& entries() const noexcept { return data_; }

  std::vector<fp::elem> column(std::size_t c) const {
    std::vector<fp::elem> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](fp::elem e) { return e == 0; });
  }

  friend bool operator==(const FMatrix&, const FMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  fp::elem p_ = 2;
  std::vector<fp::elem> data_;
};

namespace detail {

inline void require_same_modulus(const FMatrix& a, const FMatrix& b) {
  if (a.modulus() != b.modulus())
    throw error(errc::modulus_mismatch,
                std::to_string(a.modulus()) + " vs " + std::to_string(b.modulus()));
}

inline std::string shape(const FMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace detail

inline FMatrix matmul(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  if (a.cols() != b.rows())
    throw error(errc::shape_mismatch, detail::shape(a) + " * " + detail::shape(b));
  const fp::elem p = a.modulus();
  FMatrix out(a.rows(), b.cols(), p);
  const std::uint64_t sq = static_cast<std::uint64_t>(p - 1) * (p - 1);
  // number of products that can be accumulated before a reduction is needed
  const std::uint64_t budget = sq == 0 ? ~std::uint64_t{0} : (~std::uint64_t{0} - p) / sq;
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t pending = 0;
    auto arow = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = arow[k];
      if (aik == 0) continue;
      if (++pending > budget) {
        for (auto& x : acc) x %= p;
        pending = 1;
      }
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += aik * brow[j];
    }
    auto orow = out.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) orow[j] = static_cast<fp::elem>(acc[j] % p);
  }
  return out;
}

inline FMatrix operator*(const FMatrix& a, const FMatrix& b) { return matmul(a, b); }

inline FMatrix add(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw error(errc::shape_mismatch, detail::shape(a) + " + " + detail::shape(b));
  FMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto o = out.row(r);
    auto br = b.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) o[c] = fp::add(o[c], br[c], a.modulus());
  }
  return out;
}

inline FMatrix scaled(const FMatrix& a, fp::elem s) {
  FMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (auto& e : out.row(r)) e = fp::mul(e, s, a.modulus());
  return out;
}

inline FMatrix sub(const FMatrix& a, const FMatrix& b) {
  return add(a, scaled(b, fp::neg(1, b.modulus())));
}

inline FMatrix operator+(const FMatrix& a, const FMatrix& b) { return add(a, b); }
inline FMatrix operator-(const FMatrix& a, const FMatrix& b) { return sub(a, b); }

inline FMatrix transpose(const FMatrix& a) {
  FMatrix t(a.cols(), a.rows(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t.set(c, r, a(r, c));
  return t;
}

inline FMatrix hstack(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  if (a.rows() != b.rows()) throw error(errc::shape_mismatch, "hstack row count");
  FMatrix out(a.rows(), a.cols() + b.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto o = out.row(r);
    std::copy(a.row(r).begin(), a.row(r).end(), o.begin());
    std::copy(b.row(r).begin(), b.row(r).end(), o.begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  return out;
}

inline FMatrix vstack(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  if (a.cols() != b.cols()) throw error(errc::shape_mismatch, "vstack column count");
  FMatrix out(a.rows() + b.rows(), a.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) std::copy(a.row(r).begin(), a.row(r).end(), out.row(r).begin());
  for (std::size_t r = 0; r < b.rows(); ++r)
    std::copy(b.row(r).begin(), b.row(r).end(), out.row(a.rows() + r).begin());
  return out;
}

/// Columns [first, first + count).
inline FMatrix column_block(const FMatrix& a, std::size_t first, std::size_t count) {
  FMatrix out(a.rows(), count, a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < count; ++c) out.set(r, c, a(r, first + c));
  return out;
}

/// Rows [first, first + count).
inline FMatrix row_block(const FMatrix& a, std::size_t first, std::size_t count) {
  FMatrix out(count, a.cols(), a.modulus());
  for (std::size_t r = 0; r < count; ++r)
    std::copy(a.row(first + r).begin(), a.row(first + r).end(), out.row(r).begin());
  return out;
}

/// Block-diagonal sum.
inline FMatrix direct_sum(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  FMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(a.rows() + r, a.cols() + c, b(r, c));
  return out;
}

/// Kronecker product; index (i, j) of the result is i = ia * b.rows() + ib.
inline FMatrix kron(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  const fp::elem p = a.modulus();
  FMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), p);
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const fp::elem x = a(ia, ja);
      if (x == 0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out.set(ia * b.rows() + ib, ja * b.cols() + jb, fp::mul(x, b(ib, jb), p));
    }
  return out;
}

inline FMatrix column_vector(const std::vector<fp::elem>& v, fp::elem p) {
  FMatrix m(v.size(), 1, p);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

/// Result of in-place reduction to reduced row echelon form.
struct Echelon {
  FMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form. Only the first `limit_cols` columns are used to
/// choose pivots; the remaining columns ride along (augmented systems).
inline Echelon rref(FMatrix m, std::size_t limit_cols) {
  const fp::elem p = m.modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  limit_cols = std::min(limit_cols, cols);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit_cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r) {
      auto a = m.row(sel), b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(r);
    const fp::elem inv = fp::inv(prow[c], p);
    if (inv != 1)
      for (std::size_t j = c; j < cols; ++j) prow[j] = fp::mul(prow[j], inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto irow = m.row(i);
      const fp::elem f = irow[c];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] == 0) continue;
        irow[j] = static_cast<fp::elem>((irow[j] + nf * prow[j]) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline Echelon rref(FMatrix m) {
  const auto c = m.cols();
  return rref(std::move(m), c);
}

inline std::size_t rank(const FMatrix& m) {
  // eliminate along the shorter side
  if (m.rows() > m.cols()) return rref(transpose(m)).rank();
  return rref(m).rank();
}

/// Some X with A X = B (free variables set to zero), or nullopt if inconsistent.
inline std::optional<FMatrix> solve(const FMatrix& a, const FMatrix& b) {
  detail::require_same_modulus(a, b);
  if (a.rows() != b.rows())
    throw error(errc::shape_mismatch, "solve: " + detail::shape(a) + " vs rhs " + detail::shape(b));
  const fp::elem p = a.modulus();
  auto ech = rref(hstack(a, b), a.cols());
  const auto& red = ech.reduced;
  for (std::size_t i = ech.rank(); i < red.rows(); ++i)
    for (std::size_t j = a.cols(); j < red.cols(); ++j)
      if (red(i, j) != 0) return std::nullopt;
  FMatrix x(a.cols(), b.cols(), p);
  for (std::size_t i = 0; i < ech.rank(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(ech.pivots[i], j, red(i, a.cols() + j));
  return x;
}

inline bool is_invertible(const FMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

inline FMatrix inverse(const FMatrix& m) {
  if (m.rows() != m.cols()) throw error(errc::shape_mismatch, "inverse of non-square matrix");
  auto x = solve(m, FMatrix::identity(m.rows(), m.modulus()));
  if (!x || !(matmul(m, *x) == FMatrix::identity(m.rows(), m.modulus())))
    throw error(errc::out_of_range, "matrix is singular");
  return *x;
}

template <class Rng>
FMatrix random_matrix(std::size_t rows, std::size_t cols, fp::elem p, Rng& rng) {
  std::uniform_int_distribution<fp::elem> dist(0, p - 1);
  FMatrix m(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r)
    for (auto& e : m.row(r)) e = dist(rng);
  return m;
}

template <class Rng>
FMatrix random_invertible(std::size_t n, fp::elem p, Rng& rng) {
  for (;;) {
    auto m = random_matrix(n, n, p, rng);
    if (is_invertible(m)) return m;
  }
}

}  // namespace qhh
