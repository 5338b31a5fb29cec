#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaffcheck/errors.hpp"
#include "pfaffcheck/multipoly.hpp"
#include "pfaffcheck/rational.hpp"

namespace pfaffcheck {

/// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw dimension_mismatch("entry count does not match shape");
  }
  RatMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw dimension_mismatch("ragged initializer");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Rational>& data() const noexcept { return data_; }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product shape mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_mismatch("matrix sum shape mismatch");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_mismatch("matrix difference shape mismatch");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    if (x.size() != cols_) throw dimension_mismatch("matrix-vector shape mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

/// cols - rank.
inline std::size_t kernel_dim(const RatMatrix& a) { return a.cols() - rank(a); }

/// Basis of the right null space.
inline std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& a) {
  RatMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

struct SolveResult {
  enum class Kind { unique, parametric, inconsistent };
  Kind kind = Kind::inconsistent;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};

/// Exact Gaussian elimination for A x = b.
inline SolveResult linear_solve(const RatMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw dimension_mismatch("right-hand side length does not match rows");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  SolveResult out;
  if (!pivots.empty() && pivots.back() == a.cols()) return out;
  out.particular.assign(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = aug(i, a.cols());
  out.kernel = kernel_basis(a);
  out.kind = out.kernel.empty() ? SolveResult::Kind::unique : SolveResult::Kind::parametric;
  return out;
}

/// Determinant over Q by elimination.
inline Rational rational_det(const RatMatrix& a) {
  if (!a.is_square()) throw not_square("determinant of non-square matrix");
  RatMatrix m = a;
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rational inv = 1 / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inverse over Q; throws singular_system when det = 0.
inline RatMatrix rational_inverse(const RatMatrix& a) {
  if (!a.is_square()) throw not_square("inverse of non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw singular_system("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Matrix of polynomials over one shared context.
class PolyMatrix {
 public:
  PolyMatrix(ContextPtr ctx, std::size_t rows, std::size_t cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols, MultiPoly(ctx_)) {}

  PolyMatrix(ContextPtr ctx, std::size_t rows, std::size_t cols, std::vector<MultiPoly> entries)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    if (entries.size() != rows * cols) throw dimension_mismatch("entry count does not match shape");
    data_.reserve(entries.size());
    for (auto& e : entries) data_.push_back(e.rebase(ctx_));
  }

  static PolyMatrix identity(ContextPtr ctx, std::size_t n) {
    PolyMatrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, MultiPoly::constant(ctx, 1));
    return m;
  }

  static PolyMatrix from_rational(ContextPtr ctx, const RatMatrix& r) {
    PolyMatrix m(ctx, r.rows(), r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) m.set(i, j, MultiPoly::constant(ctx, r(i, j)));
    return m;
  }

  static PolyMatrix diagonal(ContextPtr ctx, const std::vector<MultiPoly>& diag) {
    PolyMatrix m(ctx, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const MultiPoly& v) { data_[i * cols_ + j] = v.rebase(ctx_); }
  const std::vector<MultiPoly>& entries() const noexcept { return data_; }

  PolyMatrix rebase(const ContextPtr& ctx) const { return PolyMatrix(ctx, rows_, cols_, data_); }

  PolyMatrix transpose() const {
    PolyMatrix t(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    check_same_shape(a, b);
    PolyMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i].rebase(a.ctx_);
    return c;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    check_same_shape(a, b);
    PolyMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i].rebase(a.ctx_);
    return c;
  }
  PolyMatrix operator-() const {
    PolyMatrix c = *this;
    for (auto& e : c.data_) e = -e;
    return c;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product shape mismatch");
    PolyMatrix c(a.ctx_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        MultiPoly s(a.ctx_);
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
          s += a(i, k) * b(k, j);
        }
        c.data_[i * c.cols_ + j] = s.rebase(a.ctx_);
      }
    return c;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const Rational& s) {
    PolyMatrix c = a;
    for (auto& e : c.data_) e = e * s;
    return c;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (a.data_[i] != b.data_[i]) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  MultiPoly trace() const {
    if (!is_square()) throw not_square("trace of non-square matrix");
    MultiPoly t(ctx_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_numeric() const {
    for (const auto& e : data_)
      if (!e.is_constant()) return false;
    return true;
  }

  RatMatrix to_rational() const {
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).constant_value();
    return r;
  }

  PolyMatrix substitute(const std::map<std::string, MultiPoly>& images, const ContextPtr& target) const {
    PolyMatrix m(target, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].substitute(images, target);
    return m;
  }

  RatMatrix evaluate(const std::map<std::string, Rational>& point) const {
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).eval(point);
    return r;
  }

  /// Nested bracket lists of canonical polynomial text.
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  ContextPtr ctx_;
  std::size_t rows_, cols_;
  std::vector<MultiPoly> data_;

  static void check_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_mismatch("matrix shape mismatch");
  }
};

/// Determinant by fraction-free (Bareiss) elimination. Each step divides
/// exactly by the previous pivot; a failed division is an internal error.
inline MultiPoly poly_det(const PolyMatrix& m) {
  if (!m.is_square()) throw not_square("determinant of " + std::to_string(m.rows()) + "x" +
                                       std::to_string(m.cols()) + " matrix");
  const std::size_t n = m.rows();
  const auto& ctx = m.context();
  if (n == 0) return MultiPoly::constant(ctx, 1);
  std::vector<MultiPoly> a = m.entries();
  auto at = [&](std::size_t i, std::size_t j) -> MultiPoly& { return a[i * n + j]; };
  MultiPoly prev = MultiPoly::constant(ctx, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && at(p, k).is_zero()) ++p;
      if (p == n) return MultiPoly(ctx);
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        if (prev.is_constant()) {
          at(i, j) = num * (1 / prev.constant_value());
        } else {
          auto q = num.divide_exact(prev);
          if (!q) throw internal_error("Bareiss step: inexact division");
          at(i, j) = std::move(*q);
        }
      }
      at(i, k) = MultiPoly(ctx);
    }
    prev = at(k, k);
  }
  MultiPoly d = at(n - 1, n - 1);
  return negate ? -d : d;
}

}  // namespace pfaffcheck
