#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfaffcheck/errors.hpp"
#include "pfaffcheck/matrix.hpp"
#include "pfaffcheck/multipoly.hpp"
#include "pfaffcheck/random.hpp"
#include "pfaffcheck/symfun.hpp"

namespace pfaffcheck {

enum class CaseKind { Diagonal, FriedbergJacquet, OddGL, RankinSelberg, JacquetIchino, GrossPrasadEven };

struct CaseTag {
  CaseKind kind = CaseKind::Diagonal;
  unsigned n = 1;

  CaseTag() = default;
  CaseTag(CaseKind k, unsigned rank = 1) : kind(k), n(k == CaseKind::JacquetIchino ? 1 : rank) {
    if (n < 1) throw error("case rank must be at least 1");
  }

  /// CLI spelling.
  std::string name() const {
    switch (kind) {
      case CaseKind::Diagonal: return "diagonal";
      case CaseKind::FriedbergJacquet: return "friedberg-jacquet";
      case CaseKind::OddGL: return "odd-gl";
      case CaseKind::RankinSelberg: return "rankin-selberg";
      case CaseKind::JacquetIchino: return "jacquet-ichino";
      case CaseKind::GrossPrasadEven: return "gross-prasad";
    }
    return "?";
  }

  /// Human-readable group data, e.g. "GL_2 x GL_3 / GL_2".
  std::string describe() const {
    const std::string s = std::to_string(n), s1 = std::to_string(n + 1);
    switch (kind) {
      case CaseKind::Diagonal: return "GL_" + s + " x GL_" + s + " / GL_" + s;
      case CaseKind::FriedbergJacquet: return "GL_" + std::to_string(2 * n) + " / GL_" + s + " x GL_" + s;
      case CaseKind::OddGL: return "GL_" + std::to_string(2 * n + 1) + " / GL_" + s + " x GL_" + s1;
      case CaseKind::RankinSelberg: return "GL_" + s + " x GL_" + s1 + " / GL_" + s;
      case CaseKind::JacquetIchino: return "SL_2^3 / SL_2";
      case CaseKind::GrossPrasadEven:
        return "SO_" + std::to_string(2 * n) + " x SO_" + std::to_string(2 * n + 1) + " / SO_" + std::to_string(2 * n);
    }
    return "?";
  }

  bool takes_rank() const { return kind != CaseKind::JacquetIchino; }

  static std::optional<CaseKind> kind_from_name(const std::string& s) {
    static const std::map<std::string, CaseKind> table = {
        {"diagonal", CaseKind::Diagonal},         {"friedberg-jacquet", CaseKind::FriedbergJacquet},
        {"odd-gl", CaseKind::OddGL},              {"rankin-selberg", CaseKind::RankinSelberg},
        {"jacquet-ichino", CaseKind::JacquetIchino}, {"gross-prasad", CaseKind::GrossPrasadEven},
        {"ichino", CaseKind::JacquetIchino}};
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const CaseTag& o) const { return kind == o.kind && n == o.n; }
};

inline ContextPtr empty_context() {
  static const ContextPtr ctx = make_context({});
  return ctx;
}

// ---------------------------------------------------------------------------
// Matrix helpers.

inline PolyMatrix zero_matrix(const ContextPtr& ctx, std::size_t r, std::size_t c) { return PolyMatrix(ctx, r, c); }

/// Copies `src` into `dst` with top-left corner (r0, c0).
inline void place(PolyMatrix& dst, const PolyMatrix& src, std::size_t r0, std::size_t c0) {
  if (r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols()) throw dimension_mismatch("block does not fit");
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst.set(r0 + i, c0 + j, src(i, j));
}

inline PolyMatrix block(const PolyMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > m.rows() || c0 + cols > m.cols()) throw dimension_mismatch("block out of range");
  PolyMatrix out(m.context(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, m(r0 + i, c0 + j));
  return out;
}

/// Block matrix from a grid; every row of blocks must agree in height and
/// every column in width.
inline PolyMatrix assemble(const ContextPtr& ctx, const std::vector<std::vector<PolyMatrix>>& grid) {
  std::vector<std::size_t> heights, widths;
  for (const auto& row : grid) heights.push_back(row.empty() ? 0 : row[0].rows());
  if (!grid.empty())
    for (const auto& b : grid[0]) widths.push_back(b.cols());
  std::size_t total_r = 0, total_c = 0;
  for (auto h : heights) total_r += h;
  for (auto w : widths) total_c += w;
  PolyMatrix out(ctx, total_r, total_c);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != widths.size()) throw dimension_mismatch("ragged block grid");
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < grid[i].size(); ++j) {
      if (grid[i][j].rows() != heights[i] || grid[i][j].cols() != widths[j])
        throw dimension_mismatch("block sizes do not line up");
      place(out, grid[i][j].rebase(ctx), r0, c0);
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

inline PolyMatrix column(const ContextPtr& ctx, const std::vector<MultiPoly>& v) {
  PolyMatrix m(ctx, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

inline PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
  auto ctx = MultiPoly::common_context(a.context(), b.context());
  return assemble(ctx, {{a.rebase(ctx), zero_matrix(ctx, a.rows(), b.cols())},
                        {zero_matrix(ctx, b.rows(), a.cols()), b.rebase(ctx)}});
}

/// [a, b] = ab - ba.
inline PolyMatrix bracket(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// Characteristic coefficients, Kronecker constructions, Pfaffians.

/// c_1..c_N with det(tI - M) = t^N - c_1 t^(N-1) + c_2 t^(N-2) - ..., so that
/// c_i is the trace of the i-th exterior power. Faddeev-LeVerrier.
inline std::vector<MultiPoly> charpoly_coeffs(const PolyMatrix& m) {
  if (!m.is_square()) throw not_square("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  const auto& ctx = m.context();
  std::vector<MultiPoly> c;
  // p_k: coefficients of det(tI - M) = sum p_k t^(n-k); c_k = (-1)^k p_k.
  PolyMatrix mk(ctx, n, n);
  MultiPoly p_prev = MultiPoly::constant(ctx, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk.set(i, i, mk(i, i) + p_prev);
    MultiPoly p = (m * mk).trace() * make_rational(-1, static_cast<long>(k));
    c.push_back(k % 2 ? -p : p);
    p_prev = p;
  }
  return c;
}

inline PolyMatrix kronecker_product(const PolyMatrix& a, const PolyMatrix& b) {
  auto ctx = MultiPoly::common_context(a.context(), b.context());
  PolyMatrix out(ctx, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out.set(i * b.rows() + k, j * b.cols() + l, a(i, j) * b(k, l));
    }
  return out;
}

/// x1 (x) I_m + I_n (x) x2.
inline PolyMatrix kronecker_sum(const PolyMatrix& x1, const PolyMatrix& x2) {
  if (!x1.is_square() || !x2.is_square()) throw not_square("Kronecker sum needs square inputs");
  auto ctx = MultiPoly::common_context(x1.context(), x2.context());
  return kronecker_product(x1.rebase(ctx), PolyMatrix::identity(ctx, x2.rows())) +
         kronecker_product(PolyMatrix::identity(ctx, x1.rows()), x2.rebase(ctx));
}

/// x1 (x) I (x) I + I (x) x2 (x) I + I (x) I (x) x3 for 2x2 inputs.
inline PolyMatrix kronecker_sum3(const PolyMatrix& x1, const PolyMatrix& x2, const PolyMatrix& x3) {
  for (const auto* x : {&x1, &x2, &x3})
    if (x->rows() != 2 || x->cols() != 2) throw dimension_mismatch("triple Kronecker sum needs 2x2 inputs");
  auto ctx = MultiPoly::common_context(MultiPoly::common_context(x1.context(), x2.context()), x3.context());
  auto i2 = PolyMatrix::identity(ctx, 2);
  return kronecker_product(kronecker_product(x1.rebase(ctx), i2), i2) +
         kronecker_product(kronecker_product(i2, x2.rebase(ctx)), i2) +
         kronecker_product(kronecker_product(i2, i2), x3.rebase(ctx));
}

/// Matrix of the symmetric bilinear form used for split orthogonal algebras:
/// [[0, I_n], [I_n, 0]], with a trailing 1 when `odd`.
inline RatMatrix split_form(unsigned n, bool odd = false) {
  RatMatrix s(2 * n + (odd ? 1 : 0), 2 * n + (odd ? 1 : 0));
  for (unsigned i = 0; i < n; ++i) {
    s(i, n + i) = 1;
    s(n + i, i) = 1;
  }
  if (odd) s(2 * n, 2 * n) = 1;
  return s;
}

/// [[0, I_n], [-I_n, 0]].
inline RatMatrix symplectic_form(unsigned n) {
  RatMatrix j(2 * n, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

/// True when M^t S + S M = 0.
inline bool preserves_form(const PolyMatrix& m, const RatMatrix& s) {
  auto sp = PolyMatrix::from_rational(m.context(), s);
  return (m.transpose() * sp + sp * m).is_zero();
}

enum class SkewForm { standard, split };

namespace detail {

inline MultiPoly pfaffian_rec(const std::vector<MultiPoly>& a, std::size_t n, std::vector<std::size_t>& idx,
                              const ContextPtr& ctx) {
  if (idx.empty()) return MultiPoly::constant(ctx, 1);
  std::size_t first = idx[0];
  MultiPoly sum(ctx);
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const MultiPoly& e = a[first * n + idx[k]];
    if (e.is_zero()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != k) rest.push_back(idx[t]);
    MultiPoly term = e * pfaffian_rec(a, n, rest, ctx);
    sum = (k % 2) ? sum + term : sum - term;
  }
  return sum;
}

}  // namespace detail

/// Pfaffian. For SkewForm::standard the input must satisfy M^t = -M and
/// Pf^2 = det M. For SkewForm::split the input must lie in the orthogonal
/// algebra of split_form(N/2); the Pfaffian of S M is returned, so that
/// Pf^2 = det(S) det(M) = (-1)^(N/2) det(M).
inline MultiPoly skew_pfaffian(const PolyMatrix& m, SkewForm form = SkewForm::standard) {
  if (!m.is_square()) throw not_square("Pfaffian of non-square matrix");
  if (m.rows() % 2) throw dimension_mismatch("Pfaffian of odd-size matrix");
  PolyMatrix k = m;
  if (form == SkewForm::split) {
    auto s = split_form(static_cast<unsigned>(m.rows() / 2));
    if (!preserves_form(m, s)) throw constraint_violation("split-orthogonal", "M^t S + S M != 0");
    k = PolyMatrix::from_rational(m.context(), s) * m;
  }
  if (!(k.transpose() == -k)) throw constraint_violation("skew", "matrix is not skew-symmetric");
  std::vector<std::size_t> idx(k.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return detail::pfaffian_rec(k.entries(), k.rows(), idx, k.context());
}

/// The representation S (+) S* of a Lie algebra element acting by M on S:
/// diag(M, -M^t).
inline PolyMatrix cotangent_matrix(const PolyMatrix& m) { return block_diagonal(m, -m.transpose()); }

// ---------------------------------------------------------------------------
// Points of h-perp.

struct HPerpPoint {
  CaseTag tag;
  /// x1, x2 (and x3 for Jacquet-Ichino). Friedberg-Jacquet and OddGL have a
  /// single component x = [[0, B], [C, 0]].
  std::vector<PolyMatrix> x;
  /// Structured parameters: "A", "B", "C", "u", "v", "d", "w", "a", "b", "c".
  std::map<std::string, PolyMatrix> params;

  const ContextPtr& context() const { return x.at(0).context(); }

  bool is_numeric() const {
    for (const auto& m : x)
      if (!m.is_numeric()) return false;
    return true;
  }

  const PolyMatrix& param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw error("point has no parameter '" + key + "'");
    return it->second;
  }
};

namespace detail {

inline void require_shape(const PolyMatrix& m, std::size_t r, std::size_t c, const std::string& what) {
  if (m.rows() != r || m.cols() != c)
    throw dimension_mismatch(what + " must be " + std::to_string(r) + "x" + std::to_string(c) + ", got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

inline void require_skew(const PolyMatrix& m, const std::string& what) {
  if (!(m.transpose() == -m)) throw constraint_violation("skew " + what, what + " must satisfy " + what + "^t = -" + what);
}

inline ContextPtr joint_context(const std::vector<const PolyMatrix*>& ms) {
  ContextPtr ctx = ms.at(0)->context();
  for (const auto* m : ms) ctx = MultiPoly::common_context(ctx, m->context());
  return ctx;
}

}  // namespace detail

/// Rankin-Selberg: x1 = -A, x2 = [[A, u], [v^t, d]].
inline HPerpPoint make_rankin_selberg(const PolyMatrix& a, const PolyMatrix& u, const PolyMatrix& v, const MultiPoly& d) {
  const std::size_t n = a.rows();
  detail::require_shape(a, n, n, "A");
  detail::require_shape(u, n, 1, "u");
  detail::require_shape(v, n, 1, "v");
  auto ctx = MultiPoly::common_context(detail::joint_context({&a, &u, &v}), d.context());
  PolyMatrix dm(ctx, 1, 1, {d});
  HPerpPoint pt;
  pt.tag = CaseTag(CaseKind::RankinSelberg, static_cast<unsigned>(n));
  pt.x = {-a.rebase(ctx), assemble(ctx, {{a, u}, {v.transpose(), dm}})};
  pt.params = {{"A", a.rebase(ctx)}, {"u", u.rebase(ctx)}, {"v", v.rebase(ctx)}, {"d", dm}};
  return pt;
}

/// Gross-Prasad even case: x1 = [[-A, -B], [-C, A^t]] in so_2n and
/// x2 = [[A, B, u], [C, -A^t, v], [-v^t, -u^t, 0]] in so_2n+1 (split forms).
inline HPerpPoint make_gross_prasad(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& u,
                                    const PolyMatrix& v) {
  const std::size_t n = a.rows();
  detail::require_shape(a, n, n, "A");
  detail::require_shape(b, n, n, "B");
  detail::require_shape(c, n, n, "C");
  detail::require_shape(u, n, 1, "u");
  detail::require_shape(v, n, 1, "v");
  detail::require_skew(b, "B");
  detail::require_skew(c, "C");
  auto ctx = detail::joint_context({&a, &b, &c, &u, &v});
  auto at = a.transpose();
  PolyMatrix z(ctx, 1, 1);
  HPerpPoint pt;
  pt.tag = CaseTag(CaseKind::GrossPrasadEven, static_cast<unsigned>(n));
  pt.x = {assemble(ctx, {{-a, -b}, {-c, at}}),
          assemble(ctx, {{a, b, u}, {c, -at, v}, {-v.transpose(), -u.transpose(), z}})};
  pt.params = {{"A", a.rebase(ctx)}, {"B", b.rebase(ctx)}, {"C", c.rebase(ctx)}, {"u", u.rebase(ctx)}, {"v", v.rebase(ctx)}};
  return pt;
}

/// Jacquet-Ichino: three traceless 2x2 matrices with x3 = -x1 - x2.
inline HPerpPoint make_jacquet_ichino(const PolyMatrix& x1, const PolyMatrix& x2) {
  detail::require_shape(x1, 2, 2, "x1");
  detail::require_shape(x2, 2, 2, "x2");
  if (!x1.trace().is_zero() || !x2.trace().is_zero()) throw constraint_violation("traceless", "x1 and x2 must lie in sl_2");
  auto ctx = detail::joint_context({&x1, &x2});
  HPerpPoint pt;
  pt.tag = CaseTag(CaseKind::JacquetIchino);
  pt.x = {x1.rebase(ctx), x2.rebase(ctx), -(x1.rebase(ctx) + x2)};
  return pt;
}

/// Normal form x1 = diag(w, -w), x2 = [[a, b], [c, -a]].
inline HPerpPoint make_jacquet_ichino(const MultiPoly& w, const MultiPoly& a, const MultiPoly& b, const MultiPoly& c) {
  auto ctx = MultiPoly::common_context(MultiPoly::common_context(w.context(), a.context()),
                                       MultiPoly::common_context(b.context(), c.context()));
  PolyMatrix x1(ctx, 2, 2, {w, MultiPoly(ctx), MultiPoly(ctx), -w});
  PolyMatrix x2(ctx, 2, 2, {a, b, c, -a});
  auto pt = make_jacquet_ichino(x1, x2);
  for (auto [k, val] : std::vector<std::pair<std::string, MultiPoly>>{{"w", w}, {"a", a}, {"b", b}, {"c", c}})
    pt.params.emplace(k, PolyMatrix(ctx, 1, 1, {val}));
  return pt;
}

/// x = [[0, B], [C, 0]] with B n x m, C m x n. m = n for Friedberg-Jacquet,
/// m = n + 1 for OddGL.
inline HPerpPoint make_off_diagonal(CaseKind kind, const PolyMatrix& b, const PolyMatrix& c) {
  const std::size_t n = b.rows(), m = b.cols();
  if (kind == CaseKind::FriedbergJacquet && m != n) throw dimension_mismatch("B must be square");
  if (kind == CaseKind::OddGL && m != n + 1) throw dimension_mismatch("B must be n x (n+1)");
  detail::require_shape(c, m, n, "C");
  auto ctx = detail::joint_context({&b, &c});
  HPerpPoint pt;
  pt.tag = CaseTag(kind, static_cast<unsigned>(n));
  pt.x = {assemble(ctx, {{zero_matrix(ctx, n, n), b}, {c, zero_matrix(ctx, m, m)}})};
  pt.params = {{"B", b.rebase(ctx)}, {"C", c.rebase(ctx)}};
  return pt;
}

/// Diagonal case: (x, -x).
inline HPerpPoint make_diagonal(const PolyMatrix& x) {
  if (!x.is_square()) throw not_square("x must be square");
  HPerpPoint pt;
  pt.tag = CaseTag(CaseKind::Diagonal, static_cast<unsigned>(x.rows()));
  pt.x = {x, -x};
  return pt;
}

/// Re-checks the structural constraints of a point, naming the first
/// violated invariant.
inline void validate_hperp(const HPerpPoint& pt) {
  const unsigned n = pt.tag.n;
  auto fail = [](const std::string& inv, const std::string& what) { throw constraint_violation(inv, what); };
  switch (pt.tag.kind) {
    case CaseKind::Diagonal:
      if (pt.x.size() != 2 || !(pt.x[0] + pt.x[1]).is_zero()) fail("x1 + x2 = 0", "components do not cancel");
      break;
    case CaseKind::RankinSelberg:
      if (pt.x.size() != 2) fail("component count", "need x1, x2");
      detail::require_shape(pt.x[0], n, n, "x1");
      detail::require_shape(pt.x[1], n + 1, n + 1, "x2");
      if (!(pt.x[0] + block(pt.x[1], 0, 0, n, n)).is_zero()) fail("block consistency", "x1 != -(top-left block of x2)");
      break;
    case CaseKind::GrossPrasadEven:
      if (pt.x.size() != 2) fail("component count", "need x1, x2");
      detail::require_shape(pt.x[0], 2 * n, 2 * n, "x1");
      detail::require_shape(pt.x[1], 2 * n + 1, 2 * n + 1, "x2");
      if (!preserves_form(pt.x[0], split_form(n))) fail("x1 in so_2n", "x1 does not preserve the split form");
      if (!preserves_form(pt.x[1], split_form(n, true))) fail("x2 in so_2n+1", "x2 does not preserve the split form");
      if (!(pt.x[0] + block(pt.x[1], 0, 0, 2 * n, 2 * n)).is_zero())
        fail("block consistency", "x1 != -(top-left block of x2)");
      break;
    case CaseKind::JacquetIchino:
      if (pt.x.size() != 3) fail("component count", "need x1, x2, x3");
      for (const auto& m : pt.x) {
        detail::require_shape(m, 2, 2, "x_j");
        if (!m.trace().is_zero()) fail("traceless", "component not in sl_2");
      }
      if (!(pt.x[0] + pt.x[1] + pt.x[2]).is_zero()) fail("x1 + x2 + x3 = 0", "components do not sum to zero");
      break;
    case CaseKind::FriedbergJacquet:
    case CaseKind::OddGL: {
      const std::size_t m = pt.tag.kind == CaseKind::OddGL ? n + 1 : n;
      if (pt.x.size() != 1) fail("component count", "need a single x");
      detail::require_shape(pt.x[0], n + m, n + m, "x");
      if (!block(pt.x[0], 0, 0, n, n).is_zero() || !block(pt.x[0], n, n, m, m).is_zero())
        fail("off-diagonal", "diagonal blocks of x must vanish");
      break;
    }
  }
}

/// Builds a point from named parameter matrices. Keys per case:
/// rankin-selberg A,u,v,d; gross-prasad A,B,C,u,v; jacquet-ichino x1,x2;
/// friedberg-jacquet and odd-gl B,C; diagonal x.
inline HPerpPoint build_hperp(const CaseTag& tag, const std::map<std::string, PolyMatrix>& p) {
  auto get = [&](const std::string& k) -> const PolyMatrix& {
    auto it = p.find(k);
    if (it == p.end()) throw error("missing parameter '" + k + "' for " + tag.name());
    return it->second;
  };
  HPerpPoint pt;
  switch (tag.kind) {
    case CaseKind::RankinSelberg: {
      const auto& d = get("d");
      detail::require_shape(d, 1, 1, "d");
      pt = make_rankin_selberg(get("A"), get("u"), get("v"), d(0, 0));
      break;
    }
    case CaseKind::GrossPrasadEven: pt = make_gross_prasad(get("A"), get("B"), get("C"), get("u"), get("v")); break;
    case CaseKind::JacquetIchino: pt = make_jacquet_ichino(get("x1"), get("x2")); break;
    case CaseKind::FriedbergJacquet:
    case CaseKind::OddGL: pt = make_off_diagonal(tag.kind, get("B"), get("C")); break;
    case CaseKind::Diagonal: pt = make_diagonal(get("x")); break;
  }
  if (pt.tag.n != tag.n) throw dimension_mismatch("parameters have rank " + std::to_string(pt.tag.n) + ", case says " + std::to_string(tag.n));
  validate_hperp(pt);
  return pt;
}

// ---------------------------------------------------------------------------
// Invariant coordinates.

struct GitCoords {
  std::vector<MultiPoly> a;
  std::vector<MultiPoly> b;
  std::optional<MultiPoly> pfaffian_pn;
  std::optional<std::vector<MultiPoly>> ichino_d;
};

/// Even-index coefficients c_2, c_4, ..., c_2k.
inline std::vector<MultiPoly> even_coeffs(const PolyMatrix& m, std::size_t k) {
  auto c = charpoly_coeffs(m);
  std::vector<MultiPoly> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(c.at(2 * i - 1));
  return out;
}

/// Case-appropriate invariants.
///   Diagonal, Rankin-Selberg: a = c(x1), b = c(x2).
///   Gross-Prasad: a_i = c_2i(x1), b_i = c_2i(x2), pn = split Pfaffian of x1.
///   Friedberg-Jacquet, OddGL: b_i = c_2i(x) for i = 1..n (odd ones vanish).
///   Jacquet-Ichino: d_j = det x_j.
inline GitCoords git_coords(const HPerpPoint& pt) {
  GitCoords g;
  const unsigned n = pt.tag.n;
  switch (pt.tag.kind) {
    case CaseKind::Diagonal:
    case CaseKind::RankinSelberg:
      g.a = charpoly_coeffs(pt.x[0]);
      g.b = charpoly_coeffs(pt.x[1]);
      break;
    case CaseKind::GrossPrasadEven:
      g.a = even_coeffs(pt.x[0], n);
      g.b = even_coeffs(pt.x[1], n);
      g.pfaffian_pn = skew_pfaffian(pt.x[0], SkewForm::split);
      break;
    case CaseKind::FriedbergJacquet:
    case CaseKind::OddGL: g.b = even_coeffs(pt.x[0], n); break;
    case CaseKind::JacquetIchino: {
      std::vector<MultiPoly> d;
      for (const auto& m : pt.x) d.push_back(poly_det(m));
      g.ichino_d = d;
      break;
    }
  }
  return g;
}

/// Coordinate names in the order used by divisor polynomials and reports.
inline std::vector<std::string> coordinate_names(const CaseTag& tag) {
  const unsigned n = tag.n;
  switch (tag.kind) {
    case CaseKind::Diagonal: {
      auto v = family_names("a", n);
      auto w = family_names("b", n);
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
    case CaseKind::RankinSelberg: {
      auto v = family_names("a", n);
      auto w = family_names("b", n + 1);
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
    case CaseKind::GrossPrasadEven: {
      auto v = family_names("a", n);
      auto w = family_names("b", n);
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
    case CaseKind::FriedbergJacquet:
    case CaseKind::OddGL: return family_names("b", n);
    case CaseKind::JacquetIchino: return {"d1", "d2", "d3"};
  }
  return {};
}

/// Coordinate values keyed by coordinate_names().
inline std::map<std::string, MultiPoly> coordinate_map(const CaseTag& tag, const GitCoords& g) {
  std::map<std::string, MultiPoly> out;
  auto put = [&](const std::string& fam, const std::vector<MultiPoly>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out.insert_or_assign(fam + std::to_string(i + 1), v[i]);
  };
  if (tag.kind == CaseKind::JacquetIchino) {
    put("d", *g.ichino_d);
  } else {
    put("a", g.a);
    put("b", g.b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dual side.

/// Matrix of the dual symplectic representation (or of its polarization S+
/// when one exists). `y` holds the dual-group Lie algebra components:
///   Rankin-Selberg (gl_n, gl_n+1)    -> y1 (x) I + I (x) y2   (S+)
///   Gross-Prasad   (so_2n, sp_2n)    -> y1 (x) I + I (x) y2
///   Jacquet-Ichino (sl_2, sl_2, sl_2) -> triple Kronecker sum
///   Friedberg-Jacquet (sp_2n)         -> y                     (S+ = std)
///   Diagonal, OddGL                   -> empty matrix
inline PolyMatrix dual_rep_matrix(const CaseTag& tag, const std::vector<PolyMatrix>& y) {
  const unsigned n = tag.n;
  auto need = [&](std::size_t count) {
    if (y.size() != count) throw dimension_mismatch(tag.name() + " dual data needs " + std::to_string(count) + " components");
  };
  switch (tag.kind) {
    case CaseKind::Diagonal:
    case CaseKind::OddGL: return PolyMatrix(y.empty() ? empty_context() : y[0].context(), 0, 0);
    case CaseKind::RankinSelberg:
      need(2);
      detail::require_shape(y[0], n, n, "y1");
      detail::require_shape(y[1], n + 1, n + 1, "y2");
      return kronecker_sum(y[0], y[1]);
    case CaseKind::GrossPrasadEven:
      need(2);
      detail::require_shape(y[0], 2 * n, 2 * n, "y1");
      detail::require_shape(y[1], 2 * n, 2 * n, "y2");
      return kronecker_sum(y[0], y[1]);
    case CaseKind::JacquetIchino: need(3); return kronecker_sum3(y[0], y[1], y[2]);
    case CaseKind::FriedbergJacquet:
      need(1);
      detail::require_shape(y[0], 2 * n, 2 * n, "y");
      return y[0];
  }
  return PolyMatrix(empty_context(), 0, 0);
}

/// True when the representation above is only the Lagrangian half S+ of S_X.
inline bool is_polarized(const CaseTag& tag) {
  return tag.kind == CaseKind::RankinSelberg || tag.kind == CaseKind::FriedbergJacquet;
}

/// Matrix of the full symplectic representation S_X.
inline PolyMatrix full_dual_rep_matrix(const CaseTag& tag, const std::vector<PolyMatrix>& y) {
  auto m = dual_rep_matrix(tag, y);
  return is_polarized(tag) ? cotangent_matrix(m) : m;
}

// ---------------------------------------------------------------------------
// Random Lie algebra elements with integer entries.

inline PolyMatrix random_matrix(SplitMix64& rng, std::size_t r, std::size_t c, long bound,
                                const ContextPtr& ctx = empty_context()) {
  PolyMatrix m(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, MultiPoly::constant(ctx, rng.range(-bound, bound)));
  return m;
}

inline PolyMatrix random_skew(SplitMix64& rng, std::size_t n, long bound, const ContextPtr& ctx = empty_context()) {
  PolyMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto v = MultiPoly::constant(ctx, rng.range(-bound, bound));
      m.set(i, j, v);
      m.set(j, i, -v);
    }
  return m;
}

inline PolyMatrix random_symmetric(SplitMix64& rng, std::size_t n, long bound, const ContextPtr& ctx = empty_context()) {
  PolyMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto v = MultiPoly::constant(ctx, rng.range(-bound, bound));
      m.set(i, j, v);
      m.set(j, i, v);
    }
  return m;
}

inline PolyMatrix random_gl(SplitMix64& rng, std::size_t n, long bound) { return random_matrix(rng, n, n, bound); }

/// so_2n for split_form(n): [[P, Q], [R, -P^t]] with Q, R skew.
inline PolyMatrix random_so_split(SplitMix64& rng, std::size_t n, long bound) {
  auto ctx = empty_context();
  auto p = random_matrix(rng, n, n, bound);
  return assemble(ctx, {{p, random_skew(rng, n, bound)}, {random_skew(rng, n, bound), -p.transpose()}});
}

/// sp_2n for symplectic_form(n): [[P, Q], [R, -P^t]] with Q, R symmetric.
inline PolyMatrix random_sp(SplitMix64& rng, std::size_t n, long bound) {
  auto ctx = empty_context();
  auto p = random_matrix(rng, n, n, bound);
  return assemble(ctx, {{p, random_symmetric(rng, n, bound)}, {random_symmetric(rng, n, bound), -p.transpose()}});
}

inline PolyMatrix random_sl2(SplitMix64& rng, long bound) {
  auto ctx = empty_context();
  auto a = MultiPoly::constant(ctx, rng.range(-bound, bound));
  return PolyMatrix(ctx, 2, 2,
                    {a, MultiPoly::constant(ctx, rng.range(-bound, bound)), MultiPoly::constant(ctx, rng.range(-bound, bound)), -a});
}

/// A random integer point of h-perp for the case.
inline HPerpPoint random_hperp(const CaseTag& tag, SplitMix64& rng, long bound) {
  const unsigned n = tag.n;
  auto ctx = empty_context();
  switch (tag.kind) {
    case CaseKind::Diagonal: return make_diagonal(random_gl(rng, n, bound));
    case CaseKind::RankinSelberg:
      return make_rankin_selberg(random_gl(rng, n, bound), random_matrix(rng, n, 1, bound), random_matrix(rng, n, 1, bound),
                                 MultiPoly::constant(ctx, rng.range(-bound, bound)));
    case CaseKind::GrossPrasadEven:
      return make_gross_prasad(random_gl(rng, n, bound), random_skew(rng, n, bound), random_skew(rng, n, bound),
                               random_matrix(rng, n, 1, bound), random_matrix(rng, n, 1, bound));
    case CaseKind::JacquetIchino: return make_jacquet_ichino(random_sl2(rng, bound), random_sl2(rng, bound));
    case CaseKind::FriedbergJacquet:
      return make_off_diagonal(tag.kind, random_matrix(rng, n, n, bound), random_matrix(rng, n, n, bound));
    case CaseKind::OddGL:
      return make_off_diagonal(tag.kind, random_matrix(rng, n, n + 1, bound), random_matrix(rng, n + 1, n, bound));
  }
  throw error("unknown case");
}

// ---------------------------------------------------------------------------
// Symbolic normal forms on the regular semisimple chart.

/// Rankin-Selberg: x1 = diag(alpha), x2 = [[-diag(alpha), u], [v^t, d]].
/// Context: alpha1..n, u1..n, v1..n, d.
inline HPerpPoint rankin_selberg_normal_form(unsigned n) {
  auto names = family_names("alpha", n);
  for (auto f : {"u", "v"})
    for (auto& s : family_names(f, n)) names.push_back(s);
  names.push_back("d");
  auto ctx = make_context(names);
  std::vector<MultiPoly> neg_alpha, u, v;
  for (unsigned i = 1; i <= n; ++i) {
    neg_alpha.push_back(-MultiPoly::variable(ctx, "alpha" + std::to_string(i)));
    u.push_back(MultiPoly::variable(ctx, "u" + std::to_string(i)));
    v.push_back(MultiPoly::variable(ctx, "v" + std::to_string(i)));
  }
  return make_rankin_selberg(PolyMatrix::diagonal(ctx, neg_alpha), column(ctx, u), column(ctx, v),
                             MultiPoly::variable(ctx, "d"));
}

/// Gross-Prasad: A = diag(alpha), B = C = 0. Context: alpha1..n, u1..n, v1..n.
inline HPerpPoint gross_prasad_normal_form(unsigned n) {
  auto names = family_names("alpha", n);
  for (auto f : {"u", "v"})
    for (auto& s : family_names(f, n)) names.push_back(s);
  auto ctx = make_context(names);
  std::vector<MultiPoly> alpha, u, v;
  for (unsigned i = 1; i <= n; ++i) {
    alpha.push_back(MultiPoly::variable(ctx, "alpha" + std::to_string(i)));
    u.push_back(MultiPoly::variable(ctx, "u" + std::to_string(i)));
    v.push_back(MultiPoly::variable(ctx, "v" + std::to_string(i)));
  }
  return make_gross_prasad(PolyMatrix::diagonal(ctx, alpha), PolyMatrix(ctx, n, n), PolyMatrix(ctx, n, n), column(ctx, u),
                           column(ctx, v));
}

/// Jacquet-Ichino: x1 = diag(w, -w), x2 = [[a, b], [c, -a]].
inline HPerpPoint jacquet_ichino_normal_form() {
  auto ctx = make_context({"w", "a", "b", "c"});
  return make_jacquet_ichino(MultiPoly::variable(ctx, "w"), MultiPoly::variable(ctx, "a"), MultiPoly::variable(ctx, "b"),
                             MultiPoly::variable(ctx, "c"));
}

/// Friedberg-Jacquet: B = diag(u), C = diag(v).
inline HPerpPoint friedberg_jacquet_normal_form(unsigned n) {
  auto names = family_names("u", n);
  for (auto& s : family_names("v", n)) names.push_back(s);
  auto ctx = make_context(names);
  std::vector<MultiPoly> u, v;
  for (unsigned i = 1; i <= n; ++i) {
    u.push_back(MultiPoly::variable(ctx, "u" + std::to_string(i)));
    v.push_back(MultiPoly::variable(ctx, "v" + std::to_string(i)));
  }
  return make_off_diagonal(CaseKind::FriedbergJacquet, PolyMatrix::diagonal(ctx, u), PolyMatrix::diagonal(ctx, v));
}

/// The m x m skew tridiagonal matrix with superdiagonal gamma_{m-1}, ..., gamma_1
/// (top to bottom), as in the regularity argument for so_m.
inline PolyMatrix tridiagonal_gamma(const std::vector<MultiPoly>& gamma) {
  const std::size_t m = gamma.size() + 1;
  auto ctx = gamma.empty() ? empty_context() : gamma[0].context();
  for (const auto& g : gamma) ctx = MultiPoly::common_context(ctx, g.context());
  PolyMatrix out(ctx, m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const MultiPoly& g = gamma[m - 2 - i];
    out.set(i, i + 1, g);
    out.set(i + 1, i, -g);
  }
  return out;
}

}  // namespace pfaffcheck
