#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "pfaffcheck/errors.hpp"
#include "pfaffcheck/liealg.hpp"
#include "pfaffcheck/matrix.hpp"

namespace pfaffcheck {

/// Lie(H) for a case: each basis element is given by its image in every
/// component of h-perp, and acts on a point by componentwise commutator.
struct ActionSpec {
  CaseTag tag;
  std::vector<std::vector<RatMatrix>> basis;
};

namespace detail {

inline RatMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

/// diag(h, 0_k).
inline RatMatrix pad(const RatMatrix& h, std::size_t k) {
  RatMatrix m(h.rows() + k, h.cols() + k);
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) m(i, j) = h(i, j);
  return m;
}

/// Places h at offset `off` inside an n x n zero matrix.
inline RatMatrix shift(const RatMatrix& h, std::size_t n, std::size_t off) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) m(off + i, off + j) = h(i, j);
  return m;
}

inline std::vector<RatMatrix> gl_basis(std::size_t n) {
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(unit_matrix(n, i, j));
  return out;
}

/// Basis of so_2n for split_form(n): [[P, Q], [R, -P^t]], Q and R skew.
inline std::vector<RatMatrix> so_split_basis(std::size_t n) {
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatMatrix m(2 * n, 2 * n);
      m(i, j) = 1;
      m(n + j, n + i) = -1;
      out.push_back(m);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RatMatrix q(2 * n, 2 * n), r(2 * n, 2 * n);
      q(i, n + j) = 1;
      q(j, n + i) = -1;
      r(n + i, j) = 1;
      r(n + j, i) = -1;
      out.push_back(q);
      out.push_back(r);
    }
  return out;
}

/// Basis of so_m for the identity form: E_ij - E_ji.
inline std::vector<RatMatrix> so_standard_basis(std::size_t m) {
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      RatMatrix e(m, m);
      e(i, j) = 1;
      e(j, i) = -1;
      out.push_back(e);
    }
  return out;
}

inline std::vector<RatMatrix> sl2_basis() {
  return {RatMatrix{{1, 0}, {0, -1}}, RatMatrix{{0, 1}, {0, 0}}, RatMatrix{{0, 0}, {1, 0}}};
}

inline RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

}  // namespace detail

inline ActionSpec action_spec(const CaseTag& tag) {
  ActionSpec spec{tag, {}};
  const std::size_t n = tag.n;
  using namespace detail;
  switch (tag.kind) {
    case CaseKind::Diagonal:
      for (auto& h : gl_basis(n)) spec.basis.push_back({h, h});
      break;
    case CaseKind::RankinSelberg:
      for (auto& h : gl_basis(n)) spec.basis.push_back({h, pad(h, 1)});
      break;
    case CaseKind::GrossPrasadEven:
      for (auto& h : so_split_basis(n)) spec.basis.push_back({h, pad(h, 1)});
      break;
    case CaseKind::JacquetIchino:
      for (auto& h : sl2_basis()) spec.basis.push_back({h, h, h});
      break;
    case CaseKind::FriedbergJacquet:
    case CaseKind::OddGL: {
      const std::size_t m = tag.kind == CaseKind::OddGL ? n + 1 : n;
      for (auto& h : gl_basis(n)) spec.basis.push_back({shift(h, n + m, 0)});
      for (auto& h : gl_basis(m)) spec.basis.push_back({shift(h, n + m, n)});
      break;
    }
  }
  return spec;
}

/// Smallest stabilizer dimension on h-perp for the case.
inline std::size_t minimal_stabilizer_dim(const CaseTag& tag) {
  switch (tag.kind) {
    case CaseKind::Diagonal:
    case CaseKind::FriedbergJacquet: return tag.n;
    case CaseKind::OddGL: return tag.n + 1;
    default: return 0;
  }
}

inline std::vector<RatMatrix> numeric_components(const HPerpPoint& pt) {
  std::vector<RatMatrix> out;
  for (const auto& m : pt.x) {
    if (!m.is_numeric()) throw symbolic_input("stabilizer computation needs a numeric point");
    out.push_back(m.to_rational());
  }
  return out;
}

/// Matrix whose column k is the flattened action of basis element k.
inline RatMatrix action_matrix(const ActionSpec& spec, const std::vector<RatMatrix>& x) {
  std::size_t rows = 0;
  for (const auto& m : x) rows += m.rows() * m.cols();
  RatMatrix out(rows, spec.basis.size());
  for (std::size_t k = 0; k < spec.basis.size(); ++k) {
    if (spec.basis[k].size() != x.size()) throw dimension_mismatch("basis element and point have different component counts");
    std::size_t r = 0;
    for (std::size_t c = 0; c < x.size(); ++c) {
      RatMatrix br = detail::commutator(spec.basis[k][c], x[c]);
      for (std::size_t i = 0; i < br.rows(); ++i)
        for (std::size_t j = 0; j < br.cols(); ++j) out(r++, k) = br(i, j);
    }
  }
  return out;
}

/// Dimension of the infinitesimal stabilizer of a numeric point.
inline std::size_t stabilizer_dim(const ActionSpec& spec, const HPerpPoint& pt) {
  return kernel_dim(action_matrix(spec, numeric_components(pt)));
}

inline bool is_regular(const ActionSpec& spec, const HPerpPoint& pt) {
  return stabilizer_dim(spec, pt) == minimal_stabilizer_dim(spec.tag);
}

/// Minimum stabilizer dimension over random integer points with entries in
/// [-20, 20].
inline std::size_t minimal_dim_estimate(const ActionSpec& spec, std::uint64_t seed, unsigned trials) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (unsigned t = 0; t < trials; ++t) {
    auto rng = derive_stream(seed, t);
    best = std::min(best, stabilizer_dim(spec, random_hperp(spec.tag, rng, 20)));
  }
  return best;
}

/// Centralizer dimension of a single matrix inside a subalgebra with the
/// given basis.
inline std::size_t centralizer_dim_in(const std::vector<RatMatrix>& basis, const RatMatrix& x) {
  ActionSpec spec;
  for (const auto& b : basis) spec.basis.push_back({b});
  return kernel_dim(action_matrix(spec, {x}));
}

inline std::size_t gl_centralizer_dim(const RatMatrix& x) { return centralizer_dim_in(detail::gl_basis(x.rows()), x); }

/// Centralizer dimension in so_m (identity form) of a skew matrix.
inline std::size_t so_centralizer_dim(const RatMatrix& x) {
  return centralizer_dim_in(detail::so_standard_basis(x.rows()), x);
}

}  // namespace pfaffcheck
