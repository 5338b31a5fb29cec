// Fibers of the invariant map over rational base points: the products
// u_i v_i, regular orbit counts, and their agreement with the divisor.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfaffcheck/divisors.hpp"

namespace pfaffcheck {

/// A rational point of the base on the regular semisimple chart.
///   Rankin-Selberg:    alpha = eigenvalues of x1 (distinct)
///   Gross-Prasad:      x1 ~ diag(alpha, -alpha), alpha_i^2 distinct and nonzero
///   Friedberg-Jacquet: alpha = eigenvalues of BC
///   Jacquet-Ichino:    alpha = {w} with x_chart ~ diag(w, -w), w != 0
///   Diagonal, OddGL:   alpha empty
struct BasePoint {
  CaseTag tag;
  std::vector<Rational> alpha;
  std::map<std::string, Rational> coords;
  unsigned chart = 0;  // Ichino: 0-based index of the diagonalized factor
};

struct FiberDiagnostic {
  std::vector<Rational> uv_products;
  std::vector<std::size_t> zero_indices;
  unsigned orbit_count = 1;
  Rational divisor_value;
};

namespace detail {

inline std::map<std::string, Rational> alpha_point(const BasePoint& pt) {
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < pt.alpha.size(); ++i) out["alpha" + std::to_string(i + 1)] = pt.alpha[i];
  return out;
}

inline PolyMatrix numeric_diag(const std::vector<Rational>& v, bool negate) {
  RatMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = negate ? Rational(-v[i]) : v[i];
  return PolyMatrix::from_rational(empty_context(), m);
}

inline PolyMatrix numeric_col(const std::vector<Rational>& v) {
  RatMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return PolyMatrix::from_rational(empty_context(), m);
}

/// Normal-form point with the given eigenvalues, u, v (and d for Rankin-Selberg).
inline HPerpPoint normal_form_point(const CaseTag& tag, const std::vector<Rational>& alpha, const std::vector<Rational>& u,
                                    const std::vector<Rational>& v, const Rational& d) {
  auto ctx = empty_context();
  const std::size_t n = alpha.size();
  if (tag.kind == CaseKind::RankinSelberg)
    return make_rankin_selberg(numeric_diag(alpha, true), numeric_col(u), numeric_col(v), MultiPoly::constant(ctx, d));
  if (tag.kind == CaseKind::GrossPrasadEven)
    return make_gross_prasad(numeric_diag(alpha, false), PolyMatrix(ctx, n, n), PolyMatrix(ctx, n, n), numeric_col(u),
                             numeric_col(v));
  if (tag.kind == CaseKind::FriedbergJacquet)
    return make_off_diagonal(tag.kind, numeric_diag(u, false), numeric_diag(v, false));
  throw error("no u, v normal form for " + tag.name());
}

inline std::map<std::string, Rational> numeric_coords(const CaseTag& tag, const HPerpPoint& pt) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : coordinate_map(tag, git_coords(pt))) out[k] = v.constant_value();
  return out;
}

inline Rational coord(const BasePoint& pt, const std::string& name) {
  auto it = pt.coords.find(name);
  if (it == pt.coords.end()) throw missing_variable(name);
  return it->second;
}

/// The symbolic elimination system of the case, shared with the divisor code.
inline UvSystem case_uv_system(const CaseTag& tag) {
  const unsigned n = tag.n;
  std::vector<std::string> unknown_vars = family_names("u", n);
  for (auto& s : family_names("v", n)) unknown_vars.push_back(s);
  if (tag.kind == CaseKind::RankinSelberg) {
    auto pt = rankin_selberg_normal_form(n);
    const auto& ctx = pt.context();
    Monomial d;
    d.set(*ctx->index_of("d"), 1);
    std::vector<Monomial> unknowns = {d};
    for (const auto& m : uv_monomials(ctx, n)) unknowns.push_back(m);
    unknown_vars.push_back("d");
    return uv_system(git_coords(pt).b, unknown_vars, unknowns, n, n + 1);
  }
  auto pt = gross_prasad_normal_form(n);
  return uv_system(git_coords(pt).b, unknown_vars, uv_monomials(pt.context(), n), n, n);
}

inline void check_chart(const BasePoint& pt) {
  const auto& a = pt.alpha;
  switch (pt.tag.kind) {
    case CaseKind::RankinSelberg:
    case CaseKind::GrossPrasadEven: {
      const bool gp = pt.tag.kind == CaseKind::GrossPrasadEven;
      if (a.size() != pt.tag.n) throw dimension_mismatch("base point needs " + std::to_string(pt.tag.n) + " eigenvalues");
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (gp && a[i] == 0) throw constraint_violation("alpha_i != 0", "alpha" + std::to_string(i + 1) + " = 0");
        for (std::size_t j = i + 1; j < a.size(); ++j)
          if (gp ? a[i] * a[i] == a[j] * a[j] : a[i] == a[j])
            throw constraint_violation(gp ? "alpha_i^2 distinct" : "alpha_i distinct",
                                       "alpha" + std::to_string(i + 1) + ", alpha" + std::to_string(j + 1));
      }
      break;
    }
    case CaseKind::JacquetIchino: {
      if (a.size() != 1 || pt.chart > 2) throw dimension_mismatch("Jacquet-Ichino base point needs w and a chart index");
      Rational dk = coord(pt, "d" + std::to_string(pt.chart + 1));
      if (a[0] == 0 || dk != -a[0] * a[0])
        throw constraint_violation("d_chart = -w^2 != 0", "d" + std::to_string(pt.chart + 1) + " = " + to_string(dk));
      break;
    }
    case CaseKind::FriedbergJacquet:
      if (a.size() != pt.tag.n) throw dimension_mismatch("base point needs " + std::to_string(pt.tag.n) + " eigenvalues");
      break;
    default: break;
  }
}

}  // namespace detail

/// Recovers the products u_i v_i from the coordinates (bc for Jacquet-Ichino).
/// The recovered data is pushed forward again and must reproduce the input.
inline std::vector<Rational> solve_uv_products(const BasePoint& pt) {
  detail::check_chart(pt);
  const CaseTag& tag = pt.tag;
  const unsigned n = tag.n;
  switch (tag.kind) {
    case CaseKind::Diagonal:
    case CaseKind::OddGL: return {};
    case CaseKind::RankinSelberg:
    case CaseKind::GrossPrasadEven: {
      auto sys = detail::case_uv_system(tag);
      auto point = detail::alpha_point(pt);
      for (unsigned k = 1; k <= sys.rhs.size(); ++k) point["b" + std::to_string(k)] = detail::coord(pt, "b" + std::to_string(k));
      RatMatrix m = sys.matrix.evaluate(point);
      std::vector<Rational> rhs;
      for (const auto& r : sys.rhs) rhs.push_back(r.eval(point));
      auto sol = linear_solve(m, rhs);
      if (sol.kind != SolveResult::Kind::unique) throw singular_system("u_i v_i system is singular at this base point");
      const std::size_t first = tag.kind == CaseKind::RankinSelberg ? 1 : 0;
      std::vector<Rational> uv(sol.particular.begin() + static_cast<std::ptrdiff_t>(first), sol.particular.end());
      Rational d = first ? sol.particular[0] : Rational(0);
      auto back = detail::numeric_coords(tag, detail::normal_form_point(tag, pt.alpha, uv, std::vector<Rational>(n, 1), d));
      for (const auto& [k, v] : back)
        if (k[0] == 'b' && v != detail::coord(pt, k)) throw internal_error("recovered u_i v_i do not reproduce " + k);
      return uv;
    }
    case CaseKind::FriedbergJacquet: {
      // x^2 = diag(BC, CB): the u_i v_i are the eigenvalues of BC.
      auto back = detail::numeric_coords(tag, detail::normal_form_point(tag, {}, pt.alpha, std::vector<Rational>(n, 1), 0));
      for (const auto& [k, v] : back)
        if (v != detail::coord(pt, k)) throw constraint_violation("b = charpoly(x)", "eigenvalue data disagrees with " + k);
      return pt.alpha;
    }
    case CaseKind::JacquetIchino: {
      // x_k = diag(w, -w), x_p = [[a, b], [c, -a]], x_q = -x_k - x_p.
      const unsigned k = pt.chart, p = (k + 1) % 3, q = (k + 2) % 3;
      Rational dk = detail::coord(pt, "d" + std::to_string(k + 1));
      Rational dp = detail::coord(pt, "d" + std::to_string(p + 1));
      Rational dq = detail::coord(pt, "d" + std::to_string(q + 1));
      const Rational& w = pt.alpha[0];
      Rational a = (dk + dp - dq) / (2 * w);
      return {-dp - a * a};
    }
  }
  throw error("unknown case");
}

/// Regular orbits over the point, from the normal-form classifications: each
/// vanishing u_i v_i splits the fiber in two (u_i = 0 or v_i = 0).
inline unsigned count_orbit_classes(const BasePoint& pt) {
  unsigned count = 1;
  for (const auto& w : solve_uv_products(pt))
    if (w == 0) count *= 2;
  return count;
}

inline FiberDiagnostic diagnose(const BasePoint& pt, const MultiPoly& divisor) {
  FiberDiagnostic d;
  d.uv_products = solve_uv_products(pt);
  for (std::size_t i = 0; i < d.uv_products.size(); ++i)
    if (d.uv_products[i] == 0) d.zero_indices.push_back(i);
  d.orbit_count = 1u << d.zero_indices.size();
  d.divisor_value = divisor.eval(pt.coords);
  return d;
}

/// A base point with exactly one vanishing product (on_divisor) or none.
/// Diagonal and OddGL have an empty divisor; the flag is ignored there.
inline BasePoint sample_point(const CaseTag& tag, bool on_divisor, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const unsigned n = tag.n;
  BasePoint pt{tag, {}, {}, 0};
  auto pick_uv = [&](std::vector<Rational>& u, std::vector<Rational>& v) {
    u.assign(n, 0);
    v.assign(n, 0);
    std::size_t zero = on_divisor ? rng.below(n) : n;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = rng.nonzero(-9, 9);
      v[i] = rng.nonzero(-9, 9);
      if (i == zero) (rng.below(2) ? u[i] : v[i]) = 0;
    }
  };
  switch (tag.kind) {
    case CaseKind::Diagonal:
    case CaseKind::OddGL: {
      for (const auto& name : coordinate_names(tag)) pt.coords[name] = rng.range(-9, 9);
      return pt;
    }
    case CaseKind::RankinSelberg:
    case CaseKind::GrossPrasadEven: {
      const bool gp = tag.kind == CaseKind::GrossPrasadEven;
      while (pt.alpha.size() < n) {
        Rational a = gp ? rng.nonzero(-9, 9) : rng.range(-9, 9);
        bool ok = true;
        for (const auto& b : pt.alpha) ok = ok && (gp ? a * a != b * b : a != b);
        if (ok) pt.alpha.push_back(a);
      }
      std::vector<Rational> u, v;
      pick_uv(u, v);
      pt.coords = detail::numeric_coords(tag, detail::normal_form_point(tag, pt.alpha, u, v, rng.range(-9, 9)));
      return pt;
    }
    case CaseKind::FriedbergJacquet: {
      std::vector<Rational> u, v;
      pick_uv(u, v);
      for (unsigned i = 0; i < n; ++i) pt.alpha.push_back(u[i] * v[i]);
      pt.coords = detail::numeric_coords(tag, detail::normal_form_point(tag, {}, u, v, 0));
      return pt;
    }
    case CaseKind::JacquetIchino: {
      auto c = [](const Rational& x) { return MultiPoly::constant(empty_context(), x); };
      Rational w = rng.nonzero(-9, 9), a = rng.range(-9, 9), b = rng.nonzero(-9, 9), cc = rng.nonzero(-9, 9);
      if (on_divisor) (rng.below(2) ? b : cc) = 0;
      auto x = make_jacquet_ichino(c(w), c(a), c(b), c(cc));
      // Rotate the factors so the diagonal one sits at a random position.
      pt.chart = static_cast<unsigned>(rng.below(3));
      for (unsigned j = 0; j < 3; ++j)
        pt.coords["d" + std::to_string((pt.chart + j) % 3 + 1)] = poly_det(x.x[j]).constant_value();
      pt.alpha = {w};
      return pt;
    }
  }
  throw error("unknown case");
}

struct ConsistencyReport {
  CaseTag tag;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  unsigned on_divisor = 0;
  unsigned violations = 0;
  std::optional<Rational> certificate_unit;  // divisor / (prod u_i v_i * discriminant)
  unsigned certificate_failures = 0;
  std::vector<std::string> violation_details;
  std::vector<std::pair<std::string, FiberDiagnostic>> examples;
  std::vector<std::string> notes;
};

namespace detail {

/// prod_{i<j} (x_i - x_j)^2 with x = alpha (alpha^2 for Gross-Prasad).
inline Rational chart_discriminant(const BasePoint& pt) {
  Rational disc = 1;
  if (pt.tag.kind == CaseKind::FriedbergJacquet) return disc;
  const bool sq = pt.tag.kind == CaseKind::GrossPrasadEven;
  for (std::size_t i = 0; i < pt.alpha.size(); ++i)
    for (std::size_t j = i + 1; j < pt.alpha.size(); ++j) {
      Rational d = sq ? Rational(pt.alpha[i] * pt.alpha[i] - pt.alpha[j] * pt.alpha[j]) : Rational(pt.alpha[i] - pt.alpha[j]);
      disc *= d * d;
    }
  return disc;
}

}  // namespace detail

/// Over sampled points (alternating on and off the divisor): two or more
/// regular orbits exactly where the A-side divisor vanishes. Off the divisor
/// the divisor value over prod u_i v_i (times the chart discriminant) must
/// be one constant.
inline ConsistencyReport fiber_divisor_consistency(const CaseTag& tag, std::uint64_t seed, unsigned trials) {
  ConsistencyReport rep{tag, seed, trials, 0, 0, std::nullopt, 0, {}, {}, {}};
  const MultiPoly divisor = aside_groundtruth(tag);
  if (tag.kind == CaseKind::JacquetIchino)
    rep.notes.push_back("factors rotated so the diagonalized one has d_j != 0");
  if (tag.kind == CaseKind::Diagonal || tag.kind == CaseKind::OddGL)
    rep.notes.push_back("empty divisor: every fiber is a single regular orbit");
  if (tag.kind == CaseKind::FriedbergJacquet && tag.n == 1) {
    BasePoint origin{tag, {0}, {{"b1", 0}}, 0};
    rep.examples.emplace_back("origin", diagnose(origin, divisor));
  }
  for (unsigned t = 0; t < trials; ++t) {
    const bool on = t % 2 == 1;
    BasePoint pt = sample_point(tag, on, derive_stream(seed, t).next());
    FiberDiagnostic d = diagnose(pt, divisor);
    if (d.orbit_count >= 2) ++rep.on_divisor;
    if ((d.orbit_count >= 2) != (d.divisor_value == 0)) {
      ++rep.violations;
      rep.violation_details.push_back("trial " + std::to_string(t) + ": " + std::to_string(d.orbit_count) +
                                      " orbits, divisor value " + to_string(d.divisor_value));
    }
    if (t < 2) rep.examples.emplace_back(on ? "on_divisor" : "off_divisor", d);
    if (d.uv_products.empty() || d.orbit_count >= 2) continue;
    Rational prod = 1;
    for (const auto& w : d.uv_products) prod *= w;
    Rational ratio = d.divisor_value / (prod * detail::chart_discriminant(pt));
    if (tag.kind == CaseKind::JacquetIchino) ratio = d.divisor_value / (prod * detail::coord(pt, "d" + std::to_string(pt.chart + 1)));
    if (!rep.certificate_unit)
      rep.certificate_unit = ratio;
    else if (ratio != *rep.certificate_unit)
      ++rep.certificate_failures;
  }
  return rep;
}

}  // namespace pfaffcheck
