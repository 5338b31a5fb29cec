#pragma once

// The eleven acceptance criteria, each a pure function of the seed returning
// pass/fail, a one-line detail and a JSON payload. Shared by the acceptance
// test binary and `pfaffcheck selftest`.

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfaffcheck/centralizer.hpp"
#include "pfaffcheck/divisors.hpp"
#include "pfaffcheck/fibers.hpp"
#include "pfaffcheck/oracles.hpp"
#include "pfaffcheck/report.hpp"
#include "pfaffcheck/symfun.hpp"

namespace pfaffcheck {

/// Largest n per case; the CLI rejects anything outside.
inline unsigned grid_max_n(CaseKind kind) {
  switch (kind) {
    case CaseKind::Diagonal:
    case CaseKind::OddGL: return 4;
    case CaseKind::FriedbergJacquet:
    case CaseKind::RankinSelberg: return 3;
    case CaseKind::GrossPrasadEven: return 2;
    case CaseKind::JacquetIchino: return 1;
  }
  return 1;
}

inline std::vector<CaseTag> acceptance_grid() {
  std::vector<CaseTag> out;
  for (auto kind : {CaseKind::Diagonal, CaseKind::FriedbergJacquet, CaseKind::OddGL, CaseKind::RankinSelberg,
                    CaseKind::JacquetIchino, CaseKind::GrossPrasadEven})
    for (unsigned n = 1; n <= grid_max_n(kind); ++n) out.emplace_back(kind, n);
  return out;
}

struct CriterionResult {
  unsigned id = 0;
  std::string title;
  double budget_seconds = 0;
  double seconds = 0;
  bool checks_passed = false;
  std::string detail;
  Json data;

  bool passed() const { return checks_passed && seconds < budget_seconds; }
};

namespace acceptance {

/// Accumulates failures with their reasons.
struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
  std::string summary(const std::string& on_success) const {
    if (ok()) return on_success;
    std::string s = std::to_string(failures.size()) + " failure(s): " + failures.front();
    return s;
  }
};

inline std::vector<MultiPoly> variables_of_context(const ContextPtr& ctx) {
  std::vector<MultiPoly> out;
  for (const auto& name : ctx->names()) out.push_back(MultiPoly::variable(ctx, name));
  return out;
}

inline std::string cell(const CaseTag& tag) { return tag.name() + " n=" + std::to_string(tag.n); }

inline bool is_sign(const std::optional<Rational>& u) { return u && (*u == 1 || *u == -1); }

inline CriterionResult ichino_pfaffian(std::uint64_t) {
  CaseTag tag(CaseKind::JacquetIchino);
  Checker c;
  auto display = ichino_display();
  auto det = bside_det(tag);
  c.expect(det == display.pow(2), "bside_det differs from the squared display");
  auto pf = bside_pfaffian(tag);
  c.expect(is_sign(unit_multiple(pf, display)), "Pfaffian is not +-display");
  // The same identity in the eigenvalue coordinates: d_j = -a_j^2.
  auto actx = make_context({"a1", "a2", "a3"});
  std::map<std::string, MultiPoly> sub;
  for (int j = 1; j <= 3; ++j)
    sub.insert_or_assign("d" + std::to_string(j), -MultiPoly::variable(actx, "a" + std::to_string(j)).pow(2));
  MultiPoly prod = MultiPoly::constant(actx, 1);
  auto a = variables_of_context(actx);
  for (int s2 : {1, -1})
    for (int s3 : {1, -1}) prod = prod * (a[0] + a[1] * Rational(s2) + a[2] * Rational(s3));
  c.expect(display.substitute(sub) == prod, "display is not the product of a1 +- a2 +- a3 after d_j = -a_j^2");
  return {1, "Jacquet-Ichino Pfaffian", 5, 0, c.ok(), c.summary("bside_det = F^2 with F = prod(a1 +- a2 +- a3)"),
          Json{{"bside_det", det.to_string()}, {"bside_pfaffian", pf.to_string()}}};
}

inline CriterionResult ichino_matching(std::uint64_t) {
  auto [v, rep] = verify_matching(CaseTag(CaseKind::JacquetIchino));
  bool ok = v.status == MatchStatus::ExactMatch;
  return {2, "Jacquet-Ichino matching", 5, 0, ok, "status " + status_name(v.status), report::verify_json(v, rep)};
}

inline CriterionResult rankin_selberg(std::uint64_t) {
  Checker c;
  Json cells = Json::array();
  std::set<std::string> names;
  for (unsigned n = 1; n <= 3; ++n) {
    CaseTag tag(CaseKind::RankinSelberg, n);
    auto [v, rep] = verify_matching(tag);
    c.expect(v.status == MatchStatus::ExactMatch || v.status == MatchStatus::MatchUpToUnit, cell(tag) + " status " + status_name(v.status));
    const ClosedFormVariant* a = nullptr;
    for (const auto& var : rep.aside_variants)
      if (var.unit && (!a || var.corrections.size() < a->corrections.size())) a = &var;
    c.expect(a != nullptr, cell(tag) + " no A-side reading matches");
    c.expect(rep.bside_variants.front().unit.has_value(), cell(tag) + " B-side display does not match");
    c.expect(rep.bside_polarized_det.has_value(), cell(tag) + " has no polarized det");
    if (!a || !rep.bside_polarized_det) continue;
    // Pairwise: ground truth, A closed form, det on S+, Pfaffian, B closed form.
    std::vector<std::pair<std::string, MultiPoly>> polys = {{"aside_groundtruth", rep.aside_groundtruth},
                                                            {"aside_closed", a->poly},
                                                            {"bside_polarized_det", *rep.bside_polarized_det},
                                                            {"bside_pfaffian", rep.bside_pfaffian},
                                                            {"bside_closed", rep.bside_variants.front().poly}};
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = i + 1; j < polys.size(); ++j)
        c.expect(unit_multiple(polys[i].second, polys[j].second).has_value(),
                 cell(tag) + " " + polys[i].first + " vs " + polys[j].first);
    for (const auto& corr : v.corrections) names.insert(corr.name);
    cells.push_back(Json{{"n", n}, {"status", status_name(v.status)}, {"aside_reading", a->label},
                         {"corrections", report::corrections(v.corrections)}});
  }
  std::string list;
  for (const auto& s : names) list += (list.empty() ? "" : ", ") + s;
  return {3, "Rankin-Selberg n = 1, 2, 3", 120, 0, c.ok(), c.summary("all pairwise consistent; corrections: " + list),
          Json{{"cells", cells}}};
}

inline CriterionResult gross_prasad(std::uint64_t) {
  Checker c;
  Json cells = Json::array();
  for (unsigned n = 1; n <= 2; ++n) {
    CaseTag tag(CaseKind::GrossPrasadEven, n);
    auto det = bside_det(tag);
    auto root = poly_sqrt(det);
    c.expect(root.has_value(), cell(tag) + " bside_det is not a square");
    auto [v, rep] = verify_matching(tag);
    c.expect(v.matched() && v.unit.has_value(), cell(tag) + " Pfaffian does not match the ground truth");
    Json ranges = Json::array(), bsides = Json::array();
    for (const auto& var : rep.aside_variants)
      if (var.unit) ranges.push_back(var.label);
    for (const auto& var : rep.bside_variants)
      if (var.unit) bsides.push_back(var.label);
    c.expect(!ranges.empty(), cell(tag) + " no A-side range reading matches");
    c.expect(!bsides.empty(), cell(tag) + " no B-side reading matches");
    cells.push_back(Json{{"n", n}, {"status", status_name(v.status)}, {"unit", report::text_or_null(v.unit)},
                         {"aside_readings", ranges}, {"bside_readings", bsides},
                         {"corrections", report::corrections(v.corrections)}});
  }
  return {4, "Gross-Prasad even n = 1, 2", 120, 0, c.ok(), c.summary("squares; matches; readings recorded"),
          Json{{"cells", cells}}};
}

inline CriterionResult friedberg_jacquet(std::uint64_t seed) {
  Checker c;
  for (unsigned n = 1; n <= 2; ++n) {
    CaseTag tag(CaseKind::FriedbergJacquet, n);
    auto [v, rep] = verify_matching(tag);
    c.expect(rep.bside_polarized_det && is_sign(unit_multiple(rep.bside_pfaffian, *rep.bside_polarized_det)),
             cell(tag) + " Pfaffian is not the det on S+");
    auto top = MultiPoly::variable(coordinate_context(tag), "b" + std::to_string(n));
    c.expect(unit_multiple(rep.aside_groundtruth, top).has_value(), cell(tag) + " divisor is not the top coefficient");
    c.expect(v.matched(), cell(tag) + " status " + status_name(v.status));
  }
  CaseTag fj1(CaseKind::FriedbergJacquet, 1);
  Json counts = Json::array();
  c.expect(count_orbit_classes(BasePoint{fj1, {0}, {{"b1", 0}}, 0}) == 2, "origin does not have 2 orbits");
  SplitMix64 rng = derive_stream(seed, 5);
  for (int t = 0; t < 20; ++t) {
    Rational x = rng.nonzero(-50, 50);
    unsigned k = count_orbit_classes(BasePoint{fj1, {x}, {{"b1", -x}}, 0});
    c.expect(k == 1, "b1 = " + to_string(-x) + " has " + std::to_string(k) + " orbits");
  }
  counts.push_back(Json{{"b1", "0"}, {"orbit_count", 2}});
  counts.push_back(Json{{"b1", "nonzero (20 samples)"}, {"orbit_count", 1}});
  return {5, "Friedberg-Jacquet n = 1, 2", 10, 0, c.ok(), c.summary("Pf = det on S+; divisor b_n; 2 orbits over 0 only"),
          Json{{"orbit_counts", counts}}};
}

inline CriterionResult trivial_cases(std::uint64_t) {
  Checker c;
  for (auto kind : {CaseKind::Diagonal, CaseKind::OddGL})
    for (unsigned n = 1; n <= grid_max_n(kind); ++n) {
      CaseTag tag(kind, n);
      auto [v, rep] = verify_matching(tag);
      c.expect(rep.aside_groundtruth.is_constant() && rep.aside_groundtruth.constant_value() == 1, cell(tag) + " A side is not 1");
      c.expect(rep.bside_pfaffian.is_constant() && rep.bside_pfaffian.constant_value() == 1, cell(tag) + " B side is not 1");
      c.expect(v.status == MatchStatus::ExactMatch, cell(tag) + " status " + status_name(v.status));
    }
  return {6, "Diagonal and OddGL", 1, 0, c.ok(), c.summary("both sides 1, exact match"), Json::object()};
}

inline CriterionResult newton(std::uint64_t) {
  Checker c;
  Json factors = Json::array(), uncorrected_fails = Json::array();
  unsigned count = 0;
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned len = 0; len < n; ++len)
      for (const auto& mu : partitions_in_rect(len, 5)) {
        if (mu.length() != len) continue;
        ++count;
        const std::string at = mu.to_string() + " n=" + std::to_string(n);
        c.expect(newton_residual(mu, n, true).is_zero(), at + " corrected residual nonzero");
        c.expect(newton_corollary_residual(mu, n, true).is_zero(), at + " corrected companion residual nonzero");
        for (const auto& f : newton_factor_table(mu, n)) {
          Json j = report::to_json(f);
          j["n"] = n;
          factors.push_back(j);
        }
        if (!newton_residual(mu, n, false).is_zero()) uncorrected_fails.push_back(Json{{"mu", mu.to_string()}, {"n", n}});
      }
  std::string detail = std::to_string(count) + " partitions; " + std::to_string(factors.size()) + " (mu,k) with factor != 1";
  return {7, "generalized Newton identity", 30, 0, c.ok(), c.summary(detail),
          Json{{"partitions_checked", count}, {"factors", factors}, {"uncorrected_nonzero", uncorrected_fails}}};
}

inline CriterionResult centralizer(std::uint64_t seed) {
  Checker c;
  Json per_n = Json::array();
  for (unsigned n = 1; n <= 3; ++n) {
    auto spec = action_spec(CaseTag(CaseKind::RankinSelberg, n));
    SplitMix64 rng = derive_stream(seed, 800 + n);
    std::map<std::size_t, unsigned> histogram;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Rational> alpha, u(n), v(n);
      while (alpha.size() < n) {
        Rational a = rng.range(-20, 20);
        if (std::find(alpha.begin(), alpha.end(), a) == alpha.end()) alpha.push_back(a);
      }
      std::size_t zeros = 0;
      for (unsigned i = 0; i < n; ++i) {
        if (rng.below(3) == 0) {
          ++zeros;
          continue;
        }
        do {
          u[i] = rng.below(4) ? rng.range(-9, 9) : 0;
          v[i] = rng.below(4) ? rng.range(-9, 9) : 0;
        } while (u[i] == 0 && v[i] == 0);
      }
      auto pt = detail::normal_form_point(spec.tag, alpha, u, v, rng.range(-9, 9));
      std::size_t dim = stabilizer_dim(spec, pt);
      ++histogram[zeros];
      c.expect(dim == zeros, "n=" + std::to_string(n) + " trial " + std::to_string(trial) + ": dim " + std::to_string(dim) +
                                 " vs " + std::to_string(zeros) + " zero pairs");
    }
    Json h = Json::object();
    for (auto [z, k] : histogram) h[std::to_string(z)] = k;
    per_n.push_back(Json{{"n", n}, {"points", 200}, {"zero_pair_histogram", h}});
  }
  return {8, "centralizer dimension", 30, 0, c.ok(), c.summary("600 points, zero exceptions"), Json{{"cells", per_n}}};
}

inline CriterionResult invariance(std::uint64_t seed) {
  Checker c;
  Json cells = Json::array();
  unsigned total = 0;
  for (const auto& tag : acceptance_grid()) {
    if (tag.kind == CaseKind::Diagonal || tag.kind == CaseKind::OddGL) continue;
    auto rep = random_invariance_check(tag, seed, 100);
    total += rep.trials;
    c.expect(rep.trials == 100 && rep.failures == 0, cell(tag) + ": " + std::to_string(rep.failures) + " failures");
    cells.push_back(Json{{"case", tag.name()}, {"n", tag.n}, {"trials", rep.trials}, {"failures", rep.failures}});
  }
  return {9, "diagonalization reduction", 60, 0, c.ok(), c.summary(std::to_string(total) + " trials, zero failures"),
          Json{{"cells", cells}}};
}

inline CriterionResult fiber_consistency(std::uint64_t seed) {
  Checker c;
  Json cells = Json::array();
  for (const auto& tag : acceptance_grid()) {
    auto rep = fiber_divisor_consistency(tag, seed, 50);
    c.expect(rep.trials == 50 && rep.violations == 0 && rep.certificate_failures == 0,
             cell(tag) + ": " + std::to_string(rep.violations) + " violations");
    cells.push_back(Json{{"case", tag.name()},
                         {"n", tag.n},
                         {"trials", rep.trials},
                         {"on_divisor", rep.on_divisor},
                         {"violations", rep.violations},
                         {"certificate_failures", rep.certificate_failures}});
  }
  return {10, "fiber-divisor consistency", 60, 0, c.ok(), c.summary("50 points per cell, zero violations"),
          Json{{"cells", cells}}};
}

inline CriterionResult kernel_algebra(std::uint64_t seed) {
  Checker c;
  SplitMix64 rng = derive_stream(seed, 11);
  auto ctx = make_context({"x", "y", "z"});
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
    PolyMatrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, oracle::random_poly(ctx, rng, 2, 2, 5));
    c.expect(poly_det(m) == oracle::cofactor_det(m), "det mismatch at trial " + std::to_string(t));
  }
  for (int t = 0; t < 100; ++t) {
    unsigned n = static_cast<unsigned>(rng.range(1, 4));
    auto vars = family_names("x", n);
    auto names = vars;
    names.push_back("y");
    auto fctx = make_context(names);
    auto p = oracle::symmetrize(oracle::random_poly(fctx, rng, 3, 3), vars);
    auto e = elem_expand(p, vars, family_names("e", n));
    std::map<std::string, MultiPoly> img;
    for (unsigned k = 1; k <= n; ++k) img.insert_or_assign("e" + std::to_string(k), elementary_in(fctx, vars, k));
    img.insert_or_assign("y", MultiPoly::variable(fctx, "y"));
    c.expect(e.substitute(img) == p, "elem_expand round trip failed at trial " + std::to_string(t));
  }
  for (int t = 0; t < 100; ++t) {
    auto p = oracle::random_poly(ctx, rng, 3, 4);
    auto r = poly_sqrt(p * p);
    c.expect(r && (*r == p || *r == -p), "poly_sqrt failed at trial " + std::to_string(t));
  }
  return {11, "kernel algebra", 30, 0, c.ok(), c.summary("300 oracle comparisons exact"), Json::object()};
}

using CriterionFn = std::function<CriterionResult(std::uint64_t)>;

inline const std::vector<CriterionFn>& criteria() {
  static const std::vector<CriterionFn> table = {ichino_pfaffian, ichino_matching, rankin_selberg, gross_prasad,
                                                 friedberg_jacquet, trivial_cases,   newton,         centralizer,
                                                 invariance,       fiber_consistency, kernel_algebra};
  return table;
}

}  // namespace acceptance

/// Runs criterion `id` (1-based), timing it. Exceptions count as failures.
inline CriterionResult run_criterion(unsigned id, std::uint64_t seed = 0) {
  const auto& table = acceptance::criteria();
  if (id < 1 || id > table.size()) throw error("no acceptance criterion " + std::to_string(id));
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](seed);
  } catch (const std::exception& e) {
    r = CriterionResult{id, "criterion " + std::to_string(id), 0, 0, false, std::string("exception: ") + e.what(), Json::object()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.budget_seconds == 0) r.budget_seconds = 1;
  return r;
}

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0) {
  std::vector<CriterionResult> out;
  for (unsigned id = 1; id <= acceptance::criteria().size(); ++id) out.push_back(run_criterion(id, seed));
  return out;
}

/// "[PASS]  3  Rankin-Selberg n = 1, 2, 3  (0.41 s / 120 s)  detail"
inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed() ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? " " : "") << r.id << "  " << r.title << "  (";
  os.setf(std::ios::fixed);
  os.precision(2);
  os << r.seconds << " s / " << r.budget_seconds << " s)  " << r.detail;
  if (r.checks_passed && !r.passed()) os << "  [over budget]";
  return os.str();
}

}  // namespace pfaffcheck
