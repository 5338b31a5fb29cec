#pragma once

// JSON payloads for the CLI. Field names are lower_snake_case, rationals and
// polynomials are canonical text, and key order is fixed, so dumps are
// byte-stable for identical inputs.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "pfaffcheck/divisors.hpp"
#include "pfaffcheck/fibers.hpp"
#include "pfaffcheck/symfun.hpp"

namespace pfaffcheck {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "pfaffcheck";
inline constexpr const char* kToolVersion = "0.1.0";

namespace report {

inline Json text_or_null(const std::optional<MultiPoly>& p) { return p ? Json(p->to_string()) : Json(nullptr); }
inline Json text_or_null(const std::optional<Rational>& q) { return q ? Json(to_string(*q)) : Json(nullptr); }

inline Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Json case_json(const CaseTag& tag) {
  return Json{{"case", tag.name()}, {"n", tag.n}, {"group", tag.describe()}};
}

inline Json to_json(const Correction& c) { return Json{{"target", c.target}, {"name", c.name}, {"detail", c.detail}}; }

inline Json corrections(const std::vector<Correction>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

inline Json to_json(const ClosedFormVariant& v) {
  return Json{{"label", v.label},
              {"corrections", corrections(v.corrections)},
              {"matches", v.unit.has_value()},
              {"unit", text_or_null(v.unit)},
              {"poly", v.poly.to_string()}};
}

inline Json to_json(const MatchVerdict& v) {
  return Json{{"status", status_name(v.status)}, {"unit", text_or_null(v.unit)}, {"corrections", corrections(v.corrections)}};
}

inline Json to_json(const DivisorReport& r) {
  Json av = Json::array(), bv = Json::array();
  for (const auto& v : r.aside_variants) av.push_back(to_json(v));
  for (const auto& v : r.bside_variants) bv.push_back(to_json(v));
  return Json{{"coordinates", coordinate_names(r.tag)},
              {"aside_groundtruth", r.aside_groundtruth.to_string()},
              {"aside_closed", text_or_null(r.aside_closed)},
              {"bside_det", r.bside_det.to_string()},
              {"bside_polarized_det", text_or_null(r.bside_polarized_det)},
              {"bside_pfaffian", r.bside_pfaffian.to_string()},
              {"bside_closed", text_or_null(r.bside_closed)},
              {"aside_variants", av},
              {"bside_variants", bv},
              {"notes", r.notes}};
}

inline Json verify_json(const MatchVerdict& v, const DivisorReport& r) {
  Json out = case_json(r.tag);
  out["verdict"] = to_json(v);
  out["report"] = to_json(r);
  return out;
}

inline Json to_json(const FiberDiagnostic& d) {
  return Json{{"uv_products", rationals(d.uv_products)},
              {"zero_indices", d.zero_indices},
              {"orbit_count", d.orbit_count},
              {"divisor_value", to_string(d.divisor_value)}};
}

inline Json to_json(const ConsistencyReport& r) {
  Json out = case_json(r.tag);
  Json ex = Json::array();
  for (const auto& [label, d] : r.examples) {
    Json e{{"label", label}};
    e.update(to_json(d));
    ex.push_back(e);
  }
  out.update(Json{{"seed", r.seed},
                  {"trials", r.trials},
                  {"on_divisor", r.on_divisor},
                  {"violations", r.violations},
                  {"certificate_unit", text_or_null(r.certificate_unit)},
                  {"certificate_failures", r.certificate_failures},
                  {"violation_details", r.violation_details},
                  {"examples", ex},
                  {"notes", r.notes}});
  return out;
}

inline Json to_json(const InvarianceReport& r) {
  Json out = case_json(r.tag);
  out.update(Json{{"seed", r.seed}, {"trials", r.trials}, {"failures", r.failures}, {"failure_details", r.failure_details}});
  return out;
}

inline Json to_json(const NewtonTermFactor& f) { return Json{{"mu", f.mu.to_string()}, {"k", f.k}, {"factor", f.factor}}; }

inline Json factors(const std::vector<NewtonTermFactor>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_json(f));
  return out;
}

/// Top-level wrapper shared by every command.
inline Json envelope(const Json& command, const Json& results, bool ok, std::optional<double> duration) {
  Json out{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"results", results},
           {"status", ok ? "pass" : "fail"}};
  if (duration) out["duration_seconds"] = *duration;
  return out;
}

}  // namespace report
}  // namespace pfaffcheck
