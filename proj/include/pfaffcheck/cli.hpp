#pragma once

// Command-line surface: verify, fiber, newton, selftest. Everything is
// reachable through run() so the tests can drive it with string streams.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "pfaffcheck/acceptance.hpp"
#include "pfaffcheck/report.hpp"

#ifndef PFAFFCHECK_FIXTURES_DIR
#define PFAFFCHECK_FIXTURES_DIR "tests/fixtures"
#endif

namespace pfaffcheck::cli {

enum class Format { text, json };

struct RunConfig {
  std::string command;
  std::string case_name;
  unsigned n = 1;
  std::uint64_t seed = 0;
  unsigned trials = 100;
  Format format = Format::text;
  std::string output;  // empty: standard output
  std::string mu;
  bool corrected = false;
  bool timing = false;
  std::string fixtures = PFAFFCHECK_FIXTURES_DIR;
  bool color = false;
};

class usage_error : public error {
 public:
  using error::error;
};

inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

/// Resolves a CLI case name and checks n against the grid.
inline CaseTag resolve_case(const std::string& name, unsigned n) {
  auto kind = CaseTag::kind_from_name(name);
  if (!kind)
    throw usage_error("unknown case '" + name +
                      "' (expected diagonal, friedberg-jacquet, odd-gl, rankin-selberg, jacquet-ichino, gross-prasad)");
  unsigned hi = grid_max_n(*kind);
  if (n < 1 || n > hi)
    throw usage_error("n = " + std::to_string(n) + " outside 1.." + std::to_string(hi) + " for " + CaseTag(*kind).name());
  return CaseTag(*kind, n);
}

/// Parsed flags echoed in the report. Format and output path are left out so
/// the payload does not depend on where it is written.
inline Json command_echo(const RunConfig& cfg) {
  Json c{{"name", cfg.command}};
  if (cfg.command == "verify" || cfg.command == "fiber") {
    CaseTag tag = resolve_case(cfg.case_name, cfg.n);
    c["case"] = tag.name();
    c["n"] = tag.n;
  }
  if (cfg.command == "fiber" || cfg.command == "selftest") c["seed"] = cfg.seed;
  if (cfg.command == "fiber") c["trials"] = cfg.trials;
  if (cfg.command == "newton") {
    c["mu"] = cfg.mu;
    c["n"] = cfg.n;
    c["corrected"] = cfg.corrected;
  }
  return c;
}

struct Outcome {
  int code = kOk;
  Json results;
  std::string text;
};

namespace detail {

inline std::string paint(const std::string& s, bool ok, bool color) {
  if (!color) return s;
  return std::string(ok ? "\033[32m" : "\033[31m") + s + "\033[0m";
}

inline std::string or_dash(const std::optional<MultiPoly>& p) { return p ? p->to_string() : "-"; }

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

inline std::string rationals_text(const std::vector<Rational>& v) {
  std::vector<std::string> s;
  for (const auto& q : v) s.push_back(to_string(q));
  return "[" + join(s, ", ") + "]";
}

inline std::string diagnostic_text(const FiberDiagnostic& d) {
  std::vector<std::string> z;
  for (auto i : d.zero_indices) z.push_back(std::to_string(i + 1));
  return "uv = " + rationals_text(d.uv_products) + ", zero at {" + join(z, ",") + "}, orbits " +
         std::to_string(d.orbit_count) + ", divisor " + to_string(d.divisor_value);
}

}  // namespace detail

inline Outcome run_verify(const RunConfig& cfg) {
  CaseTag tag = resolve_case(cfg.case_name, cfg.n);
  Outcome o;
  std::ostringstream t;
  t << "case                 " << tag.name() << " n=" << tag.n << " (" << tag.describe() << ")\n";
  try {
    auto [v, rep] = verify_matching(tag);
    o.code = v.matched() ? kOk : kFail;
    o.results = report::verify_json(v, rep);
    t << "status               " << detail::paint(status_name(v.status), v.matched(), cfg.color);
    if (v.unit) t << " (unit " << to_string(*v.unit) << ")";
    t << "\naside_groundtruth    " << rep.aside_groundtruth.to_string() << "\n"
      << "aside_closed         " << detail::or_dash(rep.aside_closed) << "\n"
      << "bside_det            " << rep.bside_det.to_string() << "\n"
      << "bside_polarized_det  " << detail::or_dash(rep.bside_polarized_det) << "\n"
      << "bside_pfaffian       " << rep.bside_pfaffian.to_string() << "\n"
      << "bside_closed         " << detail::or_dash(rep.bside_closed) << "\n";
    if (!v.corrections.empty()) {
      t << "corrections\n";
      for (const auto& c : v.corrections) t << "  " << c.target << ": " << c.name << " (" << c.detail << ")\n";
    }
    for (const auto& [label, vs] : {std::pair{"aside readings", &rep.aside_variants}, std::pair{"bside readings", &rep.bside_variants}}) {
      if (vs->empty()) continue;
      t << label << "\n";
      for (const auto& var : *vs)
        t << "  " << (var.unit ? "match   " : "no match") << "  " << var.label << "\n";
    }
    if (!rep.notes.empty()) {
      t << "notes\n";
      for (const auto& n : rep.notes) t << "  " << n << "\n";
    }
  } catch (const not_a_perfect_square& e) {
    o.code = kFail;
    o.results = report::case_json(tag);
    o.results["error"] = Json{{"kind", "not_a_perfect_square"}, {"witness", e.witness()}};
    t << "status               " << detail::paint("not_a_perfect_square", false, cfg.color) << "\n"
      << "bside_det            " << e.witness() << "\n";
  }
  o.text = t.str();
  return o;
}

inline Outcome run_fiber(const RunConfig& cfg) {
  CaseTag tag = resolve_case(cfg.case_name, cfg.n);
  auto rep = fiber_divisor_consistency(tag, cfg.seed, cfg.trials);
  Outcome o;
  bool ok = rep.violations == 0 && rep.certificate_failures == 0;
  o.code = ok ? kOk : kFail;
  o.results = report::to_json(rep);
  std::ostringstream t;
  t << "case                  " << tag.name() << " n=" << tag.n << " (" << tag.describe() << ")\n"
    << "seed, trials          " << rep.seed << ", " << rep.trials << "\n"
    << "on divisor            " << rep.on_divisor << "\n"
    << "violations            " << detail::paint(std::to_string(rep.violations), rep.violations == 0, cfg.color) << "\n"
    << "certificate unit      " << (rep.certificate_unit ? to_string(*rep.certificate_unit) : "-") << "\n"
    << "certificate failures  " << rep.certificate_failures << "\n";
  for (const auto& d : rep.violation_details) t << "  violation: " << d << "\n";
  if (!rep.examples.empty()) {
    t << "examples\n";
    for (const auto& [label, d] : rep.examples) t << "  " << label << ": " << detail::diagnostic_text(d) << "\n";
  }
  for (const auto& n : rep.notes) t << "note: " << n << "\n";
  o.text = t.str();
  return o;
}

inline Outcome run_newton(const RunConfig& cfg) {
  Partition mu;
  try {
    mu = Partition::parse(cfg.mu);
  } catch (const error& e) {
    throw usage_error(e.what());
  }
  if (cfg.n < 1 || cfg.n > 8) throw usage_error("n must be in 1..8");
  if (mu.length() > cfg.n - 1)
    throw usage_error("partition " + mu.to_string() + " has " + std::to_string(mu.length()) + " parts; at most n-1 = " +
                      std::to_string(cfg.n - 1) + " allowed");
  auto residual = newton_residual(mu, cfg.n, cfg.corrected);
  auto companion = newton_corollary_residual(mu, cfg.n, cfg.corrected);
  auto table = newton_factor_table(mu, cfg.n);
  Outcome o;
  o.code = residual.is_zero() ? kOk : kFail;
  o.results = Json{{"mu", mu.trimmed().to_string()},
                   {"n", cfg.n},
                   {"corrected", cfg.corrected},
                   {"residual", residual.to_string()},
                   {"corollary_residual", companion.to_string()},
                   {"factors", report::factors(table)}};
  std::ostringstream t;
  t << "mu                  " << mu.trimmed().to_string() << ", n=" << cfg.n << (cfg.corrected ? ", corrected" : ", uncorrected")
    << "\nresidual            " << detail::paint(residual.to_string(), residual.is_zero(), cfg.color)
    << "\ncorollary residual  " << companion.to_string() << "\n";
  if (table.empty()) t << "multiplicity factors all 1\n";
  for (const auto& f : table) t << "  k=" << f.k << "  factor " << f.factor << "\n";
  o.text = t.str();
  return o;
}

// ---------------------------------------------------------------------------
// Golden files.

/// Line diff by longest common subsequence; "-" expected, "+" actual.
inline std::string line_diff(const std::string& expected, const std::string& actual) {
  auto lines = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
  };
  auto a = lines(expected), b = lines(actual);
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<unsigned>> L(n + 1, std::vector<unsigned>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;) L[i][j] = a[i] == b[j] ? L[i + 1][j + 1] + 1 : std::max(L[i + 1][j], L[i][j + 1]);
  std::ostringstream os;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      ++i, ++j;
    } else if (j < m && (i == n || L[i][j + 1] >= L[i + 1][j])) {
      os << "@" << j + 1 << " + " << b[j] << "\n";
      ++j;
    } else {
      os << "@" << i + 1 << " - " << a[i] << "\n";
      ++i;
    }
  }
  return os.str();
}

struct FixtureResult {
  std::string file;
  bool ok = false;
  std::string diff;
};

inline std::string render(const RunConfig& cfg, const Outcome& o, std::optional<double> duration);

/// Regenerates every `<command>_<case>_n<N>.json` under `dir` and compares bytes.
inline std::vector<FixtureResult> check_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw error("fixtures directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  static const std::regex pattern(R"((verify|fiber)_([a-z-]+)_n(\d+)\.json)");
  std::vector<FixtureResult> out;
  for (const auto& f : files) {
    FixtureResult r{f.filename().string(), false, ""};
    std::smatch m;
    const std::string name = r.file;
    if (!std::regex_match(name, m, pattern)) {
      r.diff = "unrecognized fixture name";
      out.push_back(r);
      continue;
    }
    RunConfig cfg;
    cfg.command = m[1];
    cfg.case_name = m[2];
    cfg.n = static_cast<unsigned>(std::stoul(m[3]));
    cfg.format = Format::json;
    std::ifstream in(f, std::ios::binary);
    std::string expected((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::string actual;
    try {
      Outcome o = cfg.command == "verify" ? run_verify(cfg) : run_fiber(cfg);
      actual = render(cfg, o, std::nullopt);
    } catch (const std::exception& e) {
      actual = std::string("error: ") + e.what() + "\n";
    }
    r.ok = actual == expected;
    if (!r.ok) r.diff = line_diff(expected, actual);
    out.push_back(r);
  }
  return out;
}

inline Outcome run_selftest(const RunConfig& cfg) {
  Outcome o;
  auto results = run_acceptance(cfg.seed);
  auto fixtures = check_fixtures(cfg.fixtures);
  bool ok = true;
  std::ostringstream t;
  Json crit = Json::array();
  for (const auto& r : results) {
    ok = ok && r.passed();
    std::string line = format_line(r);
    t << detail::paint(line.substr(0, 6), r.passed(), cfg.color) << line.substr(6) << "\n";
    Json j{{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"budget_seconds", r.budget_seconds}};
    if (cfg.timing) j["seconds"] = r.seconds;
    j["detail"] = r.detail;
    j["data"] = r.data;
    crit.push_back(j);
  }
  Json fx = Json::array();
  std::size_t bad = 0;
  for (const auto& f : fixtures) {
    fx.push_back(Json{{"file", f.file}, {"ok", f.ok}});
    if (!f.ok) {
      ++bad;
      ok = false;
      t << detail::paint("[FAIL]", false, cfg.color) << " golden file " << f.file << "\n" << f.diff;
    }
  }
  if (fixtures.empty()) {
    ok = false;
    t << detail::paint("[FAIL]", false, cfg.color) << " no golden files under " << cfg.fixtures << "\n";
  }
  t << (bad || fixtures.empty() ? detail::paint("[FAIL]", false, cfg.color) : detail::paint("[PASS]", true, cfg.color))
    << " golden files: " << fixtures.size() - bad << "/" << fixtures.size() << " identical\n";
  o.code = ok ? kOk : kFail;
  o.results = Json{{"criteria", crit}, {"fixtures", fx}};
  o.text = t.str();
  return o;
}

inline std::string render(const RunConfig& cfg, const Outcome& o, std::optional<double> duration) {
  if (cfg.format == Format::json) return report::envelope(command_echo(cfg), o.results, o.code == kOk, duration).dump(2) + "\n";
  std::string s = o.text;
  if (duration) {
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(3);
    d << "duration            " << *duration << " s\n";
    s += d.str();
  }
  return s;
}

/// Runs one parsed command. Usage errors go to `err` with code 2.
inline int execute(RunConfig cfg, std::ostream& out, std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (cfg.command == "verify" || cfg.command == "fiber") resolve_case(cfg.case_name, cfg.n);
    if (cfg.command == "verify") o = run_verify(cfg);
    else if (cfg.command == "fiber") o = run_fiber(cfg);
    else if (cfg.command == "newton") o = run_newton(cfg);
    else if (cfg.command == "selftest") o = run_selftest(cfg);
    else throw usage_error("unknown command '" + cfg.command + "'");
  } catch (const usage_error& e) {
    err << "pfaffcheck: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "pfaffcheck: " << cfg.command << " failed: " << e.what() << "\n";
    return kFail;
  }
  std::optional<double> duration;
  if (cfg.timing) duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string text = render(cfg, o, duration);
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "pfaffcheck: cannot write " << cfg.output << "\n";
      return kUsage;
    }
    f << text;
  }
  return o.code;
}

/// Full entry point: flag parsing, then execute().
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool tty = false) {
  CLI::App app{"Exact checks of matching divisors for spherical-variety cases", "pfaffcheck"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", cfg.output, "write the report here instead of standard output");
    sub->add_flag("--timing", cfg.timing, "include wall-clock duration");
  };
  auto* verify = app.add_subcommand("verify", "compare the A-side divisor with the B-side Pfaffian");
  verify->add_option("--case", cfg.case_name, "case name")->required();
  verify->add_option("--n", cfg.n, "rank");
  common(verify);

  auto* fiber = app.add_subcommand("fiber", "sample base points and check orbit counts against the divisor");
  fiber->add_option("--case", cfg.case_name, "case name")->required();
  fiber->add_option("--n", cfg.n, "rank");
  fiber->add_option("--seed", cfg.seed, "random seed");
  fiber->add_option("--trials", cfg.trials, "sample count");
  common(fiber);

  auto* newton = app.add_subcommand("newton", "residual of the generalized Newton identity");
  newton->add_option("--mu", cfg.mu, "partition, e.g. \"(3,1)\"")->required();
  newton->add_option("--n", cfg.n, "number of variables")->required();
  newton->add_flag("--corrected", cfg.corrected, "apply the multiplicity factors");
  common(newton);

  auto* selftest = app.add_subcommand("selftest", "run every acceptance criterion and compare golden files");
  selftest->add_option("--fixtures", cfg.fixtures, "golden file directory");
  selftest->add_option("--seed", cfg.seed, "random seed");
  common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.format = format == "json" ? Format::json : Format::text;
  cfg.color = tty && cfg.format == Format::text && (cfg.output.empty() || cfg.output == "-") && std::getenv("NO_COLOR") == nullptr;
  return execute(cfg, out, err);
}

inline bool stdout_is_tty() { return ::isatty(::fileno(stdout)) != 0; }

}  // namespace pfaffcheck::cli
