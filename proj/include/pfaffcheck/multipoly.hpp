#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfaffcheck/errors.hpp"
#include "pfaffcheck/rational.hpp"

namespace pfaffcheck {

/// Ordered list of distinct variable names. The order is the variable
/// priority of the graded lexicographic monomial order.
class VarContext {
 public:
  explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], i).second)
        throw context_mismatch("duplicate variable name '" + names_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const VarContext& other) const { return names_ == other.names_; }

  /// True iff this list is an order-preserving subsequence of `other`.
  bool embeds_into(const VarContext& other) const {
    std::size_t j = 0;
    for (const auto& n : names_) {
      while (j < other.names_.size() && other.names_[j] != n) ++j;
      if (j == other.names_.size()) return false;
      ++j;
    }
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline ContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const VarContext>(std::move(names));
}

/// Concatenation of two contexts, skipping names of `b` already in `a`.
inline ContextPtr concat_contexts(const VarContext& a, const VarContext& b) {
  std::vector<std::string> names = a.names();
  for (const auto& n : b.names())
    if (!a.index_of(n)) names.push_back(n);
  return make_context(std::move(names));
}

/// Exponent vector with inline storage.
struct Monomial {
  static constexpr std::size_t kMaxVars = 48;
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  bool operator==(const Monomial& o) const { return degree == o.degree && exp == o.exp; }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      std::uint32_t e = std::uint32_t(exp[i]) + o.exp[i];
      if (e > 0xFFFFu) throw error("exponent overflow");
      r.exp[i] = static_cast<std::uint16_t>(e);
    }
    r.degree = degree + o.degree;
    return r;
  }

  /// Quotient; caller guarantees o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] - o.exp[i]);
    r.degree = degree - o.degree;
    return r;
  }

  void set(std::size_t var, std::uint16_t e) {
    degree = degree - exp[var] + e;
    exp[var] = e;
  }
};

/// Graded lexicographic "a comes before b" (a is larger).
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  return a.exp > b.exp;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m.exp) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Term {
  Monomial mono;
  Rational coeff;

  bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
class MultiPoly {
 public:
  explicit MultiPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw error("null variable context");
    if (ctx_->size() > Monomial::kMaxVars) throw error("too many variables in context");
  }

  static MultiPoly constant(ContextPtr ctx, const Rational& c) {
    MultiPoly p(std::move(ctx));
    if (c != 0) p.terms_.push_back(Term{Monomial{}, c});
    return p;
  }

  static MultiPoly variable(ContextPtr ctx, std::string_view name) {
    auto idx = ctx->index_of(name);
    if (!idx) throw missing_variable(std::string(name));
    MultiPoly p(std::move(ctx));
    Monomial m;
    m.set(*idx, 1);
    p.terms_.push_back(Term{m, Rational(1)});
    return p;
  }

  static MultiPoly monomial(ContextPtr ctx, const Monomial& m, const Rational& c) {
    MultiPoly p(std::move(ctx));
    if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
  }

  /// Builds from unsorted terms, combining duplicates.
  static MultiPoly from_terms(ContextPtr ctx, std::vector<Term> terms) {
    MultiPoly p(std::move(ctx));
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
        if (p.terms_.back().coeff == 0) p.terms_.pop_back();
      } else if (t.coeff != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }

  Rational constant_value() const {
    if (!is_constant()) throw symbolic_input("polynomial is not constant: " + to_string());
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw error("leading term of zero polynomial");
    return terms_.front();
  }

  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree; }

  std::uint32_t min_degree() const {
    std::uint32_t d = ~0u;
    for (const auto& t : terms_) d = std::min(d, t.mono.degree);
    return terms_.empty() ? 0 : d;
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
    return d;
  }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return Rational(0);
  }

  /// Names of variables with a nonzero exponent somewhere.
  std::vector<std::string> used_variables() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ctx_->size(); ++i)
      if (degree_in(i) > 0) out.push_back(ctx_->name(i));
    return out;
  }

  /// Re-expresses the polynomial over `target`, which must contain every used
  /// variable (any order).
  MultiPoly rebase(const ContextPtr& target) const {
    if (*target == *ctx_) return with_context(target);
    std::vector<std::size_t> map(ctx_->size(), Monomial::kMaxVars);
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      auto j = target->index_of(ctx_->name(i));
      if (j) map[i] = *j;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ctx_->size(); ++i) {
        if (t.mono.exp[i] == 0) continue;
        if (map[i] == Monomial::kMaxVars) throw missing_variable(ctx_->name(i));
        m.set(map[i], t.mono.exp[i]);
      }
      out.push_back(Term{m, t.coeff});
    }
    return from_terms(target, std::move(out));
  }

  // Arithmetic. Mixed contexts align when one variable list is an
  // order-preserving sub-list of the other.
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return add_scaled(a, b, 1); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return add_scaled(a, b, -1); }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }

  friend MultiPoly operator*(const MultiPoly& a, const Rational& c) {
    if (c == 0) return MultiPoly(a.ctx_);
    MultiPoly r = a;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  friend MultiPoly operator*(const Rational& c, const MultiPoly& a) { return a * c; }
  friend MultiPoly operator+(const MultiPoly& a, const Rational& c) { return a + constant(a.ctx_, c); }
  friend MultiPoly operator-(const MultiPoly& a, const Rational& c) { return a - constant(a.ctx_, c); }

  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(ctx_, 1);
    MultiPoly base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  /// Multiplies by a single term; preserves order since grlex is a monomial order.
  MultiPoly mul_term(const Monomial& m, const Rational& c) const {
    MultiPoly r(ctx_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coeff * c});
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.ctx_ == b.ctx_ || *a.ctx_ == *b.ctx_) return a.terms_ == b.terms_;
    auto ctx = common_context(a.ctx_, b.ctx_);
    return a.embed(ctx).terms_ == b.embed(ctx).terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Exact evaluation; every used variable needs a value.
  Rational eval(const std::map<std::string, Rational>& point) const {
    std::vector<std::vector<Rational>> powers(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      unsigned d = degree_in(i);
      if (d == 0) continue;
      auto it = point.find(ctx_->name(i));
      if (it == point.end()) throw missing_variable(ctx_->name(i));
      powers[i].resize(d + 1);
      powers[i][0] = 1;
      for (unsigned k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * it->second;
    }
    Rational sum(0);
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < ctx_->size(); ++i)
        if (t.mono.exp[i]) v *= powers[i][t.mono.exp[i]];
      sum += v;
    }
    return sum;
  }

  /// Ring homomorphism sending each used variable to its image. Images must
  /// share (or align to) one context, which becomes the result's context.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& images) const {
    for (const auto& name : used_variables())
      if (!images.count(name)) throw missing_variable(name);
    ContextPtr target;
    for (const auto& [name, img] : images) target = target ? common_context(target, img.context()) : img.context();
    if (!target) target = ctx_;
    return substitute(images, target);
  }

  /// As above, with an explicit result context. Variables without an image
  /// map to the same-named variable of `target` when it has one.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& images, const ContextPtr& target) const {
    std::vector<std::optional<MultiPoly>> img(ctx_->size());
    std::vector<std::vector<MultiPoly>> cache(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      if (degree_in(i) == 0) continue;
      auto it = images.find(ctx_->name(i));
      if (it != images.end()) {
        img[i] = it->second.rebase(target);
      } else if (target->index_of(ctx_->name(i))) {
        img[i] = variable(target, ctx_->name(i));
      } else {
        throw missing_variable(ctx_->name(i));
      }
      cache[i].push_back(constant(target, 1));
    }
    auto power = [&](std::size_t i, unsigned e) -> const MultiPoly& {
      while (cache[i].size() <= e) cache[i].push_back(cache[i].back() * *img[i]);
      return cache[i][e];
    };
    MultiPoly out(target);
    std::vector<Term> acc;
    for (const auto& t : terms_) {
      MultiPoly v = constant(target, t.coeff);
      for (std::size_t i = 0; i < ctx_->size(); ++i)
        if (t.mono.exp[i]) v = v * power(i, t.mono.exp[i]);
      for (auto& vt : v.terms_) acc.push_back(std::move(vt));
    }
    return from_terms(target, std::move(acc));
  }

  /// Quotient when `divisor` divides exactly, otherwise nullopt.
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw error("division by zero polynomial");
    auto ctx = common_context(ctx_, divisor.ctx_);
    MultiPoly rem = embed(ctx);
    MultiPoly d = divisor.embed(ctx);
    const Term& lead = d.terms_.front();
    std::vector<Term> quotient;
    while (!rem.is_zero()) {
      const Term& lt = rem.terms_.front();
      if (!lead.mono.divides(lt.mono)) return std::nullopt;
      Monomial qm = lt.mono / lead.mono;
      Rational qc = lt.coeff / lead.coeff;
      rem = add_scaled(rem, d.mul_term(qm, qc), -1);
      quotient.push_back(Term{qm, qc});
    }
    return from_terms(ctx, std::move(quotient));
  }

  /// Canonical text, e.g. "-3/4*a1^2*b2 + b1 - 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      bool neg = sgn(t.coeff) < 0;
      Rational mag = abs(t.coeff);
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < ctx_->size(); ++i) {
        if (!t.mono.exp[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += ctx_->name(i);
        if (t.mono.exp[i] > 1) mono += "^" + std::to_string(t.mono.exp[i]);
      }
      if (mono.empty())
        out += mag.get_str();
      else if (mag == 1)
        out += mono;
      else
        out += mag.get_str() + "*" + mono;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

  static ContextPtr common_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b || *a == *b) return a;
    if (a->embeds_into(*b)) return b;
    if (b->embeds_into(*a)) return a;
    throw context_mismatch("cannot align variable lists [" + join(a->names()) + "] and [" + join(b->names()) + "]");
  }

 private:
  ContextPtr ctx_;
  std::vector<Term> terms_;

  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  }

  MultiPoly with_context(const ContextPtr& ctx) const {
    MultiPoly r = *this;
    r.ctx_ = ctx;
    return r;
  }

  /// Order-preserving embedding into a context this one is a sub-list of.
  MultiPoly embed(const ContextPtr& target) const {
    if (target == ctx_ || *target == *ctx_) return with_context(target);
    std::vector<std::size_t> map(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i) map[i] = *target->index_of(ctx_->name(i));
    MultiPoly r(target);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ctx_->size(); ++i)
        if (t.mono.exp[i]) m.set(map[i], t.mono.exp[i]);
      r.terms_.push_back(Term{m, t.coeff});
    }
    return r;
  }

  static MultiPoly add_scaled(const MultiPoly& a0, const MultiPoly& b0, int sign) {
    auto ctx = common_context(a0.ctx_, b0.ctx_);
    const MultiPoly a = a0.embed(ctx);
    const MultiPoly b = b0.embed(ctx);
    MultiPoly r(ctx);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
        r.terms_.push_back(Term{b.terms_[j].mono, sign > 0 ? b.terms_[j].coeff : Rational(-b.terms_[j].coeff)});
        ++j;
      } else {
        Rational c = sign > 0 ? Rational(a.terms_[i].coeff + b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff - b.terms_[j].coeff);
        if (c != 0) r.terms_.push_back(Term{a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static MultiPoly multiply(const MultiPoly& a0, const MultiPoly& b0) {
    auto ctx = common_context(a0.ctx_, b0.ctx_);
    if (a0.is_zero() || b0.is_zero()) return MultiPoly(ctx);
    const MultiPoly a = a0.embed(ctx);
    const MultiPoly b = b0.embed(ctx);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    Rational prod;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        prod = s.coeff * t.coeff;
        auto [it, inserted] = acc.try_emplace(s.mono * t.mono, prod);
        if (!inserted) it->second += prod;
      }
    MultiPoly r(ctx);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back(Term{m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
    return r;
  }
};

/// Nonzero c with p = c*q, when one exists. Two zero polynomials give 1.
inline std::optional<Rational> unit_multiple(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() && q.is_zero()) return Rational(1);
  if (p.is_zero() || q.is_zero()) return std::nullopt;
  auto ctx = MultiPoly::common_context(p.context(), q.context());
  MultiPoly pp = p.rebase(ctx), qq = q.rebase(ctx);
  if (!(pp.leading_term().mono == qq.leading_term().mono)) return std::nullopt;
  Rational c = pp.leading_term().coeff / qq.leading_term().coeff;
  if (pp == qq * c) return c;
  return std::nullopt;
}

/// Square root q with q*q = p, normalized so the leading coefficient is
/// positive. Recursive leading-term extraction; any inexact step means p is
/// not a square over Q.
inline std::optional<MultiPoly> poly_sqrt(const MultiPoly& p) {
  const auto& ctx = p.context();
  if (p.is_zero()) return MultiPoly(ctx);
  const Term& lead = p.leading_term();
  Monomial root_mono;
  for (std::size_t i = 0; i < Monomial::kMaxVars; ++i) {
    if (lead.mono.exp[i] % 2) return std::nullopt;
    root_mono.set(i, static_cast<std::uint16_t>(lead.mono.exp[i] / 2));
  }
  auto root_coeff = rational_sqrt(lead.coeff);
  if (!root_coeff) return std::nullopt;

  const Monomial lead_root = root_mono;
  const Rational twice_lead = 2 * *root_coeff;
  const std::uint32_t floor_degree = p.min_degree();

  MultiPoly q = MultiPoly::monomial(ctx, root_mono, *root_coeff);
  MultiPoly rem = p - q * q;
  Monomial last = root_mono;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term();
    if (!lead_root.divides(lt.mono)) return std::nullopt;
    Monomial m = lt.mono / lead_root;
    if (!grlex_greater(last, m) || 2 * m.degree < floor_degree) return std::nullopt;
    Rational c = lt.coeff / twice_lead;
    MultiPoly t = MultiPoly::monomial(ctx, m, c);
    rem = rem - (q * t) * Rational(2) - t * t;
    q = q + t;
    last = m;
  }
  return q;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, ContextPtr ctx) : s_(text), ctx_(std::move(ctx)) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  std::string_view s_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc(ctx_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    MultiPoly t = term();
    acc = neg ? -t : t;
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  unsigned integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }

  MultiPoly factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    MultiPoly base(ctx_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer num(std::string(s_.substr(start, pos_ - start)));
      Integer den(1);
      std::size_t save = pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected denominator");
        den = Integer(std::string(s_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
      } else {
        pos_ = save;
      }
      base = MultiPoly::constant(ctx_, make_rational(num, den));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!ctx_->index_of(name)) fail("unknown variable '" + name + "'");
      base = MultiPoly::variable(ctx_, name);
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (eat('^')) return base.pow(integer());
    return base;
  }
};

}  // namespace detail

/// Parses canonical (or any sum-of-products) polynomial text over `ctx`.
inline MultiPoly parse_poly(std::string_view text, const ContextPtr& ctx) {
  return detail::PolyParser(text, ctx).parse();
}

}  // namespace pfaffcheck
