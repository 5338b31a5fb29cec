#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pfaffcheck/errors.hpp"
#include "pfaffcheck/multipoly.hpp"

namespace pfaffcheck {

/// Weakly decreasing tuple of nonnegative integers. Trailing zeros are
/// padding and do not change the partition.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    if (!std::is_sorted(parts_.rbegin(), parts_.rend()))
      throw error("partition parts must be weakly decreasing: " + to_string());
  }
  Partition(std::initializer_list<unsigned> parts) : Partition(std::vector<unsigned>(parts)) {}

  const std::vector<unsigned>& parts() const noexcept { return parts_; }

  /// Number of nonzero parts.
  std::size_t length() const {
    return static_cast<std::size_t>(std::count_if(parts_.begin(), parts_.end(), [](unsigned p) { return p > 0; }));
  }

  unsigned size() const {
    unsigned s = 0;
    for (auto p : parts_) s += p;
    return s;
  }

  Partition trimmed() const {
    std::vector<unsigned> p = parts_;
    while (!p.empty() && p.back() == 0) p.pop_back();
    return Partition(std::move(p));
  }

  /// Zero-padded (or zero-trimmed) to exactly `n` entries.
  std::vector<unsigned> padded(std::size_t n) const {
    if (length() > n) throw error("partition " + to_string() + " has more than " + std::to_string(n) + " parts");
    std::vector<unsigned> p(n, 0);
    std::copy_n(parts_.begin(), std::min(n, parts_.size()), p.begin());
    return p;
  }

  unsigned multiplicity(unsigned k, std::size_t ambient) const {
    auto p = padded(ambient);
    return static_cast<unsigned>(std::count(p.begin(), p.end(), k));
  }

  bool operator==(const Partition& o) const { return trimmed().parts_ == o.trimmed().parts_; }

  /// "(3,1,1)"; the empty partition is "()".
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  static Partition parse(const std::string& text) {
    std::string t;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw parse_error("partition must look like (3,1): '" + text + "'");
    t = t.substr(1, t.size() - 2);
    std::vector<unsigned> parts;
    std::size_t pos = 0;
    while (pos < t.size()) {
      std::size_t end = t.find(',', pos);
      if (end == std::string::npos) end = t.size();
      std::string tok = t.substr(pos, end - pos);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw parse_error("bad partition part '" + tok + "' in '" + text + "'");
      parts.push_back(static_cast<unsigned>(std::stoul(tok)));
      pos = end + 1;
      if (end < t.size() && pos == t.size()) throw parse_error("trailing comma in '" + text + "'");
    }
    if (!std::is_sorted(parts.rbegin(), parts.rend())) throw parse_error("partition not weakly decreasing: '" + text + "'");
    return Partition(std::move(parts));
  }

 private:
  std::vector<unsigned> parts_;
};

/// Sorted insertion of k (the partition mu(k)).
inline Partition mu_insert(const Partition& mu, unsigned k) {
  std::vector<unsigned> p = mu.trimmed().parts();
  p.insert(std::upper_bound(p.begin(), p.end(), k, std::greater<>()), k);
  return Partition(std::move(p)).trimmed();
}

/// Removes one copy of a nonzero part k; inverse of mu_insert.
inline Partition mu_remove(const Partition& mu, unsigned k) {
  std::vector<unsigned> p = mu.trimmed().parts();
  if (k == 0) return Partition(p);
  auto it = std::find(p.begin(), p.end(), k);
  if (it == p.end()) throw error("part " + std::to_string(k) + " not in " + mu.to_string());
  p.erase(it);
  return Partition(std::move(p));
}

/// All partitions with at most `rows` parts, each at most `cols`, padded to
/// `rows` entries, in ascending lexicographic order of the padded tuple.
inline std::vector<Partition> partitions_in_rect(unsigned rows, unsigned cols) {
  std::vector<Partition> out;
  std::vector<unsigned> cur(rows);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned bound) {
    if (pos == rows) {
      out.emplace_back(cur);
      return;
    }
    for (unsigned v = 0; v <= bound; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  if (rows == 0) {
    out.emplace_back();
    return out;
  }
  // Enumerate by first part so the outer order is ascending as well.
  for (unsigned first = 0; first <= cols; ++first) {
    cur[0] = first;
    rec(1, first);
  }
  return out;
}

/// (cols - lambda_rows, ..., cols - lambda_1).
inline Partition complement_partition(const Partition& lambda, unsigned rows, unsigned cols) {
  auto p = lambda.padded(rows);
  if (!p.empty() && p.front() > cols)
    throw error("partition " + lambda.to_string() + " exceeds " + std::to_string(rows) + "x" + std::to_string(cols));
  std::vector<unsigned> out(rows);
  for (unsigned i = 0; i < rows; ++i) out[i] = cols - p[rows - 1 - i];
  return Partition(std::move(out));
}

/// 1 + multiplicity of k in mu zero-padded to `ambient` entries.
inline unsigned aug_multiplicity(const Partition& mu, unsigned k, std::size_t ambient) {
  return 1 + mu.multiplicity(k, ambient);
}

/// Names "alpha1".."alphaN" for a variable family.
inline std::vector<std::string> family_names(const std::string& family, unsigned n) {
  std::vector<std::string> v;
  for (unsigned i = 1; i <= n; ++i) v.push_back(family + std::to_string(i));
  return v;
}

inline ContextPtr family_context(const std::string& family, unsigned n) { return make_context(family_names(family, n)); }

/// A polynomial together with the variable family it is symmetric in.
struct SymPolyHandle {
  std::string family;
  unsigned n = 0;
  MultiPoly poly;

  std::vector<std::string> variables() const { return family_names(family, n); }
};

/// Elementary symmetric polynomial e_k over the listed variables of `ctx`.
inline MultiPoly elementary_in(const ContextPtr& ctx, const std::vector<std::string>& vars, unsigned k) {
  // e_k via the recurrence over prefixes: E[j] holds e_j of the prefix.
  std::vector<MultiPoly> e(k + 1, MultiPoly(ctx));
  e[0] = MultiPoly::constant(ctx, 1);
  for (const auto& v : vars) {
    MultiPoly x = MultiPoly::variable(ctx, v);
    for (unsigned j = k; j >= 1; --j) e[j] = e[j] + e[j - 1] * x;
  }
  return e[k];
}

inline SymPolyHandle elementary_sym(unsigned k, const std::string& family, unsigned n) {
  auto ctx = family_context(family, n);
  return SymPolyHandle{family, n, elementary_in(ctx, family_names(family, n), k)};
}

/// e_k of the family with variable `omit` (1-based) removed. The polynomial
/// lives in the full family context.
inline SymPolyHandle elementary_sym_hat(unsigned k, const std::string& family, unsigned n, unsigned omit) {
  if (omit < 1 || omit > n) throw error("omitted index " + std::to_string(omit) + " out of range 1.." + std::to_string(n));
  auto ctx = family_context(family, n);
  auto names = family_names(family, n);
  names.erase(names.begin() + (omit - 1));
  return SymPolyHandle{family, n, elementary_in(ctx, names, k)};
}

/// Monomial symmetric function m_lambda over the listed variables of `ctx`.
inline MultiPoly monomial_sym_in(const ContextPtr& ctx, const std::vector<std::string>& vars, const Partition& lambda) {
  auto exps = lambda.padded(vars.size());
  std::sort(exps.begin(), exps.end());
  std::vector<std::size_t> idx;
  for (const auto& v : vars) {
    auto i = ctx->index_of(v);
    if (!i) throw missing_variable(v);
    idx.push_back(*i);
  }
  std::vector<Term> terms;
  do {
    Monomial m;
    for (std::size_t i = 0; i < vars.size(); ++i) m.set(idx[i], static_cast<std::uint16_t>(exps[i]));
    terms.push_back(Term{m, Rational(1)});
  } while (std::next_permutation(exps.begin(), exps.end()));
  return MultiPoly::from_terms(ctx, std::move(terms));
}

inline SymPolyHandle monomial_sym(const Partition& lambda, const std::string& family, unsigned n) {
  if (lambda.length() > n)
    throw error("partition " + lambda.to_string() + " is too long for " + std::to_string(n) + " variables");
  auto ctx = family_context(family, n);
  return SymPolyHandle{family, n, monomial_sym_in(ctx, family_names(family, n), lambda)};
}

/// Invariance under the adjacent transpositions of `vars`.
inline bool is_symmetric_in(const MultiPoly& p, const std::vector<std::string>& vars) {
  const auto& ctx = p.context();
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    auto a = ctx->index_of(vars[i]);
    auto b = ctx->index_of(vars[i + 1]);
    if (!a || !b) throw missing_variable(!a ? vars[i] : vars[i + 1]);
    std::vector<Term> swapped;
    swapped.reserve(p.size());
    for (const auto& t : p.terms()) {
      Monomial m = t.mono;
      auto ea = m.exp[*a], eb = m.exp[*b];
      m.exp[*a] = eb;
      m.exp[*b] = ea;
      swapped.push_back(Term{m, t.coeff});
    }
    if (MultiPoly::from_terms(ctx, std::move(swapped)) != p) return false;
  }
  return true;
}

/// Rewrites a polynomial symmetric in `vars` as a polynomial in fresh
/// variables `e_names` standing for e_1(vars)..e_n(vars). Other variables of
/// the input are carried along as coefficients; the result context is the
/// non-family variables followed by `e_names`.
///
/// Classical algorithm: subtract c * e_1^{l1-l2} ... e_n^{ln} for the graded
/// lex leading exponent l of the family part until nothing remains.
inline MultiPoly elem_expand(const MultiPoly& p, const std::vector<std::string>& vars,
                             const std::vector<std::string>& e_names) {
  if (e_names.size() != vars.size()) throw dimension_mismatch("need one e-variable per family variable");
  if (!is_symmetric_in(p, vars)) throw not_symmetric("polynomial is not symmetric in its family: " + p.to_string());
  const auto& ctx = p.context();
  const std::size_t n = vars.size();
  std::vector<std::size_t> fam;
  for (const auto& v : vars) fam.push_back(*ctx->index_of(v));
  std::vector<bool> in_family(ctx->size(), false);
  for (auto i : fam) in_family[i] = true;

  std::vector<std::string> rest_names;
  std::vector<std::size_t> rest_idx;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    if (!in_family[i]) {
      rest_names.push_back(ctx->name(i));
      rest_idx.push_back(i);
    }
  auto coeff_ctx = make_context(rest_names);
  auto fam_ctx = make_context(vars);
  std::vector<std::string> out_names = rest_names;
  for (const auto& e : e_names) {
    if (coeff_ctx->index_of(e)) throw context_mismatch("e-variable '" + e + "' clashes with an input variable");
    out_names.push_back(e);
  }
  auto out_ctx = make_context(out_names);

  using Key = std::vector<std::uint16_t>;
  auto key_greater = [](const Key& a, const Key& b) {
    unsigned da = 0, db = 0;
    for (auto x : a) da += x;
    for (auto x : b) db += x;
    if (da != db) return da > db;
    return a > b;
  };
  std::map<Key, std::vector<Term>, decltype(key_greater)> buckets(key_greater);
  for (const auto& t : p.terms()) {
    Key k(n);
    Monomial rest;
    for (std::size_t i = 0; i < n; ++i) k[i] = t.mono.exp[fam[i]];
    for (std::size_t j = 0; j < rest_idx.size(); ++j) rest.set(j, t.mono.exp[rest_idx[j]]);
    buckets[k].push_back(Term{rest, t.coeff});
  }
  std::map<Key, MultiPoly, decltype(key_greater)> work(key_greater);
  for (auto& [k, terms] : buckets) work.emplace(k, MultiPoly::from_terms(coeff_ctx, std::move(terms)));

  std::vector<MultiPoly> e_fam;
  for (std::size_t k = 1; k <= n; ++k) e_fam.push_back(elementary_in(fam_ctx, vars, static_cast<unsigned>(k)));
  std::map<Key, MultiPoly> product_cache;
  auto e_product = [&](const Key& powers) -> const MultiPoly& {
    auto it = product_cache.find(powers);
    if (it != product_cache.end()) return it->second;
    MultiPoly prod = MultiPoly::constant(fam_ctx, 1);
    for (std::size_t i = 0; i < n; ++i)
      if (powers[i]) prod = prod * e_fam[i].pow(powers[i]);
    return product_cache.emplace(powers, std::move(prod)).first->second;
  };

  std::vector<Term> out_terms;
  while (!work.empty()) {
    auto it = work.begin();
    Key lead = it->first;
    MultiPoly c = it->second;
    Key powers(n);
    for (std::size_t i = 0; i < n; ++i) {
      unsigned next = i + 1 < n ? lead[i + 1] : 0;
      if (lead[i] < next) throw internal_error("elem_expand: leading exponent is not a partition");
      powers[i] = static_cast<std::uint16_t>(lead[i] - next);
    }
    Monomial e_mono;
    for (std::size_t i = 0; i < n; ++i) e_mono.set(rest_names.size() + i, powers[i]);
    for (const auto& t : c.terms()) {
      Monomial m = e_mono;
      for (std::size_t j = 0; j < rest_names.size(); ++j)
        if (t.mono.exp[j]) m.set(j, t.mono.exp[j]);
      out_terms.push_back(Term{m, t.coeff});
    }
    for (const auto& t : e_product(powers).terms()) {
      Key k(n);
      for (std::size_t i = 0; i < n; ++i) k[i] = t.mono.exp[i];
      auto w = work.find(k);
      MultiPoly delta = c * t.coeff;
      if (w == work.end()) {
        work.emplace(k, -delta);
      } else {
        w->second = w->second - delta;
        if (w->second.is_zero()) work.erase(w);
      }
    }
  }
  return MultiPoly::from_terms(out_ctx, std::move(out_terms));
}

inline MultiPoly elem_expand(const SymPolyHandle& h, const std::vector<std::string>& e_names) {
  return elem_expand(h.poly, h.variables(), e_names);
}

/// Replaces each family variable x by sqrt(x): every exponent of a family
/// variable must be even and is halved. Used for families whose symmetric
/// functions are naturally functions of the squares.
inline MultiPoly halve_exponents(const MultiPoly& p, const std::vector<std::string>& vars) {
  const auto& ctx = p.context();
  std::vector<std::size_t> idx;
  for (const auto& v : vars) idx.push_back(*ctx->index_of(v));
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    for (auto i : idx) {
      if (m.exp[i] % 2) throw not_symmetric("odd power of " + ctx->name(i) + " where only squares may occur");
      m.set(i, static_cast<std::uint16_t>(m.exp[i] / 2));
    }
    terms.push_back(Term{m, t.coeff});
  }
  return MultiPoly::from_terms(ctx, std::move(terms));
}

/// Product-expansion law:
///   prod_j (sum_k c_k x_j^(scale*k)) = sum_{kappa in n x m} m_{scale*kappa}(x) prod_i c_{kappa_i}
/// where m = coeffs.size()-1. Each m_kappa carries unit coefficients.
inline MultiPoly product_expansion(const std::vector<MultiPoly>& coeffs, const ContextPtr& ctx,
                                   const std::vector<std::string>& vars, unsigned scale = 1) {
  const unsigned n = static_cast<unsigned>(vars.size());
  const unsigned m = static_cast<unsigned>(coeffs.size()) - 1;
  MultiPoly sum(ctx);
  for (const auto& kappa : partitions_in_rect(n, m)) {
    std::vector<unsigned> scaled;
    for (auto k : kappa.parts()) scaled.push_back(k * scale);
    MultiPoly term = monomial_sym_in(ctx, vars, Partition(scaled));
    for (auto k : kappa.parts()) term = term * coeffs[k].rebase(ctx);
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Generalized Newton identities.

struct NewtonTermFactor {
  Partition mu;
  unsigned k = 0;
  unsigned factor = 1;
};

namespace detail {

struct NewtonSetup {
  ContextPtr ctx;
  std::vector<std::string> vars;
  std::vector<MultiPoly> e;  // e_0..e_{n+1} (e_{n+1} = 0)
};

inline NewtonSetup newton_setup(unsigned n) {
  NewtonSetup s;
  s.vars = family_names("alpha", n);
  s.ctx = make_context(s.vars);
  for (unsigned k = 0; k <= n + 1; ++k) s.e.push_back(elementary_in(s.ctx, s.vars, k));
  return s;
}

inline void check_mu(const Partition& mu, unsigned n) {
  if (n == 0) throw error("Newton identity needs n >= 1");
  if (mu.length() > n - 1)
    throw error("partition " + mu.to_string() + " has more than n-1 = " + std::to_string(n - 1) + " parts");
}

/// sum_j m_mu(alpha without j) * alpha_j^shift * f(alpha_j), with f the monic
/// polynomial whose roots are the alphas. Identically zero.
inline MultiPoly newton_oracle(const NewtonSetup& s, const Partition& mu, unsigned n, unsigned shift) {
  MultiPoly total(s.ctx);
  for (unsigned j = 0; j < n; ++j) {
    std::vector<std::string> hat = s.vars;
    hat.erase(hat.begin() + j);
    MultiPoly m_hat = monomial_sym_in(s.ctx, hat, mu);
    MultiPoly x = MultiPoly::variable(s.ctx, s.vars[j]);
    MultiPoly f(s.ctx);
    for (unsigned k = 0; k <= n; ++k) {
      MultiPoly term = s.e[n - k] * x.pow(k + shift);
      f = ((n - k) % 2) ? f - term : f + term;
    }
    total += m_hat * f;
  }
  return total;
}

}  // namespace detail

/// Residual of the generalized Newton identity in n variables.
///
/// corrected:   sum_k (-1)^(n-k) aug(mu,k,n-1) m_{mu(k)} e_{n-k}  minus the
///              oracle sum_j m_mu(alpha^j) f(alpha_j); identically zero.
/// uncorrected: the plain sum_k (-1)^(n-k) m_{mu(k)} e_{n-k}, with no
///              multiplicity factor.
inline MultiPoly newton_residual(const Partition& mu, unsigned n, bool corrected) {
  detail::check_mu(mu, n);
  auto s = detail::newton_setup(n);
  MultiPoly sum(s.ctx);
  for (unsigned k = 0; k <= n; ++k) {
    MultiPoly term = monomial_sym_in(s.ctx, s.vars, mu_insert(mu, k)) * s.e[n - k];
    if (corrected) term = term * Rational(aug_multiplicity(mu, k, n - 1));
    sum = ((n - k) % 2) ? sum - term : sum + term;
  }
  if (!corrected) return sum;
  return sum - detail::newton_oracle(s, mu, n, 0);
}

/// Residual of the companion identity that solves for m_{mu(n+1)}:
///   sum_{k<n} (-1)^(n-k) c_k m_{mu(k)} (e_{n-k} e_1 - e_{n+1-k}) + c_{n+1} m_{mu(n+1)}
/// with c_k = aug(mu,k,n-1) when corrected, and the plain form
///   sum_{k<n} (-1)^(n-k) m_{mu(k)} (e_{n-k} e_1 - e_{n+1-k}) - m_{mu(n+1)}
/// otherwise.
inline MultiPoly newton_corollary_residual(const Partition& mu, unsigned n, bool corrected) {
  detail::check_mu(mu, n);
  auto s = detail::newton_setup(n);
  MultiPoly sum(s.ctx);
  for (unsigned k = 0; k < n; ++k) {
    MultiPoly factor = s.e[n - k] * s.e[1] - s.e[n + 1 - k];
    MultiPoly term = monomial_sym_in(s.ctx, s.vars, mu_insert(mu, k)) * factor;
    if (corrected) term = term * Rational(aug_multiplicity(mu, k, n - 1));
    sum = ((n - k) % 2) ? sum - term : sum + term;
  }
  MultiPoly top = monomial_sym_in(s.ctx, s.vars, mu_insert(mu, n + 1));
  if (corrected) return sum + top * Rational(aug_multiplicity(mu, n + 1, n - 1));
  return sum - top;
}

/// Every (mu, k) with k = 0..n whose multiplicity factor differs from 1.
inline std::vector<NewtonTermFactor> newton_factor_table(const Partition& mu, unsigned n) {
  detail::check_mu(mu, n);
  std::vector<NewtonTermFactor> out;
  for (unsigned k = 0; k <= n; ++k) {
    unsigned f = aug_multiplicity(mu, k, n - 1);
    if (f != 1) out.push_back({mu.trimmed(), k, f});
  }
  return out;
}

}  // namespace pfaffcheck
