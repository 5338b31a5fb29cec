#pragma once

// Independent reference computations for the test suite and the acceptance
// checks. Deliberately naive; nothing in the library depends on them.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pfaffcheck/matrix.hpp"
#include "pfaffcheck/multipoly.hpp"
#include "pfaffcheck/random.hpp"

namespace pfaffcheck::oracle {

/// Laplace expansion along the first row.
inline MultiPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return MultiPoly::constant(m.context(), 1);
  if (n == 1) return m(0, 0);
  MultiPoly sum(m.context());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrix minor(m.context(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor.set(r - 1, cc++, m(r, c));
    MultiPoly t = m(0, j) * cofactor_det(minor);
    sum = (j % 2) ? sum - t : sum + t;
  }
  return sum;
}

/// Term-by-term evaluation with explicit power loops.
inline Rational naive_eval(const MultiPoly& p, const std::map<std::string, Rational>& pt) {
  Rational total(0);
  const auto& ctx = p.context();
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < ctx->size(); ++i)
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) v *= pt.at(ctx->name(i));
    total += v;
  }
  return total;
}

inline MultiPoly random_poly(const ContextPtr& ctx, SplitMix64& rng, unsigned max_degree, unsigned terms,
                             long coeff_bound = 9) {
  MultiPoly p(ctx);
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(rng.range(0, max_degree));
    for (unsigned s = 0; s < budget; ++s) {
      std::size_t v = rng.below(ctx->size());
      m.set(v, static_cast<std::uint16_t>(m.exp[v] + 1));
    }
    p += MultiPoly::monomial(ctx, m, Rational(rng.nonzero(-coeff_bound, coeff_bound)));
  }
  return p;
}

inline std::map<std::string, Rational> random_point(const ContextPtr& ctx, SplitMix64& rng, long bound = 7) {
  std::map<std::string, Rational> pt;
  for (const auto& name : ctx->names()) pt[name] = make_rational(rng.range(-bound, bound), rng.range(1, 3));
  return pt;
}

/// Sum of p over all permutations of `vars`: symmetric by construction.
inline MultiPoly symmetrize(const MultiPoly& p, const std::vector<std::string>& vars) {
  const auto& ctx = p.context();
  std::vector<std::size_t> idx;
  for (const auto& v : vars) idx.push_back(*ctx->index_of(v));
  std::vector<std::size_t> perm(idx.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  MultiPoly total(ctx);
  do {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
      Monomial m = t.mono;
      for (std::size_t i = 0; i < idx.size(); ++i) m.exp[idx[perm[i]]] = t.mono.exp[idx[i]];
      terms.push_back(Term{m, t.coeff});
    }
    total += MultiPoly::from_terms(ctx, std::move(terms));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace pfaffcheck::oracle
