#include <catch_amalgamated.hpp>

#include "pfaffcheck/oracles.hpp"
#include "pfaffcheck/liealg.hpp"

using namespace pfaffcheck;

namespace {

MultiPoly P(const std::string& s, const ContextPtr& ctx) { return parse_poly(s, ctx); }

/// det(tI - M) by cofactor expansion, returned as the signed list c_i.
std::vector<MultiPoly> charpoly_oracle(const PolyMatrix& m) {
  auto names = m.context()->names();
  names.push_back("t_");
  auto ctx = make_context(names);
  const std::size_t n = m.rows();
  PolyMatrix tm(ctx, n, n);
  auto t = MultiPoly::variable(ctx, "t_");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tm.set(i, j, (i == j ? t : MultiPoly(ctx)) - m(i, j).rebase(ctx));
  MultiPoly det = oracle::cofactor_det(tm);
  // Coefficient of t^(n-k), collected by substituting t -> 0 after dividing.
  std::vector<MultiPoly> c;
  const std::size_t tix = ctx->size() - 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Term> terms;
    for (const auto& term : det.terms())
      if (term.mono.exp[tix] == n - k) {
        Monomial mono = term.mono;
        mono.set(tix, 0);
        terms.push_back(Term{mono, term.coeff});
      }
    MultiPoly coeff = MultiPoly::from_terms(ctx, std::move(terms)).rebase(m.context());
    c.push_back(k % 2 ? -coeff : coeff);
  }
  return c;
}

PolyMatrix numeric(std::initializer_list<std::initializer_list<long>> rows) {
  return PolyMatrix::from_rational(empty_context(), RatMatrix(rows));
}

PolyMatrix conj(const RatMatrix& g, const PolyMatrix& x) {
  auto ctx = x.context();
  return PolyMatrix::from_rational(ctx, g) * x * PolyMatrix::from_rational(ctx, rational_inverse(g));
}

RatMatrix random_invertible(SplitMix64& rng, std::size_t n) {
  while (true) {
    RatMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.range(-4, 4);
    if (rational_det(g) != 0) return g;
  }
}

/// Cayley transform (I - X)^-1 (I + X): a rational element of the group
/// preserving the form that X is skew for.
RatMatrix cayley(const PolyMatrix& x) {
  auto r = x.to_rational();
  auto id = RatMatrix::identity(r.rows());
  return rational_inverse(id - r) * (id + r);
}

}  // namespace

TEST_CASE("characteristic coefficients") {
  auto id = charpoly_coeffs(numeric({{1, 0}, {0, 1}}));
  CHECK(id[0].constant_value() == 2);
  CHECK(id[1].constant_value() == 1);
  auto comp = charpoly_coeffs(numeric({{0, -6}, {1, 5}}));
  CHECK(comp[0].constant_value() == 5);
  CHECK(comp[1].constant_value() == 6);

  auto ctx = make_context({"a", "u", "v"});
  PolyMatrix m(ctx, 3, 3,
               {P("a", ctx), P("0", ctx), P("u", ctx), P("0", ctx), P("-a", ctx), P("v", ctx), P("-v", ctx), P("-u", ctx),
                P("0", ctx)});
  auto c = charpoly_coeffs(m);
  CHECK(c[0].is_zero());
  CHECK(c[1] == P("-a^2 + 2*u*v", ctx));
  CHECK(c[2].is_zero());
  CHECK(c == charpoly_oracle(m));
  CHECK_THROWS_AS(charpoly_coeffs(PolyMatrix(ctx, 2, 3)), not_square);

  SplitMix64 rng(31);
  auto xyz = make_context({"x", "y", "z"});
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
    PolyMatrix r(xyz, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r.set(i, j, oracle::random_poly(xyz, rng, 1, 2));
    CHECK(charpoly_coeffs(r) == charpoly_oracle(r));
  }
}

TEST_CASE("characteristic coefficients of a diagonal matrix are elementary symmetric") {
  for (unsigned n = 1; n <= 5; ++n) {
    auto ctx = family_context("lambda", n);
    std::vector<MultiPoly> diag;
    for (const auto& name : family_names("lambda", n)) diag.push_back(MultiPoly::variable(ctx, name));
    auto c = charpoly_coeffs(PolyMatrix::diagonal(ctx, diag));
    for (unsigned k = 1; k <= n; ++k) CHECK(c[k - 1] == elementary_sym(k, "lambda", n).poly);
  }
}

TEST_CASE("Kronecker products") {
  auto ctx = make_context({"alpha1", "alpha2"});
  CHECK(kronecker_product(PolyMatrix::identity(ctx, 2), PolyMatrix::identity(ctx, 3)) == PolyMatrix::identity(ctx, 6));
  auto a1 = MultiPoly::variable(ctx, "alpha1"), a2 = MultiPoly::variable(ctx, "alpha2");
  CHECK(kronecker_product(PolyMatrix::diagonal(ctx, {a1, a2}), PolyMatrix::identity(ctx, 2)) ==
        PolyMatrix::diagonal(ctx, {a1, a1, a2, a2}));

  SplitMix64 rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_matrix(rng, 2, 2, 5), b = random_matrix(rng, 2, 3, 5);
    auto k = kronecker_product(a, b);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 6; ++j) CHECK(k(i, j) == a(i / 2, j / 3) * b(i % 2, j % 3));
    auto c = random_matrix(rng, 2, 2, 5), d = random_matrix(rng, 3, 2, 5);
    CHECK(kronecker_product(a, b) * kronecker_product(c, d) == kronecker_product(a * c, b * d));
  }
}

TEST_CASE("Kronecker sums") {
  auto e = empty_context();
  CHECK(kronecker_sum(PolyMatrix(e, 2, 2), PolyMatrix(e, 3, 3)).is_zero());
  CHECK_THROWS_AS(kronecker_sum(PolyMatrix(e, 2, 3), PolyMatrix(e, 3, 3)), not_square);

  for (unsigned n = 1; n <= 3; ++n) {
    auto names = family_names("alpha", n);
    for (auto& s : family_names("beta", n + 1)) names.push_back(s);
    auto ctx = make_context(names);
    std::vector<MultiPoly> al, be;
    for (unsigned i = 1; i <= n; ++i) al.push_back(MultiPoly::variable(ctx, "alpha" + std::to_string(i)));
    for (unsigned j = 1; j <= n + 1; ++j) be.push_back(MultiPoly::variable(ctx, "beta" + std::to_string(j)));
    auto s = kronecker_sum(PolyMatrix::diagonal(ctx, al), PolyMatrix::diagonal(ctx, be));
    MultiPoly expected = MultiPoly::constant(ctx, 1);
    for (auto& x : al)
      for (auto& y : be) expected = expected * (x + y);
    CHECK(poly_det(s) == expected);
  }

  auto ctx = make_context({"a1", "a2", "a3"});
  std::vector<PolyMatrix> xs;
  for (auto nm : {"a1", "a2", "a3"}) {
    auto v = MultiPoly::variable(ctx, nm);
    xs.push_back(PolyMatrix::diagonal(ctx, {v, -v}));
  }
  auto k3 = kronecker_sum3(xs[0], xs[1], xs[2]);
  MultiPoly expected = MultiPoly::constant(ctx, 1);
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1})
        expected = expected * (P("a1", ctx) * Rational(s1) + P("a2", ctx) * Rational(s2) + P("a3", ctx) * Rational(s3));
  CHECK(poly_det(k3) == expected);
  CHECK(kronecker_sum3(PolyMatrix(e, 2, 2), PolyMatrix(e, 2, 2), PolyMatrix(e, 2, 2)).is_zero());
  CHECK_THROWS_AS(kronecker_sum3(PolyMatrix(e, 3, 3), PolyMatrix(e, 2, 2), PolyMatrix(e, 2, 2)), dimension_mismatch);

  SplitMix64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    auto x1 = random_matrix(rng, 2, 2, 9), x2 = random_matrix(rng, 2, 2, 9), x3 = random_matrix(rng, 2, 2, 9);
    CHECK(kronecker_sum3(x1, x2, x3).trace() == (x1.trace() + x2.trace() + x3.trace()) * Rational(4));
  }
}

TEST_CASE("Pfaffians") {
  auto ctx = make_context({"x", "y"});
  auto x = P("x", ctx), y = P("y", ctx), z = MultiPoly(ctx);
  PolyMatrix two(ctx, 2, 2, {z, x, -x, z});
  CHECK(skew_pfaffian(two) == x);
  PolyMatrix twoy(ctx, 2, 2, {z, y, -y, z});
  CHECK(skew_pfaffian(block_diagonal(two, twoy)) == x * y);
  CHECK_THROWS_AS(skew_pfaffian(PolyMatrix(ctx, 2, 2, {z, x, x, z})), constraint_violation);

  SplitMix64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_skew(rng, 4, 9);
    auto pf = skew_pfaffian(m);
    CHECK(pf * pf == poly_det(m));
  }
  for (unsigned n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (unsigned i = 0; i < 2 * n; ++i)
      for (unsigned j = i + 1; j < 2 * n; ++j) names.push_back("m" + std::to_string(i) + "_" + std::to_string(j));
    auto sctx = make_context(names);
    PolyMatrix m(sctx, 2 * n, 2 * n);
    for (unsigned i = 0; i < 2 * n; ++i)
      for (unsigned j = i + 1; j < 2 * n; ++j) {
        auto v = MultiPoly::variable(sctx, "m" + std::to_string(i) + "_" + std::to_string(j));
        m.set(i, j, v);
        m.set(j, i, -v);
      }
    auto pf = skew_pfaffian(m);
    CHECK(pf * pf == poly_det(m));
  }
  // Split form: Pf(S M)^2 = det(S) det(M).
  for (unsigned n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      auto m = random_so_split(rng, n, 6);
      auto pf = skew_pfaffian(m, SkewForm::split);
      CHECK(pf * pf == poly_det(m) * Rational(n % 2 ? -1 : 1));
    }
}

TEST_CASE("building h-perp points") {
  auto pt = rankin_selberg_normal_form(1);
  CHECK(pt.x[0].to_string() == "[[alpha1]]");
  CHECK(pt.x[1].to_string() == "[[-alpha1, u1], [v1, d]]");
  validate_hperp(pt);

  auto ji = jacquet_ichino_normal_form();
  auto ctx = ji.context();
  CHECK(ji.x[2] == PolyMatrix(ctx, 2, 2, {P("-w - a", ctx), P("-b", ctx), P("-c", ctx), P("w + a", ctx)}));

  auto e = empty_context();
  auto one = numeric({{1}});
  auto zero = numeric({{0}});
  CHECK_THROWS_AS(make_gross_prasad(one, one, zero, one, one), constraint_violation);
  CHECK_NOTHROW(make_gross_prasad(one, zero, zero, one, one));
  try {
    make_gross_prasad(one, zero, one, one, one);
    FAIL("expected a violation");
  } catch (const constraint_violation& err) {
    CHECK(err.invariant() == "skew C");
  }
  CHECK_THROWS_AS(make_jacquet_ichino(numeric({{1, 0}, {0, 1}}), numeric({{0, 0}, {0, 0}})), constraint_violation);

  std::map<std::string, PolyMatrix> params = {
      {"A", numeric({{1, 2}, {3, 4}})}, {"u", numeric({{1}, {2}})}, {"v", numeric({{0}, {1}})}, {"d", numeric({{5}})}};
  auto rs = build_hperp(CaseTag(CaseKind::RankinSelberg, 2), params);
  CHECK(rs.x[0] == -params.at("A"));
  CHECK_THROWS_AS(build_hperp(CaseTag(CaseKind::RankinSelberg, 3), params), dimension_mismatch);
  params.erase("d");
  CHECK_THROWS_AS(build_hperp(CaseTag(CaseKind::RankinSelberg, 2), params), error);

  SplitMix64 rng(35);
  for (auto kind : {CaseKind::Diagonal, CaseKind::RankinSelberg, CaseKind::GrossPrasadEven, CaseKind::JacquetIchino,
                    CaseKind::FriedbergJacquet, CaseKind::OddGL})
    for (unsigned n = 1; n <= 3; ++n) CHECK_NOTHROW(validate_hperp(random_hperp(CaseTag(kind, n), rng, 5)));

  // A broken point names the violated invariant.
  auto bad = random_hperp(CaseTag(CaseKind::RankinSelberg, 2), rng, 5);
  bad.x[0].set(0, 0, bad.x[0](0, 0) + 1);
  try {
    validate_hperp(bad);
    FAIL("expected a violation");
  } catch (const constraint_violation& err) {
    CHECK(err.invariant() == "block consistency");
  }
}

TEST_CASE("invariant coordinates") {
  auto ji = jacquet_ichino_normal_form();
  auto g = git_coords(ji);
  auto ctx = ji.context();
  CHECK((*g.ichino_d)[0] == P("-w^2", ctx));
  CHECK((*g.ichino_d)[1] == P("-a^2 - b*c", ctx));
  CHECK((*g.ichino_d)[2] == P("-w^2 - 2*w*a - a^2 - b*c", ctx));

  auto rs = rankin_selberg_normal_form(1);
  auto gr = git_coords(rs);
  CHECK(gr.b[0] == P("d - alpha1", rs.context()));
  CHECK(gr.b[1] == P("-alpha1*d - u1*v1", rs.context()));

  auto gp = gross_prasad_normal_form(1);
  auto gg = git_coords(gp);
  CHECK(gg.a[0] == P("-alpha1^2", gp.context()));
  CHECK(gg.b[0] == gg.a[0] + P("2*u1*v1", gp.context()));
  CHECK(gg.pfaffian_pn->total_degree() == 1);

  auto fj = friedberg_jacquet_normal_form(1);
  CHECK(git_coords(fj).b[0] == P("-u1*v1", fj.context()));
}

TEST_CASE("the printed 5x5 fixture differs in sign from the exterior-power trace") {
  // x2 for n = 2 at A = diag(alpha, -alpha), B = C = 0 with u, v free. The
  // exterior-power trace gives b1 = -2 alpha^2 + 2(u1 v1 + u2 v2); the
  // printed invariant 2 alpha^2 - u1^2 - u2^2 - v1^2 - v2^2 is written in a
  // different basis. At u = v = 0 the two differ exactly by the sign (-1)^i.
  auto ctx = make_context({"alpha"});
  auto al = MultiPoly::variable(ctx, "alpha");
  auto x2 = make_gross_prasad(PolyMatrix::diagonal(ctx, {al, -al}), PolyMatrix(ctx, 2, 2), PolyMatrix(ctx, 2, 2),
                              PolyMatrix(ctx, 2, 1), PolyMatrix(ctx, 2, 1))
                .x[1];
  auto c = charpoly_coeffs(x2);
  // Principal-minor oracle for c_2.
  MultiPoly minors(ctx);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) minors += x2(i, i) * x2(j, j) - x2(i, j) * x2(j, i);
  CHECK(c[1] == minors);
  CHECK(c[1] == P("-2*alpha^2", ctx));
  CHECK(c[3] == P("alpha^4", ctx));
}

TEST_CASE("coordinates are conjugation invariant") {
  SplitMix64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    for (unsigned n = 1; n <= 3; ++n) {
      auto pt = random_hperp(CaseTag(CaseKind::RankinSelberg, n), rng, 6);
      auto g = random_invertible(rng, n);
      RatMatrix big = RatMatrix::identity(n + 1);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) big(i, j) = g(i, j);
      HPerpPoint moved = pt;
      moved.x = {conj(g, pt.x[0]), conj(big, pt.x[1])};
      validate_hperp(moved);
      auto c0 = git_coords(pt), c1 = git_coords(moved);
      CHECK(c0.a == c1.a);
      CHECK(c0.b == c1.b);
    }
    auto ji = random_hperp(CaseTag(CaseKind::JacquetIchino), rng, 6);
    auto g = random_invertible(rng, 2);
    HPerpPoint moved = ji;
    for (auto& m : moved.x) m = conj(g, m);
    CHECK(*git_coords(ji).ichino_d == *git_coords(moved).ichino_d);
  }
  // Gross-Prasad: orthogonal conjugation via the Cayley transform.
  for (int trial = 0; trial < 10; ++trial)
    for (unsigned n = 1; n <= 2; ++n) {
      auto pt = random_hperp(CaseTag(CaseKind::GrossPrasadEven, n), rng, 5);
      auto h = random_so_split(rng, n, 3);
      RatMatrix g;
      try {
        g = cayley(h);
      } catch (const singular_system&) {
        continue;
      }
      RatMatrix big = RatMatrix::identity(2 * n + 1);
      for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j) big(i, j) = g(i, j);
      HPerpPoint moved = pt;
      moved.x = {conj(g, pt.x[0]), conj(big, pt.x[1])};
      validate_hperp(moved);
      auto c0 = git_coords(pt), c1 = git_coords(moved);
      CHECK(c0.a == c1.a);
      CHECK(c0.b == c1.b);
      CHECK(*c0.pfaffian_pn == *c1.pfaffian_pn);
    }
  // Torus symmetries of the Gross-Prasad normal form: alpha_i -> -alpha_i
  // together with u_i <-> v_i.
  for (unsigned n = 1; n <= 2; ++n) {
    auto pt = gross_prasad_normal_form(n);
    auto ctx = pt.context();
    std::map<std::string, MultiPoly> flip;
    for (const auto& name : ctx->names()) flip.emplace(name, MultiPoly::variable(ctx, name));
    flip.insert_or_assign("alpha1", -MultiPoly::variable(ctx, "alpha1"));
    flip.insert_or_assign("u1", MultiPoly::variable(ctx, "v1"));
    flip.insert_or_assign("v1", MultiPoly::variable(ctx, "u1"));
    auto g = git_coords(pt);
    for (const auto& b : g.b) CHECK(b.substitute(flip) == b);
    for (const auto& a : g.a) CHECK(a.substitute(flip) == a);
  }
}

TEST_CASE("dual representations") {
  CHECK(dual_rep_matrix(CaseTag(CaseKind::Diagonal, 1), {}).rows() == 0);
  CHECK(poly_det(dual_rep_matrix(CaseTag(CaseKind::OddGL, 2), {})).constant_value() == 1);

  auto ctx = make_context({"alpha1", "beta1", "beta2"});
  auto y1 = PolyMatrix::diagonal(ctx, {P("alpha1", ctx)});
  auto y2 = PolyMatrix::diagonal(ctx, {P("beta1", ctx), P("beta2", ctx)});
  auto rs = dual_rep_matrix(CaseTag(CaseKind::RankinSelberg, 1), {y1, y2});
  CHECK(rs == PolyMatrix::diagonal(ctx, {P("alpha1 + beta1", ctx), P("alpha1 + beta2", ctx)}));

  auto gctx = make_context({"alpha", "beta"});
  auto a = P("alpha", gctx), b = P("beta", gctx);
  auto gp = dual_rep_matrix(CaseTag(CaseKind::GrossPrasadEven, 1),
                            {PolyMatrix::diagonal(gctx, {a, -a}), PolyMatrix::diagonal(gctx, {b, -b})});
  CHECK(poly_det(gp) == (b * b - a * a).pow(2));
  CHECK(preserves_form(PolyMatrix::diagonal(gctx, {a, -a}), split_form(1)));
  CHECK(preserves_form(PolyMatrix::diagonal(gctx, {b, -b}), symplectic_form(1)));

  SplitMix64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(preserves_form(random_sp(rng, 2, 5), symplectic_form(2)));
    CHECK(preserves_form(random_so_split(rng, 2, 5), split_form(2)));
    // Full representation of a polarized case is symplectic.
    auto y = random_sp(rng, 1, 5);
    auto full = full_dual_rep_matrix(CaseTag(CaseKind::FriedbergJacquet, 1), {y});
    CHECK(preserves_form(full, symplectic_form(2)));
  }
  CHECK_THROWS_AS(dual_rep_matrix(CaseTag(CaseKind::RankinSelberg, 2), {y1, y2}), dimension_mismatch);
}
