#include <catch_amalgamated.hpp>

#include "pfaffcheck/oracles.hpp"
#include "pfaffcheck/matrix.hpp"
#include "pfaffcheck/multipoly.hpp"

using namespace pfaffcheck;

namespace {

ContextPtr xy() { return make_context({"x", "y"}); }

MultiPoly P(const std::string& s, const ContextPtr& ctx) { return parse_poly(s, ctx); }

}  // namespace

TEST_CASE("rational normalization") {
  Rational q = make_rational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(to_string(make_rational(0, 5)) == "0");
  CHECK(parse_rational("-10/4") == make_rational(-5, 2));
  CHECK_THROWS_AS(make_rational(1, 0), error);
  CHECK_THROWS_AS(parse_rational("1/x"), parse_error);
  CHECK(*rational_sqrt(make_rational(9, 4)) == make_rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2)));
}

TEST_CASE("arithmetic basics") {
  auto ctx = xy();
  MultiPoly x = MultiPoly::variable(ctx, "x"), y = MultiPoly::variable(ctx, "y");
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(x + MultiPoly(ctx) == x);
  MultiPoly p = x + 1;
  CHECK(p.pow(3) == P("x^3 + 3*x^2 + 3*x + 1", ctx));
  CHECK(p.pow(3) == p * p * p);
  CHECK((x - x).is_zero());
}

TEST_CASE("pow agrees with iterated multiplication") {
  SplitMix64 rng(11);
  auto ctx = make_context({"a", "b", "c"});
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p = oracle::random_poly(ctx, rng, 3, 4);
    unsigned k = static_cast<unsigned>(rng.range(0, 5));
    MultiPoly acc = MultiPoly::constant(ctx, 1);
    for (unsigned i = 0; i < k; ++i) acc = acc * p;
    CHECK(p.pow(k) == acc);
  }
}

TEST_CASE("ring axioms on random triples") {
  SplitMix64 rng(12);
  auto ctx = make_context({"a", "b", "c"});
  for (int trial = 0; trial < 30; ++trial) {
    auto p = oracle::random_poly(ctx, rng, 3, 5);
    auto q = oracle::random_poly(ctx, rng, 3, 5);
    auto r = oracle::random_poly(ctx, rng, 3, 5);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    CHECK(p + q == q + p);
    CHECK((p - q) + q == p);
  }
}

TEST_CASE("context alignment") {
  auto ab = make_context({"a", "b"});
  auto abc = make_context({"a", "b", "c"});
  auto ba = make_context({"b", "a"});
  MultiPoly a1 = MultiPoly::variable(ab, "a");
  MultiPoly c = MultiPoly::variable(abc, "c");
  MultiPoly s = a1 + c;
  CHECK(s.context()->names() == abc->names());
  CHECK_THROWS_AS(a1 + MultiPoly::variable(ba, "b"), context_mismatch);
  CHECK(a1.rebase(ba) == MultiPoly::variable(ba, "a"));
}

TEST_CASE("evaluation") {
  auto ctx = xy();
  CHECK(P("x^2 - y", ctx).eval({{"x", 2}, {"y", 3}}) == 1);
  CHECK(MultiPoly::constant(ctx, make_rational(5, 7)).eval({}) == make_rational(5, 7));
  CHECK_THROWS_AS(P("x*y", ctx).eval({{"x", 1}}), missing_variable);

  SplitMix64 rng(13);
  auto big = make_context({"a", "b", "c", "d"});
  for (int trial = 0; trial < 20; ++trial) {
    auto p = oracle::random_poly(big, rng, 4, 8);
    auto q = oracle::random_poly(big, rng, 4, 8);
    auto pt = oracle::random_point(big, rng);
    CHECK(p.eval(pt) == oracle::naive_eval(p, pt));
    CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
  }
}

TEST_CASE("substitution") {
  auto ctx = xy();
  CHECK(P("x^2", ctx).substitute({{"x", MultiPoly::variable(ctx, "y")}, {"y", MultiPoly::variable(ctx, "y")}}) ==
        P("y^2", ctx));

  auto da = make_context({"d1", "a1"});
  MultiPoly d1sq = P("d1^2", da);
  MultiPoly img = -MultiPoly::variable(da, "a1").pow(2);
  CHECK(d1sq.substitute({{"d1", img}, {"a1", MultiPoly::variable(da, "a1")}}) == P("a1^4", da));

  // Composite substitution agrees with substituting in two steps.
  SplitMix64 rng(14);
  auto abc = make_context({"a", "b", "c"});
  for (int trial = 0; trial < 10; ++trial) {
    auto p = oracle::random_poly(abc, rng, 3, 4);
    std::map<std::string, MultiPoly> f, g;
    for (auto n : {"a", "b", "c"}) {
      f.insert_or_assign(n, oracle::random_poly(abc, rng, 2, 2));
      g.insert_or_assign(n, oracle::random_poly(abc, rng, 2, 2));
    }
    std::map<std::string, MultiPoly> fg;
    for (auto& [n, img2] : f) fg.emplace(n, img2.substitute(g));
    CHECK(p.substitute(f).substitute(g) == p.substitute(fg));
  }
  CHECK_THROWS_AS(P("x*y", ctx).substitute({{"x", MultiPoly::variable(ctx, "y")}}), missing_variable);
}

TEST_CASE("canonical text") {
  auto ctx = make_context({"a1", "b1", "b2"});
  MultiPoly p = P("-3/4*a1^2*b2 + b1 - 1", ctx);
  CHECK(p.to_string() == "-3/4*a1^2*b2 + b1 - 1");
  CHECK(MultiPoly(ctx).to_string() == "0");
  SplitMix64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    auto q = oracle::random_poly(ctx, rng, 4, 6) * make_rational(rng.nonzero(-5, 5), rng.range(1, 6));
    CHECK(parse_poly(q.to_string(), ctx) == q);
  }
  CHECK_THROWS_AS(parse_poly("x +", ctx), parse_error);
  CHECK_THROWS_AS(parse_poly("zz", ctx), error);
}

TEST_CASE("determinants") {
  auto ctx = xy();
  PolyMatrix one(ctx, 1, 1, {MultiPoly::constant(ctx, 1)});
  CHECK(poly_det(one) == MultiPoly::constant(ctx, 1));
  PolyMatrix tri(ctx, 2, 2, {P("x", ctx), P("1", ctx), P("0", ctx), P("y", ctx)});
  CHECK(poly_det(tri) == P("x*y", ctx));
  CHECK(poly_det(PolyMatrix(ctx, 0, 0)) == MultiPoly::constant(ctx, 1));
  CHECK_THROWS_AS(poly_det(PolyMatrix(ctx, 2, 3)), not_square);

  SplitMix64 rng(16);
  auto abc = make_context({"a", "b", "c"});
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
    PolyMatrix m(abc, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng.below(4)) m.set(i, j, oracle::random_poly(abc, rng, 2, 2));
    MultiPoly d = poly_det(m);
    CHECK(d == oracle::cofactor_det(m));
    CHECK(poly_det(m.transpose()) == d);
    // Swap two rows and the matching columns: permutation-similar.
    if (n >= 2) {
      PolyMatrix s(abc, n, n);
      auto idx = [&](std::size_t k) { return k == 0 ? 1 : (k == 1 ? 0 : k); };
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.set(i, j, m(idx(i), idx(j)));
      CHECK(poly_det(s) == d);
    }
  }
}

TEST_CASE("square roots") {
  auto ctx = xy();
  CHECK(*poly_sqrt(P("x^2 + 2*x*y + y^2", ctx)) == P("x + y", ctx));
  CHECK_FALSE(poly_sqrt(P("x^2 + y^2", ctx)));
  CHECK_FALSE(poly_sqrt(P("-x^2", ctx)));
  CHECK(poly_sqrt(MultiPoly(ctx))->is_zero());
  SplitMix64 rng(17);
  auto abc = make_context({"a", "b", "c"});
  for (int trial = 0; trial < 30; ++trial) {
    auto p = oracle::random_poly(abc, rng, 3, 4);
    if (p.is_zero()) continue;
    auto r = poly_sqrt(p * p);
    REQUIRE(r);
    CHECK((*r == p || *r == -p));
    CHECK(r->leading_term().coeff > 0);
  }
}

TEST_CASE("unit multiples") {
  auto ctx = xy();
  CHECK(*unit_multiple(P("2*x + 2*y", ctx), P("x + y", ctx)) == 2);
  CHECK_FALSE(unit_multiple(P("x", ctx), P("y", ctx)));
  SplitMix64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = oracle::random_poly(ctx, rng, 3, 3);
    if (r.is_zero()) continue;
    Rational c = make_rational(rng.nonzero(-9, 9), rng.range(1, 9));
    CHECK(*unit_multiple(r * c, r) == c);
  }
}

TEST_CASE("linear algebra") {
  auto id = RatMatrix::identity(3);
  std::vector<Rational> b = {1, 2, 3};
  auto s = linear_solve(id, b);
  CHECK(s.kind == SolveResult::Kind::unique);
  CHECK(s.particular == b);

  RatMatrix a{{1, 1}, {1, -1}};
  auto s2 = linear_solve(a, {2, 0});
  CHECK(s2.particular == std::vector<Rational>{1, 1});

  RatMatrix sing{{1, 1}, {1, 1}};
  CHECK(linear_solve(sing, {1, 2}).kind == SolveResult::Kind::inconsistent);
  auto par = linear_solve(sing, {1, 1});
  CHECK(par.kind == SolveResult::Kind::parametric);
  CHECK(par.kernel.size() == 1);
  CHECK_THROWS_AS(linear_solve(sing, {1}), dimension_mismatch);

  CHECK(kernel_dim(RatMatrix(3, 3)) == 3);
  CHECK(kernel_dim(RatMatrix::identity(4)) == 0);

  SplitMix64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix m(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = rng.range(-9, 9);
    if (rational_det(m) == 0) continue;
    std::vector<Rational> rhs(5);
    for (auto& v : rhs) v = make_rational(rng.range(-9, 9), rng.range(1, 4));
    auto sol = linear_solve(m, rhs);
    REQUIRE(sol.kind == SolveResult::Kind::unique);
    CHECK(m.apply(sol.particular) == rhs);
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 4, cols = static_cast<std::size_t>(rng.range(2, 6));
    RatMatrix outer(rows, cols);
    std::vector<long> u(rows), v(cols);
    for (auto& x : u) x = rng.nonzero(-5, 5);
    for (auto& x : v) x = rng.nonzero(-5, 5);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) outer(i, j) = u[i] * v[j];
    CHECK(kernel_dim(outer) == cols - 1);
    for (const auto& k : kernel_basis(outer)) CHECK(outer.apply(k) == std::vector<Rational>(rows, Rational(0)));
  }
}
