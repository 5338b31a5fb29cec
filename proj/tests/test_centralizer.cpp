#include <catch_amalgamated.hpp>

#include "pfaffcheck/centralizer.hpp"

using namespace pfaffcheck;

namespace {

PolyMatrix numeric(const RatMatrix& r) { return PolyMatrix::from_rational(empty_context(), r); }

HPerpPoint rs_point(const std::vector<long>& alpha, const std::vector<long>& u, const std::vector<long>& v, long d) {
  const std::size_t n = alpha.size();
  RatMatrix a(n, n), uu(n, 1), vv(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = -alpha[i];
    uu(i, 0) = u[i];
    vv(i, 0) = v[i];
  }
  return make_rankin_selberg(numeric(a), numeric(uu), numeric(vv), MultiPoly::constant(empty_context(), d));
}

}  // namespace

TEST_CASE("Rankin-Selberg stabilizers") {
  for (unsigned n = 1; n <= 3; ++n) {
    auto spec = action_spec(CaseTag(CaseKind::RankinSelberg, n));
    auto zero = rs_point(std::vector<long>(n, 0), std::vector<long>(n, 0), std::vector<long>(n, 0), 0);
    CHECK(stabilizer_dim(spec, zero) == n * n);
  }
  auto spec = action_spec(CaseTag(CaseKind::RankinSelberg, 2));
  CHECK(stabilizer_dim(spec, rs_point({1, 2}, {1, 3}, {2, 0}, 5)) == 0);
  CHECK(stabilizer_dim(spec, rs_point({1, 2}, {1, 0}, {2, 0}, 5)) == 1);
  CHECK(is_regular(spec, rs_point({1, 2}, {1, 3}, {2, 0}, 5)));
  CHECK_FALSE(is_regular(spec, rs_point({1, 2}, {0, 0}, {0, 0}, 5)));
  CHECK_THROWS_AS(stabilizer_dim(spec, rankin_selberg_normal_form(2)), symbolic_input);
}

TEST_CASE("stabilizer dimension counts the vanishing (u_i, v_i) pairs") {
  SplitMix64 rng(41);
  for (unsigned n = 1; n <= 4; ++n) {
    auto spec = action_spec(CaseTag(CaseKind::RankinSelberg, n));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<long> alpha, u(n), v(n);
      while (alpha.size() < n) {
        long a = rng.range(-20, 20);
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
      CHECK(stabilizer_dim(spec, rs_point(alpha, u, v, rng.range(-9, 9))) == zeros);
    }
  }
}

TEST_CASE("Jacquet-Ichino regularity") {
  auto spec = action_spec(CaseTag(CaseKind::JacquetIchino));
  auto c = [](long v) { return MultiPoly::constant(empty_context(), v); };
  CHECK(is_regular(spec, make_jacquet_ichino(c(2), c(1), c(3), c(5))));
  // b = c = 0 with x1, x2 both diagonal: the torus stabilizes.
  CHECK(stabilizer_dim(spec, make_jacquet_ichino(c(2), c(1), c(0), c(0))) == 1);
}

TEST_CASE("tridiagonal skew matrices are regular in so_m") {
  SplitMix64 rng(42);
  for (std::size_t m = 2; m <= 7; ++m)
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<MultiPoly> gamma;
      for (std::size_t i = 0; i + 1 < m; ++i) gamma.push_back(MultiPoly::constant(empty_context(), rng.nonzero(-9, 9)));
      auto x = tridiagonal_gamma(gamma).to_rational();
      CHECK(so_centralizer_dim(x) == m / 2);
      CHECK(gl_centralizer_dim(x) == m);
    }
  // A vanishing gamma splits the matrix and enlarges the centralizer.
  std::vector<MultiPoly> gamma(3, MultiPoly::constant(empty_context(), 1));
  gamma[1] = MultiPoly(empty_context());
  CHECK(so_centralizer_dim(tridiagonal_gamma(gamma).to_rational()) > 2);
}

TEST_CASE("generic stabilizer dimensions") {
  CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::Diagonal, 1)), 0, 10) == 1);
  for (unsigned n = 1; n <= 3; ++n) {
    CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::RankinSelberg, n)), 0, 10) == 0);
    CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::Diagonal, n)), 0, 10) == n);
    CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::FriedbergJacquet, n)), 0, 10) == n);
    CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::OddGL, n)), 0, 10) == n + 1);
  }
  for (unsigned n = 1; n <= 2; ++n)
    CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::GrossPrasadEven, n)), 0, 10) == 0);
  CHECK(minimal_dim_estimate(action_spec(CaseTag(CaseKind::JacquetIchino)), 0, 10) == 0);
  for (auto kind : {CaseKind::Diagonal, CaseKind::FriedbergJacquet, CaseKind::OddGL, CaseKind::RankinSelberg,
                    CaseKind::JacquetIchino, CaseKind::GrossPrasadEven}) {
    CaseTag tag(kind, 2);
    CHECK(minimal_dim_estimate(action_spec(tag), 7, 10) == minimal_stabilizer_dim(tag));
  }
}

TEST_CASE("the action is a Lie algebra action") {
  SplitMix64 rng(43);
  for (auto kind : {CaseKind::Diagonal, CaseKind::FriedbergJacquet, CaseKind::OddGL, CaseKind::RankinSelberg,
                    CaseKind::JacquetIchino, CaseKind::GrossPrasadEven}) {
    CaseTag tag(kind, 2);
    auto spec = action_spec(tag);
    auto x = numeric_components(random_hperp(tag, rng, 9));
    for (int trial = 0; trial < 5; ++trial) {
      const auto& h1 = spec.basis[rng.below(spec.basis.size())];
      const auto& h2 = spec.basis[rng.below(spec.basis.size())];
      for (std::size_t c = 0; c < x.size(); ++c) {
        auto br = h1[c] * h2[c] - h2[c] * h1[c];
        auto lhs = br * x[c] - x[c] * br;
        auto act = [](const RatMatrix& h, const RatMatrix& y) { return h * y - y * h; };
        auto rhs = act(h1[c], act(h2[c], x[c])) - act(h2[c], act(h1[c], x[c]));
        CHECK(lhs == rhs);
      }
    }
    // The action preserves h-perp: moving a point along a basis direction
    // keeps the structural constraints.
    auto pt = random_hperp(tag, rng, 9);
    auto xs = numeric_components(pt);
    for (const auto& h : spec.basis) {
      HPerpPoint moved = pt;
      for (std::size_t c = 0; c < xs.size(); ++c) moved.x[c] = numeric(h[c] * xs[c] - xs[c] * h[c]);
      CHECK_NOTHROW(validate_hperp(moved));
    }
  }
}

TEST_CASE("stabilizer dimension is conjugation invariant and upper semicontinuous") {
  SplitMix64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    unsigned n = static_cast<unsigned>(rng.range(1, 3));
    auto spec = action_spec(CaseTag(CaseKind::RankinSelberg, n));
    auto pt = random_hperp(spec.tag, rng, 5);
    RatMatrix g(n, n);
    do
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.range(-3, 3);
    while (rational_det(g) == 0);
    RatMatrix big = RatMatrix::identity(n + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) big(i, j) = g(i, j);
    auto gi = rational_inverse(g), bi = rational_inverse(big);
    HPerpPoint moved = pt;
    moved.x = {numeric(g * pt.x[0].to_rational() * gi), numeric(big * pt.x[1].to_rational() * bi)};
    CHECK(stabilizer_dim(spec, moved) == stabilizer_dim(spec, pt));
  }
  // Specializing (u_i, v_i) to zero one pair at a time never lowers the dimension.
  auto spec = action_spec(CaseTag(CaseKind::RankinSelberg, 3));
  std::vector<long> u = {1, 2, 3}, v = {4, 5, 6};
  std::size_t prev = stabilizer_dim(spec, rs_point({1, 2, 3}, u, v, 0));
  for (int i = 0; i < 3; ++i) {
    u[i] = v[i] = 0;
    std::size_t cur = stabilizer_dim(spec, rs_point({1, 2, 3}, u, v, 0));
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(prev == 3);
}
