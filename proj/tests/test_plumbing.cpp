#include <numeric>
#include <random>

#include "catch_amalgamated.hpp"
#include "latticeroot/plumbing.hpp"
#include "support.hpp"

using namespace latticeroot;

namespace {

PlumbingGraph e8() {
  // star with legs of length 1, 2, 4 around a -2 node
  std::vector<Vertex> vs;
  for (int i = 0; i < 8; ++i) vs.push_back({i, -2});
  return build_graph(vs, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}});
}

std::vector<std::int64_t> leg_of(const PlumbingGraph& g, std::size_t c, std::size_t k) {
  const auto legs = g.legs(c);
  std::vector<std::int64_t> w;
  for (auto v : legs[k]) w.push_back(g.weight(v));
  return w;
}

std::vector<std::int64_t> twos(std::size_t n) { return std::vector<std::int64_t>(n, -2); }

std::vector<std::int64_t> concat(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("graph construction rejects malformed input") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidInput;
  };
  CHECK(code_of([] { build_graph({{1, -2}, {1, -3}}, {}); }) == Errc::DuplicateId);
  CHECK(code_of([] { build_graph({{0, -2}, {1, -2}, {2, -2}}, {{0, 1}, {1, 2}, {2, 0}}); }) == Errc::NotATree);
  CHECK(code_of([] { build_graph({{0, -2}, {1, -2}, {2, -2}}, {{0, 1}}); }) == Errc::NotATree);
  CHECK(code_of([] { build_graph({{0, -2}, {1, -2}}, {{0, 7}}); }) == Errc::UnknownVertex);
  CHECK(code_of([] { build_graph({{0, -2}, {1, -2}}, {{0, 1}}).index_of(9); }) == Errc::UnknownVertex);
}

TEST_CASE("E8 plumbing") {
  auto g = e8();
  CHECK(g.is_star_shaped());
  CHECK(g.id_of(*g.center()) == 0);
  CHECK(abs(g.form().determinant()) == 1);
  CHECK(signature(g) == -8);
  CHECK(is_negative_definite(g));
  auto w = wu_class(g);
  CHECK(w.is_zero());
  CHECK(mubar(g) == Rational(-1));
}

TEST_CASE("signature agrees with an eigenvalue count") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    auto g = testsupport::random_tree(rng, 9, -6, 2);
    auto ex = inertia(g.form().matrix());
    auto fl = testsupport::eigen_inertia(g.form().matrix());
    INFO("trial " << t);
    CHECK(ex.positive == fl.pos);
    CHECK(ex.negative == fl.neg);
    CHECK(ex.zero == fl.zero);
    CHECK(is_negative_definite(g) == (fl.neg == static_cast<int>(g.size())));
  }
}

TEST_CASE("negative definiteness is required where documented") {
  auto g = build_graph({{0, 1}}, {});
  CHECK_FALSE(is_negative_definite(g));
  CHECK_THROWS_AS(mubar(g), Error);
}

TEST_CASE("continued fractions round-trip") {
  for (std::int64_t p = 2; p <= 200; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto cf = neg_continued_fraction(p, -q);
      for (auto a : cf) REQUIRE(a <= -2);
      REQUIRE(evaluate_neg_continued_fraction(cf) == frac(-p, q));
    }
  CHECK(neg_continued_fraction(7, -1) == std::vector<std::int64_t>{-7});
  CHECK(neg_continued_fraction(19, -10) == std::vector<std::int64_t>{-2, -10});
  CHECK_THROWS_AS(neg_continued_fraction(1, 2), Error);
  CHECK_THROWS_AS(neg_continued_fraction(3, 0), Error);
}

TEST_CASE("Seifert data for Brieskorn spheres") {
  auto s = brieskorn_to_seifert(2, 3, 7);
  CHECK(euler_number(s) == frac(-1, 42));
  auto g = seifert_to_plumbing(s);
  REQUIRE(g.size() == 4);
  CHECK(g.weight(0) == -1);
  std::vector<std::int64_t> ws{g.weight(1), g.weight(2), g.weight(3)};
  std::sort(ws.begin(), ws.end());
  CHECK(ws == std::vector<std::int64_t>{-7, -3, -2});
  CHECK(abs(g.form().determinant()) == 1);

  for (auto [a, b, c] : std::vector<std::array<std::int64_t, 3>>{{2, 3, 5}, {3, 5, 7}, {2, 3, 11}, {5, 7, 17}}) {
    auto h = seifert_to_plumbing(brieskorn_to_seifert(a, b, c));
    INFO(a << "," << b << "," << c);
    CHECK(abs(h.form().determinant()) == 1);
    CHECK(is_negative_definite(h));
    CHECK(euler_number(brieskorn_to_seifert(a, b, c)) == frac(-1, a * b * c));
  }
  CHECK_THROWS_AS(brieskorn_to_seifert(2, 4, 7), Error);
}

TEST_CASE("two-leg graph for Sigma(2,2,19)") {
  auto g = seifert_to_plumbing(even_brieskorn_to_seifert(2, 19));
  const std::size_t c = g.index_of(0);
  CHECK(g.weight(c) == -1);
  REQUIRE(g.legs(c).size() == 2);
  const auto expect = concat({-3}, twos(8));
  CHECK(leg_of(g, c, 0) == expect);
  CHECK(leg_of(g, c, 1) == expect);
  CHECK(abs(g.form().determinant()) == 19);
  CHECK(signature(g) == -19);
}

TEST_CASE("three-leg graphs for Sigma(2,2n,20n-1)") {
  for (std::int64_t n : {3, 5, 7}) {
    auto g = seifert_to_plumbing(even_brieskorn_to_seifert(2 * n, 20 * n - 1));
    const std::size_t c = g.index_of(0);
    INFO("n = " << n);
    CHECK(g.weight(c) == -2);
    REQUIRE(g.legs(c).size() == 3);
    const auto b = concat(concat(twos(2 * n - 2), {-3}), twos(8));
    CHECK(leg_of(g, c, 0) == b);
    CHECK(leg_of(g, c, 1) == b);
    CHECK(leg_of(g, c, 2) == std::vector<std::int64_t>{-n});
    CHECK(signature(g) == -4 * n - 16);
    CHECK(wu_square(g, wu_class(g)) == -4 * n + 2);
    CHECK(mubar(g) == frac(-9, 4));
  }
}

TEST_CASE("Wu class is characteristic with non-adjacent support") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 150) {
    auto g = testsupport::random_tree(rng, 10, -5, -1);
    if (!is_negative_definite(g)) continue;
    ++checked;
    auto w = wu_class(g);
    auto x = w.as_cycle();
    CHECK(wu_support_nonadjacent(g, w.coefficients));
    auto qx = g.form().covector(x);
    for (std::size_t v = 0; v < g.size(); ++v) CHECK(mod_floor(qx[v] - g.weight(v), 2) == 0);
    auto m = mubar(g);
    CHECK(is_integer(m * 8));
  }
}

TEST_CASE("leg-symmetric presentation") {
  auto gp = gamma_pq(4, 3);
  CHECK(gp.upper.size() == gp.lower.size());
  CHECK(mubar(gp.graph) == mubar(seifert_to_plumbing(even_brieskorn_to_seifert(4, 3))));
  CHECK_THROWS_AS(gamma_pq(3, 4), Error);
}

TEST_CASE("almost-rational warning") {
  CHECK_FALSE(almost_rational_warning(e8()).has_value());
  // two nodes joined by an edge
  auto g = build_graph({{0, -2}, {1, -2}, {2, -2}, {3, -2}, {4, -2}, {5, -2}},
                       {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  CHECK(almost_rational_warning(g).has_value());
}
