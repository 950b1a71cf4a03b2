#include "catch_amalgamated.hpp"
#include "latticeroot/io.hpp"
#include "support.hpp"

using namespace latticeroot;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("graph documents round-trip") {
  for (const auto& g : testsupport::star_corpus(50, 3)) {
    auto j = graph_to_json(g);
    CHECK(graph_from_json(parse_json_text(j.dump())) == g);
  }
  auto text = R"({"vertices":[{"id":5,"weight":-2},{"id":9,"weight":-3}],"edges":[[9,5]]})";
  auto g = any_graph_from_json(parse_json_text(text));
  CHECK(g.size() == 2);
  CHECK(g.weight(g.index_of(9)) == -3);
}

TEST_CASE("Seifert and Brieskorn documents") {
  auto s = brieskorn_to_seifert(2, 3, 7);
  auto j = seifert_to_json(s);
  auto back = seifert_from_json(parse_json_text(j.dump()));
  CHECK(back.central_weight == s.central_weight);
  CHECK(back.orbits.size() == s.orbits.size());
  auto a = any_graph_from_json(j);
  auto b = any_graph_from_json(brieskorn_to_json(2, 3, 7));
  CHECK(a == b);
}

TEST_CASE("malformed input") {
  CHECK(code_of([] { parse_json_text("{"); }) == Errc::InvalidInput);
  CHECK(code_of([] { any_graph_from_json(parse_json_text("[]")); }) == Errc::InvalidInput);
  CHECK(code_of([] { any_graph_from_json(parse_json_text(R"({"vertices":[{"id":1}]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { any_graph_from_json(parse_json_text(R"({"vertices":[{"id":1,"weight":-2},{"id":2,"weight":-2}],"edges":[[1,3]]})")); }) ==
        Errc::UnknownVertex);
}

TEST_CASE("Brieskorn expressions") {
  CHECK(parse_brieskorn("2,3,7") == std::array<std::int64_t, 3>{2, 3, 7});
  CHECK(parse_brieskorn("2,2n,20n-1", 3) == std::array<std::int64_t, 3>{2, 6, 59});
  CHECK(parse_brieskorn("2, 3, 12*n+1", 2) == std::array<std::int64_t, 3>{2, 3, 25});
  CHECK(parse_brieskorn("n,n+1,2n+1", 2) == std::array<std::int64_t, 3>{2, 3, 5});
  CHECK(code_of([] { parse_brieskorn("2,2n,20n-1"); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_brieskorn("2,3"); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_brieskorn("2,3,5,7"); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_brieskorn("2,x,5"); }) == Errc::InvalidInput);
}

TEST_CASE("root documents round-trip") {
  for (const auto& g : testsupport::star_corpus(60, 21)) {
    auto r = graded_root(full_sequence(g, spin_class(g), default_base(g)));
    auto back = root_from_json(parse_json_text(root_to_json(r).dump()));
    CHECK(identical(back, r));
    CHECK(back.canonical() == r.canonical());
  }
  auto r = graded_root(WeightedPath::from_weights({0, 2, 0, 4, 0}));
  auto j = root_to_json(r);
  CHECK(j["leaves"].size() == 2);
  CHECK(j["angles"][0]["gr"] == 0);
  CHECK(j["shift"] == "0");
  auto dot = root_to_dot(r);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("fillcolor=black") != std::string::npos);
}

TEST_CASE("rationals are printed exactly") {
  auto j = report_to_json(e2n1_pipeline(1));
  CHECK(j["correction"] == "-1/8");
  CHECK(j["bound_on_delta_under"] == "-1");
  CHECK(j["verdict"] == "obstructed");
  CHECK(j["inequality_used"] == "weak");
  auto f = froyshov_to_json(mirror_dual(even_torus_froyshov(2, 19)));
  CHECK(f["delta_bar"] == "-9/8");
  CHECK(f["provenance"] == "mirror_dual");
}

TEST_CASE("tables") {
  CHECK(tables("torus-signature", 1, 3) == "n,signature\n1,18\n2,78\n3,178\n");
  CHECK(tables("torus-signature", 5, 4) == "n,signature\n");
  CHECK(tables("sigma-2-3-n-degrees", 1, 2) == "n,degree\n7,3\n13,5\n19,7\n25,9\n");
  auto t = tables("sigma-gamma-wu", 3, 3);
  CHECK(t == "n,vertices,signature,wu_square,mubar\n3,28,-28,-10,-9/4\n");
  CHECK(tables("sigma-gamma-wu", 1, 0) == "n,vertices,signature,wu_square,mubar\n");
  CHECK(code_of([] { tables("nope", 1, 2); }) == Errc::UnknownFamily);
}

TEST_CASE("output is deterministic") {
  auto g = seifert_to_plumbing(brieskorn_to_seifert(2, 3, 7));
  auto a = root_to_json(graded_root(full_sequence(g, spin_class(g), default_base(g)))).dump(2);
  auto b = root_to_json(graded_root(full_sequence(g, spin_class(g), default_base(g)))).dump(2);
  CHECK(a == b);
  CHECK(cell_model_to_json(build_cell_model(WeightedPath::from_weights({0, 2, 0}), 2)).dump() ==
        R"({"h":2,"spheres":[{"index":0,"dim":"1"},{"index":1,"dim":"2"},{"index":2,"dim":"1"}],"edges":[{"from":0,"to":1,"dim":"1","central":false},{"from":1,"to":2,"dim":"1","central":false}]})");
}
