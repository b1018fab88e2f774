#include <doctest.h>

#include "qhfol/json_io.hpp"
#include "support.hpp"

using namespace qhfol;

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(dump(Json(0.1)) == "0.10000000000000001\n");
  CHECK(dump(Json(1.0)) == "1.0\n");
  CHECK(dump(Json::array({1.5, -2.0})) == "[1.5, -2.0]\n");
  CHECK(dump(Json{{"b", 1}, {"a", 2}}) == "{\n  \"b\": 1,\n  \"a\": 2\n}\n");
  for (double d : {0.1, 1.0 / 3.0, -2.718281828459045e-7, 6.02214076e23})
    CHECK(Json::parse(dump(Json(d))).get<double>() == d);
}

TEST_CASE("polynomial and form round-trip") {
  for (int trial = 0; trial < 20; ++trial) {
    BiPoly p = qtest::rand_bipoly(6, 8);
    CHECK(bipoly_from_json(Json::parse(dump(to_json(p)))) == p);
    OneForm w{p, qtest::rand_bipoly(5, 5)};
    CHECK(oneform_from_json(Json::parse(dump(to_json(w)))) == w);
  }
}

TEST_CASE("jet round-trip is bit-exact") {
  Series<cplx> s(5);
  for (std::size_t k = 1; k <= 5; ++k) s[k] = {1.0 / (3.0 * k), -std::sqrt(double(k))};
  ComplexJet j(s, 1.234e-11);
  ComplexJet back = complex_jet_from_json(Json::parse(dump(to_json(j))));
  CHECK(back.series() == j.series());
  CHECK(back.error() == j.error());
  Series<Rat> e(4);
  e[1] = Rat(-3, 7);
  e[4] = Rat(22, 5);
  CHECK(exact_jet_from_json(Json::parse(dump(to_json(ExactJet(e))))).series() == e);
}

TEST_CASE("tree round-trip") {
  for (const char* text : {"y^2 - x^3", "y^2 - 2*x^2", "y^3 - x^5"}) {
    ResolutionTree t = resolve_curve(BiPoly::parse(text));
    std::string once = dump(to_json(t));
    ResolutionTree back = tree_from_json(Json::parse(once));
    CHECK(dump(to_json(back)) == once);
    CHECK(back.components.size() == t.components.size());
    CHECK(back.adjacency == t.adjacency);
    CHECK(trees_isomorphic(back, t));
  }
  ResolutionTree tf = resolve_foliation(OneForm::exact(BiPoly::parse("y^2 - x^3")));
  std::string once = dump(to_json(tf));
  CHECK(dump(to_json(tree_from_json(Json::parse(once)))) == once);
}

TEST_CASE("representation round-trip and determinism") {
  NumericParams p;
  p.order = 4;
  OneForm w = OneForm::exact(BiPoly::parse("y^2 - x^3"));
  HolonomyRep r = holonomy_rep(w, p);
  std::string once = dump(to_json(r));
  HolonomyRep back = rep_from_json(Json::parse(once));
  REQUIRE(back.generators.size() == r.generators.size());
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    CHECK(back.generators[i].jet.series() == r.generators[i].jet.series());
    CHECK(back.generators[i].loop.path.size() == r.generators[i].loop.path.size());
  }
  CHECK(dump(to_json(back)) == once);
  CHECK(dump(to_json(holonomy_rep(w, p))) == once);
}

TEST_CASE("DOT output") {
  ResolutionTree t = resolve_curve(BiPoly::parse("y^2 - x^3"));
  std::string dot = to_dot(t);
  CHECK(dot.find("D_3 (s=-1, m=6)") != std::string::npos);
  CHECK(dot.find("D1 -- D3") != std::string::npos);
  CHECK(dot.find("dir=forward") != std::string::npos);
  std::string both = to_dot(verify_prediction(BiPoly::parse("y^3 - x^5")));
  CHECK(both.find("cluster_predicted") != std::string::npos);
  CHECK(both.find("cluster_computed") != std::string::npos);
}

TEST_CASE("other records serialize with a fixed key order") {
  auto c = jacobian_membership(BiPoly::parse("y^2 - x^3"), 8);
  Json j = to_json(c);
  CHECK(j.begin().key() == "member");
  auto pr = predict_dual_tree(*infer_weights(BiPoly::parse("y^2 - x^3")), BiPoly::parse("y^2 - x^3"));
  Json pj = to_json(pr);
  CHECK(pj["component_count"] == 3);
  CHECK(pj["euclid"]["quotients"] == Json::array({1, 2}));
}
