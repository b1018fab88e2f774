#include <doctest.h>

#include "qhfol/blowup.hpp"
#include "qhfol/error.hpp"
#include "support.hpp"

using namespace qhfol;

namespace {

PointOnDivisor at(int chart, const Rat& u, const Rat& v) {
  return {chart, AlgPoint::rational(u), AlgPoint::rational(v)};
}

// Exponent of the largest power of x dividing p.
unsigned xval(const BiPoly& p) {
  unsigned best = ~0u;
  for (const auto& [m, c] : p.terms()) best = std::min(best, m.first);
  return best;
}

}  // namespace

TEST_CASE("first blow-up of the cusp") {
  BiPoly f = BiPoly::parse("y^2 - x^3");
  ResolutionTree t = blowup_at(make_root(f, OneForm::exact(f)), at(0, 0, 0));
  REQUIRE(t.components.size() == 1);
  CHECK(t.component(1).self_intersection == -1);
  CHECK(t.component(1).multiplicity_curve == 2);
  OneForm pulled = OneForm::exact(f).pullback(BiPoly::x(), BiPoly::parse("x*y"));
  CHECK(t.component(1).multiplicity_form == std::min(xval(pulled.a), xval(pulled.b)));
  auto [a, b] = t.charts_of(1);
  // Chart maps (u, uv) and (uv, v), checked by evaluation.
  for (int k = 0; k < 5; ++k) {
    Rat u = qtest::rand_rat(), v = qtest::rand_rat();
    CHECK(t.chart(a).X.eval(u, v) == u);
    CHECK(t.chart(a).Y.eval(u, v) == u * v);
    CHECK(t.chart(b).X.eval(u, v) == u * v);
    CHECK(t.chart(b).Y.eval(u, v) == v);
    // Strict transform times the exceptional factor gives back the total transform.
    CHECK(f.eval(u, u * v) == u * u * t.chart(a).f->eval(u, v));
  }
  CHECK(*t.chart(a).f == BiPoly::parse("y^2 - x"));
  CHECK(factorization_holds(t, &f, nullptr));
  CHECK(adjacency_is_tree(t));
}

TEST_CASE("self-intersections and adjacency under repeated blow-ups") {
  BiPoly f = BiPoly::parse("y^2 - x^3");
  ResolutionTree t = blowup_at(make_root(f, std::nullopt), at(0, 0, 0));
  // The strict transform v^2 = u meets D_1 at the origin of chart 1.
  t = blowup_at(t, at(1, 0, 0));
  CHECK(t.component(1).self_intersection == -2);
  CHECK(t.component(2).self_intersection == -1);
  CHECK(t.adjacency == std::set<std::pair<int, int>>{{1, 2}});
  // Blowing up the corner D_1 cap D_2 splits the edge.
  auto corner = components_through(t.chart(3), Rat(0), Rat(0));
  auto [a2, b2] = t.charts_of(2);
  int corner_chart = -1;
  for (int c : {a2, b2})
    if (components_through(t.chart(c), Rat(0), Rat(0)).size() == 2) corner_chart = c;
  REQUIRE(corner_chart != -1);
  t = blowup_at(t, at(corner_chart, 0, 0));
  CHECK(t.component(1).self_intersection == -3);
  CHECK(t.component(2).self_intersection == -2);
  CHECK(t.component(3).self_intersection == -1);
  CHECK(t.adjacency == std::set<std::pair<int, int>>{{1, 3}, {2, 3}});
  CHECK(adjacency_is_tree(t));
  CHECK(factorization_holds(t, &f, nullptr));
  (void)corner;
}

TEST_CASE("chain along a smooth guide") {
  BiPoly f = BiPoly::parse("y^2 - x^3");
  auto [t, last] = chain_blowup(make_root(f, OneForm::exact(f)), at(0, 0, 0), BiPoly::parse("y"), 3);
  REQUIRE(t.components.size() == 3);
  // D_k is the divisor of (u, u^k v); its curve multiplicity is the u-valuation there.
  for (unsigned k = 1; k <= 3; ++k) {
    BiPoly pulled = f.substitute(BiPoly::x(), BiPoly::monomial(1, k, 1));
    CHECK(t.component(k).multiplicity_curve == xval(pulled));
  }
  CHECK(t.component(1).self_intersection == -2);
  CHECK(t.component(2).self_intersection == -2);
  CHECK(t.component(3).self_intersection == -1);
  CHECK(t.adjacency == std::set<std::pair<int, int>>{{1, 2}, {2, 3}});
  CHECK(last.u.is_rational());
  OneForm w = OneForm::exact(f);
  CHECK(factorization_holds(t, &f, &w));
}

TEST_CASE("blow-up errors") {
  OneForm radial{BiPoly::parse("-y"), BiPoly::parse("x")};
  try {
    blowup_at(make_root(std::nullopt, radial), at(0, 0, 0));
    FAIL("radial foliation must be dicritical");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Dicritical);
  }
  BiPoly f = BiPoly::parse("y^2 - 2*x^2");
  ResolutionTree t = blowup_at(make_root(f, std::nullopt), at(0, 0, 0));
  auto r = isolate_roots(UPoly::parse("t^2 - 2"));
  try {
    blowup_at(t, {1, AlgPoint::rational(0), r[0]});
    FAIL("irrational center");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IrrationalCenter);
  }
  try {
    blowup_at(t, at(1, 1, 1));
    FAIL("off the divisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPoint);
  }
}

TEST_CASE("separatrix attachments") {
  BiPoly f = BiPoly::parse("y^2 - 2*x^2");
  ResolutionTree t = blowup_at(make_root(f, std::nullopt), at(0, 0, 0));
  auto pts = separatrix_attachments(t);
  // Two conjugate branches v = +-sqrt 2 on D_1.
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(p.components == std::vector<int>{1});
    CHECK(std::abs(std::abs(p.at.v.numeric()) - std::sqrt(2.0)) < 1e-12);
  }
  BiPoly doubled = BiPoly::parse("y^2");
  ResolutionTree t2 = blowup_at(make_root(doubled, std::nullopt), at(0, 0, 0));
  CHECK_THROWS_AS(separatrix_attachments(t2), Error);
}
