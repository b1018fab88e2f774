#include <doctest.h>

#include "qhfol/error.hpp"
#include "qhfol/quasihom.hpp"
#include "support.hpp"

using namespace qhfol;

namespace {

// Every monomial of f lies on wx*i + wy*j = gamma.
bool on_weight_line(const BiPoly& f, unsigned wx, unsigned wy, unsigned gamma) {
  for (const auto& [m, c] : f.terms())
    if (wx * m.first + wy * m.second != gamma) return false;
  return true;
}

// Lowest total degree among the terms (the test's own order function).
unsigned lowest_degree(const BiPoly& p) {
  unsigned best = ~0u;
  for (const auto& [m, c] : p.terms()) best = std::min(best, m.first + m.second);
  return best;
}

BiPoly weighted_truncation(const BiPoly& p, unsigned wx, unsigned wy, int max_deg) {
  BiPoly::Terms t;
  for (const auto& [m, c] : p.terms())
    if (static_cast<int>(wx * m.first + wy * m.second) <= max_deg) t[m] = c;
  return BiPoly(t);
}

}  // namespace

TEST_CASE("weight inference") {
  auto w = infer_weights(BiPoly::parse("y^2 - x^3"));
  REQUIRE(w.has_value());
  CHECK(w->alpha == 2);
  CHECK(w->beta == 3);
  CHECK(w->gamma == 6);
  CHECK(on_weight_line(BiPoly::parse("y^2 - x^3"), w->wx(), w->wy(), w->gamma));

  auto s = infer_weights(BiPoly::parse("x^2 - y^3"));
  REQUIRE(s.has_value());
  CHECK(s->swapped);
  CHECK(on_weight_line(BiPoly::parse("x^2 - y^3"), s->wx(), s->wy(), s->gamma));

  auto xy = infer_weights(BiPoly::parse("x*y"));
  REQUIRE(xy.has_value());
  CHECK(xy->alpha == 1);
  CHECK(xy->beta == 1);
  CHECK(xy->gamma == 2);

  CHECK_FALSE(infer_weights(BiPoly::parse("y^2 - x^3 + x^4")).has_value());
  CHECK_FALSE(infer_weights(BiPoly::parse("x^5 + y^5 + x^3*y^3")).has_value());
  CHECK_FALSE(infer_weights(BiPoly::parse("1 + x")).has_value());
  CHECK_THROWS_AS(infer_weights(BiPoly()), Error);
}

TEST_CASE("Euler identity on quasi-homogeneous fixtures") {
  for (const char* text : {"y^2 - x^3", "y^3 - x^5", "x*y", "y^2 - x^4", "x^3*y + y^5", "y^4 - x^6 + 3*x^3*y^2"}) {
    BiPoly f = BiPoly::parse(text);
    auto w = infer_weights(f);
    REQUIRE(w.has_value());
    CHECK(on_weight_line(f, w->wx(), w->wy(), w->gamma));
    CHECK(euler_check(f, *w));
    // Independent check of alpha x f_x + beta y f_y = gamma f on the term map.
    BiPoly::Terms lhs;
    for (const auto& [m, c] : f.terms()) lhs[m] += c * Rat(w->wx() * m.first + w->wy() * m.second);
    CHECK(BiPoly(lhs) == Rat(w->gamma) * f);
  }
  Weight wrong{2, 3, 6, true};
  CHECK_FALSE(euler_check(BiPoly::parse("y^2 - x^3"), wrong));
}

TEST_CASE("jacobian membership with verified cofactors") {
  for (const char* text : {"y^2 - x^3", "y^2 - x^3 + x^4", "y^3 - x^5 + x^4*y"}) {
    BiPoly f = BiPoly::parse(text);
    auto c = jacobian_membership(f, 12);
    CHECK(c.member);
    REQUIRE(c.cofactors.has_value());
    BiPoly rest = f - c.cofactors->first * f.partial_x() - c.cofactors->second * f.partial_y();
    CHECK((rest.is_zero() || lowest_degree(rest) >= 12));
  }
  BiPoly nm = BiPoly::parse("x^5 + y^5 + x^3*y^3");
  auto c12 = jacobian_membership(nm, 12);
  CHECK_FALSE(c12.member);
  CHECK(c12.residual_order > 0);
  CHECK_FALSE(jacobian_membership(nm, 14).member);
  CHECK_THROWS_AS(jacobian_membership(BiPoly::parse("y^2"), 8), Error);
}

TEST_CASE("ideal membership of a plain product") {
  BiPoly g1 = BiPoly::parse("x"), g2 = BiPoly::parse("y^2");
  CHECK(ideal_membership(BiPoly::parse("x*y + y^3"), g1, g2, 8).member);
  CHECK_FALSE(ideal_membership(BiPoly::parse("y"), g1, g2, 8).member);
}

TEST_CASE("Takens normal form recovers f and h exactly") {
  for (auto [wx, wy] : {std::pair{2u, 3u}, std::pair{3u, 5u}}) {
    for (int trial = 0; trial < 5; ++trial) {
      Rat c1 = qtest::rand_rat(), c2 = qtest::rand_rat();
      if (c1 == 0) c1 = 1;
      if (c2 == 0) c2 = -1;
      BiPoly f = c1 * BiPoly::monomial(1, 0, wx) + c2 * BiPoly::monomial(1, wy, 0);
      Weight w{wx, wy, wx * wy, false};
      // h R may not undercut the weight of df.
      BiPoly::Terms ht;
      const BiPoly raw = qtest::rand_bipoly(6, 8);
      for (const auto& [m, c] : raw.terms())
        if (w.degree_of(m.first, m.second) + wx + wy >= w.gamma) ht[m] = c;
      BiPoly h(ht);
      OneForm omega = OneForm::exact(f) + h * rotational_form(w);
      const unsigned N = 16;
      TakensData t = takens_normal_form(omega, w, N);
      CHECK(t.f == f);
      CHECK(weighted_truncation(t.g, wx, wy, N) == BiPoly::constant(1));
      CHECK(weighted_truncation(t.h, wx, wy, int(N) - int(wx + wy)) ==
            weighted_truncation(h, wx, wy, int(N) - int(wx + wy)));
      CHECK(takens_residual(omega, t).is_zero());
    }
  }
}

TEST_CASE("Takens normal form with a unit multiplier") {
  Weight w{2, 3, 6, false};
  OneForm base = OneForm::exact(BiPoly::parse("y^2 - x^3")) + BiPoly::parse("x*y") * rotational_form(w);
  OneForm omega = BiPoly::parse("1 + x + y^2") * base;
  TakensData t = takens_normal_form(omega, w, 14);
  CHECK(takens_residual(omega, t).is_zero());
  CHECK(t.f == BiPoly::parse("y^2 - x^3"));
  CHECK(t.g.coeff(0, 0) == 1);
}

TEST_CASE("Takens normal form errors") {
  Weight w{2, 3, 6, false};
  CHECK_THROWS_AS(takens_normal_form(BiPoly::parse("x") * OneForm::exact(BiPoly::parse("y^2 - x^3")), w, 10),
                  Error);
  try {
    takens_normal_form(OneForm::exact(BiPoly::parse("y^2 - x^2")), w, 10);
    FAIL("expected an obstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotQuasiHomogeneousType);
  }
  auto t = infer_takens(OneForm::exact(BiPoly::parse("y^3 - x^5")), 16);
  REQUIRE(t.has_value());
  CHECK(t->weight.wx() == 3);
  CHECK(t->weight.wy() == 5);
}
