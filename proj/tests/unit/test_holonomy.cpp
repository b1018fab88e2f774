#include <doctest.h>

#include <cmath>

#include "qhfol/error.hpp"
#include "qhfol/holonomy.hpp"

using namespace qhfol;

namespace {

constexpr double kPi = 3.14159265358979323846;

LoopSpec circle(cplx center, double r, int turns = 1) {
  LoopSpec l;
  l.base = center + r;
  l.path.push_back(ArcSegment{center, r, 0, 2 * kPi * turns});
  l.encircled = {0};
  l.clearance = r;
  return l;
}

LoopSpec square(double h) {
  LoopSpec l;
  l.base = {h, 0};
  const cplx c[] = {{h, 0}, {h, h}, {-h, h}, {-h, -h}, {h, -h}, {h, 0}};
  for (int k = 0; k < 5; ++k) l.path.push_back(LineSegment{c[k], c[k + 1]});
  l.encircled = {0};
  l.clearance = h;
  return l;
}

// u dv - lam (v + v^2) du: v/(1+v) picks up mu = exp(2 pi i lam) around u = 0,
// so the holonomy is mu v / (1 + (1 - mu) v).
OneForm riccati(const BiPoly& lam) {
  return {-(lam * BiPoly::parse("y + y^2")), BiPoly::parse("x")};
}

cplx oracle_coeff(cplx mu, std::size_t k) { return mu * std::pow(-(1.0 - mu), double(k - 1)); }

}  // namespace

TEST_CASE("winding numbers") {
  CHECK(winding_number(circle(0, 1), 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(winding_number(circle(0, 1), {2, 0}) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(winding_number(reversed(circle(0, 1)), 0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(winding_number(square(1), 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("linear model: lifting multiplies by exp(2 pi i lambda)") {
  for (double lam : {-0.5, -1.0 / 3.0, 0.25}) {
    OneForm w{Rat(rat_from_double(-lam)) * BiPoly::parse("y"), BiPoly::parse("x")};
    LiftResult r = lift_path(w, circle(0, 1), {0.01, 0});
    cplx expected = 0.01 * std::exp(cplx(0, 2 * kPi * lam));
    CHECK(std::abs(r.value - expected) < 1e-11);
    CHECK(r.error < 1e-8);
  }
}

TEST_CASE("step-halving stability and homotopy invariance") {
  OneForm w = riccati(BiPoly::constant(Rat(-1, 3)));
  NumericParams coarse, fine;
  coarse.rtol = 1e-8;
  fine.rtol = 1e-12;
  cplx v0{0.02, 0.01};
  LiftResult a = lift_path(w, circle(0, 1), v0, coarse), b = lift_path(w, circle(0, 1), v0, fine);
  CHECK(std::abs(a.value - b.value) <= 10 * (a.error + b.error) + 1e-14);
  // Homotopic loops: circles of other radii and a square.
  for (const LoopSpec& l : {circle(0, 0.5), circle(0, 2), square(0.7)}) {
    LiftResult c = lift_path(w, l, v0, fine);
    CHECK(std::abs(c.value - b.value) <= 10 * (c.error + b.error) + 1e-13);
  }
  // Loops that do not encircle the singular fiber have trivial holonomy.
  LiftResult d = lift_path(w, circle({3, 0}, 1), v0, fine);
  CHECK(std::abs(d.value - v0) < 1e-10);
}

TEST_CASE("generator jets match the Riccati oracle") {
  for (Rat lam : {Rat(-1, 2), Rat(-1, 3), Rat(2, 5)}) {
    OneForm w = riccati(BiPoly::constant(lam));
    NumericParams p;
    p.order = 6;
    Generator g = holonomy_generator(w, circle(0, 1), p);
    cplx mu = std::exp(cplx(0, 2 * kPi * lam.get_d()));
    for (std::size_t k = 1; k <= 6; ++k) {
      CAPTURE(k);
      CHECK(std::abs(g.jet[k] - oracle_coeff(mu, k)) * std::pow(p.rho, double(k - 1)) < 1e-8);
    }
    CHECK(g.error < 1e-6);
  }
}

TEST_CASE("imaginary exponent on a complex-coefficient model") {
  // u dv - i v du: leaves v = c u^i, multiplier exp(2 pi i * i) = exp(-2 pi).
  using Terms = std::vector<std::pair<Monomial, cplx>>;
  NumericForm w{NumericBiPoly(Terms{{{0, 1}, cplx(0, -1)}}), NumericBiPoly(Terms{{{1, 0}, cplx(1, 0)}}), {cplx(0)}};
  const cplx mu = std::exp(-2 * kPi);
  LiftResult r = lift_path(w, circle(0, 1), std::vector<cplx>{{0.01, 0}}, NumericParams{}).front();
  CHECK(std::abs(r.value - 0.01 * mu) < 1e-13);
  NumericParams p;
  p.order = 4;
  Generator g = holonomy_generator(w, circle(0, 1), p);
  CHECK(std::abs(g.jet[1] - mu) < 1e-10);
  for (std::size_t k = 2; k <= 4; ++k) CHECK(std::abs(g.jet[k]) * std::pow(p.rho, double(k - 1)) < 1e-10);
}

TEST_CASE("loops through the singular fiber are rejected") {
  OneForm w{BiPoly::parse("-1/2*y"), BiPoly::parse("x")};
  LoopSpec bad;
  bad.base = {-1, 0};
  bad.path = {LineSegment{{-1, 0}, {1, 0}}, ArcSegment{0, 1, 0, kPi}};
  bad.encircled = {0};
  try {
    lift_path(w, bad, {0.01, 0});
    FAIL("expected SingularFiberHit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularFiberHit);
  }
}

TEST_CASE("cusp representation: multipliers from exact ratios") {
  OneForm w = OneForm::exact(BiPoly::parse("y^2 - x^3"));
  NumericParams p;
  p.order = 6;
  HolonomyRep rep = holonomy_rep(w, p);
  REQUIRE(rep.generators.size() == 3);
  for (const auto& g : rep.generators) {
    REQUIRE(g.expected_multiplier.has_value());
    CHECK(std::abs(g.jet[1] - *g.expected_multiplier) < 1e-8);
    CHECK(std::abs(std::abs(g.jet[1]) - 1.0) < 1e-8);
  }
  // The product is recorded only.
  CHECK(rep.product.has_value());
  // Parallel evaluation is bit-identical.
  p.jobs = 3;
  HolonomyRep rep3 = holonomy_rep(w, p);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 1; k <= 6; ++k) CHECK(rep3.generators[i].jet[k] == rep.generators[i].jet[k]);
}

TEST_CASE("reversed loops give inverse generators") {
  OneForm w = riccati(BiPoly::constant(Rat(-1, 3)));
  NumericParams p;
  p.order = 6;
  Generator g = holonomy_generator(w, circle(0, 1), p), r = holonomy_generator(w, reversed(circle(0, 1)), p);
  ComplexJet id = compose(g.jet, r.jet);
  CHECK(std::abs(id[1] - 1.0) < 1e-9);
  for (std::size_t k = 2; k <= 6; ++k) CHECK(std::abs(id[k]) * std::pow(p.rho, double(k - 1)) < 1e-8);
}

TEST_CASE("halving the tolerance stays within the error estimate") {
  OneForm w = OneForm::exact(BiPoly::parse("y^2 - x^3"));
  NumericParams p;
  p.order = 6;
  HolonomyRep a = holonomy_rep(w, p);
  p.rtol /= 2;
  HolonomyRep b = holonomy_rep(w, p);
  for (std::size_t i = 0; i < a.generators.size(); ++i)
    for (std::size_t k = 1; k <= 6; ++k)
      CHECK(std::abs(a.generators[i].jet[k] - b.generators[i].jet[k]) * std::pow(a.rho, double(k - 1)) <=
            a.generators[i].error + b.generators[i].error);
}
