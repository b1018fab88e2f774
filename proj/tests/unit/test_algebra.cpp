#include <doctest.h>

#include <cmath>

#include "qhfol/algpoint.hpp"
#include "qhfol/error.hpp"
#include "qhfol/one_form.hpp"
#include "support.hpp"

using namespace qhfol;
using qtest::rand_bipoly;
using qtest::rand_rat;

namespace {

// Horner evaluation straight from the coefficient vector.
Rat eval_coeffs(const std::vector<Rat>& c, const Rat& t) {
  Rat acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// Evaluation from the term map, independent of BiPoly::eval.
Rat eval_terms(const BiPoly& p, const Rat& x, const Rat& y) {
  Rat acc = 0;
  for (const auto& [m, c] : p.terms()) {
    Rat term = c;
    for (unsigned k = 0; k < m.first; ++k) term *= x;
    for (unsigned k = 0; k < m.second; ++k) term *= y;
    acc += term;
  }
  return acc;
}

UPoly rand_upoly(int deg) {
  std::vector<Rat> c;
  for (int k = 0; k <= deg; ++k) c.push_back(rand_rat());
  if (c.back() == 0) c.back() = 1;
  return UPoly(c);
}

}  // namespace

TEST_CASE("rationals parse and print") {
  CHECK(parse_rat("-6/4") == Rat(-3, 2));
  CHECK(to_string(Rat(-3, 2)) == "-3/2");
  CHECK(to_string(Rat(5)) == "5");
  Rat s;
  CHECK(rat_sqrt(Rat(9, 4), s));
  CHECK(s == Rat(3, 2));
  CHECK_FALSE(rat_sqrt(Rat(2), s));
  CHECK(rat_from_double(0.375) == Rat(3, 8));
}

TEST_CASE("univariate ring operations agree with evaluation") {
  for (int trial = 0; trial < 40; ++trial) {
    UPoly a = rand_upoly(trial % 5 + 1), b = rand_upoly(trial % 3 + 1);
    Rat t = rand_rat();
    CHECK((a * b).eval(t) == eval_coeffs(a.coeffs(), t) * eval_coeffs(b.coeffs(), t));
    CHECK((a + b).eval(t) == eval_coeffs(a.coeffs(), t) + eval_coeffs(b.coeffs(), t));
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(UPoly::parse(a.to_string()) == a);
  }
}

TEST_CASE("gcd and square-free parts") {
  UPoly p = UPoly::parse("t - 1"), q = UPoly::parse("t + 2"), r = UPoly::parse("t^2 - 2");
  UPoly g = gcd(p * p * r, p * q * r);
  CHECK(g.monic() == (p * r).monic());
  CHECK(squarefree_part(p * p * q).monic() == (p * q).monic());
  CHECK_FALSE(is_squarefree(p * p));
  auto roots = rational_roots(UPoly::parse("2*t^3 - 3*t^2 - 3*t + 2"));
  REQUIRE(roots.size() == 3);
  for (const Rat& z : roots) CHECK(UPoly::parse("2*t^3 - 3*t^2 - 3*t + 2").eval(z) == 0);
  auto factors = irreducible_factors(p * q * r);
  CHECK(factors.size() == 3);
}

TEST_CASE("root isolation boxes contain the numeric roots") {
  UPoly m = UPoly::parse("t^3 - 2");
  auto roots = isolate_roots(m);
  REQUIRE(roots.size() == 3);
  for (const auto& z : roots) {
    CHECK(std::abs(m.eval(z.numeric())) < 1e-12);
    CHECK(z.box().contains(CRat{rat_from_double(z.numeric().real()), rat_from_double(z.numeric().imag())}));
  }
  AlgPoint fine = alg_refine(roots[0], Rat(1, 1000000));
  CHECK(fine.box().diameter() <= 1e-6);
}

TEST_CASE("number field arithmetic in Q(sqrt 2)") {
  auto roots = isolate_roots(UPoly::parse("t^2 - 2"));
  NumberField K(roots[0]);
  UPoly a = UPoly::parse("t + 1");
  UPoly inv = K.inv(a);
  CHECK(K.mul(a, inv) == UPoly::constant(1));
  Rat v;
  CHECK(K.as_rational(K.mul(UPoly::parse("t"), UPoly::parse("t")), v));
  CHECK(v == 2);
  CHECK(std::abs(K.numeric(a) - (roots[0].numeric() + 1.0)) < 1e-12);
  CHECK(K.minpoly_of(a).monic() == UPoly::parse("t^2 - 2*t - 1"));
}

TEST_CASE("bivariate arithmetic agrees with evaluation") {
  for (int trial = 0; trial < 30; ++trial) {
    BiPoly f = rand_bipoly(5, 6), g = rand_bipoly(4, 5), X = rand_bipoly(3, 3), Y = rand_bipoly(3, 3);
    Rat x = rand_rat(), y = rand_rat();
    CHECK(eval_terms(f * g, x, y) == eval_terms(f, x, y) * eval_terms(g, x, y));
    CHECK(eval_terms(f - g, x, y) == eval_terms(f, x, y) - eval_terms(g, x, y));
    CHECK(eval_terms(f.substitute(X, Y), x, y) == eval_terms(f, eval_terms(X, x, y), eval_terms(Y, x, y)));
    CHECK(eval_terms(f.swap_xy(), x, y) == eval_terms(f, y, x));
    CHECK(eval_terms(f.translate(x, y), 0, 0) == eval_terms(f, x, y));
    CHECK(BiPoly::parse(f.to_string()) == f);
    // Term-wise derivative oracle.
    BiPoly::Terms dx;
    for (const auto& [m, c] : f.terms())
      if (m.first > 0) dx[{m.first - 1, m.second}] += c * Rat(m.first);
    CHECK(f.partial_x() == BiPoly(dx));
    if (!g.is_zero()) {
      auto q = (f * g).divide_exact(g);
      REQUIRE(q.has_value());
      CHECK(*q == f);
    }
  }
}

TEST_CASE("bivariate gcd and square-freeness") {
  BiPoly f = BiPoly::parse("y^2 - x^3"), g = BiPoly::parse("x + y + 1"), h = BiPoly::parse("x*y - 2");
  BiPoly d = gcd(f * g, g * h);
  auto q = d.divide_exact(g);
  REQUIRE(q.has_value());
  CHECK(q->is_constant());
  CHECK(is_squarefree(f * g));
  CHECK_FALSE(is_squarefree(f * f));
}

TEST_CASE("parse errors carry the offset") {
  try {
    BiPoly::parse("y^^2");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    REQUIRE(e.offset().has_value());
    CHECK(*e.offset() == 2);
  }
  CHECK_THROWS_AS(BiPoly::parse("x +"), Error);
  CHECK_THROWS_AS(OneForm::parse("x ; y ; ("), Error);
}

TEST_CASE("one-forms: pull-back matches the chain rule") {
  OneForm w = OneForm::exact(BiPoly::parse("y^2 - x^3"));
  BiPoly X = BiPoly::parse("x"), Y = BiPoly::parse("x*y");
  OneForm p = w.pullback(X, Y);
  // d(f o Phi) is exact: compare with the derivative of the composite.
  CHECK(p == OneForm::exact(BiPoly::parse("y^2 - x^3").substitute(X, Y)));
  CHECK(OneForm::parse(w.to_string()) == w);
  CHECK(OneForm::parse("d(y^2 - x^3)") == w);
  OneForm u = BiPoly::parse("1 + x") * w;
  CHECK(local_reduce(u) == w);
  CHECK_THROWS_AS(local_reduce(BiPoly::parse("x") * w), Error);
}
