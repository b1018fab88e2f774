#include <doctest.h>

#include <cmath>
#include <complex>

#include "qhfol/error.hpp"
#include "qhfol/singularity.hpp"

using namespace qhfol;
using cd = std::complex<double>;

namespace {

OneForm form(const char* a, const char* b) { return {BiPoly::parse(a), BiPoly::parse(b)}; }

// Eigenvalues of the linear part of b d/dx - a d/dy at the origin, from the quadratic formula.
std::pair<cd, cd> eigenvalues(const OneForm& w) {
  const double m00 = w.b.coeff(1, 0).get_d(), m01 = w.b.coeff(0, 1).get_d();
  const double m10 = -w.a.coeff(1, 0).get_d(), m11 = -w.a.coeff(0, 1).get_d();
  const double tr = m00 + m11, det = m00 * m11 - m01 * m10;
  const cd root = std::sqrt(cd(tr * tr - 4 * det));
  return {(tr + root) / 2.0, (tr - root) / 2.0};
}

}  // namespace

TEST_CASE("linear saddles: ratio matches the eigenvalue quotient") {
  for (const char* lam : {"1/2", "1/3", "3/7"}) {
    // x dy + lam y dx has eigenvalues 1 and -lam.
    OneForm w{Rat(parse_rat(lam)) * BiPoly::parse("y"), BiPoly::parse("x")};
    SingClass s = classify_singularity(w, Rat(0), Rat(0));
    CHECK(s.tag == SingTag::Reduced);
    auto [e1, e2] = eigenvalues(w);
    cd oracle = std::abs(e1 / e2) <= 1 ? e1 / e2 : e2 / e1;
    REQUIRE(s.lambda.has_value());
    CHECK(s.lambda->is_rational());
    CHECK(std::abs(s.lambda_numeric - oracle) < 1e-14);
    CHECK(s.lambda->rational_value() == -parse_rat(lam));
  }
}

TEST_CASE("tags: saddle-node, nilpotent, resonant node, radial") {
  CHECK(classify_singularity(form("-y", "x^2"), Rat(0), Rat(0)).tag == SingTag::SaddleNode);
  CHECK(classify_singularity(OneForm::exact(BiPoly::parse("y^2 - x^3")), Rat(0), Rat(0)).tag ==
        SingTag::NonReduced);
  CHECK(classify_singularity(form("-2*y", "x"), Rat(0), Rat(0)).tag == SingTag::NonReduced);
  CHECK(classify_singularity(form("-y", "x"), Rat(0), Rat(0)).tag == SingTag::NonReduced);
  CHECK_THROWS_AS(classify_singularity(form("1 + x", "y"), Rat(0), Rat(0)), Error);
}

TEST_CASE("irrational ratio") {
  // Linear field (x + y, x): eigenvalues (1 +- sqrt 5)/2.
  OneForm w = form("-x", "x + y");
  SingClass s = classify_singularity(w, Rat(0), Rat(0));
  CHECK(s.tag == SingTag::Reduced);
  auto [e1, e2] = eigenvalues(w);
  cd oracle = std::abs(e1 / e2) <= 1 ? e1 / e2 : e2 / e1;
  CHECK(std::abs(s.lambda_numeric - oracle) < 1e-12);
  REQUIRE(s.lambda.has_value());
  CHECK(s.lambda->minpoly().monic() == UPoly::parse("t^2 + 3*t + 1"));
}

TEST_CASE("ratio relative to an invariant line") {
  OneForm w{Rat(1, 3) * BiPoly::parse("y"), BiPoly::parse("x")};
  BiPoly yaxis = BiPoly::parse("x"), xaxis = BiPoly::parse("y");
  auto along_x = classify_singularity(w, Rat(0), Rat(0), &xaxis);
  auto along_y = classify_singularity(w, Rat(0), Rat(0), &yaxis);
  REQUIRE(along_x.lambda.has_value());
  REQUIRE(along_y.lambda.has_value());
  CHECK(along_x.lambda->rational_value() == Rat(-1, 3));
  CHECK(along_y.lambda->rational_value() == Rat(-3));
  CHECK(along_x.lambda->rational_value() * along_y.lambda->rational_value() == 1);
}

TEST_CASE("singularities at algebraic points") {
  // d(x (y^2 - 2)) is singular at (0, +-sqrt 2), where it is a saddle with ratio -1.
  OneForm w = OneForm::exact(BiPoly::parse("x*y^2 - 2*x"));
  auto roots = isolate_roots(UPoly::parse("t^2 - 2"));
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    SingClass s = classify_singularity(w, Rat(0), r);
    CHECK(s.tag == SingTag::Reduced);
    REQUIRE(s.lambda.has_value());
    CHECK(s.lambda->rational_value() == -1);
    CHECK(s.field.minpoly().monic() == UPoly::parse("t^2 - 2"));
  }
}
