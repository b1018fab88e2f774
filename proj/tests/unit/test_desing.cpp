#include <doctest.h>

#include <numeric>

#include "qhfol/desing.hpp"
#include "qhfol/error.hpp"

using namespace qhfol;

namespace {

std::vector<unsigned> quotients(unsigned a, unsigned b) {
  std::vector<unsigned> q;
  unsigned r0 = b, r1 = a;
  while (r1 != 0) {
    q.push_back(r0 / r1);
    unsigned r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  return q;
}

// Intersection matrix of the exceptional divisor.
std::vector<std::vector<Rat>> intersection_matrix(const ResolutionTree& t) {
  const std::size_t n = t.components.size();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (const auto& c : t.components) m[c.id - 1][c.id - 1] = c.self_intersection;
  for (auto [a, b] : t.adjacency) m[a - 1][b - 1] = m[b - 1][a - 1] = 1;
  return m;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rat k = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return det;
}

// The total transform of f has zero intersection with every exceptional component.
bool projection_formula(const ResolutionTree& t) {
  auto m = intersection_matrix(t);
  auto branches = attachment_counts(t);
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rat s = branches[i];
    for (std::size_t j = 0; j < m.size(); ++j) s += m[i][j] * Rat(t.components[j].multiplicity_curve);
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Euclid quotients") {
  for (unsigned b = 2; b <= 13; ++b)
    for (unsigned a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      EuclidData e = euclid_quotients(Weight{a, b, a * b, false});
      CHECK(e.quotients == quotients(a, b));
      CHECK(e.sum() == std::accumulate(e.quotients.begin(), e.quotients.end(), 0u));
      CHECK(e.remainders.front() == b);
      CHECK(e.remainders.back() == 0);
    }
}

TEST_CASE("cusp resolution") {
  ResolutionTree t = resolve_curve(BiPoly::parse("y^2 - x^3"));
  REQUIRE(t.components.size() == 3);
  CHECK(t.component(1).self_intersection == -3);
  CHECK(t.component(2).self_intersection == -2);
  CHECK(t.component(3).self_intersection == -1);
  CHECK(t.adjacency == std::set<std::pair<int, int>>{{1, 3}, {2, 3}});
  REQUIRE(t.central.has_value());
  CHECK(*t.central == 3);
  CHECK(central_component(t) == 3);
  CHECK(attachment_counts(t) == std::vector<unsigned>{0, 0, 1});
  CHECK(t.component(3).multiplicity_curve == 6);
}

TEST_CASE("resolutions satisfy the intersection-theoretic identities") {
  for (const char* text : {"y^2 - x^3", "y^3 - x^5", "y^2 - x^4", "x*y", "y - x^3", "y^3 - x^7", "y^2 - x^2*y - x^5",
                           "y^4 - x^9"}) {
    BiPoly f = BiPoly::parse(text);
    ResolutionTree t = resolve_curve(f);
    CAPTURE(text);
    CHECK(adjacency_is_tree(t));
    CHECK(factorization_holds(t, &f, nullptr));
    // Blow-ups of a smooth point give a unimodular negative-definite lattice.
    const std::size_t n = t.components.size();
    Rat det = determinant(intersection_matrix(t));
    CHECK(det == (n % 2 == 0 ? 1 : -1));
    CHECK(projection_formula(t));
  }
}

TEST_CASE("prediction matches resolution for y^a - x^b") {
  for (unsigned b = 2; b <= 8; ++b)
    for (unsigned a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      BiPoly f = BiPoly::monomial(1, 0, a) - BiPoly::monomial(1, b, 0);
      PredictionReport r = verify_prediction(f);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(r.match);
      auto q = quotients(a, b);
      CHECK(r.predicted.component_count == std::accumulate(q.begin(), q.end(), 0u));
      CHECK(r.computed.components.size() == r.predicted.component_count);
    }
  CHECK_THROWS_AS(verify_prediction(BiPoly::parse("y^2 - x^3 + x^4")), Error);
}

TEST_CASE("foliation resolution agrees with the curve") {
  for (const char* text : {"y^2 - x^3", "y^3 - x^5", "y^2 - x^5", "y^3 - x^4"}) {
    BiPoly f = BiPoly::parse(text);
    ResolutionTree tc = resolve_curve(f), tf = resolve_foliation(OneForm::exact(f));
    CAPTURE(text);
    CHECK(trees_isomorphic(tc, tf));
    OneForm w = OneForm::exact(f);
    CHECK(factorization_holds(tf, nullptr, &w));
    CHECK(is_generalized_curve(w));
  }
  CHECK_FALSE(trees_isomorphic(resolve_curve(BiPoly::parse("y^2 - x^3")), resolve_curve(BiPoly::parse("y^3 - x^5"))));
}

TEST_CASE("cusp foliation: ratios at the central component") {
  ResolutionTree t = resolve_foliation(OneForm::exact(BiPoly::parse("y^2 - x^3")));
  REQUIRE(t.central.has_value());
  std::vector<Rat> seen;
  for (const auto& m : t.marked_points)
    for (const auto& [c, l] : m.ratios)
      if (c == *t.central && l.is_rational()) seen.push_back(l.rational_value());
  std::sort(seen.begin(), seen.end());
  // Camacho-Sad: the indices along D_3 sum to its self-intersection -1.
  Rat sum = 0;
  for (const Rat& r : seen) sum += r;
  CHECK(seen == std::vector<Rat>{Rat(-1, 2), Rat(-1, 3), Rat(-1, 6)});
  CHECK(sum == t.component(*t.central).self_intersection);
}

TEST_CASE("non-generalized curves and dicritical germs") {
  CHECK_FALSE(is_generalized_curve({BiPoly::parse("-y"), BiPoly::parse("x^2")}));
  try {
    resolve_foliation({BiPoly::parse("-1/2*y"), BiPoly::parse("x")});
    FAIL("expected a dicritical blow-up");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Dicritical);
  }
  CHECK_THROWS_AS(resolve_foliation(BiPoly::parse("x") * OneForm::exact(BiPoly::parse("y^2 - x^3"))), Error);
}
