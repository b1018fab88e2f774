#include <doctest.h>

#include <cmath>

#include "qhfol/diffeo.hpp"
#include "qhfol/error.hpp"
#include "support.hpp"

using namespace qhfol;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr unsigned kN = 6;

ComplexJet jet(cplx c1, std::initializer_list<cplx> rest, unsigned n = kN) {
  Series<cplx> s(n);
  s[1] = c1;
  std::size_t k = 2;
  for (cplx c : rest)
    if (k <= n) s[k++] = c;
  return ComplexJet(s);
}

cplx unit(double turns) { return std::exp(cplx(0, 2 * kPi * turns)); }

std::vector<ComplexJet> sample_group() {
  return {jet(unit(0.3), {{0.4, 0.1}, {-0.2, 0.3}, {0.05, 0}}),
          jet(unit(-0.45), {{-0.1, 0.7}, {0.3, 0}, {0, -0.2}}),
          jet(unit(0.15), {{0.2, 0.2}, {0, 0.1}, {0.1, 0.1}})};
}

std::vector<ComplexJet> conjugated(const std::vector<ComplexJet>& g, const ComplexJet& phi) {
  std::vector<ComplexJet> out;
  for (const auto& x : g) out.push_back(conjugate(x, phi));
  return out;
}

}  // namespace

TEST_CASE("recovers a known conjugator") {
  auto g0 = sample_group();
  ComplexJet phi = jet(1.0, {{0.3, -0.2}, {0.1, 0.05}, {-0.07, 0.02}, {0.01, 0}});
  auto g1 = conjugated(g0, phi);
  auto v = same_holonomy_test(g0, g1, Pairing::identity(3), kN, 1e-9);
  CHECK(v.conjugate);
  REQUIRE(v.phi.has_value());
  // phi o g0_i = g1_i o phi identifies phi up to the gauge phi'(0) = 1.
  for (unsigned k = 1; k <= kN; ++k) CHECK(std::abs((*v.phi)[k] - phi[k]) < 1e-9);
  for (const auto& row : v.residuals)
    for (double r : row) CHECK(r < 1e-9);
  CHECK_FALSE(v.obstruction.has_value());
}

TEST_CASE("rotated multiplier is rejected at order 1") {
  auto g0 = sample_group();
  auto g1 = g0;
  g1[1][1] *= std::exp(cplx(0, 0.6 * kPi));
  auto v = same_holonomy_test(g0, g1, Pairing::identity(3), kN, 1e-9);
  CHECK_FALSE(v.conjugate);
  REQUIRE(v.obstruction.has_value());
  CHECK(v.obstruction->first == 1);
}

TEST_CASE("higher-order perturbation is located") {
  auto g0 = sample_group();
  ComplexJet phi = jet(1.0, {{0.2, 0.1}});
  auto g1 = conjugated(g0, phi);
  g1[2][4] += cplx(1e-3, 0);
  auto v = same_holonomy_test(g0, g1, Pairing::identity(3), kN, 1e-9);
  CHECK_FALSE(v.conjugate);
  REQUIRE(v.obstruction.has_value());
  CHECK(v.obstruction->first == 4);
}

TEST_CASE("pairings: permutation and orientation reversal") {
  auto g0 = sample_group();
  ComplexJet phi = jet(1.0, {{0.1, 0.1}, {0.02, 0}});
  auto g1 = conjugated(g0, phi);
  // Rotate the labels: generator i of rep0 corresponds to generator (i + 1) % 3 of rep1.
  std::vector<ComplexJet> rotated{g1[2], g1[0], g1[1]};
  Pairing p;
  p.index = {1, 2, 0};
  p.inverted = {false, false, false};
  CHECK(same_holonomy_test(g0, rotated, p, kN, 1e-9).conjugate);
  CHECK_FALSE(same_holonomy_test(g0, rotated, Pairing::identity(3), kN, 1e-9).conjugate);

  std::vector<ComplexJet> inv;
  for (const auto& x : g1) inv.push_back(invert(x));
  Pairing q = Pairing::identity(3);
  q.inverted = {true, true, true};
  CHECK(same_holonomy_test(g0, inv, q, kN, 1e-9).conjugate);

  auto pairs = cyclic_pairings(3);
  CHECK(pairs.size() == 6);
  bool found = false;
  for (const auto& pp : pairs) found = found || same_holonomy_test(g0, rotated, pp, kN, 1e-9).conjugate;
  CHECK(found);
}

TEST_CASE("resonant linear parts leave the conjugator free") {
  std::vector<ComplexJet> g0{jet(-1.0, {}), jet(unit(1.0 / 3), {})};
  auto v = same_holonomy_test(g0, g0, Pairing::identity(2), kN, 1e-9);
  CHECK(v.conjugate);
}

TEST_CASE("representation-level search and errors") {
  HolonomyRep r0, r1;
  auto g0 = sample_group();
  auto g1 = conjugated(g0, jet(1.0, {{0.3, 0}}));
  for (int i = 0; i < 3; ++i) {
    r0.generators.push_back(Generator{{}, g0[i], 1e-12, i, std::nullopt});
    r1.generators.push_back(Generator{{}, g1[(i + 1) % 3], 1e-12, i, std::nullopt});
  }
  r0.rho = r1.rho = 1;
  auto v = same_holonomy_search(r0, r1, kN, 1e-9);
  CHECK(v.conjugate);
  CHECK_THROWS_AS(same_holonomy_test({jet(1.0, {}, 4)}, {jet(1.0, {}, 5)}, Pairing::identity(1), 5, 1e-9), Error);
  CHECK(truncate(g0[0], 3).order() == 3);
  CHECK(truncate(g0[0], 3)[3] == g0[0][3]);
}
