#pragma once

#include <random>

#include "qhfol/bipoly.hpp"
#include "qhfol/rational.hpp"

namespace qtest {

using qhfol::BiPoly;
using qhfol::Rat;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240601);
  return g;
}

inline Rat rand_rat(int num = 9, int den = 5) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rat r(n(rng()), d(rng()));
  r.canonicalize();
  return r;
}

inline BiPoly rand_bipoly(unsigned deg, unsigned terms, unsigned min_order = 0) {
  std::uniform_int_distribution<unsigned> e(0, deg);
  BiPoly::Terms t;
  for (unsigned k = 0; k < terms; ++k) {
    unsigned i = e(rng()), j = e(rng());
    if (i + j > deg || i + j < min_order) continue;
    t[{i, j}] += rand_rat();
  }
  return BiPoly(t);
}

}  // namespace qtest
