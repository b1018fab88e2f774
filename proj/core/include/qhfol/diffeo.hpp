#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qhfol/holonomy.hpp"
#include "qhfol/jet.hpp"

namespace qhfol {

/// Generator i of the first representation corresponds to generator index[i] of the second,
/// inverted when inverted[i] is set.
struct Pairing {
  std::vector<int> index;
  std::vector<bool> inverted;

  static Pairing identity(std::size_t m);
};

/// The 2m pairings given by cyclic rotations, with and without orientation reversal.
std::vector<Pairing> cyclic_pairings(std::size_t m);

struct SameHolonomyVerdict {
  bool conjugate = false;
  std::optional<ComplexJet> phi;
  unsigned order = 0;
  double tol = 0;
  double rho = 1;
  /// residuals[i][k-1]: |coefficient k of phi o g0_i - g1_i o phi| * rho^(k-1).
  std::vector<std::vector<double>> residuals;
  /// First obstructed (order, generator index).
  std::optional<std::pair<unsigned, int>> obstruction;
  Pairing pairing;
};

/// Solves phi o g0_i = g1_i o phi order by order through order N with the gauge phi'(0) = 1
/// when admissible, refining by Levenberg-Marquardt where resonances leave phi'(0) free.
/// Throws OrderMismatch.
SameHolonomyVerdict same_holonomy_test(const std::vector<ComplexJet>& g0, const std::vector<ComplexJet>& g1,
                                       const Pairing& pairing, unsigned N, double tol, double rho = 1);

/// Representation-level test; tol defaults to 100x the largest generator error estimate.
SameHolonomyVerdict same_holonomy_test(const HolonomyRep& rep0, const HolonomyRep& rep1,
                                       const Pairing& pairing, unsigned N,
                                       std::optional<double> tol = std::nullopt);

/// Tries every cyclic pairing (generator counts up to 6); returns the first success or the
/// verdict of the identity pairing.
SameHolonomyVerdict same_holonomy_search(const HolonomyRep& rep0, const HolonomyRep& rep1, unsigned N,
                                         std::optional<double> tol = std::nullopt);

/// Truncation of a jet to a lower order.
ComplexJet truncate(const ComplexJet& f, unsigned N);

}  // namespace qhfol
