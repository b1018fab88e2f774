#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhfol/blowup.hpp"
#include "qhfol/quasihom.hpp"

namespace qhfol {

/// r_0 = beta, r_1 = alpha, r_i = q_{i+1} r_{i+1} + r_{i+2}, ending with 0.
struct EuclidData {
  unsigned alpha = 0, beta = 0;
  std::vector<unsigned> remainders;
  std::vector<unsigned> quotients;
  unsigned sum() const;
};

EuclidData euclid_quotients(const Weight& w);

/// Upper bound on blow-ups performed by the resolution drivers.
inline constexpr unsigned kResolutionCap = 64;

/// Blows up until the total transform of f (together with the coordinate axes) has only
/// normal crossings; the origin is always blown up once.
ResolutionTree resolve_curve(const BiPoly& f);

/// Blows up every non-reduced singular point. Throws Dicritical, IrrationalCenter,
/// NonIsolated, ResolutionCapExceeded.
ResolutionTree resolve_foliation(const OneForm& omega);

struct PredictedTree {
  Weight weight;
  EuclidData euclid;
  unsigned component_count = 0;
  /// Component ids (creation indices) in chain order, starting at the end meeting {u = 0}.
  std::vector<int> chain;
  std::vector<int> self_intersections;  // indexed by creation index - 1
  std::set<std::pair<int, int>> adjacency;
  int central = 0;
  /// Component met by each axis strict transform.
  int u_axis_component = 0, v_axis_component = 0;
  bool u_axis_arrow = false, v_axis_arrow = false;
  /// Branches of f other than the axes, all expected on the central component.
  unsigned attachment_count = 0;
};

/// Replays the block structure of the Euclid quotients on an incidence model.
/// Throws NotQuasiHomogeneous when w is not the weight of f.
PredictedTree predict_dual_tree(const Weight& w, const BiPoly& f);

/// The unique component carrying every separatrix branch. Throws NotUnique.
int central_component(const ResolutionTree& tree);

struct PredictionReport {
  bool match = false;
  PredictedTree predicted;
  ResolutionTree computed;
  /// Predicted id -> computed id when matched, otherwise the first discrepancy.
  std::vector<std::pair<int, int>> mapping;
  std::string witness;
};

/// Throws NotQuasiHomogeneous when f has no weight.
PredictionReport verify_prediction(const BiPoly& f);

bool is_generalized_curve(const OneForm& omega);

/// Branch count per component (index = id - 1).
std::vector<unsigned> attachment_counts(const ResolutionTree& tree);

/// Isomorphism of dual trees respecting self-intersections, attachment counts and central.
bool trees_isomorphic(const ResolutionTree& a, const ResolutionTree& b);

}  // namespace qhfol
