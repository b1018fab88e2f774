#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "qhfol/desing.hpp"
#include "qhfol/jet.hpp"

namespace qhfol {

using cplx = std::complex<double>;

/// Fiber {u = u0} of the central chart; u is the coordinate along the central component.
struct Transversal {
  int chart = 0;
  cplx base{};
  double radius = 0;
};

struct LineSegment {
  cplx from, to;
};

struct ArcSegment {
  cplx center;
  double radius = 0;
  double theta0 = 0, theta1 = 0;  // radians; theta1 > theta0 is counterclockwise
};

using PathSegment = std::variant<LineSegment, ArcSegment>;

cplx segment_point(const PathSegment& s, double t);
cplx segment_velocity(const PathSegment& s, double t);

struct LoopSpec {
  cplx base{};
  /// Indices into the tree's marked points; -1 stands for the point at infinity.
  std::vector<int> encircled;
  std::vector<PathSegment> path;
  double clearance = 0;
};

LoopSpec reversed(const LoopSpec& loop);
/// Winding number of a closed loop around z.
double winding_number(const LoopSpec& loop, cplx z, int samples = 4096);

struct NumericParams {
  /// Explicit offsets on the transversal; empty selects 2N+1 points on a circle of radius rho.
  std::vector<cplx> offsets;
  double rho = 1e-2;
  /// Angular offset of the sample circle, radians.
  double phase = 0;
  double rtol = 1e-10;
  double max_step = 0.02;  // in path-parameter units per segment
  unsigned order = 8;
  /// Allowed global-error estimate (step halving) in units of rtol.
  double halving_factor = 1e3;
  /// Leaves farther than this from the divisor count as escaped.
  double validity_radius = 1.0;
  unsigned jobs = 1;
};

/// The central chart with the base coordinate first: omega = a du + b dv, divisor {v = 0}.
struct CentralChart {
  int chart = 0;
  int component = 0;
  OneForm omega;
  /// Finite marked abscissae and their marked-point indices; `infinity` is the marked point
  /// hidden at u = infinity, or -1.
  std::vector<std::pair<cplx, int>> points;
  int infinity = -1;
};

CentralChart central_chart(const ResolutionTree& tree);

/// Floating-point form a du + b dv (complex coefficients allowed) with its special fibers,
/// the abscissae where b(u, 0) vanishes.
struct NumericForm {
  NumericBiPoly a, b;
  std::vector<cplx> special;
};

NumericForm numeric_form(const OneForm& omega);

struct LiftResult {
  cplx value;
  double error = 0;
};

/// Lifts v0 along the loop, following the leaf of omega (base coordinate first).
/// Throws SingularFiberHit, ToleranceNotMet, LeafEscaped.
LiftResult lift_path(const OneForm& omega, const LoopSpec& loop, cplx v0,
                     const NumericParams& params = {});
std::vector<LiftResult> lift_path(const OneForm& omega, const LoopSpec& loop,
                                  const std::vector<cplx>& v0, const NumericParams& params);
std::vector<LiftResult> lift_path(const NumericForm& omega, const LoopSpec& loop,
                                  const std::vector<cplx>& v0, const NumericParams& params);

struct Generator {
  LoopSpec loop;
  ComplexJet jet;
  double error = 0;
  int marked_point = -1;
  /// e^{2 pi i lambda} from the exact ratio at the marked point, when known.
  std::optional<cplx> expected_multiplier;
};

struct HolonomyRep {
  Transversal transversal;
  double rho = 0;
  std::vector<Generator> generators;
  /// Composite of all generators in order; recorded only.
  std::optional<ComplexJet> product;
};

/// Fits a jet to the holonomy of one loop.
Generator holonomy_generator(const OneForm& omega, const LoopSpec& loop, const NumericParams& params,
                             double* rho_used = nullptr);
Generator holonomy_generator(const NumericForm& omega, const LoopSpec& loop, const NumericParams& params,
                             double* rho_used = nullptr);

/// Loops around each marked point of the central component, from a common base point.
std::vector<LoopSpec> standard_loops(const CentralChart& cc, cplx* base = nullptr);

HolonomyRep holonomy_rep(const OneForm& omega, const NumericParams& params = {});
HolonomyRep holonomy_rep(const ResolutionTree& tree, const NumericParams& params);

}  // namespace qhfol
