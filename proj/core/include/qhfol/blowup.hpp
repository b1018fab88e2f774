#pragma once

#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "qhfol/algpoint.hpp"
#include "qhfol/bipoly.hpp"
#include "qhfol/one_form.hpp"
#include "qhfol/singularity.hpp"

namespace qhfol {

struct Component {
  int id = 0;  // equals the creation index (1-based)
  int self_intersection = -1;
  unsigned creation_index = 0;
  unsigned multiplicity_curve = 0;
  unsigned multiplicity_form = 0;
};

/// A divisor component seen in a chart, with its local equation.
struct DivisorLocal {
  int component = 0;
  BiPoly equation;
};

/// One chart of the atlas: (x, y) = (X(u, v), Y(u, v)) plus strict transforms in (u, v).
struct Chart {
  int id = 0;
  int parent = -1;
  /// Component created by the blow-up that produced this chart (0 for the root chart).
  int component = 0;
  BiPoly X, Y;
  std::vector<DivisorLocal> divisors;
  std::optional<BiPoly> f;
  std::optional<OneForm> omega;
  /// Additional tracked curves (coordinate axes, chain guides), strict transforms.
  std::vector<BiPoly> curves;
};

/// A point of a chart; rational coordinates have degree-1 minimal polynomials.
struct PointOnDivisor {
  int chart = 0;
  AlgPoint u = AlgPoint::rational(0), v = AlgPoint::rational(0);
};

enum class PointKind { Corner, SeparatrixAttachment, FoliationSingularity };

struct MarkedPoint {
  PointOnDivisor at;
  PointKind kind = PointKind::Corner;
  std::vector<int> components;
  std::optional<SingClass> sing;
  /// Eigenvalue ratio relative to each component through the point.
  std::vector<std::pair<int, AlgPoint>> ratios;
};

struct SeparatrixBranch {
  int id = 0;
  int component = 0;
  std::size_t point = 0;  // index into marked_points
};

struct BlowupCenter {
  PointOnDivisor at;
  int component = 0;
};

struct ResolutionTree {
  std::vector<Component> components;
  std::set<std::pair<int, int>> adjacency;  // (a, b) with a < b
  std::vector<Chart> charts;
  std::vector<MarkedPoint> marked_points;
  std::vector<SeparatrixBranch> separatrix_branches;
  std::vector<BlowupCenter> centers;
  std::optional<int> central;

  const Component& component(int id) const { return components.at(id - 1); }
  const Chart& chart(int id) const { return charts.at(id); }
  /// The two charts created with component `id`: (x, y) = (p + u, q + uv) and (p + uv, q + v).
  std::pair<int, int> charts_of(int id) const { return {2 * id - 1, 2 * id}; }
};

/// Root chart (identity map) carrying the given data.
ResolutionTree make_root(std::optional<BiPoly> f, std::optional<OneForm> omega,
                         std::vector<BiPoly> curves = {});

/// Blows up a rational point of a chart (the origin of the root chart, or a point on the
/// divisor). Throws IrrationalCenter, NotAPoint, Dicritical.
ResolutionTree blowup_at(const ResolutionTree& tree, const PointOnDivisor& p);

/// Guide for chain_blowup: a smooth curve through the first center, or a divisor component.
using ChainGuide = std::variant<BiPoly, int>;

/// n successive blow-ups: first at p, then each at the point where the guide meets the
/// newest component. Returns the tree and the final point guide-meets-newest.
std::pair<ResolutionTree, PointOnDivisor> chain_blowup(const ResolutionTree& tree,
                                                       const PointOnDivisor& p,
                                                       const ChainGuide& guide, unsigned n);

/// Intersections of the strict transform of f with the divisor, found chart by chart.
/// Throws NonReducedCurve when f has repeated factors.
std::vector<MarkedPoint> separatrix_attachments(const ResolutionTree& tree);

/// Components through a rational point of a chart.
std::vector<int> components_through(const Chart& c, const Rat& u, const Rat& v);

/// Exact check f(X, Y) = prod e_D^m_D * f_strict and likewise for omega.
bool factorization_holds(const ResolutionTree& tree, const BiPoly* f, const OneForm* omega);

/// Adjacency is a tree on the components (connected, |E| = |V| - 1).
bool adjacency_is_tree(const ResolutionTree& tree);

std::string_view kind_name(PointKind k);

}  // namespace qhfol
