#include "qhfol/blowup.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qhfol/error.hpp"

namespace qhfol {

std::string_view kind_name(PointKind k) {
  switch (k) {
    case PointKind::Corner: return "corner";
    case PointKind::SeparatrixAttachment: return "separatrix-attachment";
    case PointKind::FoliationSingularity: return "foliation-singularity";
  }
  return "?";
}

ResolutionTree make_root(std::optional<BiPoly> f, std::optional<OneForm> omega,
                         std::vector<BiPoly> curves) {
  ResolutionTree t;
  Chart root;
  root.X = BiPoly::x();
  root.Y = BiPoly::y();
  root.f = std::move(f);
  root.omega = std::move(omega);
  root.curves = std::move(curves);
  t.charts.push_back(std::move(root));
  return t;
}

std::vector<int> components_through(const Chart& c, const Rat& u, const Rat& v) {
  std::vector<int> out;
  for (const auto& d : c.divisors)
    if (d.equation.eval(u, v) == 0) out.push_back(d.component);
  return out;
}

namespace {

/// Exceptional-coordinate valuation: u for the first chart, v for the second.
unsigned valuation(const BiPoly& p, bool first) {
  return first ? p.x_valuation() : p.y_valuation();
}

BiPoly strip(const BiPoly& p, bool first, unsigned k) {
  return first ? p.divide_monomial(k, 0) : p.divide_monomial(0, k);
}

struct ChartBuild {
  Chart chart;
  unsigned m_curve = 0, m_form = 0;
  std::vector<int> through;  // old components through the center
};

ChartBuild build_chart(const ResolutionTree& tree, const Chart& parent, const Rat& pu,
                       const Rat& pv, bool first, int new_id) {
  const BiPoly u = BiPoly::x(), v = BiPoly::y();
  const BiPoly su = first ? BiPoly::constant(pu) + u : BiPoly::constant(pu) + u * v;
  const BiPoly sv = first ? BiPoly::constant(pv) + u * v : BiPoly::constant(pv) + v;

  ChartBuild out;
  Chart& c = out.chart;
  c.id = static_cast<int>(tree.charts.size()) + (first ? 0 : 1);
  c.parent = parent.id;
  c.component = new_id;
  c.X = parent.X.substitute(su, sv);
  c.Y = parent.Y.substitute(su, sv);

  for (const auto& d : parent.divisors) {
    BiPoly e = d.equation.substitute(su, sv);
    unsigned k = valuation(e, first);
    if (k > 0) {
      e = strip(e, first, k);
      out.through.push_back(d.component);
      out.m_curve += k * tree.component(d.component).multiplicity_curve;
      out.m_form += k * tree.component(d.component).multiplicity_form;
    }
    c.divisors.push_back({d.component, std::move(e)});
  }
  c.divisors.push_back({new_id, first ? u : v});

  if (parent.f) {
    BiPoly e = parent.f->substitute(su, sv);
    unsigned k = valuation(e, first);
    c.f = strip(e, first, k);
    out.m_curve += k;
  }
  if (parent.omega) {
    OneForm w = parent.omega->pullback(su, sv);
    unsigned k = std::min(valuation(w.a, first), valuation(w.b, first));
    w = {strip(w.a, first, k), strip(w.b, first, k)};
    out.m_form += k;
    // The new line is invariant iff the form restricted to it vanishes.
    bool invariant = first ? w.b.restrict_x0().is_zero() : w.a.restrict_y0().is_zero();
    if (!invariant)
      throw Error(ErrorCode::Dicritical,
                  "blowup_at: component D" + std::to_string(new_id) + " is dicritical");
    c.omega = std::move(w);
  }
  for (const auto& g : parent.curves) {
    BiPoly e = g.substitute(su, sv);
    c.curves.push_back(strip(e, first, valuation(e, first)));
  }
  return out;
}

}  // namespace

ResolutionTree blowup_at(const ResolutionTree& tree, const PointOnDivisor& p) {
  if (p.chart < 0 || p.chart >= static_cast<int>(tree.charts.size()))
    throw Error(ErrorCode::NotAPoint, "blowup_at: unknown chart " + std::to_string(p.chart));
  if (!p.u.is_rational() || !p.v.is_rational())
    throw Error(ErrorCode::IrrationalCenter, "blowup_at: center has irrational coordinates");
  const Rat pu = p.u.rational_value(), pv = p.v.rational_value();
  const Chart& parent = tree.chart(p.chart);
  std::vector<int> through = components_through(parent, pu, pv);
  if (parent.divisors.empty()) {
    if (!tree.components.empty() || pu != 0 || pv != 0)
      throw Error(ErrorCode::NotAPoint, "blowup_at: root chart admits only the origin");
  } else if (through.empty()) {
    throw Error(ErrorCode::NotAPoint, "blowup_at: point does not lie on the divisor");
  }
  for (const auto& c : tree.centers)
    if (c.at.chart == p.chart && c.at.u == p.u && c.at.v == p.v)
      throw Error(ErrorCode::NotAPoint, "blowup_at: point was already blown up");

  const int id = static_cast<int>(tree.components.size()) + 1;
  ChartBuild a = build_chart(tree, parent, pu, pv, true, id);
  ChartBuild b = build_chart(tree, parent, pu, pv, false, id);

  ResolutionTree out = tree;
  Component comp;
  comp.id = id;
  comp.creation_index = static_cast<unsigned>(id);
  comp.self_intersection = -1;
  comp.multiplicity_curve = a.m_curve;
  comp.multiplicity_form = a.m_form;
  for (int d : through) {
    out.components[d - 1].self_intersection -= 1;
    out.adjacency.insert({d, id});
  }
  if (through.size() == 2) out.adjacency.erase({std::min(through[0], through[1]), std::max(through[0], through[1])});
  out.components.push_back(comp);
  out.charts.push_back(std::move(a.chart));
  out.charts.push_back(std::move(b.chart));
  out.centers.push_back({p, id});
  out.central.reset();
  return out;
}

namespace {

/// Strict transform of a root-chart curve in chart c: divide out every divisor equation.
BiPoly strict_transform(const Chart& c, const BiPoly& g) {
  BiPoly t = g.substitute(c.X, c.Y);
  for (const auto& d : c.divisors) {
    if (d.equation.is_constant()) continue;
    while (auto q = t.divide_exact(d.equation)) t = *q;
  }
  return t;
}

/// Point where the zero set of h (a chart polynomial) meets the component of charts (A, B).
std::optional<PointOnDivisor> meet_component(const ResolutionTree& t, int component,
                                             const std::function<BiPoly(const Chart&)>& h) {
  auto [ia, ib] = t.charts_of(component);
  UPoly face = h(t.chart(ia)).restrict_x0();
  if (!face.is_zero()) {
    auto roots = rational_roots(face);
    if (!roots.empty()) return PointOnDivisor{ia, AlgPoint::rational(0), AlgPoint::rational(roots.front())};
  }
  if (h(t.chart(ib)).eval(Rat(0), Rat(0)) == 0) return PointOnDivisor{ib};
  return std::nullopt;
}

}  // namespace

std::pair<ResolutionTree, PointOnDivisor> chain_blowup(const ResolutionTree& tree,
                                                       const PointOnDivisor& p,
                                                       const ChainGuide& guide, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "chain_blowup: n must be >= 1");
  std::function<BiPoly(const Chart&)> h;
  if (std::holds_alternative<BiPoly>(guide)) {
    BiPoly g = std::get<BiPoly>(guide);
    h = [g](const Chart& c) { return strict_transform(c, g); };
  } else {
    int s = std::get<int>(guide);
    h = [s](const Chart& c) {
      for (const auto& d : c.divisors)
        if (d.component == s) return d.equation;
      return BiPoly::constant(1);
    };
  }
  ResolutionTree t = blowup_at(tree, p);
  auto next = [&]() {
    auto q = meet_component(t, static_cast<int>(t.components.size()), h);
    if (!q) throw Error(ErrorCode::NotAPoint, "chain_blowup: guide does not meet the new component");
    return *q;
  };
  for (unsigned k = 1; k < n; ++k) t = blowup_at(t, next());
  PointOnDivisor last = next();
  return {std::move(t), last};
}

namespace {

bool was_center(const ResolutionTree& t, int chart, const AlgPoint& u, const AlgPoint& v) {
  for (const auto& c : t.centers)
    if (c.at.chart == chart && c.at.u == u && c.at.v == v) return true;
  return false;
}

}  // namespace

std::vector<MarkedPoint> separatrix_attachments(const ResolutionTree& tree) {
  const Chart& root = tree.chart(0);
  if (!root.f) throw Error(ErrorCode::InvalidArgument, "separatrix_attachments: tree carries no curve");
  if (!is_squarefree(*root.f))
    throw Error(ErrorCode::NonReducedCurve, "separatrix_attachments: curve has repeated factors");
  std::vector<MarkedPoint> out;
  for (const auto& comp : tree.components) {
    auto [ia, ib] = tree.charts_of(comp.id);
    const Chart& A = tree.chart(ia);
    for (const auto& r : all_roots(A.f->restrict_x0())) {
      AlgPoint zero = AlgPoint::rational(0);
      if (was_center(tree, ia, zero, r)) continue;
      MarkedPoint m;
      m.at = {ia, zero, r};
      m.kind = PointKind::SeparatrixAttachment;
      m.components = r.is_rational() ? components_through(A, 0, r.rational_value())
                                     : std::vector<int>{comp.id};
      out.push_back(std::move(m));
    }
    const Chart& B = tree.chart(ib);
    if (B.f->eval(Rat(0), Rat(0)) == 0 && !was_center(tree, ib, AlgPoint::rational(0), AlgPoint::rational(0))) {
      MarkedPoint m;
      m.at = {ib};
      m.kind = PointKind::SeparatrixAttachment;
      m.components = components_through(B, 0, 0);
      out.push_back(std::move(m));
    }
  }
  return out;
}

bool factorization_holds(const ResolutionTree& tree, const BiPoly* f, const OneForm* omega) {
  for (const auto& c : tree.charts) {
    if (c.parent < 0) continue;
    if (f && c.f) {
      BiPoly rhs = *c.f;
      for (const auto& d : c.divisors)
        rhs = d.equation.pow(tree.component(d.component).multiplicity_curve) * rhs;
      if (f->substitute(c.X, c.Y) != rhs) return false;
    }
    if (omega && c.omega) {
      BiPoly e = BiPoly::constant(1);
      for (const auto& d : c.divisors) e = d.equation.pow(tree.component(d.component).multiplicity_form) * e;
      if (omega->pullback(c.X, c.Y) != e * *c.omega) return false;
    }
  }
  return true;
}

bool adjacency_is_tree(const ResolutionTree& tree) {
  const std::size_t n = tree.components.size();
  if (n == 0) return tree.adjacency.empty();
  if (tree.adjacency.size() != n - 1) return false;
  std::vector<int> parent(n + 1);
  for (std::size_t i = 0; i <= n; ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [a, b] : tree.adjacency) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

}  // namespace qhfol
