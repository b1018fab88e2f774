#include "qhfol/desing.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "qhfol/error.hpp"

namespace qhfol {

unsigned EuclidData::sum() const { return std::accumulate(quotients.begin(), quotients.end(), 0u); }

EuclidData euclid_quotients(const Weight& w) {
  if (w.alpha == 0 || w.beta == 0 || std::gcd(w.alpha, w.beta) != 1 || w.alpha > w.beta)
    throw Error(ErrorCode::InvalidArgument, "euclid_quotients: need coprime 0 < alpha <= beta");
  EuclidData e;
  e.alpha = w.alpha;
  e.beta = w.beta;
  e.remainders = {w.beta, w.alpha};
  while (e.remainders.back() != 0) {
    unsigned a = e.remainders[e.remainders.size() - 2], b = e.remainders.back();
    e.quotients.push_back(a / b);
    e.remainders.push_back(a % b);
  }
  return e;
}

namespace {

enum class Mode { Curve, Foliation };

class Driver {
 public:
  Driver(ResolutionTree root, Mode mode) : t_(std::move(root)), mode_(mode) {}

  ResolutionTree run() {
    const Chart& root = t_.chart(0);
    if (mode_ == Mode::Curve) {
      blow({0});
    } else {
      const OneForm& w = *root.omega;
      if (!w.singular_at_origin()) return std::move(t_);
      SingClass sc = classify_singularity(w, Rat(0), Rat(0));
      if (sc.tag == SingTag::NonReduced) {
        blow({0});
      } else {
        MarkedPoint m;
        m.at = {0};
        m.kind = PointKind::FoliationSingularity;
        m.sing = std::move(sc);
        t_.marked_points.push_back(std::move(m));
      }
    }
    while (!work_.empty()) {
      int comp = work_.front();
      work_.pop_front();
      explore(comp);
    }
    if (!t_.separatrix_branches.empty()) {
      try {
        t_.central = central_component(t_);
      } catch (const Error&) {
        t_.central.reset();
      }
    }
    return std::move(t_);
  }

 private:
  void blow(const PointOnDivisor& p) {
    if (t_.components.size() >= kResolutionCap)
      throw Error(ErrorCode::ResolutionCapExceeded,
                  "resolution exceeded " + std::to_string(kResolutionCap) + " blow-ups");
    t_ = blowup_at(t_, p);
    work_.push_back(static_cast<int>(t_.components.size()));
  }

  BiPoly curve_product(const Chart& c) const {
    BiPoly g = *c.f;
    for (const auto& h : c.curves) g = g * h;
    return g;
  }

  void explore(int comp) {
    auto [ia, ib] = t_.charts_of(comp);
    const Chart& A = t_.chart(ia);
    // Candidate abscissae on the new line {u = 0} of chart A.
    UPoly P = UPoly::constant(1);
    auto include = [&P](const UPoly& q) {
      if (!q.is_zero() && q.degree() > 0) P = P * squarefree_part(q);
    };
    if (mode_ == Mode::Curve) include(curve_product(A).restrict_x0());
    else include(A.omega->a.restrict_x0());
    for (const auto& d : A.divisors)
      if (d.component != comp) include(d.equation.restrict_x0());
    std::vector<AlgPoint> pts = all_roots(P);
    std::sort(pts.begin(), pts.end(), [](const AlgPoint& a, const AlgPoint& b) {
      if (a.is_rational() != b.is_rational()) return a.is_rational();
      if (a.is_rational()) return a.rational_value() < b.rational_value();
      return std::make_pair(a.numeric().real(), a.numeric().imag()) <
             std::make_pair(b.numeric().real(), b.numeric().imag());
    });
    for (const auto& c : pts) visit(ia, comp, c);
    visit(ib, comp, AlgPoint::rational(0));
  }

  void visit(int chart_id, int comp, const AlgPoint& v) {
    if (v.is_rational()) visit_rational(chart_id, comp, v.rational_value());
    else visit_irrational(chart_id, comp, v);
  }

  void visit_rational(int chart_id, int comp, const Rat& c) {
    const Chart& C = t_.chart(chart_id);
    const PointOnDivisor at{chart_id, AlgPoint::rational(0), AlgPoint::rational(c)};
    std::vector<int> through = components_through(C, 0, c);
    if (mode_ == Mode::Curve) {
      BiPoly g = curve_product(C).translate(0, c);
      bool on_curve = g.coeff(0, 0) == 0;
      if (on_curve && needs_curve_blowup(C, g, through, c)) {
        blow(at);
        return;
      }
      if (on_curve && C.f->eval(Rat(0), c) == 0) {
        mark(at, PointKind::SeparatrixAttachment, through, std::nullopt, comp, true);
      } else if (through.size() == 2) {
        mark(at, PointKind::Corner, through, std::nullopt, comp, false);
      }
      return;
    }
    const OneForm& w = *C.omega;
    if (w.a.eval(Rat(0), c) != 0 || w.b.eval(Rat(0), c) != 0) return;
    const BiPoly* eq = equation_of(C, comp);
    SingClass sc = classify_singularity(w, Rat(0), c, eq);
    if (sc.tag == SingTag::NonReduced) {
      blow(at);
      return;
    }
    bool corner = through.size() == 2;
    bool branch = !corner && sc.tag == SingTag::Reduced;
    mark(at, corner ? PointKind::Corner : PointKind::FoliationSingularity, through, std::move(sc),
         comp, branch);
  }

  void visit_irrational(int chart_id, int comp, const AlgPoint& v) {
    const Chart& C = t_.chart(chart_id);
    const PointOnDivisor at{chart_id, AlgPoint::rational(0), v};
    const UPoly& q = v.minpoly();
    if (mode_ == Mode::Curve) {
      UPoly face = curve_product(C).restrict_x0();
      if (face.is_zero() || !divmod(face, q).second.is_zero()) return;
      if (divmod(divmod(face, q).first, q).second.is_zero())
        throw Error(ErrorCode::IrrationalCenter,
                    "resolve_curve: non-transversal point at a root of " + q.to_string());
      mark(at, PointKind::SeparatrixAttachment, {comp}, std::nullopt, comp, true);
      return;
    }
    SingClass sc = classify_singularity(*C.omega, Rat(0), v, equation_of(C, comp));
    if (sc.tag == SingTag::NonReduced)
      throw Error(ErrorCode::IrrationalCenter,
                  "resolve_foliation: non-reduced singularity at a root of " + q.to_string());
    bool branch = sc.tag == SingTag::Reduced;
    mark(at, PointKind::FoliationSingularity, {comp}, std::move(sc), comp, branch);
  }

  static const BiPoly* equation_of(const Chart& C, int comp) {
    for (const auto& d : C.divisors)
      if (d.component == comp) return &d.equation;
    return nullptr;
  }

  /// g is the translated curve product, vanishing at the local origin.
  bool needs_curve_blowup(const Chart& C, const BiPoly& g, const std::vector<int>& through,
                          const Rat& c) const {
    if (through.size() >= 2 || g.order() >= 2) return true;
    const BiPoly* eq = equation_of(C, through.front());
    BiPoly l = eq->translate(0, c);
    Rat det = g.coeff(1, 0) * l.coeff(0, 1) - g.coeff(0, 1) * l.coeff(1, 0);
    return det == 0;
  }

  void mark(const PointOnDivisor& at, PointKind kind, std::vector<int> through,
            std::optional<SingClass> sc, int comp, bool branch) {
    MarkedPoint m;
    m.at = at;
    m.kind = kind;
    m.components = std::move(through);
    const Chart& C = t_.chart(at.chart);
    if (sc && at.u.is_rational()) {
      for (int d : m.components) {
        if (auto r = ratio_relative_to(*C.omega, at.u.rational_value(), at.v, *equation_of(C, d)))
          m.ratios.push_back({d, *r});
      }
    }
    m.sing = std::move(sc);
    t_.marked_points.push_back(std::move(m));
    if (branch) {
      SeparatrixBranch b;
      b.id = static_cast<int>(t_.separatrix_branches.size()) + 1;
      b.component = comp;
      b.point = t_.marked_points.size() - 1;
      t_.separatrix_branches.push_back(b);
    }
  }

  ResolutionTree t_;
  Mode mode_;
  std::deque<int> work_;
};

}  // namespace

ResolutionTree resolve_curve(const BiPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resolve_curve: zero polynomial");
  if (f.coeff(0, 0) != 0)
    throw Error(ErrorCode::InvalidArgument, "resolve_curve: curve does not pass through the origin");
  if (!is_squarefree(f))
    throw Error(ErrorCode::NonReducedCurve, "resolve_curve: curve has repeated factors");
  std::vector<BiPoly> axes;
  if (!f.divide_exact(BiPoly::x())) axes.push_back(BiPoly::x());
  if (!f.divide_exact(BiPoly::y())) axes.push_back(BiPoly::y());
  return Driver(make_root(f, std::nullopt, std::move(axes)), Mode::Curve).run();
}

ResolutionTree resolve_foliation(const OneForm& omega) {
  return Driver(make_root(std::nullopt, local_reduce(omega)), Mode::Foliation).run();
}

PredictedTree predict_dual_tree(const Weight& w, const BiPoly& f) {
  auto inferred = f.is_zero() ? std::nullopt : infer_weights(f);
  if (!inferred || inferred->alpha != w.alpha || inferred->beta != w.beta ||
      (w.alpha != w.beta && inferred->swapped != w.swapped))
    throw Error(ErrorCode::NotQuasiHomogeneous, "predict_dual_tree: f is not quasi-homogeneous of weight w");
  PredictedTree p;
  p.weight = w;
  p.euclid = euclid_quotients(w);

  // Incidence model: curves are components (ids >= 1) and the two axes U = -1, V = -2,
  // where U = {u = 0} and u is the coordinate of weight alpha. A point is a pair of curves.
  constexpr int U = -1, V = -2;
  std::set<std::pair<int, int>> meets{{V, U}};
  auto key = [](int a, int b) { return std::make_pair(std::max(a, b), std::min(a, b)); };
  int count = 0;
  auto blow = [&](int a, int b) {
    int e = ++count;
    meets.erase(key(a, b));
    meets.insert(key(a, e));
    meets.insert(key(b, e));
    for (int c : {a, b})
      if (c > 0) p.self_intersections[c - 1] -= 1;
    p.self_intersections.push_back(-1);
    return e;
  };
  int center_a = U, center_b = V, guide = V;
  for (unsigned q : p.euclid.quotients) {
    int e = blow(center_a, center_b);
    for (unsigned k = 1; k < q; ++k) e = blow(guide, e);
    center_a = e;
    center_b = guide;
    guide = e;
  }
  p.component_count = static_cast<unsigned>(count);
  p.central = count;
  for (const auto& [a, b] : meets) {
    if (b > 0) p.adjacency.insert({b, a});
    else if (b == U) p.u_axis_component = a;
    else if (b == V) p.v_axis_component = a;
  }
  // Chain order from the component met by U.
  std::map<int, std::vector<int>> nbr;
  for (const auto& [a, b] : p.adjacency) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  int prev = 0, cur = p.u_axis_component;
  while (cur != 0) {
    p.chain.push_back(cur);
    int next = 0;
    for (int n : nbr[cur])
      if (n != prev) next = n;
    prev = cur;
    cur = next;
  }

  const BiPoly u = w.swapped ? BiPoly::y() : BiPoly::x();
  const BiPoly v = w.swapped ? BiPoly::x() : BiPoly::y();
  BiPoly rest = f;
  if (auto q = rest.divide_exact(u)) {
    p.u_axis_arrow = true;
    rest = *q;
  }
  if (auto q = rest.divide_exact(v)) {
    p.v_axis_arrow = true;
    rest = *q;
  }
  // Remaining branches are v^alpha = c u^beta, one per distinct root of the face
  // polynomial in s = v^alpha / u^beta.
  if (!rest.is_constant()) {
    unsigned jmin = w.swapped ? rest.x_valuation() : rest.y_valuation();
    std::vector<Rat> coeffs;
    for (const auto& [m, c] : rest.terms()) {
      unsigned j = w.swapped ? m.first : m.second;
      unsigned k = (j - jmin) / w.alpha;
      if (coeffs.size() <= k) coeffs.resize(k + 1);
      coeffs[k] += c;
    }
    p.attachment_count = static_cast<unsigned>(all_roots(UPoly(coeffs)).size());
  }
  return p;
}

int central_component(const ResolutionTree& tree) {
  std::set<int> carriers;
  for (const auto& b : tree.separatrix_branches) carriers.insert(b.component);
  if (carriers.size() != 1)
    throw Error(ErrorCode::NotUnique, "central_component: separatrix branches lie on " +
                                          std::to_string(carriers.size()) + " components");
  return *carriers.begin();
}

std::vector<unsigned> attachment_counts(const ResolutionTree& tree) {
  std::vector<unsigned> out(tree.components.size());
  for (const auto& b : tree.separatrix_branches)
    if (b.component > 0) ++out[b.component - 1];
  return out;
}

namespace {

struct Labelled {
  std::vector<std::string> label;
  std::vector<std::vector<int>> nbr;
};

Labelled labelled(const ResolutionTree& t) {
  Labelled l;
  const std::size_t n = t.components.size();
  auto counts = attachment_counts(t);
  l.nbr.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    l.label.push_back(std::to_string(t.components[i].self_intersection) + "/" +
                      std::to_string(counts[i]) +
                      (t.central && *t.central == static_cast<int>(i + 1) ? "*" : ""));
  }
  for (const auto& [a, b] : t.adjacency) {
    l.nbr[a - 1].push_back(b - 1);
    l.nbr[b - 1].push_back(a - 1);
  }
  return l;
}

std::string canon(const Labelled& l, int v, int parent) {
  std::vector<std::string> kids;
  for (int c : l.nbr[v])
    if (c != parent) kids.push_back(canon(l, c, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + l.label[v];
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::string canonical_form(const ResolutionTree& t) {
  Labelled l = labelled(t);
  std::string best;
  for (std::size_t r = 0; r < l.label.size(); ++r) {
    std::string s = canon(l, static_cast<int>(r), -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

}  // namespace

bool trees_isomorphic(const ResolutionTree& a, const ResolutionTree& b) {
  if (a.components.size() != b.components.size()) return false;
  if (!adjacency_is_tree(a) || !adjacency_is_tree(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

PredictionReport verify_prediction(const BiPoly& f) {
  auto w = f.is_zero() ? std::nullopt : infer_weights(f);
  if (!w) throw Error(ErrorCode::NotQuasiHomogeneous, "verify_prediction: no weight makes f quasi-homogeneous");
  PredictionReport r;
  r.predicted = predict_dual_tree(*w, f);
  r.computed = resolve_curve(f);
  const auto& P = r.predicted;
  const auto& C = r.computed;
  if (C.components.size() != P.component_count) {
    r.witness = "component count: predicted " + std::to_string(P.component_count) + ", computed " +
                std::to_string(C.components.size());
    return r;
  }
  // Chains are matched end to end; try both orientations of the computed chain.
  std::map<int, std::vector<int>> nbr;
  for (const auto& [a, b] : C.adjacency) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  std::vector<int> ends;
  for (const auto& c : C.components)
    if (nbr[c.id].size() <= 1) ends.push_back(c.id);
  if (!adjacency_is_tree(C) || ends.empty() || (C.components.size() > 1 && ends.size() != 2)) {
    r.witness = "computed dual tree is not a chain";
    return r;
  }
  auto counts = attachment_counts(C);
  std::vector<unsigned> pred_counts(P.component_count);
  pred_counts[P.central - 1] += P.attachment_count;
  if (P.u_axis_arrow) pred_counts[P.u_axis_component - 1] += 1;
  if (P.v_axis_arrow) pred_counts[P.v_axis_component - 1] += 1;
  std::string last;
  for (int start : ends) {
    std::vector<int> chain;
    int prev = 0, cur = start;
    while (cur != 0) {
      chain.push_back(cur);
      int next = 0;
      for (int n : nbr[cur])
        if (n != prev) next = n;
      prev = cur;
      cur = next;
    }
    std::vector<std::pair<int, int>> mapping;
    bool ok = true;
    for (std::size_t k = 0; k < chain.size() && ok; ++k) {
      int pid = P.chain[k], cid = chain[k];
      mapping.push_back({pid, cid});
      if (P.self_intersections[pid - 1] != C.component(cid).self_intersection) {
        ok = false;
        last = "self-intersection of predicted D" + std::to_string(pid) + " differs from computed D" + std::to_string(cid);
      } else if (pred_counts[pid - 1] != counts[cid - 1]) {
        ok = false;
        last = "attachment count of predicted D" + std::to_string(pid) + " differs from computed D" + std::to_string(cid);
      } else if (pid == P.central && C.central && *C.central != cid) {
        ok = false;
        last = "central component mismatch";
      }
    }
    if (ok) {
      r.match = true;
      r.mapping = std::move(mapping);
      r.witness = "isomorphic chains";
      return r;
    }
  }
  r.witness = last;
  return r;
}

bool is_generalized_curve(const OneForm& omega) {
  ResolutionTree t = resolve_foliation(omega);
  for (const auto& m : t.marked_points)
    if (m.sing && m.sing->tag == SingTag::SaddleNode) return false;
  return true;
}

}  // namespace qhfol
