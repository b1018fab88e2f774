#include "qhfol/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qhfol/error.hpp"

namespace qhfol {

namespace {

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(2 * (indent + 1), ' '), close(2 * indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short scalar arrays stay on one line.
      bool flat = j.size() <= 8;
      for (const auto& e : j) flat = flat && e.is_primitive();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_into(j[i], out, indent + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      std::string s = buf;
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }
cplx cfrom(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <class T, class F>
Json opt(const std::optional<T>& v, F f) {
  return v ? f(*v) : Json(nullptr);
}

Json point_json(const PointOnDivisor& p) {
  return Json{{"chart", p.chart}, {"u", to_json(p.u)}, {"v", to_json(p.v)}};
}
PointOnDivisor point_from(const Json& j) {
  return {j.at("chart").get<int>(), algpoint_from_json(j.at("u")), algpoint_from_json(j.at("v"))};
}

SingTag tag_from(const std::string& s) {
  for (SingTag t : {SingTag::NonSingular, SingTag::Reduced, SingTag::SaddleNode, SingTag::NonReduced})
    if (tag_name(t) == s) return t;
  throw Error(ErrorCode::ParseError, "unknown singularity tag: " + s);
}

PointKind kind_from(const std::string& s) {
  for (PointKind k : {PointKind::Corner, PointKind::SeparatrixAttachment, PointKind::FoliationSingularity})
    if (kind_name(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown point kind: " + s);
}

UPoly upoly_from(const Json& j) { return UPoly::parse(j.get<std::string>()); }

SingClass sing_from(const Json& j) {
  SingClass s;
  s.tag = tag_from(j.at("tag").get<std::string>());
  s.field = algpoint_from_json(j.at("field"));
  for (int i = 0; i < 4; ++i) s.linear_part[i] = upoly_from(j.at("linear_part").at(i));
  s.trace = upoly_from(j.at("trace"));
  s.determinant = upoly_from(j.at("determinant"));
  s.discriminant = upoly_from(j.at("discriminant"));
  if (!j.at("lambda").is_null()) s.lambda = algpoint_from_json(j.at("lambda"));
  s.lambda_numeric = cfrom(j.at("lambda_numeric"));
  return s;
}

Json segment_json(const PathSegment& s) {
  if (const auto* l = std::get_if<LineSegment>(&s))
    return Json{{"type", "line"}, {"from", cjson(l->from)}, {"to", cjson(l->to)}};
  const auto& a = std::get<ArcSegment>(s);
  return Json{{"type", "arc"},
              {"center", cjson(a.center)},
              {"radius", a.radius},
              {"theta0", a.theta0},
              {"theta1", a.theta1}};
}

PathSegment segment_from(const Json& j) {
  if (j.at("type") == "line") return LineSegment{cfrom(j.at("from")), cfrom(j.at("to"))};
  return ArcSegment{cfrom(j.at("center")), j.at("radius").get<double>(), j.at("theta0").get<double>(),
                    j.at("theta1").get<double>()};
}

Json pairs_json(const std::set<std::pair<int, int>>& s) {
  Json a = Json::array();
  for (auto [x, y] : s) a.push_back(Json::array({x, y}));
  return a;
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const BiPoly& p) { return p.to_string(); }
Json to_json(const OneForm& w) { return Json{{"a", w.a.to_string()}, {"b", w.b.to_string()}}; }

Json to_json(const AlgPoint& p) {
  const auto& b = p.box();
  return Json{{"minpoly", p.minpoly().to_string()},
              {"box", Json::array({to_string(b.re_lo), to_string(b.re_hi), to_string(b.im_lo),
                                   to_string(b.im_hi)})},
              {"numeric", cjson(p.numeric())}};
}

Json to_json(const Weight& w) {
  return Json{{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}, {"swapped", w.swapped}};
}

Json to_json(const MembershipCertificate& c) {
  Json cof = nullptr;
  if (c.cofactors) cof = Json{{"A", c.cofactors->first.to_string()}, {"B", c.cofactors->second.to_string()}};
  return Json{{"member", c.member},
              {"jet_order", c.jet_order},
              {"cofactors", cof},
              {"residual_order", c.residual_order}};
}

Json to_json(const TakensData& t) {
  return Json{{"weight", to_json(t.weight)},
              {"order", t.order},
              {"f", t.f.to_string()},
              {"g", t.g.to_string()},
              {"h", t.h.to_string()}};
}

Json to_json(const EuclidData& e) {
  return Json{{"alpha", e.alpha}, {"beta", e.beta}, {"remainders", e.remainders}, {"quotients", e.quotients}};
}

Json to_json(const SingClass& s) {
  Json lp = Json::array();
  for (const auto& p : s.linear_part) lp.push_back(p.to_string());
  return Json{{"tag", std::string(tag_name(s.tag))},
              {"field", to_json(s.field)},
              {"linear_part", lp},
              {"trace", s.trace.to_string()},
              {"determinant", s.determinant.to_string()},
              {"discriminant", s.discriminant.to_string()},
              {"lambda", opt(s.lambda, [](const AlgPoint& a) { return to_json(a); })},
              {"lambda_numeric", cjson(s.lambda_numeric)}};
}

Json to_json(const ResolutionTree& t) {
  Json comps = Json::array();
  for (const auto& c : t.components)
    comps.push_back(Json{{"id", c.id},
                         {"self_intersection", c.self_intersection},
                         {"creation_index", c.creation_index},
                         {"multiplicity_curve", c.multiplicity_curve},
                         {"multiplicity_form", c.multiplicity_form}});
  Json charts = Json::array();
  for (const auto& c : t.charts) {
    Json divs = Json::array();
    for (const auto& d : c.divisors) divs.push_back(Json{{"component", d.component}, {"equation", d.equation.to_string()}});
    Json curves = Json::array();
    for (const auto& p : c.curves) curves.push_back(p.to_string());
    charts.push_back(Json{{"id", c.id},
                          {"parent", c.parent},
                          {"component", c.component},
                          {"X", c.X.to_string()},
                          {"Y", c.Y.to_string()},
                          {"divisors", divs},
                          {"f", opt(c.f, [](const BiPoly& p) { return to_json(p); })},
                          {"omega", opt(c.omega, [](const OneForm& w) { return to_json(w); })},
                          {"curves", curves}});
  }
  Json marked = Json::array();
  for (const auto& m : t.marked_points) {
    Json ratios = Json::array();
    for (const auto& [c, l] : m.ratios) ratios.push_back(Json{{"component", c}, {"lambda", to_json(l)}});
    marked.push_back(Json{{"at", point_json(m.at)},
                          {"kind", std::string(kind_name(m.kind))},
                          {"components", m.components},
                          {"sing", opt(m.sing, [](const SingClass& s) { return to_json(s); })},
                          {"ratios", ratios}});
  }
  Json branches = Json::array();
  for (const auto& b : t.separatrix_branches)
    branches.push_back(Json{{"id", b.id}, {"component", b.component}, {"point", b.point}});
  Json centers = Json::array();
  for (const auto& c : t.centers) centers.push_back(Json{{"at", point_json(c.at)}, {"component", c.component}});
  return Json{{"components", comps},
              {"adjacency", pairs_json(t.adjacency)},
              {"central", opt(t.central, [](int c) { return Json(c); })},
              {"charts", charts},
              {"marked_points", marked},
              {"separatrix_branches", branches},
              {"centers", centers}};
}

Json to_json(const PredictedTree& p) {
  return Json{{"weight", to_json(p.weight)},
              {"euclid", to_json(p.euclid)},
              {"component_count", p.component_count},
              {"chain", p.chain},
              {"self_intersections", p.self_intersections},
              {"adjacency", pairs_json(p.adjacency)},
              {"central", p.central},
              {"u_axis_component", p.u_axis_component},
              {"v_axis_component", p.v_axis_component},
              {"u_axis_arrow", p.u_axis_arrow},
              {"v_axis_arrow", p.v_axis_arrow},
              {"attachment_count", p.attachment_count}};
}

Json to_json(const PredictionReport& r) {
  Json mapping = Json::array();
  for (auto [a, b] : r.mapping) mapping.push_back(Json::array({a, b}));
  return Json{{"match", r.match},
              {"predicted", to_json(r.predicted)},
              {"computed", to_json(r.computed)},
              {"mapping", mapping},
              {"witness", r.witness}};
}

Json to_json(const ComplexJet& j) {
  Json c = Json::array();
  for (std::size_t k = 1; k <= j.order(); ++k) c.push_back(cjson(j[k]));
  return Json{{"order", j.order()}, {"coeffs", c}, {"error", j.error()}};
}

Json to_json(const ExactJet& j) {
  Json c = Json::array();
  for (std::size_t k = 1; k <= j.order(); ++k) c.push_back(to_string(j[k]));
  return Json{{"order", j.order()}, {"coeffs", c}, {"error", j.error()}};
}

Json to_json(const LoopSpec& l) {
  Json path = Json::array();
  for (const auto& s : l.path) path.push_back(segment_json(s));
  return Json{{"base", cjson(l.base)}, {"encircled", l.encircled}, {"clearance", l.clearance}, {"path", path}};
}

Json to_json(const HolonomyRep& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators)
    gens.push_back(Json{{"marked_point", g.marked_point},
                        {"loop", to_json(g.loop)},
                        {"jet", to_json(g.jet)},
                        {"error", g.error},
                        {"expected_multiplier", opt(g.expected_multiplier, cjson)}});
  return Json{{"transversal",
               Json{{"chart", r.transversal.chart}, {"base", cjson(r.transversal.base)}, {"radius", r.transversal.radius}}},
              {"rho", r.rho},
              {"generators", gens},
              {"product", opt(r.product, [](const ComplexJet& j) { return to_json(j); })}};
}

Json to_json(const SameHolonomyVerdict& v) {
  Json inv = Json::array();
  for (bool b : v.pairing.inverted) inv.push_back(b);
  Json obs = nullptr;
  if (v.obstruction) obs = Json{{"order", v.obstruction->first}, {"generator", v.obstruction->second}};
  return Json{{"conjugate", v.conjugate},
              {"order", v.order},
              {"tol", v.tol},
              {"rho", v.rho},
              {"pairing", Json{{"index", v.pairing.index}, {"inverted", inv}}},
              {"obstruction", obs},
              {"phi", opt(v.phi, [](const ComplexJet& j) { return to_json(j); })},
              {"residuals", v.residuals}};
}

BiPoly bipoly_from_json(const Json& j) { return BiPoly::parse(j.get<std::string>()); }

OneForm oneform_from_json(const Json& j) {
  return {BiPoly::parse(j.at("a").get<std::string>()), BiPoly::parse(j.at("b").get<std::string>())};
}

AlgPoint algpoint_from_json(const Json& j) {
  const auto& b = j.at("box");
  RatBox box{parse_rat(b.at(0).get<std::string>()), parse_rat(b.at(1).get<std::string>()),
             parse_rat(b.at(2).get<std::string>()), parse_rat(b.at(3).get<std::string>())};
  return AlgPoint(upoly_from(j.at("minpoly")), box, cfrom(j.at("numeric")));
}

ResolutionTree tree_from_json(const Json& j) {
  ResolutionTree t;
  for (const auto& c : j.at("components"))
    t.components.push_back(Component{c.at("id").get<int>(), c.at("self_intersection").get<int>(),
                                     c.at("creation_index").get<unsigned>(),
                                     c.at("multiplicity_curve").get<unsigned>(),
                                     c.at("multiplicity_form").get<unsigned>()});
  for (const auto& e : j.at("adjacency")) t.adjacency.insert({e.at(0).get<int>(), e.at(1).get<int>()});
  if (!j.at("central").is_null()) t.central = j.at("central").get<int>();
  for (const auto& c : j.at("charts")) {
    Chart ch;
    ch.id = c.at("id").get<int>();
    ch.parent = c.at("parent").get<int>();
    ch.component = c.at("component").get<int>();
    ch.X = bipoly_from_json(c.at("X"));
    ch.Y = bipoly_from_json(c.at("Y"));
    for (const auto& d : c.at("divisors"))
      ch.divisors.push_back({d.at("component").get<int>(), bipoly_from_json(d.at("equation"))});
    if (!c.at("f").is_null()) ch.f = bipoly_from_json(c.at("f"));
    if (!c.at("omega").is_null()) ch.omega = oneform_from_json(c.at("omega"));
    for (const auto& p : c.at("curves")) ch.curves.push_back(bipoly_from_json(p));
    t.charts.push_back(std::move(ch));
  }
  for (const auto& m : j.at("marked_points")) {
    MarkedPoint mp;
    mp.at = point_from(m.at("at"));
    mp.kind = kind_from(m.at("kind").get<std::string>());
    mp.components = m.at("components").get<std::vector<int>>();
    if (!m.at("sing").is_null()) mp.sing = sing_from(m.at("sing"));
    for (const auto& r : m.at("ratios"))
      mp.ratios.emplace_back(r.at("component").get<int>(), algpoint_from_json(r.at("lambda")));
    t.marked_points.push_back(std::move(mp));
  }
  for (const auto& b : j.at("separatrix_branches"))
    t.separatrix_branches.push_back(
        {b.at("id").get<int>(), b.at("component").get<int>(), b.at("point").get<std::size_t>()});
  for (const auto& c : j.at("centers")) t.centers.push_back({point_from(c.at("at")), c.at("component").get<int>()});
  return t;
}

ComplexJet complex_jet_from_json(const Json& j) {
  const auto n = j.at("order").get<std::size_t>();
  Series<cplx> s(n);
  for (std::size_t k = 1; k <= n; ++k) s[k] = cfrom(j.at("coeffs").at(k - 1));
  return ComplexJet(std::move(s), j.at("error").get<double>());
}

ExactJet exact_jet_from_json(const Json& j) {
  const auto n = j.at("order").get<std::size_t>();
  Series<Rat> s(n);
  for (std::size_t k = 1; k <= n; ++k) s[k] = parse_rat(j.at("coeffs").at(k - 1).get<std::string>());
  return ExactJet(std::move(s), j.at("error").get<double>());
}

LoopSpec loop_from_json(const Json& j) {
  LoopSpec l;
  l.base = cfrom(j.at("base"));
  l.encircled = j.at("encircled").get<std::vector<int>>();
  l.clearance = j.at("clearance").get<double>();
  for (const auto& s : j.at("path")) l.path.push_back(segment_from(s));
  return l;
}

HolonomyRep rep_from_json(const Json& j) {
  HolonomyRep r;
  const auto& t = j.at("transversal");
  r.transversal = {t.at("chart").get<int>(), cfrom(t.at("base")), t.at("radius").get<double>()};
  r.rho = j.at("rho").get<double>();
  for (const auto& g : j.at("generators")) {
    Generator gen{loop_from_json(g.at("loop")), complex_jet_from_json(g.at("jet")), g.at("error").get<double>(),
                  g.at("marked_point").get<int>(), std::nullopt};
    if (!g.at("expected_multiplier").is_null()) gen.expected_multiplier = cfrom(g.at("expected_multiplier"));
    r.generators.push_back(std::move(gen));
  }
  if (!j.at("product").is_null()) r.product = complex_jet_from_json(j.at("product"));
  return r;
}

namespace {

std::string dot_body(const ResolutionTree& t, const std::string& prefix) {
  std::ostringstream os;
  const bool curve = !t.charts.empty() && t.charts.front().f.has_value();
  for (const auto& c : t.components) {
    const unsigned m = curve ? c.multiplicity_curve : c.multiplicity_form;
    os << "    " << prefix << c.id << " [label=\"D_" << c.id << " (s=" << c.self_intersection << ", m=" << m
       << ")\"" << (t.central && *t.central == c.id ? ", penwidth=2" : "") << "];\n";
  }
  for (auto [a, b] : t.adjacency) os << "    " << prefix << a << " -- " << prefix << b << ";\n";
  for (const auto& b : t.separatrix_branches) {
    os << "    " << prefix << "S" << b.id << " [shape=point];\n";
    os << "    " << prefix << b.component << " -- " << prefix << "S" << b.id << " [dir=forward];\n";
  }
  return os.str();
}

std::string dot_body(const PredictedTree& p, const std::string& prefix) {
  std::ostringstream os;
  for (unsigned id = 1; id <= p.component_count; ++id)
    os << "    " << prefix << id << " [label=\"D_" << id << " (s=" << p.self_intersections[id - 1] << ")\""
       << (static_cast<int>(id) == p.central ? ", penwidth=2" : "") << "];\n";
  for (auto [a, b] : p.adjacency) os << "    " << prefix << a << " -- " << prefix << b << ";\n";
  int arrow = 0;
  auto add = [&](int comp) {
    ++arrow;
    os << "    " << prefix << "S" << arrow << " [shape=point];\n";
    os << "    " << prefix << comp << " -- " << prefix << "S" << arrow << " [dir=forward];\n";
  };
  if (p.u_axis_arrow) add(p.u_axis_component);
  if (p.v_axis_arrow) add(p.v_axis_component);
  for (unsigned i = 0; i < p.attachment_count; ++i) add(p.central);
  return os.str();
}

}  // namespace

std::string to_dot(const ResolutionTree& t, const std::string& name) {
  return "graph " + name + " {\n  node [shape=ellipse];\n" + dot_body(t, "D") + "}\n";
}

std::string to_dot(const PredictedTree& p, const std::string& name) {
  return "graph " + name + " {\n  node [shape=ellipse];\n" + dot_body(p, "D") + "}\n";
}

std::string to_dot(const PredictionReport& r) {
  std::ostringstream os;
  os << "graph prediction {\n  node [shape=ellipse];\n";
  os << "  subgraph cluster_predicted {\n    label=\"predicted\";\n" << dot_body(r.predicted, "P");
  os << "  }\n  subgraph cluster_computed {\n    label=\"computed" << (r.match ? "" : " (mismatch)") << "\";\n"
     << dot_body(r.computed, "C") << "  }\n}\n";
  return os.str();
}

}  // namespace qhfol
