// qhfol: resolution, prediction, normal forms and holonomy of quasi-homogeneous germs.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "qhfol/diffeo.hpp"
#include "qhfol/error.hpp"
#include "qhfol/json_io.hpp"

using namespace qhfol;

namespace {

struct Config {
  unsigned order = 8;
  double rtol = 1e-10;
  unsigned membership_order = 12;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double rho = 1e-2;
};

bool is_form(const std::string& s) {
  auto p = s.find_first_not_of(' ');
  return s.find(';') != std::string::npos || (p != std::string::npos && s.compare(p, 2, "d(") == 0);
}

OneForm as_form(const std::string& s) { return is_form(s) ? OneForm::parse(s) : OneForm::exact(BiPoly::parse(s)); }

bool color_enabled() {
  const char* c = std::getenv("QHFOL_COLOR");
  if (c) return std::string(c) != "0";
  return isatty(fileno(stderr));
}

NumericParams numeric_params(const Config& cfg) {
  NumericParams p;
  p.order = cfg.order;
  p.rtol = cfg.rtol;
  p.rho = cfg.rho;
  p.jobs = cfg.jobs;
  if (cfg.seed != 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI / (2 * cfg.order + 1));
    p.phase = u(rng);
  }
  return p;
}

void emit(const Config& cfg, const Json& j, const std::string& dot, const std::string& text) {
  if (cfg.format == "dot") {
    if (dot.empty()) throw Error(ErrorCode::InvalidArgument, "dot output is not available for this command");
    std::cout << dot;
  } else if (cfg.format == "text") {
    std::cout << text;
  } else {
    std::cout << dump(j);
  }
}

std::string tree_text(const ResolutionTree& t) {
  std::ostringstream os;
  const bool curve = !t.charts.empty() && t.charts.front().f.has_value();
  os << t.components.size() << " components";
  if (t.central) os << ", central D_" << *t.central;
  os << "\n";
  for (const auto& c : t.components)
    os << "  D_" << c.id << "  self-intersection " << c.self_intersection << "  multiplicity "
       << (curve ? c.multiplicity_curve : c.multiplicity_form) << "\n";
  for (auto [a, b] : t.adjacency) os << "  D_" << a << " -- D_" << b << "\n";
  for (const auto& b : t.separatrix_branches) os << "  branch " << b.id << " on D_" << b.component << "\n";
  return os.str();
}

std::string jet_text(const ComplexJet& j) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t k = 1; k <= j.order(); ++k) os << "    c" << k << " = " << j[k] << "\n";
  os << "    error " << j.error() << "\n";
  return os.str();
}

int cmd_analyze(const Config& cfg, const std::string& input) {
  Json out;
  std::ostringstream txt;
  if (is_form(input)) {
    OneForm w = OneForm::parse(input);
    out["kind"] = "foliation";
    out["form"] = to_json(w);
    auto t = infer_takens(w, cfg.membership_order);
    out["weights"] = t ? to_json(t->weight) : Json(nullptr);
    out["takens"] = t ? to_json(*t) : Json(nullptr);
    Json gc = nullptr;
    try {
      gc = is_generalized_curve(w);
    } catch (const Error&) {
    }
    out["generalized_curve"] = gc;
    txt << "foliation " << w.to_string() << "\n";
    if (t)
      txt << "  weights (" << t->weight.wx() << ", " << t->weight.wy() << "), f = " << t->f.to_string()
          << ", h = " << t->h.to_string() << "\n";
    else
      txt << "  no Takens normal form found\n";
    txt << "  generalized curve: " << (gc.is_null() ? "unknown" : gc.get<bool>() ? "yes" : "no") << "\n";
  } else {
    BiPoly f = BiPoly::parse(input);
    out["kind"] = "curve";
    out["f"] = to_json(f);
    auto w = infer_weights(f);
    out["weights"] = w ? to_json(*w) : Json(nullptr);
    out["euler"] = w ? Json(euler_check(f, *w)) : Json(nullptr);
    auto cert = jacobian_membership(f, cfg.membership_order);
    out["jacobian"] = to_json(cert);
    Json gc = nullptr;
    try {
      gc = is_generalized_curve(OneForm::exact(f));
    } catch (const Error&) {
    }
    out["generalized_curve"] = gc;
    txt << "curve " << f.to_string() << "\n";
    if (w)
      txt << "  weights (" << w->alpha << ", " << w->beta << ", " << w->gamma << "), Euler "
          << (euler_check(f, *w) ? "holds" : "fails") << "\n";
    else
      txt << "  not quasi-homogeneous in these coordinates\n";
    txt << "  jacobian membership to order " << cert.jet_order << ": " << (cert.member ? "member" : "non-member")
        << "\n";
  }
  emit(cfg, out, "", txt.str());
  return 0;
}

int cmd_resolve(const Config& cfg, const std::string& input) {
  ResolutionTree t = is_form(input) ? resolve_foliation(OneForm::parse(input)) : resolve_curve(BiPoly::parse(input));
  emit(cfg, to_json(t), to_dot(t), tree_text(t));
  return 0;
}

int cmd_predict(const Config& cfg, const std::string& input, bool verify) {
  BiPoly f = BiPoly::parse(input);
  auto w = infer_weights(f);
  if (!w) throw Error(ErrorCode::NotQuasiHomogeneous, "predict: input is not quasi-homogeneous");
  if (verify) {
    PredictionReport r = verify_prediction(f);
    std::string txt = std::string("match: ") + (r.match ? "true" : "false") + "\n";
    if (!r.witness.empty()) txt += "witness: " + r.witness + "\n";
    emit(cfg, to_json(r), to_dot(r), txt);
    return 0;
  }
  PredictedTree p = predict_dual_tree(*w, f);
  std::ostringstream txt;
  txt << p.component_count << " components, central D_" << p.central << ", quotients";
  for (unsigned q : p.euclid.quotients) txt << " " << q;
  txt << "\n";
  emit(cfg, to_json(p), to_dot(p), txt.str());
  return 0;
}

int cmd_takens(const Config& cfg, const std::string& input, const std::vector<unsigned>& weights) {
  OneForm w = as_form(input);
  std::optional<TakensData> t;
  if (weights.empty()) {
    t = infer_takens(w, cfg.membership_order);
    if (!t) throw Error(ErrorCode::NotQuasiHomogeneousType, "takens: no quasi-homogeneous weight found");
  } else {
    if (weights.size() != 2 || weights[0] == 0 || weights[1] == 0)
      throw Error(ErrorCode::InvalidArgument, "takens: --weights expects two positive integers");
    Weight wt{std::min(weights[0], weights[1]), std::max(weights[0], weights[1]), 0, weights[0] > weights[1]};
    unsigned g = ~0u;
    for (const auto& [m, c] : w.a.terms()) g = std::min(g, wt.degree_of(m.first, m.second) + wt.wx());
    for (const auto& [m, c] : w.b.terms()) g = std::min(g, wt.degree_of(m.first, m.second) + wt.wy());
    wt.gamma = g;
    t = takens_normal_form(w, wt, cfg.membership_order);
  }
  Json out = to_json(*t);
  out["residual_zero"] = takens_residual(w, *t).is_zero();
  std::string txt = "f = " + t->f.to_string() + "\ng = " + t->g.to_string() + "\nh = " + t->h.to_string() + "\n";
  emit(cfg, out, "", txt);
  return 0;
}

std::string rep_text(const HolonomyRep& r) {
  std::ostringstream os;
  os << r.generators.size() << " generators, rho " << r.rho << "\n";
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    os << "  generator " << i << " (marked point " << r.generators[i].marked_point << ")\n"
       << jet_text(r.generators[i].jet);
  }
  return os.str();
}

int cmd_holonomy(const Config& cfg, const std::string& input) {
  HolonomyRep r = holonomy_rep(as_form(input), numeric_params(cfg));
  emit(cfg, to_json(r), "", rep_text(r));
  return 0;
}

HolonomyRep load_rep(const Config& cfg, const std::string& arg) {
  std::ifstream in(arg);
  if (!in) return holonomy_rep(as_form(arg), numeric_params(cfg));
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, arg + ": " + e.what(), e.byte);
  }
  if (j.contains("generators")) return rep_from_json(j);
  if (j.contains("omega")) j = j["omega"];
  if (j.is_string()) return holonomy_rep(as_form(j.get<std::string>()), numeric_params(cfg));
  return holonomy_rep(oneform_from_json(j), numeric_params(cfg));
}

int cmd_compare(const Config& cfg, const std::string& a, const std::string& b, const std::string& pairing) {
  HolonomyRep r0 = load_rep(cfg, a), r1 = load_rep(cfg, b);
  SameHolonomyVerdict v = pairing == "cyclic"
                              ? same_holonomy_search(r0, r1, cfg.order)
                              : same_holonomy_test(r0, r1, Pairing::identity(r0.generators.size()), cfg.order);
  std::ostringstream txt;
  txt << (v.conjugate ? "conjugate" : "not conjugate") << " through order " << v.order << " (tol " << v.tol
      << ")\n";
  if (v.obstruction) txt << "obstruction at order " << v.obstruction->first << ", generator " << v.obstruction->second << "\n";
  if (v.phi) txt << "phi:\n" << jet_text(*v.phi);
  emit(cfg, to_json(v), "", txt.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution, dual-tree prediction, Takens forms and holonomy of quasi-homogeneous germs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI configuration file; flags override it");
  Config cfg;
  app.add_option("-N,--order", cfg.order, "Jet order")->check(CLI::Range(1u, 64u));
  app.add_option("--rtol", cfg.rtol, "Integrator tolerance")->check(CLI::PositiveNumber);
  app.add_option("--membership-order", cfg.membership_order, "Truncation order for exact jet computations")
      ->check(CLI::Range(1u, 200u));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--seed", cfg.seed, "Seed for the phase of the sample circle (0 keeps phase 0)");
  app.add_option("-j,--jobs", cfg.jobs, "Parallel holonomy generators")->check(CLI::Range(1u, 256u));
  app.add_option("--rho", cfg.rho, "Transversal sample radius")->check(CLI::PositiveNumber);

  std::string input, input2, pairing = "identity";
  bool verify = false;
  std::vector<unsigned> weights;

  auto* analyze = app.add_subcommand("analyze", "Quasi-homogeneity checks for a polynomial or a 1-form");
  analyze->add_option("input", input, "f, or a 1-form as 'a ; b' or 'd(f)'")->required();
  auto* resolve = app.add_subcommand("resolve", "Desingularize a curve or a foliation");
  resolve->add_option("input", input, "f, or a 1-form as 'a ; b' or 'd(f)'")->required();
  auto* predict = app.add_subcommand("predict", "Dual tree predicted from the Euclidean algorithm on the weights");
  predict->add_option("f", input, "Quasi-homogeneous polynomial")->required();
  predict->add_flag("--verify", verify, "Compare with the computed resolution");
  auto* takens = app.add_subcommand("takens", "Takens normal form g*omega = df + h*R");
  takens->add_option("input", input, "1-form, or f for df")->required();
  takens->add_option("--weights", weights, "Weights wx wy (inferred when omitted)")->expected(2);
  auto* holonomy = app.add_subcommand("holonomy", "Projective holonomy of the central component");
  holonomy->add_option("input", input, "1-form, or f for df")->required();
  auto* compare = app.add_subcommand("compare", "Same-holonomy test between two representations");
  compare->add_option("first", input, "Representation JSON file, form JSON file, or 1-form")->required();
  compare->add_option("second", input2, "Representation JSON file, form JSON file, or 1-form")->required();
  compare->add_option("--pairing", pairing, "Generator pairing")->check(CLI::IsMember({"identity", "cyclic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, input);
    if (*resolve) return cmd_resolve(cfg, input);
    if (*predict) return cmd_predict(cfg, input, verify);
    if (*takens) return cmd_takens(cfg, input, weights);
    if (*holonomy) return cmd_holonomy(cfg, input);
    if (*compare) return cmd_compare(cfg, input, input2, pairing);
  } catch (const Error& e) {
    const bool c = color_enabled();
    std::cerr << (c ? "\033[31m" : "") << "error" << (c ? "\033[0m" : "") << " [" << error_name(e.code()) << "/"
              << static_cast<int>(e.code()) << "]: " << e.what();
    if (e.offset() && std::string(e.what()).find("offset") == std::string::npos) std::cerr << " (offset " << *e.offset() << ")";
    std::cerr << "\n";
    return e.code() == ErrorCode::InvalidArgument ? 2 : 1;
  }
  return 2;
}
