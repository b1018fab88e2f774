#pragma once

#include <string>

#include <json.hpp>

#include "qhfol/desing.hpp"
#include "qhfol/diffeo.hpp"
#include "qhfol/holonomy.hpp"
#include "qhfol/quasihom.hpp"

namespace qhfol {

using Json = nlohmann::ordered_json;

/// Deterministic text: insertion-ordered keys, two-space indent, doubles with 17 significant digits.
std::string dump(const Json& j);

Json to_json(const BiPoly& p);
Json to_json(const OneForm& w);
Json to_json(const AlgPoint& p);
Json to_json(const Weight& w);
Json to_json(const MembershipCertificate& c);
Json to_json(const TakensData& t);
Json to_json(const EuclidData& e);
Json to_json(const SingClass& s);
Json to_json(const ResolutionTree& t);
Json to_json(const PredictedTree& p);
Json to_json(const PredictionReport& r);
Json to_json(const ComplexJet& j);
Json to_json(const ExactJet& j);
Json to_json(const LoopSpec& l);
Json to_json(const HolonomyRep& r);
Json to_json(const SameHolonomyVerdict& v);

BiPoly bipoly_from_json(const Json& j);
OneForm oneform_from_json(const Json& j);
AlgPoint algpoint_from_json(const Json& j);
ResolutionTree tree_from_json(const Json& j);
ComplexJet complex_jet_from_json(const Json& j);
ExactJet exact_jet_from_json(const Json& j);
LoopSpec loop_from_json(const Json& j);
HolonomyRep rep_from_json(const Json& j);

/// One node per component labelled "D_k (s=-n, m=mu)", separatrix branches as arrow nodes.
std::string to_dot(const ResolutionTree& t, const std::string& name = "computed");
std::string to_dot(const PredictedTree& p, const std::string& name = "predicted");
/// Predicted and computed trees side by side.
std::string to_dot(const PredictionReport& r);

}  // namespace qhfol
