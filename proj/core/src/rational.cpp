#include "qhfol/rational.hpp"

#include <cmath>

#include "qhfol/error.hpp"

namespace qhfol {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonIsolated: return "NonIsolated";
    case ErrorCode::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
    case ErrorCode::NotQuasiHomogeneousType: return "NotQuasiHomogeneousType";
    case ErrorCode::NonReducedCurve: return "NonReducedCurve";
    case ErrorCode::IrrationalCenter: return "IrrationalCenter";
    case ErrorCode::NotAPoint: return "NotAPoint";
    case ErrorCode::Dicritical: return "Dicritical";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::ResolutionCapExceeded: return "ResolutionCapExceeded";
    case ErrorCode::SingularFiberHit: return "SingularFiberHit";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::LeafEscaped: return "LeafEscaped";
    case ErrorCode::IllConditionedFit: return "IllConditionedFit";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
  }
  return "Unknown";
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal", 0);
  Rat r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorCode::ParseError, "bad rational literal '" + s + "'", 0);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }

Rat rat_from_double(double d) {
  Rat r(d);  // exact: doubles are dyadic
  return r;
}

bool rat_sqrt(const Rat& r, Rat& out) {
  if (r < 0) return false;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
    return false;
  BigInt n = sqrt(BigInt(r.get_num())), d = sqrt(BigInt(r.get_den()));
  out = Rat(n, d);
  out.canonicalize();
  return true;
}

}  // namespace qhfol
