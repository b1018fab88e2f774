#include "qhfol/one_form.hpp"

#include "qhfol/error.hpp"

namespace qhfol {

OneForm OneForm::pullback(const BiPoly& X, const BiPoly& Y) const {
  BiPoly a1 = a.substitute(X, Y), b1 = b.substitute(X, Y);
  return {a1 * X.partial_x() + b1 * Y.partial_x(), a1 * X.partial_y() + b1 * Y.partial_y()};
}

std::string OneForm::to_string() const { return a.to_string() + " ; " + b.to_string(); }

OneForm OneForm::parse(std::string_view text) {
  std::size_t lead = 0;
  while (lead < text.size() && text[lead] == ' ') ++lead;
  std::string_view t = text.substr(lead);
  if (t.size() >= 2 && t[0] == 'd' && t[1] == '(') {
    std::size_t close = t.rfind(')');
    if (close == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "parse error at offset " + std::to_string(text.size()) +
                                             ": missing ')'", text.size());
    try {
      return exact(BiPoly::parse(t.substr(2, close - 2)));
    } catch (const Error& e) {
      std::size_t off = lead + 2 + e.offset().value_or(0);
      throw Error(ErrorCode::ParseError, "parse error at offset " + std::to_string(off), off);
    }
  }
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos)
    throw Error(ErrorCode::ParseError,
                "parse error at offset " + std::to_string(text.size()) + ": expected 'a ; b'",
                text.size());
  BiPoly a = BiPoly::parse(text.substr(0, semi));
  try {
    return {a, BiPoly::parse(text.substr(semi + 1))};
  } catch (const Error& e) {
    std::size_t off = semi + 1 + e.offset().value_or(0);
    throw Error(ErrorCode::ParseError, "parse error at offset " + std::to_string(off), off);
  }
}

OneForm local_reduce(const OneForm& omega) {
  if (omega.is_zero()) throw Error(ErrorCode::NonIsolated, "one-form is zero");
  BiPoly g = gcd(omega.a, omega.b);
  if (g.is_constant()) return omega;
  if (g.coeff(0, 0) == 0)
    throw Error(ErrorCode::NonIsolated, "gcd(a, b) = " + g.to_string() + " vanishes at the origin");
  return {*omega.a.divide_exact(g), *omega.b.divide_exact(g)};
}

}  // namespace qhfol
