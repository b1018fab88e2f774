#pragma once

#include <string>
#include <string_view>

#include "qhfol/bipoly.hpp"

namespace qhfol {

/// a dx + b dy with polynomial coefficients.
struct OneForm {
  BiPoly a, b;

  static OneForm exact(const BiPoly& f) { return {f.partial_x(), f.partial_y()}; }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  OneForm operator-() const { return {-a, -b}; }
  friend OneForm operator+(const OneForm& u, const OneForm& v) { return {u.a + v.a, u.b + v.b}; }
  friend OneForm operator-(const OneForm& u, const OneForm& v) { return {u.a - v.a, u.b - v.b}; }
  friend OneForm operator*(const BiPoly& g, const OneForm& w) { return {g * w.a, g * w.b}; }
  friend bool operator==(const OneForm&, const OneForm&) = default;

  /// Pull-back by (x, y) = (X(u, v), Y(u, v)).
  OneForm pullback(const BiPoly& X, const BiPoly& Y) const;
  OneForm swap_xy() const { return {b.swap_xy(), a.swap_xy()}; }
  bool singular_at_origin() const { return a.coeff(0, 0) == 0 && b.coeff(0, 0) == 0; }

  /// "a ; b", or "d(f)" accepted on input for exact forms.
  std::string to_string() const;
  static OneForm parse(std::string_view text);
};

/// Divides omega by gcd(a, b) when that gcd is a unit at the origin (it does not vanish
/// there), so the germ has an isolated singularity. Throws NonIsolated otherwise.
OneForm local_reduce(const OneForm& omega);

}  // namespace qhfol
