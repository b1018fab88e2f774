#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhfol/rational.hpp"

namespace qhfol {

/// Dense univariate polynomial over Q. coeffs()[k] multiplies t^k; no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  static UPoly constant(const Rat& c);
  /// t - r
  static UPoly linear_root(const Rat& r);
  static UPoly monomial(const Rat& c, unsigned k);

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& lc() const { return c_.back(); }
  Rat coeff(unsigned k) const { return k < c_.size() ? c_[k] : Rat(0); }

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rat& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly derivative() const;
  UPoly monic() const;
  Rat eval(const Rat& t) const;
  std::complex<double> eval(std::complex<double> t) const;
  std::complex<long double> eval(std::complex<long double> t) const;

  /// Variable name used when printing; the parser accepts any single letter.
  std::string to_string(char var = 't') const;
  static UPoly parse(std::string_view text);

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// s with s*a = gcd(a, m) mod m; used for inverses in Q[t]/m.
UPoly inverse_mod(const UPoly& a, const UPoly& m);
UPoly squarefree_part(const UPoly& p);
bool is_squarefree(const UPoly& p);

/// All distinct rational roots.
std::vector<Rat> rational_roots(const UPoly& p);

/// Monic irreducible factors of the squarefree part of p, sorted by degree then coefficients.
std::vector<UPoly> irreducible_factors(const UPoly& p);

/// Numerical approximations of all roots (Aberth iteration in long double).
std::vector<std::complex<long double>> numeric_roots(const UPoly& p);

}  // namespace qhfol
