#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhfol/rational.hpp"
#include "qhfol/upoly.hpp"

namespace qhfol {

/// Exponent pair (i, j) of x^i y^j. std::pair ordering is the canonical lexicographic order.
using Monomial = std::pair<unsigned, unsigned>;

/// Sparse bivariate polynomial over Q. Zero coefficients are never stored.
class BiPoly {
 public:
  using Terms = std::map<Monomial, Rat>;

  BiPoly() = default;
  explicit BiPoly(Terms terms);
  static BiPoly constant(const Rat& c);
  static BiPoly monomial(const Rat& c, unsigned i, unsigned j);
  static BiPoly x() { return monomial(1, 1, 0); }
  static BiPoly y() { return monomial(1, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  Rat coeff(unsigned i, unsigned j) const;
  /// Greatest monomial under the canonical ordering and its coefficient.
  std::pair<Monomial, Rat> leading() const;

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const Rat& s, const BiPoly& a);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  BiPoly pow(unsigned k) const;
  BiPoly partial_x() const;
  BiPoly partial_y() const;
  /// f(X(x,y), Y(x,y)).
  BiPoly substitute(const BiPoly& X, const BiPoly& Y) const;
  BiPoly swap_xy() const;

  Rat eval(const Rat& x, const Rat& y) const;
  std::complex<double> eval(std::complex<double> x, std::complex<double> y) const;

  /// -1 for zero.
  int total_degree() const;
  /// Lowest total degree of a term (order at the origin); -1 for zero.
  int order() const;
  /// Largest k with x^k | f (huge for zero).
  unsigned x_valuation() const;
  unsigned y_valuation() const;
  /// f / (x^a y^b); requires exact divisibility.
  BiPoly divide_monomial(unsigned a, unsigned b) const;
  /// Exact quotient f/g, or nullopt when g does not divide f.
  std::optional<BiPoly> divide_exact(const BiPoly& g) const;
  /// Terms with total degree < n.
  BiPoly truncate_total(unsigned n) const;
  /// Terms with wx*i + wy*j <= n.
  BiPoly truncate_weighted(unsigned wx, unsigned wy, unsigned n) const;
  /// Terms with wx*i + wy*j == d.
  BiPoly weighted_part(unsigned wx, unsigned wy, unsigned d) const;

  /// f(0, t) and f(t, 0) as univariate polynomials.
  UPoly restrict_x0() const;
  UPoly restrict_y0() const;
  /// f(x0 + x, y0 + y).
  BiPoly translate(const Rat& x0, const Rat& y0) const;

  /// Coefficients as a polynomial in y with coefficients in Q[x]: result[j](x).
  std::vector<UPoly> as_poly_in_y() const;
  static BiPoly from_poly_in_y(const std::vector<UPoly>& c);

  std::string to_string() const;
  /// Signed sum of terms `c*x^i*y^j`; throws Error(ParseError) with an offset.
  static BiPoly parse(std::string_view text);

 private:
  void add_term(const Monomial& m, const Rat& c);
  Terms terms_;
};

/// Monic gcd (leading coefficient 1 under the canonical ordering).
BiPoly gcd(const BiPoly& f, const BiPoly& g);

/// True when f has no repeated factor.
bool is_squarefree(const BiPoly& f);

/// Cheap numeric evaluator.
class NumericBiPoly {
 public:
  NumericBiPoly() = default;
  explicit NumericBiPoly(const BiPoly& p);
  explicit NumericBiPoly(std::vector<std::pair<Monomial, std::complex<double>>> terms);
  std::complex<double> operator()(std::complex<double> x, std::complex<double> y) const;

 private:
  std::vector<std::pair<Monomial, std::complex<double>>> terms_;
  unsigned max_i_ = 0, max_j_ = 0;
};

}  // namespace qhfol
