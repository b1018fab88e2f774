#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qhfol/rational.hpp"
#include "qhfol/upoly.hpp"

namespace qhfol {

/// Complex number with rational real and imaginary parts.
struct CRat {
  Rat re, im;
};

/// Closed rectangle [re_lo, re_hi] x [im_lo, im_hi] with rational corners.
struct RatBox {
  Rat re_lo, re_hi, im_lo, im_hi;

  bool contains(const RatBox& inner) const;
  bool contains(const CRat& z) const;
  /// Upper bound on the diameter, as a double.
  double diameter() const;
  friend bool operator==(const RatBox&, const RatBox&) = default;
};

/// One root of an irreducible monic polynomial over Q, isolated by a box.
/// Rational roots have a degree-1 minpoly and a degenerate (point) box.
class AlgPoint {
 public:
  AlgPoint() = default;
  AlgPoint(UPoly minpoly, RatBox box, std::complex<double> numeric);
  static AlgPoint rational(const Rat& r);

  const UPoly& minpoly() const { return minpoly_; }
  const RatBox& box() const { return box_; }
  std::complex<double> numeric() const { return numeric_; }
  bool is_rational() const { return minpoly_.degree() == 1; }
  /// Exact value; only valid when is_rational().
  Rat rational_value() const;

  friend bool operator==(const AlgPoint& a, const AlgPoint& b) {
    return a.minpoly_ == b.minpoly_ && a.box_ == b.box_;
  }

 private:
  UPoly minpoly_;
  RatBox box_;
  std::complex<double> numeric_{};
};

/// Isolates every root of an irreducible monic polynomial. Boxes are pairwise disjoint.
std::vector<AlgPoint> isolate_roots(const UPoly& irreducible);

/// All distinct roots of p, grouped by irreducible factor.
std::vector<AlgPoint> all_roots(const UPoly& p);

/// Shrinks the isolating box below diameter eps. The new box lies inside the old one.
AlgPoint alg_refine(const AlgPoint& p, const Rat& eps);

/// Arithmetic in Q[t]/(minpoly) for one AlgPoint. Elements are reduced polynomials in t.
class NumberField {
 public:
  explicit NumberField(AlgPoint root) : root_(std::move(root)) {}

  const AlgPoint& root() const { return root_; }
  UPoly reduce(const UPoly& a) const;
  UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }
  UPoly inv(const UPoly& a) const;
  bool is_zero(const UPoly& a) const { return reduce(a).is_zero(); }
  /// True when the element lies in Q; `value` receives it.
  bool as_rational(const UPoly& a, Rat& value) const;
  std::complex<double> numeric(const UPoly& a) const;
  /// Minimal polynomial over Q of the element (monic, irreducible).
  UPoly minpoly_of(const UPoly& a) const;
  /// The element as an AlgPoint (isolating the conjugate closest to its numeric value).
  AlgPoint to_algpoint(const UPoly& a) const;

 private:
  AlgPoint root_;
};

}  // namespace qhfol
