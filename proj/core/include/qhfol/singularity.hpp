#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "qhfol/algpoint.hpp"
#include "qhfol/one_form.hpp"

namespace qhfol {

enum class SingTag { NonSingular, Reduced, SaddleNode, NonReduced };

std::string_view tag_name(SingTag t);

/// Classification of a foliation singularity. Field elements (linear part, trace, ...)
/// are polynomials in t reduced modulo the minimal polynomial of `field`; at rational
/// points they are constants.
struct SingClass {
  SingTag tag = SingTag::NonSingular;
  AlgPoint field;
  /// Linear part of b d/dx - a d/dy, row-major.
  std::array<UPoly, 4> linear_part;
  UPoly trace, determinant, discriminant;
  /// Eigenvalue ratio, relative to the divisor when one was supplied.
  std::optional<AlgPoint> lambda;
  std::complex<double> lambda_numeric{};
};

/// Classifies omega at (u0, v0). `divisor` is an optional local equation of an invariant
/// curve through the point; lambda is then transverse/along eigenvalue. Throws NotSingular.
SingClass classify_singularity(const OneForm& omega, const Rat& u0, const AlgPoint& v0,
                               const BiPoly* divisor = nullptr);
SingClass classify_singularity(const OneForm& omega, const Rat& u0, const Rat& v0,
                               const BiPoly* divisor = nullptr);

/// Eigenvalue ratio of `c` relative to the invariant curve {divisor = 0}; nullopt when the
/// eigenvalue along the curve vanishes.
std::optional<AlgPoint> ratio_relative_to(const OneForm& omega, const Rat& u0, const AlgPoint& v0,
                                          const BiPoly& divisor);

}  // namespace qhfol
