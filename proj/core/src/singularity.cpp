#include "qhfol/singularity.hpp"

#include <cmath>

#include "qhfol/error.hpp"

namespace qhfol {

std::string_view tag_name(SingTag t) {
  switch (t) {
    case SingTag::NonSingular: return "NonSingular";
    case SingTag::Reduced: return "Reduced";
    case SingTag::SaddleNode: return "SaddleNode";
    case SingTag::NonReduced: return "NonReduced";
  }
  return "?";
}

namespace {

/// p(u0, t) reduced in the field of v0.
UPoly at_point(const NumberField& K, const BiPoly& p, const Rat& u0) {
  return K.reduce(p.translate(u0, 0).restrict_x0());
}

struct Linear {
  UPoly j00, j01, j10, j11;
};

Linear linear_part(const NumberField& K, const OneForm& w, const Rat& u0) {
  // X = b d/dx - a d/dy
  return {at_point(K, w.b.partial_x(), u0), at_point(K, w.b.partial_y(), u0),
          at_point(K, -w.a.partial_x(), u0), at_point(K, -w.a.partial_y(), u0)};
}

std::optional<UPoly> eigen_along(const NumberField& K, const Linear& J, const BiPoly& divisor,
                                 const Rat& u0) {
  // Tangent of the curve: (l_y, -l_x); invariance makes it an eigenvector.
  UPoly wx = at_point(K, divisor.partial_y(), u0);
  UPoly wy = at_point(K, -divisor.partial_x(), u0);
  UPoly jx = K.reduce(K.mul(J.j00, wx) + K.mul(J.j01, wy));
  UPoly jy = K.reduce(K.mul(J.j10, wx) + K.mul(J.j11, wy));
  if (!K.is_zero(wx)) return K.mul(jx, K.inv(wx));
  if (!K.is_zero(wy)) return K.mul(jy, K.inv(wy));
  return std::nullopt;
}

/// Ratio with |r| <= 1 (ties broken by smallest nonnegative argument) among roots of
/// r^2 - (s - 2) r + 1 for rational s.
AlgPoint canonical_ratio(const Rat& s) {
  UPoly q({Rat(1), Rat(2) - s, Rat(1)});
  auto roots = all_roots(q);
  auto key = [](const AlgPoint& p) {
    double arg = std::arg(p.numeric());
    if (arg < -1e-15) arg += 2 * M_PI;
    return std::make_pair(std::abs(p.numeric()) > 1 + 1e-12, arg);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (key(roots[i]) < key(roots[best])) best = i;
  return roots[best];
}

}  // namespace

std::optional<AlgPoint> ratio_relative_to(const OneForm& omega, const Rat& u0, const AlgPoint& v0,
                                          const BiPoly& divisor) {
  NumberField K(v0);
  Linear J = linear_part(K, omega, u0);
  UPoly tr = K.reduce(J.j00 + J.j11);
  auto mu = eigen_along(K, J, divisor, u0);
  if (!mu || K.is_zero(*mu)) return std::nullopt;
  return K.to_algpoint(K.mul(tr - *mu, K.inv(*mu)));
}

SingClass classify_singularity(const OneForm& omega, const Rat& u0, const AlgPoint& v0,
                               const BiPoly* divisor) {
  NumberField K(v0);
  if (!K.is_zero(at_point(K, omega.a, u0)) || !K.is_zero(at_point(K, omega.b, u0)))
    throw Error(ErrorCode::NotSingular, "classify_singularity: form does not vanish at the point");
  SingClass out;
  out.field = v0;
  Linear J = linear_part(K, omega, u0);
  out.linear_part = {J.j00, J.j01, J.j10, J.j11};
  out.trace = K.reduce(J.j00 + J.j11);
  out.determinant = K.reduce(K.mul(J.j00, J.j11) - K.mul(J.j01, J.j10));
  out.discriminant = K.reduce(K.mul(out.trace, out.trace) - Rat(4) * out.determinant);

  const bool det_zero = K.is_zero(out.determinant);
  const bool tr_zero = K.is_zero(out.trace);
  if (det_zero && tr_zero) {
    out.tag = SingTag::NonReduced;  // nilpotent or zero
    return out;
  }
  if (det_zero) {
    out.tag = SingTag::SaddleNode;
  } else {
    // With s = tr^2/det, the ratio r solves r^2 - (s-2) r + 1 = 0; r is a positive
    // rational iff s is rational, s(s-4) is a rational square and s > 2.
    UPoly s_elem = K.mul(K.mul(out.trace, out.trace), K.inv(out.determinant));
    Rat s, root;
    bool positive_rational = K.as_rational(s_elem, s) && s > 2 && rat_sqrt(s * (s - 4), root);
    out.tag = positive_rational ? SingTag::NonReduced : SingTag::Reduced;
  }

  if (divisor) {
    out.lambda = ratio_relative_to(omega, u0, v0, *divisor);
  } else if (out.tag != SingTag::SaddleNode) {
    Rat s;
    UPoly s_elem = K.mul(K.mul(out.trace, out.trace), K.inv(out.determinant));
    if (K.as_rational(s_elem, s)) {
      out.lambda = canonical_ratio(s);
    } else {
      std::complex<double> tr = K.numeric(out.trace), disc = K.numeric(out.discriminant);
      std::complex<double> e1 = (tr + std::sqrt(disc)) / 2.0, e2 = (tr - std::sqrt(disc)) / 2.0;
      out.lambda_numeric = std::abs(e2 / e1) <= 1 ? e2 / e1 : e1 / e2;
    }
  }
  if (out.lambda) out.lambda_numeric = out.lambda->numeric();
  return out;
}

SingClass classify_singularity(const OneForm& omega, const Rat& u0, const Rat& v0,
                               const BiPoly* divisor) {
  return classify_singularity(omega, u0, AlgPoint::rational(v0), divisor);
}

}  // namespace qhfol
