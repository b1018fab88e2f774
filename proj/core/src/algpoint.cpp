#include "qhfol/algpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/rat_linalg.hpp"
#include "qhfol/error.hpp"

namespace qhfol {
namespace {

CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
CRat operator*(const CRat& a, const CRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rat abs2(const CRat& a) { return a.re * a.re + a.im * a.im; }
CRat operator/(const CRat& a, const CRat& b) {
  Rat d = abs2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

CRat eval(const UPoly& p, const CRat& z) {
  CRat acc{Rat(0), Rat(0)};
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + CRat{*it, Rat(0)};
  return acc;
}

Rat round_to_grid(const Rat& x, const BigInt& scale) {
  Rat s = x * scale + Rat(1, 2);
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  Rat r(f, scale);
  r.canonicalize();
  return r;
}

/// Rational R with R >= n |p(z)/p'(z)|: the disk of radius R about z holds a root of p.
Rat inclusion_radius(const UPoly& p, const UPoly& dp, const CRat& z) {
  CRat pv = eval(p, z);
  Rat num = abs2(pv);
  if (num == 0) return Rat(0);
  CRat dv = eval(dp, z);
  Rat den = abs2(dv);
  if (den == 0) return Rat(-1);
  Rat n(p.degree());
  Rat r2 = n * n * num / den;
  double approx = std::sqrt(r2.get_d());
  Rat R = rat_from_double(approx * (1 + 1e-9) + std::numeric_limits<double>::denorm_min());
  while (R * R < r2) R *= 2;
  return R;
}

RatBox box_around(const CRat& z, const Rat& R) { return {z.re - R, z.re + R, z.im - R, z.im + R}; }

bool disjoint(const RatBox& a, const RatBox& b) {
  return a.re_hi < b.re_lo || b.re_hi < a.re_lo || a.im_hi < b.im_lo || b.im_hi < a.im_lo;
}

RatBox intersect(const RatBox& a, const RatBox& b) {
  return {std::max(a.re_lo, b.re_lo), std::min(a.re_hi, b.re_hi), std::max(a.im_lo, b.im_lo),
          std::min(a.im_hi, b.im_hi)};
}

CRat center(const RatBox& b) { return {(b.re_lo + b.re_hi) / 2, (b.im_lo + b.im_hi) / 2}; }

CRat newton(const UPoly& p, const UPoly& dp, const CRat& z, const BigInt& scale) {
  CRat dv = eval(dp, z);
  if (abs2(dv) == 0) return z;
  CRat next = z - eval(p, z) / dv;
  return {round_to_grid(next.re, scale), round_to_grid(next.im, scale)};
}

}  // namespace

bool RatBox::contains(const RatBox& inner) const {
  return re_lo <= inner.re_lo && inner.re_hi <= re_hi && im_lo <= inner.im_lo && inner.im_hi <= im_hi;
}

bool RatBox::contains(const CRat& z) const {
  return re_lo <= z.re && z.re <= re_hi && im_lo <= z.im && z.im <= im_hi;
}

double RatBox::diameter() const {
  double w = Rat(re_hi - re_lo).get_d(), h = Rat(im_hi - im_lo).get_d();
  return std::hypot(w, h);
}

AlgPoint::AlgPoint(UPoly minpoly, RatBox box, std::complex<double> numeric)
    : minpoly_(std::move(minpoly)), box_(std::move(box)), numeric_(numeric) {}

AlgPoint AlgPoint::rational(const Rat& r) {
  return AlgPoint(UPoly::linear_root(r), RatBox{r, r, Rat(0), Rat(0)}, {r.get_d(), 0.0});
}

Rat AlgPoint::rational_value() const {
  if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "algebraic point is not rational");
  return -minpoly_.coeffs()[0] / minpoly_.coeffs()[1];
}

std::vector<AlgPoint> isolate_roots(const UPoly& irreducible) {
  UPoly p = irreducible.monic();
  std::vector<AlgPoint> out;
  if (p.degree() <= 0) return out;
  if (p.degree() == 1) {
    out.push_back(AlgPoint::rational(-p.coeffs()[0]));
    return out;
  }
  UPoly dp = p.derivative();
  auto approx = numeric_roots(p);
  std::vector<CRat> z;
  for (auto& a : approx)
    z.push_back({rat_from_double(static_cast<double>(a.real())),
                 rat_from_double(static_cast<double>(a.imag()))});
  BigInt scale = BigInt(1) << 60;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<RatBox> boxes;
    bool ok = true;
    for (auto& zi : z) {
      Rat R = inclusion_radius(p, dp, zi);
      if (R < 0) {
        ok = false;
        break;
      }
      boxes.push_back(box_around(zi, R));
    }
    for (std::size_t i = 0; ok && i < boxes.size(); ++i)
      for (std::size_t j = i + 1; ok && j < boxes.size(); ++j)
        if (!disjoint(boxes[i], boxes[j])) ok = false;
    if (ok) {
      for (std::size_t i = 0; i < z.size(); ++i)
        out.emplace_back(p, boxes[i], std::complex<double>(z[i].re.get_d(), z[i].im.get_d()));
      return out;
    }
    scale *= scale;
    for (auto& zi : z)
      for (int k = 0; k < 4; ++k) zi = newton(p, dp, zi, scale);
  }
  throw Error(ErrorCode::InvalidArgument, "root isolation failed for " + p.to_string());
}

std::vector<AlgPoint> all_roots(const UPoly& p) {
  std::vector<AlgPoint> out;
  for (const auto& f : irreducible_factors(p))
    for (auto& r : isolate_roots(f)) out.push_back(std::move(r));
  return out;
}

AlgPoint alg_refine(const AlgPoint& pt, const Rat& eps) {
  if (pt.is_rational()) return pt;
  const UPoly& p = pt.minpoly();
  UPoly dp = p.derivative();
  CRat z{rat_from_double(pt.numeric().real()), rat_from_double(pt.numeric().imag())};
  if (!pt.box().contains(z)) z = center(pt.box());
  // Grid fine enough that rounding does not limit the target diameter.
  BigInt scale = 1;
  while (Rat(BigInt(1), scale) * 64 > eps) scale <<= 4;
  scale <<= 8;
  const Rat eps2_half = eps * eps / 8;  // (2R)^2 * 2 < eps^2  <=>  R^2 < eps^2 / 8
  for (int iter = 0; iter < 400; ++iter) {
    z = newton(p, dp, z, scale);
    Rat R = inclusion_radius(p, dp, z);
    if (R < 0) continue;
    RatBox b = box_around(z, R);
    if (R * R < eps2_half && pt.box().contains(b)) {
      return AlgPoint(p, b, {z.re.get_d(), z.im.get_d()});
    }
    if (iter % 20 == 19) scale *= scale;
  }
  throw Error(ErrorCode::ToleranceNotMet, "alg_refine did not converge");
}

UPoly NumberField::reduce(const UPoly& a) const { return divmod(a, root_.minpoly()).second; }

UPoly NumberField::inv(const UPoly& a) const { return inverse_mod(a, root_.minpoly()); }

bool NumberField::as_rational(const UPoly& a, Rat& value) const {
  UPoly r = reduce(a);
  if (r.degree() > 0) return false;
  value = r.is_zero() ? Rat(0) : r.coeffs()[0];
  return true;
}

std::complex<double> NumberField::numeric(const UPoly& a) const {
  return reduce(a).eval(root_.numeric());
}

UPoly NumberField::minpoly_of(const UPoly& a) const {
  const int d = root_.minpoly().degree();
  std::vector<UPoly> powers{UPoly::constant(1)};
  UPoly elem = reduce(a);
  for (int k = 1; k <= d; ++k) {
    powers.push_back(mul(powers.back(), elem));
    // Solve sum_{j<k} c_j e_j = -e_k over the coordinate basis 1..t^{d-1}.
    detail::RatMatrix A(d, k);
    std::vector<Rat> b(d);
    for (int r = 0; r < d; ++r) {
      for (int j = 0; j < k; ++j) A(r, j) = powers[j].coeff(r);
      b[r] = -powers[k].coeff(r);
    }
    if (auto c = detail::solve_particular(A, b)) {
      std::vector<Rat> coeffs(c->begin(), c->end());
      coeffs.push_back(Rat(1));
      return UPoly(std::move(coeffs));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "minimal polynomial search failed");
}

AlgPoint NumberField::to_algpoint(const UPoly& a) const {
  UPoly mp = minpoly_of(a);
  auto roots = isolate_roots(mp);
  const std::complex<double> target = numeric(a);
  std::size_t best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i].numeric() - target) < std::abs(roots[best].numeric() - target)) best = i;
  return roots[best];
}

}  // namespace qhfol
