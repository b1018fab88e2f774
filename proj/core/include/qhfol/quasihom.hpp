#pragma once

#include <optional>
#include <utility>

#include "qhfol/bipoly.hpp"
#include "qhfol/one_form.hpp"

namespace qhfol {

/// Weights of a quasi-homogeneous polynomial: alpha*i + beta*j = gamma on the support,
/// alpha <= beta, gcd(alpha, beta) = 1. When `swapped`, x carries beta and y carries alpha.
struct Weight {
  unsigned alpha = 1, beta = 1, gamma = 0;
  bool swapped = false;

  unsigned wx() const { return swapped ? beta : alpha; }
  unsigned wy() const { return swapped ? alpha : beta; }
  unsigned degree_of(unsigned i, unsigned j) const { return wx() * i + wy() * j; }
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// Result of deciding f in (g1, g2) modulo terms of total degree >= jet_order.
struct MembershipCertificate {
  bool member = false;
  unsigned jet_order = 0;
  std::optional<std::pair<BiPoly, BiPoly>> cofactors;
  /// Lowest truncation order at which membership fails; 0 for members.
  unsigned residual_order = 0;
};

/// g*omega = df + h*(beta x dy - alpha y dx) through weighted order `order`.
struct TakensData {
  BiPoly g, h, f;
  Weight weight;
  unsigned order = 0;
};

/// Minimal-gamma weight whose line carries the whole support, or nullopt.
std::optional<Weight> infer_weights(const BiPoly& f);

/// alpha x f_x + beta y f_y == gamma f, exactly.
bool euler_check(const BiPoly& f, const Weight& w);

MembershipCertificate ideal_membership(const BiPoly& f, const BiPoly& g1, const BiPoly& g2,
                                       unsigned N);

/// Membership of f in its jacobian ideal up to jet order N. Throws NonIsolated.
MembershipCertificate jacobian_membership(const BiPoly& f, unsigned N);

/// The rotational form wy*x dy - wx*y dx.
OneForm rotational_form(const Weight& w);

/// Degree-by-degree Takens normal form. Throws NonIsolated or NotQuasiHomogeneousType.
TakensData takens_normal_form(const OneForm& omega, const Weight& w, unsigned N);

/// g*omega - df - h*R restricted to weighted degree <= order (zero for a valid certificate).
OneForm takens_residual(const OneForm& omega, const TakensData& t);

/// Terms of omega of weighted degree d (dx carries wx, dy carries wy).
OneForm weighted_form_part(const OneForm& omega, const Weight& w, unsigned d);

/// Searches coprime weights with entries up to max_weight (smallest sum first) for a Takens
/// normal form with reduced f. nullopt when none exists.
std::optional<TakensData> infer_takens(const OneForm& omega, unsigned N, unsigned max_weight = 12);

}  // namespace qhfol
