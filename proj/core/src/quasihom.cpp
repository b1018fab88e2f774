#include "qhfol/quasihom.hpp"

#include <limits>
#include <numeric>
#include <vector>

#include "detail/rat_linalg.hpp"
#include "qhfol/error.hpp"

namespace qhfol {

std::optional<Weight> infer_weights(const BiPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "infer_weights: zero polynomial");
  if (f.coeff(0, 0) != 0) return std::nullopt;
  const auto& terms = f.terms();
  const Monomial p0 = terms.begin()->first;
  if (terms.size() == 1) return Weight{1, 1, p0.first + p0.second, false};
  long di = 0, dj = 0;
  for (const auto& [m, c] : terms) {
    long ei = static_cast<long>(m.first) - p0.first, ej = static_cast<long>(m.second) - p0.second;
    if (ei == 0 && ej == 0) continue;
    if (di == 0 && dj == 0) {
      di = ei;
      dj = ej;
    } else if (di * ej - dj * ei != 0) {
      return std::nullopt;
    }
  }
  if (di * dj >= 0) return std::nullopt;  // weights must both be positive
  long g = std::gcd(std::labs(di), std::labs(dj));
  unsigned wx = static_cast<unsigned>(std::labs(dj) / g);
  unsigned wy = static_cast<unsigned>(std::labs(di) / g);
  unsigned gamma = wx * p0.first + wy * p0.second;
  if (wx <= wy) return Weight{wx, wy, gamma, false};
  return Weight{wy, wx, gamma, true};
}

bool euler_check(const BiPoly& f, const Weight& w) {
  BiPoly lhs = Rat(w.wx()) * (BiPoly::x() * f.partial_x()) +
               Rat(w.wy()) * (BiPoly::y() * f.partial_y());
  return lhs == Rat(w.gamma) * f;
}

namespace {

std::vector<Monomial> monomials_below(unsigned n) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d < n; ++d)
    for (unsigned i = d + 1; i-- > 0;) out.push_back({i, d - i});
  return out;
}

/// Solvability of f = A g1 + B g2 modulo total degree n; returns (A, B) on success.
std::optional<std::pair<BiPoly, BiPoly>> solve_membership(const BiPoly& f, const BiPoly& g1,
                                                          const BiPoly& g2, unsigned n) {
  auto mons = monomials_below(n);
  std::map<Monomial, std::size_t> row;
  for (std::size_t k = 0; k < mons.size(); ++k) row[mons[k]] = k;
  detail::RatMatrix A(mons.size(), 2 * mons.size());
  for (std::size_t u = 0; u < mons.size(); ++u) {
    for (int which = 0; which < 2; ++which) {
      const BiPoly& g = which == 0 ? g1 : g2;
      for (const auto& [m, c] : g.terms()) {
        Monomial prod{m.first + mons[u].first, m.second + mons[u].second};
        auto it = row.find(prod);
        if (it != row.end()) A(it->second, which * mons.size() + u) += c;
      }
    }
  }
  std::vector<Rat> b(mons.size());
  for (std::size_t k = 0; k < mons.size(); ++k) b[k] = f.coeff(mons[k].first, mons[k].second);
  auto x = detail::solve_particular(A, b);
  if (!x) return std::nullopt;
  BiPoly ca, cb;
  for (std::size_t u = 0; u < mons.size(); ++u) {
    ca += BiPoly::monomial((*x)[u], mons[u].first, mons[u].second);
    cb += BiPoly::monomial((*x)[mons.size() + u], mons[u].first, mons[u].second);
  }
  return std::make_pair(ca, cb);
}

}  // namespace

MembershipCertificate ideal_membership(const BiPoly& f, const BiPoly& g1, const BiPoly& g2,
                                       unsigned N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "ideal_membership: N must be >= 1");
  MembershipCertificate cert;
  cert.jet_order = N;
  if (auto sol = solve_membership(f, g1, g2, N)) {
    cert.member = true;
    cert.cofactors = std::move(sol);
    return cert;
  }
  // Solvability is inherited by lower truncations, so the first failure is well defined.
  for (unsigned n = 1; n <= N; ++n) {
    if (!solve_membership(f, g1, g2, n)) {
      cert.residual_order = n;
      break;
    }
  }
  return cert;
}

MembershipCertificate jacobian_membership(const BiPoly& f, unsigned N) {
  BiPoly fx = f.partial_x(), fy = f.partial_y();
  if (fx.is_zero() && fy.is_zero())
    throw Error(ErrorCode::NonIsolated, "jacobian_membership: constant polynomial");
  if (!gcd(fx, fy).is_constant())
    throw Error(ErrorCode::NonIsolated, "jacobian_membership: partial derivatives share a factor");
  return ideal_membership(f, fx, fy, N);
}

OneForm rotational_form(const Weight& w) {
  return {Rat(-static_cast<long>(w.wx())) * BiPoly::y(), Rat(w.wy()) * BiPoly::x()};
}

OneForm weighted_form_part(const OneForm& omega, const Weight& w, unsigned d) {
  OneForm out;
  if (d >= w.wx()) out.a = omega.a.weighted_part(w.wx(), w.wy(), d - w.wx());
  if (d >= w.wy()) out.b = omega.b.weighted_part(w.wx(), w.wy(), d - w.wy());
  return out;
}

namespace {

unsigned lowest_weighted_degree(const OneForm& omega, const Weight& w) {
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const auto& [m, c] : omega.a.terms()) best = std::min(best, w.degree_of(m.first, m.second) + w.wx());
  for (const auto& [m, c] : omega.b.terms()) best = std::min(best, w.degree_of(m.first, m.second) + w.wy());
  return best;
}

std::vector<Monomial> monomials_of_weight(const Weight& w, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned i = 0; w.wx() * i <= d; ++i) {
    unsigned rest = d - w.wx() * i;
    if (rest % w.wy() == 0) out.push_back({i, rest / w.wy()});
  }
  return out;
}

/// Solves sum_k x_k * columns[k] = rhs with minimal norm, coefficientwise on both form parts.
std::optional<std::vector<Rat>> solve_forms(const std::vector<OneForm>& columns, const OneForm& rhs) {
  std::map<std::pair<int, Monomial>, std::size_t> row;
  auto index = [&row](int part, const Monomial& m) {
    auto [it, inserted] = row.try_emplace({part, m}, row.size());
    return it->second;
  };
  for (const auto& col : columns) {
    for (const auto& [m, c] : col.a.terms()) index(0, m);
    for (const auto& [m, c] : col.b.terms()) index(1, m);
  }
  for (const auto& [m, c] : rhs.a.terms()) index(0, m);
  for (const auto& [m, c] : rhs.b.terms()) index(1, m);
  detail::RatMatrix A(row.size(), columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    for (const auto& [m, c] : columns[k].a.terms()) A(row[{0, m}], k) = c;
    for (const auto& [m, c] : columns[k].b.terms()) A(row[{1, m}], k) = c;
  }
  std::vector<Rat> b(row.size());
  for (const auto& [m, c] : rhs.a.terms()) b[row[{0, m}]] = c;
  for (const auto& [m, c] : rhs.b.terms()) b[row[{1, m}]] = c;
  return detail::solve_min_norm(A, b);
}

}  // namespace

TakensData takens_normal_form(const OneForm& omega, const Weight& w, unsigned N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "takens_normal_form: N must be >= 1");
  if (omega.is_zero() || gcd(omega.a, omega.b).coeff(0, 0) == 0)
    throw Error(ErrorCode::NonIsolated, "takens_normal_form: gcd(a, b) vanishes at the origin");
  if (lowest_weighted_degree(omega, w) != w.gamma)
    throw Error(ErrorCode::NotQuasiHomogeneousType,
                "takens_normal_form: lowest weighted part of omega does not have degree gamma");
  const OneForm R = rotational_form(w);
  const unsigned rdeg = w.wx() + w.wy();
  const OneForm low = weighted_form_part(omega, w, w.gamma);

  TakensData out;
  out.weight = w;
  out.order = N;
  std::vector<BiPoly> g_parts{BiPoly::constant(1)};  // g_parts[m] has weighted degree m

  for (unsigned delta = w.gamma; delta <= N; ++delta) {
    std::vector<OneForm> columns;
    std::vector<std::pair<int, Monomial>> unknowns;  // 0: f, 1: g, 2: h
    OneForm rhs = weighted_form_part(omega, w, delta);
    if (delta == w.gamma) {
      for (const auto& m : monomials_of_weight(w, w.gamma)) {
        columns.push_back(OneForm::exact(BiPoly::monomial(1, m.first, m.second)));
        unknowns.push_back({0, m});
      }
    } else {
      const unsigned gm = delta - w.gamma;
      for (unsigned m = 1; m < gm; ++m) rhs = rhs + g_parts[m] * weighted_form_part(omega, w, delta - m);
      // g_gm * low moves to the left-hand side; solve g_gm*low - h*R = -rhs.
      rhs = -rhs;
      for (const auto& m : monomials_of_weight(w, gm)) {
        columns.push_back(BiPoly::monomial(1, m.first, m.second) * low);
        unknowns.push_back({1, m});
      }
    }
    if (delta >= rdeg) {
      for (const auto& m : monomials_of_weight(w, delta - rdeg)) {
        OneForm col = BiPoly::monomial(1, m.first, m.second) * R;
        columns.push_back(delta == w.gamma ? col : -col);
        unknowns.push_back({2, m});
      }
    }
    auto sol = solve_forms(columns, rhs);
    if (!sol)
      throw Error(ErrorCode::NotQuasiHomogeneousType,
                  "takens_normal_form: obstruction at weighted degree " + std::to_string(delta));
    BiPoly gpart;
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      const auto& [kind, m] = unknowns[k];
      BiPoly term = BiPoly::monomial((*sol)[k], m.first, m.second);
      if (kind == 0) out.f += term;
      else if (kind == 1) gpart += term;
      else out.h += term;
    }
    if (delta > w.gamma) g_parts.push_back(gpart);
  }
  for (const auto& p : g_parts) out.g += p;
  return out;
}

OneForm takens_residual(const OneForm& omega, const TakensData& t) {
  const Weight& w = t.weight;
  OneForm full = t.g * omega - OneForm::exact(t.f) - t.h * rotational_form(w);
  OneForm out;
  for (unsigned d = 0; d <= t.order; ++d) out = out + weighted_form_part(full, w, d);
  return out;
}

std::optional<TakensData> infer_takens(const OneForm& omega, unsigned N, unsigned max_weight) {
  if (omega.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "infer_takens: zero form");
  for (unsigned sum = 2; sum <= 2 * max_weight; ++sum) {
    for (unsigned p = 1; p < sum; ++p) {
      const unsigned q = sum - p;
      if (p > max_weight || q > max_weight || std::gcd(p, q) != 1) continue;
      Weight w{std::min(p, q), std::max(p, q), 0, p > q};
      w.gamma = lowest_weighted_degree(omega, w);
      if (w.gamma > N) continue;
      try {
        TakensData t = takens_normal_form(omega, w, N);
        if (!t.f.is_constant() && is_squarefree(t.f)) return t;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotQuasiHomogeneousType) throw;
      }
    }
  }
  return std::nullopt;
}

}  // namespace qhfol
