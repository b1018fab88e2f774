#include "qhfol/diffeo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qhfol/error.hpp"

namespace qhfol {

Pairing Pairing::identity(std::size_t m) {
  Pairing p;
  for (std::size_t i = 0; i < m; ++i) p.index.push_back(static_cast<int>(i));
  p.inverted.assign(m, false);
  return p;
}

std::vector<Pairing> cyclic_pairings(std::size_t m) {
  std::vector<Pairing> out;
  for (int rev = 0; rev < 2; ++rev) {
    for (std::size_t s = 0; s < m; ++s) {
      Pairing p;
      for (std::size_t i = 0; i < m; ++i)
        p.index.push_back(static_cast<int>(rev ? (s + m - i) % m : (s + i) % m));
      p.inverted.assign(m, rev == 1);
      out.push_back(std::move(p));
    }
  }
  return out;
}

ComplexJet truncate(const ComplexJet& f, unsigned N) {
  if (N > f.order()) throw Error(ErrorCode::OrderMismatch, "truncate: jet order below requested order");
  Series<cplx> s(N);
  for (unsigned k = 1; k <= N; ++k) s[k] = f[k];
  return ComplexJet(std::move(s), f.error());
}

namespace {

/// Scaled defects coefficient by coefficient, orders 1..K, for every generator.
std::vector<std::vector<cplx>> defects(const std::vector<ComplexJet>& g0, const std::vector<ComplexJet>& g1,
                                       const ComplexJet& phi, unsigned K, double rho) {
  std::vector<std::vector<cplx>> out(g0.size(), std::vector<cplx>(K));
  for (std::size_t i = 0; i < g0.size(); ++i) {
    Series<cplx> d = phi.series().compose(g0[i].series()) - g1[i].series().compose(phi.series());
    for (unsigned k = 1; k <= K; ++k) out[i][k - 1] = d[k] * std::pow(rho, static_cast<double>(k) - 1);
  }
  return out;
}

double max_defect(const std::vector<std::vector<cplx>>& d, unsigned K, int* where = nullptr) {
  double m = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (unsigned k = 0; k < K; ++k)
      if (std::abs(d[i][k]) > m) {
        m = std::abs(d[i][k]);
        if (where) *where = static_cast<int>(i);
      }
  return m;
}

/// Levenberg-Marquardt on the real and imaginary parts of phi_1..phi_K (scaled coordinates).
void refine(const std::vector<ComplexJet>& g0, const std::vector<ComplexJet>& g1, ComplexJet& phi,
            unsigned K, double rho) {
  const int n = 2 * static_cast<int>(K);
  auto pack = [&](const ComplexJet& p) {
    Eigen::VectorXd x(n);
    for (unsigned k = 1; k <= K; ++k) {
      cplx s = p[k] * std::pow(rho, static_cast<double>(k) - 1);
      x(2 * (k - 1)) = s.real();
      x(2 * (k - 1) + 1) = s.imag();
    }
    return x;
  };
  auto unpack = [&](const Eigen::VectorXd& x) {
    ComplexJet p = phi;
    for (unsigned k = 1; k <= K; ++k)
      p[k] = cplx(x(2 * (k - 1)), x(2 * (k - 1) + 1)) / std::pow(rho, static_cast<double>(k) - 1);
    return p;
  };
  auto residual = [&](const Eigen::VectorXd& x) {
    auto d = defects(g0, g1, unpack(x), K, rho);
    Eigen::VectorXd r(2 * d.size() * K);
    Eigen::Index j = 0;
    for (const auto& row : d)
      for (const auto& c : row) {
        r(j++) = c.real();
        r(j++) = c.imag();
      }
    return r;
  };
  Eigen::VectorXd x = pack(phi), r = residual(x);
  double lambda = 1e-3;
  for (int it = 0; it < 200 && r.norm() > 1e-15; ++it) {
    Eigen::MatrixXd J(r.size(), n);
    for (int c = 0; c < n; ++c) {
      Eigen::VectorXd xp = x;
      double h = 1e-7 * std::max(1.0, std::abs(x(c)));
      xp(c) += h;
      J.col(c) = (residual(xp) - r) / h;
    }
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 20 && !improved; ++tries) {
      Eigen::MatrixXd Aug = JtJ;
      Aug.diagonal().array() += lambda * (1 + JtJ.diagonal().array());
      Eigen::VectorXd step = Aug.ldlt().solve(-g);
      Eigen::VectorXd xn = x + step, rn = residual(xn);
      if (rn.norm() < r.norm()) {
        x = xn;
        r = rn;
        lambda = std::max(lambda / 10, 1e-12);
        improved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  phi = unpack(x);
}

}  // namespace

SameHolonomyVerdict same_holonomy_test(const std::vector<ComplexJet>& g0_in, const std::vector<ComplexJet>& g1_in,
                                       const Pairing& pairing, unsigned N, double tol, double rho) {
  if (g0_in.size() != g1_in.size() || pairing.index.size() != g0_in.size())
    throw Error(ErrorCode::OrderMismatch, "same_holonomy_test: generator counts differ");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "same_holonomy_test: N must be >= 1");
  std::vector<ComplexJet> g0, g1;
  for (std::size_t i = 0; i < g0_in.size(); ++i) {
    g0.push_back(truncate(g0_in[i], N));
    ComplexJet h = truncate(g1_in.at(pairing.index[i]), N);
    g1.push_back(pairing.inverted.empty() || !pairing.inverted[i] ? h : invert(h));
  }
  SameHolonomyVerdict v;
  v.order = N;
  v.tol = tol;
  v.rho = rho;
  v.pairing = pairing;
  ComplexJet phi = ComplexJet::identity(N);

  auto fail = [&](unsigned k, int i) {
    v.obstruction = std::make_pair(k, i);
    auto d = defects(g0, g1, phi, N, rho);
    for (const auto& row : d) {
      std::vector<double> r;
      for (unsigned j = 0; j < k; ++j) r.push_back(std::abs(row[j]));
      v.residuals.push_back(std::move(r));
    }
    return v;
  };

  for (std::size_t i = 0; i < g0.size(); ++i)
    if (std::abs(g0[i][1] - g1[i][1]) > tol) return fail(1, static_cast<int>(i));

  for (unsigned k = 2; k <= N; ++k) {
    phi[k] = 0;
    auto d = defects(g0, g1, phi, k, rho);
    // defect_k is affine in phi_k with slope (a^k - b) rho^(k-1)
    cplx num = 0;
    double den = 0;
    for (std::size_t i = 0; i < g0.size(); ++i) {
      cplx slope = (std::pow(g0[i][1], static_cast<double>(k)) - g1[i][1]) * std::pow(rho, static_cast<double>(k) - 1);
      if (std::abs(slope) < 1e-8) continue;  // resonant: gauge direction
      num += std::conj(slope) * d[i][k - 1];
      den += std::norm(slope);
    }
    if (den > 0) phi[k] = -num / den;
    d = defects(g0, g1, phi, k, rho);
    int where = 0;
    if (max_defect(d, k, &where) > tol) {
      refine(g0, g1, phi, k, rho);
      d = defects(g0, g1, phi, k, rho);
      if (max_defect(d, k, &where) > tol) return fail(k, where);
    }
  }
  auto d = defects(g0, g1, phi, N, rho);
  for (const auto& row : d) {
    std::vector<double> r;
    for (const auto& c : row) r.push_back(std::abs(c));
    v.residuals.push_back(std::move(r));
  }
  double err = 0;
  for (const auto& g : g0) err = std::max(err, g.error());
  for (const auto& g : g1) err = std::max(err, g.error());
  phi.set_error(err);
  v.phi = phi;
  v.conjugate = true;
  return v;
}

namespace {

double default_tol(const HolonomyRep& a, const HolonomyRep& b) {
  double e = 0;
  for (const auto& g : a.generators) e = std::max(e, g.error);
  for (const auto& g : b.generators) e = std::max(e, g.error);
  return 100 * e;
}

std::vector<ComplexJet> jets(const HolonomyRep& r) {
  std::vector<ComplexJet> out;
  for (const auto& g : r.generators) out.push_back(g.jet);
  return out;
}

}  // namespace

SameHolonomyVerdict same_holonomy_test(const HolonomyRep& rep0, const HolonomyRep& rep1, const Pairing& pairing,
                                       unsigned N, std::optional<double> tol) {
  double rho = std::min(rep0.rho > 0 ? rep0.rho : 1.0, rep1.rho > 0 ? rep1.rho : 1.0);
  return same_holonomy_test(jets(rep0), jets(rep1), pairing, N, tol.value_or(default_tol(rep0, rep1)), rho);
}

SameHolonomyVerdict same_holonomy_search(const HolonomyRep& rep0, const HolonomyRep& rep1, unsigned N,
                                         std::optional<double> tol) {
  const std::size_t m = rep0.generators.size();
  if (m != rep1.generators.size())
    throw Error(ErrorCode::OrderMismatch, "same_holonomy_search: generator counts differ");
  if (m > 6) throw Error(ErrorCode::InvalidArgument, "same_holonomy_search: more than 6 generators");
  std::optional<SameHolonomyVerdict> first;
  for (const auto& p : cyclic_pairings(m)) {
    auto v = same_holonomy_test(rep0, rep1, p, N, tol);
    if (v.conjugate) return v;
    if (!first) first = std::move(v);
  }
  return first ? *first : same_holonomy_test(rep0, rep1, Pairing::identity(m), N, tol);
}

}  // namespace qhfol
