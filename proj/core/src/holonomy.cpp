#include "qhfol/holonomy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qhfol/error.hpp"

namespace qhfol {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

cplx segment_point(const PathSegment& s, double t) {
  if (const auto* l = std::get_if<LineSegment>(&s)) return l->from + (l->to - l->from) * t;
  const auto& a = std::get<ArcSegment>(s);
  return a.center + std::polar(a.radius, a.theta0 + (a.theta1 - a.theta0) * t);
}

cplx segment_velocity(const PathSegment& s, double t) {
  if (const auto* l = std::get_if<LineSegment>(&s)) return l->to - l->from;
  const auto& a = std::get<ArcSegment>(s);
  const double w = a.theta1 - a.theta0;
  return cplx(0, w) * std::polar(a.radius, a.theta0 + w * t);
}

LoopSpec reversed(const LoopSpec& loop) {
  LoopSpec r = loop;
  r.path.clear();
  for (auto it = loop.path.rbegin(); it != loop.path.rend(); ++it) {
    if (const auto* l = std::get_if<LineSegment>(&*it)) {
      r.path.push_back(LineSegment{l->to, l->from});
    } else {
      auto a = std::get<ArcSegment>(*it);
      std::swap(a.theta0, a.theta1);
      r.path.push_back(a);
    }
  }
  return r;
}

double winding_number(const LoopSpec& loop, cplx z, int samples) {
  double total = 0;
  for (const auto& s : loop.path) {
    cplx prev = segment_point(s, 0) - z;
    for (int k = 1; k <= samples; ++k) {
      cplx cur = segment_point(s, static_cast<double>(k) / samples) - z;
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return total / kTwoPi;
}

namespace {

/// Abscissae where the fiber is special: zeros of b(u, 0).
std::vector<cplx> special_abscissae(const OneForm& omega) {
  std::vector<cplx> out;
  UPoly bu = omega.b.restrict_y0();
  if (bu.degree() <= 0) return out;
  for (const auto& r : numeric_roots(bu)) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

double path_distance(const LoopSpec& loop, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : loop.path) {
    if (const auto* l = std::get_if<LineSegment>(&s)) {
      cplx ab = l->to - l->from;
      double t = std::norm(ab) > 0 ? std::clamp(std::real((z - l->from) * std::conj(ab)) / std::norm(ab), 0.0, 1.0) : 0.0;
      d = std::min(d, std::abs(z - (l->from + ab * t)));
    } else {
      const int n = 2048;
      for (int k = 0; k <= n; ++k) d = std::min(d, std::abs(z - segment_point(s, static_cast<double>(k) / n)));
    }
  }
  return d;
}

struct Field {
  NumericBiPoly a, b;
  double validity;
  // dv/dt along a segment
  cplx operator()(cplx u, cplx du, cplx v) const {
    cplx bv = b(u, v);
    if (std::abs(bv) < 1e-14 * (1 + std::abs(a(u, v))))
      throw Error(ErrorCode::SingularFiberHit, "lift_path: leaf tangent to the fibration");
    return -a(u, v) * du / bv;
  }
};

using State = std::vector<cplx>;

// Dormand-Prince 5(4) tableau.
constexpr double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
constexpr double A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double B4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

/// One DP step from (t, y) of size h; returns the 5th-order value and the 4th-order difference.
std::pair<State, State> dp_step(const Field& F, const PathSegment& seg, double t, double h, const State& y) {
  const std::size_t n = y.size();
  std::vector<State> k(7, State(n));
  for (int s = 0; s < 7; ++s) {
    double ts = t + C[s] * h;
    cplx u = segment_point(seg, ts), du = segment_velocity(seg, ts);
    for (std::size_t i = 0; i < n; ++i) {
      cplx yi = y[i];
      for (int j = 0; j < s; ++j) yi += h * A[s][j] * k[j][i];
      k[s][i] = F(u, du, yi);
    }
  }
  State y5(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s5 = 0, s4 = 0;
    for (int s = 0; s < 7; ++s) {
      s5 += (s < 6 ? A[6][s] : 0.0) * k[s][i];
      s4 += B4[s] * k[s][i];
    }
    y5[i] = y[i] + h * s5;
    diff[i] = h * (s5 - s4);
  }
  return {y5, diff};
}

void check_escape(const Field& F, const State& y) {
  for (const auto& v : y)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > F.validity)
      throw Error(ErrorCode::LeafEscaped, "lift_path: leaf left the validity radius");
}

/// Adaptive integration over t in [0, 1]; records accepted steps.
State integrate_adaptive(const Field& F, const PathSegment& seg, State y, const NumericParams& p,
                         std::vector<double>& steps) {
  double t = 0, h = std::min(p.max_step, 0.01);
  std::size_t iterations = 0;
  while (t < 1) {
    if (++iterations > 2000000) throw Error(ErrorCode::ToleranceNotMet, "lift_path: step budget exhausted");
    h = std::min({h, 1 - t, p.max_step});
    auto [y5, diff] = dp_step(F, seg, t, h, y);
    double err = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      double scale = p.rtol * std::max({std::abs(y[i]), std::abs(y5[i]), 1e-300});
      err = std::max(err, std::abs(diff[i]) / scale);
    }
    if (err <= 1) {
      t += h;
      steps.push_back(h);
      y = std::move(y5);
      check_escape(F, y);
    }
    if (h < 1e-14) throw Error(ErrorCode::ToleranceNotMet, "lift_path: step size underflow");
    double factor = err == 0 ? 5 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return y;
}

State integrate_fixed(const Field& F, const PathSegment& seg, State y, const std::vector<double>& steps) {
  double t = 0;
  for (double h : steps) {
    for (int half = 0; half < 2; ++half) {
      y = dp_step(F, seg, t, h / 2, y).first;
      t += h / 2;
    }
    check_escape(F, y);
  }
  return y;
}

}  // namespace

NumericForm numeric_form(const OneForm& omega) {
  return {NumericBiPoly(omega.a), NumericBiPoly(omega.b), special_abscissae(omega)};
}

std::vector<LiftResult> lift_path(const OneForm& omega, const LoopSpec& loop, const std::vector<cplx>& v0,
                                  const NumericParams& params) {
  return lift_path(numeric_form(omega), loop, v0, params);
}

std::vector<LiftResult> lift_path(const NumericForm& omega, const LoopSpec& loop, const std::vector<cplx>& v0,
                                  const NumericParams& params) {
  for (const cplx& s : omega.special)
    if (path_distance(loop, s) < 1e-9)
      throw Error(ErrorCode::SingularFiberHit, "lift_path: path meets a special fiber");
  Field F{omega.a, omega.b, params.validity_radius};
  check_escape(F, v0);
  // Global step halving: the finer run reuses every accepted step of the adaptive run, halved.
  State coarse = v0, fine = v0;
  for (const auto& seg : loop.path) {
    std::vector<double> steps;
    coarse = integrate_adaptive(F, seg, coarse, params, steps);
    fine = integrate_fixed(F, seg, fine, steps);
  }
  std::vector<LiftResult> out(v0.size());
  for (std::size_t i = 0; i < v0.size(); ++i) {
    double d = std::abs(coarse[i] - fine[i]);
    double allowed = params.halving_factor * params.rtol * std::max(std::abs(v0[i]), std::abs(fine[i]));
    if (d > allowed)
      throw Error(ErrorCode::ToleranceNotMet, "lift_path: step halving changed the endpoint by " + std::to_string(d));
    out[i] = {fine[i], d};
  }
  return out;
}

LiftResult lift_path(const OneForm& omega, const LoopSpec& loop, cplx v0, const NumericParams& params) {
  return lift_path(omega, loop, std::vector<cplx>{v0}, params).front();
}

}  // namespace qhfol

namespace qhfol {

CentralChart central_chart(const ResolutionTree& tree) {
  int central = tree.central ? *tree.central : central_component(tree);
  auto [ia, ib] = tree.charts_of(central);
  const Chart& A = tree.chart(ia);
  if (!A.omega) throw Error(ErrorCode::InvalidArgument, "central_chart: tree carries no foliation");
  CentralChart cc;
  cc.chart = ia;
  cc.component = central;
  cc.omega = A.omega->swap_xy();
  for (const auto& r : all_roots(A.omega->a.restrict_x0())) {
    int index = -2;
    for (std::size_t k = 0; k < tree.marked_points.size(); ++k) {
      const auto& m = tree.marked_points[k];
      if (m.at.chart == ia && m.at.v == r) index = static_cast<int>(k);
    }
    cc.points.push_back({r.numeric(), index});
  }
  for (std::size_t k = 0; k < tree.marked_points.size(); ++k)
    if (tree.marked_points[k].at.chart == ib) cc.infinity = static_cast<int>(k);
  return cc;
}

std::vector<LoopSpec> standard_loops(const CentralChart& cc, cplx* base_out) {
  std::vector<std::pair<cplx, int>> pts = cc.points;
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) {
    auto key = [](cplx z) {
      double a = std::abs(z) < 1e-300 ? 0.0 : std::arg(z);
      if (a < 0) a += kTwoPi;
      return std::make_pair(a, std::abs(z));
    };
    return key(x.first) < key(y.first);
  });
  double maxabs = 0;
  for (const auto& [z, k] : pts) maxabs = std::max(maxabs, std::abs(z));
  const double R = std::max(1.0, 2 * maxabs);

  auto segment_clearance = [&](cplx b) {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& [p, kp] : pts) {
      c = std::min(c, std::abs(b - p));
      for (const auto& [q, kq] : pts) {
        if (q == p) continue;
        cplx ab = p - b;
        double t = std::clamp(std::real((q - b) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
        c = std::min(c, std::abs(q - (b + ab * t)));
      }
    }
    return c;
  };
  cplx base = R;
  double best = -1;
  for (int j = 0; j < 720; ++j) {
    cplx b = std::polar(R, kTwoPi * j / 720);
    double c = segment_clearance(b);
    if (c > best + 1e-12) {
      best = c;
      base = b;
    }
  }
  if (base_out) *base_out = base;

  std::vector<LoopSpec> loops;
  for (const auto& [p, k] : pts) {
    double r = 0.5;
    for (const auto& [q, kq] : pts)
      if (q != p) r = std::min(r, 0.4 * std::abs(q - p));
    r = std::min(r, 0.5 * best);
    cplx d = (base - p) / std::abs(base - p);
    cplx start = p + r * d;
    LoopSpec loop;
    loop.base = base;
    loop.encircled = {k};
    loop.clearance = r;
    loop.path = {LineSegment{base, start}, ArcSegment{p, r, std::arg(d), std::arg(d) + kTwoPi},
                 LineSegment{start, base}};
    loops.push_back(std::move(loop));
  }
  if (cc.infinity >= 0) {
    LoopSpec loop;
    loop.base = base;
    loop.encircled = {-1};
    loop.clearance = R - maxabs;
    loop.path = {ArcSegment{0, std::abs(base), std::arg(base), std::arg(base) - kTwoPi}};
    loops.push_back(std::move(loop));
  }
  return loops;
}

namespace {

struct Fit {
  std::vector<cplx> scaled;  // s_k = c_k rho^{k-1}, k = 1..N
  double residual = 0;
};

Fit fit_jet(const std::vector<cplx>& z, const std::vector<cplx>& y, unsigned N) {
  const Eigen::Index M = static_cast<Eigen::Index>(z.size());
  if (M < static_cast<Eigen::Index>(N))
    throw Error(ErrorCode::IllConditionedFit, "holonomy fit: fewer offsets than coefficients");
  Eigen::MatrixXcd V(M, N);
  Eigen::VectorXcd rhs(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    cplx pw = 1;
    for (unsigned k = 0; k < N; ++k) {
      pw *= z[j];
      V(j, k) = pw;
    }
    rhs(j) = y[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0 || sv(0) / sv(sv.size() - 1) > 1e10)
    throw Error(ErrorCode::IllConditionedFit, "holonomy fit: offset ladder is degenerate");
  Eigen::VectorXcd s = svd.solve(rhs);
  Fit f;
  f.scaled.assign(s.data(), s.data() + s.size());
  f.residual = (V * s - rhs).cwiseAbs().maxCoeff();
  return f;
}

Generator fit_generator(const NumericForm& omega, const LoopSpec& loop, const NumericParams& params,
                        const std::vector<cplx>& offsets, double rho) {
  const unsigned N = params.order;
  auto lifted = lift_path(omega, loop, offsets, params);
  std::vector<cplx> z(offsets.size()), y(offsets.size()), dy(offsets.size());
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    z[j] = offsets[j] / rho;
    y[j] = lifted[j].value / rho;
    dy[j] = lifted[j].error / rho;
  }
  Fit fit = fit_jet(z, y, N);
  Fit disc = fit_jet(z, dy, N);
  double err = std::max(fit.residual, params.rtol);
  for (const auto& c : disc.scaled) err = std::max(err, std::abs(c));
  Series<cplx> s(N);
  for (unsigned k = 1; k <= N; ++k) s[k] = fit.scaled[k - 1] / std::pow(rho, static_cast<double>(k) - 1);
  Generator g;
  g.loop = loop;
  g.jet = ComplexJet(std::move(s), err);
  g.error = err;
  return g;
}

}  // namespace

Generator holonomy_generator(const OneForm& omega, const LoopSpec& loop, const NumericParams& params,
                             double* rho_used) {
  return holonomy_generator(numeric_form(omega), loop, params, rho_used);
}

Generator holonomy_generator(const NumericForm& omega, const LoopSpec& loop, const NumericParams& params,
                             double* rho_used) {
  if (params.order < 1) throw Error(ErrorCode::InvalidArgument, "holonomy_generator: order must be >= 1");
  if (!params.offsets.empty()) {
    double rho = 0;
    for (const auto& v : params.offsets) rho = std::max(rho, std::abs(v));
    if (rho_used) *rho_used = rho;
    return fit_generator(omega, loop, params, params.offsets, rho);
  }
  const unsigned M = 2 * params.order + 1;
  double rho = params.rho;
  for (int attempt = 0;; ++attempt) {
    std::vector<cplx> offsets(M);
    for (unsigned j = 0; j < M; ++j) offsets[j] = std::polar(rho, kTwoPi * j / M + params.phase);
    try {
      Generator g = fit_generator(omega, loop, params, offsets, rho);
      if (rho_used) *rho_used = rho;
      return g;
    } catch (const Error& e) {
      if ((e.code() != ErrorCode::LeafEscaped && e.code() != ErrorCode::ToleranceNotMet) || attempt >= 8) throw;
      rho /= 2;
    }
  }
}

HolonomyRep holonomy_rep(const ResolutionTree& tree, const NumericParams& params) {
  CentralChart cc = central_chart(tree);
  cplx base;
  auto loops = standard_loops(cc, &base);
  HolonomyRep rep;
  rep.transversal = {cc.chart, base, params.validity_radius};

  auto run = [&](const NumericParams& p, std::vector<Generator>& gens, std::vector<double>& rhos) {
    gens.assign(loops.size(), {});
    rhos.assign(loops.size(), p.rho);
    std::vector<std::exception_ptr> errors(loops.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i; (i = next++) < loops.size();) {
        try {
          gens[i] = holonomy_generator(cc.omega, loops[i], p, &rhos[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(p.jobs, static_cast<unsigned>(loops.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  };

  std::vector<Generator> gens;
  std::vector<double> rhos;
  run(params, gens, rhos);
  double rho = *std::min_element(rhos.begin(), rhos.end());
  if (params.offsets.empty() && std::any_of(rhos.begin(), rhos.end(), [&](double r) { return r != rho; })) {
    NumericParams p = params;
    p.rho = rho;
    run(p, gens, rhos);
  }
  rep.rho = rhos.empty() ? params.rho : rhos.front();

  for (std::size_t i = 0; i < gens.size(); ++i) {
    int k = loops[i].encircled.front();
    int idx = k == -1 ? cc.infinity : k;
    gens[i].marked_point = idx;
    if (idx >= 0) {
      for (const auto& [d, r] : tree.marked_points[idx].ratios)
        if (d == cc.component) gens[i].expected_multiplier = std::exp(cplx(0, kTwoPi) * r.numeric());
    }
  }
  rep.generators = std::move(gens);
  if (!rep.generators.empty()) {
    ComplexJet prod = rep.generators.front().jet;
    for (std::size_t i = 1; i < rep.generators.size(); ++i) prod = compose(rep.generators[i].jet, prod);
    rep.product = prod;
  }
  return rep;
}

HolonomyRep holonomy_rep(const OneForm& omega, const NumericParams& params) {
  return holonomy_rep(resolve_foliation(omega), params);
}

}  // namespace qhfol
