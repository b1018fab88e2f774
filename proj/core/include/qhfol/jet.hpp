#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "qhfol/error.hpp"
#include "qhfol/series.hpp"

namespace qhfol {

/// Truncated germ z -> c_1 z + ... + c_N z^N of Diff(C, 0) with an error estimate
/// (0 for exact coefficients).
template <class T>
class JetDiffeo {
 public:
  JetDiffeo() : s_(Series<T>::identity(1)) {}
  explicit JetDiffeo(Series<T> s, double error = 0) : s_(std::move(s)), err_(error) {
    if (s_.order() < 1) throw Error(ErrorCode::InvalidArgument, "JetDiffeo: order must be >= 1");
    s_[0] = T(0);
  }
  static JetDiffeo identity(std::size_t order) { return JetDiffeo(Series<T>::identity(order)); }
  static JetDiffeo linear(const T& c, std::size_t order) {
    Series<T> s(order);
    s[1] = c;
    return JetDiffeo(std::move(s));
  }

  std::size_t order() const { return s_.order(); }
  const T& operator[](std::size_t k) const { return s_[k]; }
  T& operator[](std::size_t k) { return s_[k]; }
  const Series<T>& series() const { return s_; }
  double error() const { return err_; }
  void set_error(double e) { err_ = e; }
  T operator()(const T& z) const { return s_(z); }

  /// Sum of k |c_k|: bound on |f'| on the unit disk, used for error propagation.
  double derivative_bound() const {
    double b = 0;
    for (std::size_t k = 1; k <= order(); ++k) b += static_cast<double>(k) * magnitude(s_[k]);
    return b;
  }

  static double magnitude(const T& v) {
    if constexpr (std::is_same_v<T, Rat>) return std::abs(v.get_d());
    else return std::abs(v);
  }

 private:
  Series<T> s_;
  double err_ = 0;
};

using ExactJet = JetDiffeo<Rat>;
using ComplexJet = JetDiffeo<std::complex<double>>;

namespace detail {

template <class T>
void check_orders(const JetDiffeo<T>& f, const JetDiffeo<T>& g) {
  if (f.order() != g.order())
    throw Error(ErrorCode::OrderMismatch, "jet orders differ: " + std::to_string(f.order()) +
                                              " vs " + std::to_string(g.order()));
}

template <class T>
bool negligible(const T& c) {
  if constexpr (std::is_same_v<T, Rat>) return c == 0;
  else return std::abs(c) < 1e-12;
}

}  // namespace detail

/// f o g truncated at the common order.
template <class T>
JetDiffeo<T> compose(const JetDiffeo<T>& f, const JetDiffeo<T>& g) {
  detail::check_orders(f, g);
  double err = f.error() * std::max(1.0, g.derivative_bound()) + g.error() * f.derivative_bound();
  return JetDiffeo<T>(f.series().compose(g.series()), err);
}

template <class T>
JetDiffeo<T> invert(const JetDiffeo<T>& f) {
  const std::size_t n = f.order();
  if (detail::negligible(f[1])) throw Error(ErrorCode::NonInvertible, "invert: linear coefficient vanishes");
  const T inv1 = T(1) / f[1];
  Series<T> g(n);
  g[1] = inv1;
  for (std::size_t k = 2; k <= n; ++k) {
    Series<T> fg = f.series().compose(g);
    g[k] = -fg[k] * inv1;
  }
  const double m = JetDiffeo<T>::magnitude(f[1]);
  return JetDiffeo<T>(std::move(g), f.error() / (m * m));
}

/// phi o g o phi^{-1}.
template <class T>
JetDiffeo<T> conjugate(const JetDiffeo<T>& g, const JetDiffeo<T>& phi) {
  return compose(compose(phi, g), invert(phi));
}

}  // namespace qhfol
