#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qhfol/rational.hpp"

namespace qhfol {

/// Truncated univariate power series c_0 + c_1 z + ... + c_N z^N.
/// T is Rat for exact work or std::complex<double> for numerics.
template <class T>
class Series {
 public:
  Series() : c_(1) {}
  explicit Series(std::size_t order) : c_(order + 1) {}
  explicit Series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }

  static Series identity(std::size_t order) {
    Series s(order);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T& operator[](std::size_t k) { return c_[k]; }
  const T& operator[](std::size_t k) const { return c_[k]; }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  /// Truncated product at the order of a.
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t n = a.order();
    Series r(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j <= n && j <= b.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend Series operator*(const T& s, const Series& a) {
    Series r = a;
    for (auto& c : r.c_) c = s * c;
    return r;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  /// Horner evaluation of the polynomial part.
  T operator()(const T& z) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// this(g(z)) truncated; requires g[0] == 0.
  Series compose(const Series& g) const {
    const std::size_t n = order();
    Series result(n), power = Series::constant(T(1), n);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j > 0) power = power * g;
      if (c_[j] == T(0)) continue;
      for (std::size_t k = 0; k <= n; ++k) result.c_[k] += c_[j] * power.c_[k];
    }
    return result;
  }

  /// Formal derivative, same order (top coefficient becomes 0).
  Series derivative() const {
    Series r(order());
    for (std::size_t k = 1; k <= order(); ++k) r.c_[k - 1] = T(static_cast<long>(k)) * c_[k];
    return r;
  }

  static Series constant(const T& c, std::size_t order) {
    Series s(order);
    s.c_[0] = c;
    return s;
  }

 private:
  std::vector<T> c_;
};

using Jet1 = Series<Rat>;
using ComplexJet1 = Series<std::complex<double>>;

}  // namespace qhfol
