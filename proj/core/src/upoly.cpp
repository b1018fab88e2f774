#include "qhfol/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/term_parser.hpp"
#include "qhfol/error.hpp"

namespace qhfol {

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

UPoly UPoly::constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }

UPoly UPoly::linear_root(const Rat& r) { return UPoly(std::vector<Rat>{-r, Rat(1)}); }

UPoly UPoly::monomial(const Rat& c, unsigned k) {
  std::vector<Rat> v(k + 1);
  v[k] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly operator*(const Rat& s, const UPoly& a) {
  std::vector<Rat> v = a.c_;
  for (auto& c : v) c *= s;
  return UPoly(std::move(v));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * static_cast<unsigned long>(k);
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return Rat(1) / lc() * (*this);
}

Rat UPoly::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> UPoly::eval(std::complex<double> t) const {
  std::complex<double> acc(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

std::complex<long double> UPoly::eval(std::complex<long double> t) const {
  std::complex<long double> acc(0.0L);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * t + static_cast<long double>(it->get_d());
  return acc;
}

std::string UPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rat& c = c_[k];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (!unit || k == 0) out += qhfol::to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

UPoly UPoly::parse(std::string_view text) {
  // Accept any single variable letter; find the first letter used.
  char var = 't';
  for (char ch : text)
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      var = ch;
      break;
    }
  const char vars[2] = {var, '\0'};
  auto terms = detail::parse_terms(text, std::string_view(vars, 1));
  UPoly p;
  for (auto& [e, c] : terms) p = p + UPoly::monomial(c, e[0]);
  return p;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rat> q(a.degree() - db + 1);
  const Rat inv_lc = Rat(1) / b.lc();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k] == 0) continue;
    Rat f = r[k] * inv_lc;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  // Extended Euclid on (m, a), tracking the coefficient of a.
  UPoly r0 = m, r1 = divmod(a, m).second;
  UPoly s0, s1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw Error(ErrorCode::InvalidArgument, "element is not invertible modulo m");
  return divmod(Rat(1) / r0.lc() * s0, m).second;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UPoly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

bool is_squarefree(const UPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

namespace {

std::vector<BigInt> divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> out;
  if (n == 0) return out;
  // Desk-scale inputs: trial division is adequate.
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

/// Integer coefficients of a primitive integer multiple of p.
std::vector<BigInt> integer_coeffs(const UPoly& p) {
  BigInt l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, BigInt(c.get_den()));
  std::vector<BigInt> v;
  for (const auto& c : p.coeffs()) {
    Rat s = c * l;
    v.push_back(s.get_num());
  }
  return v;
}

}  // namespace

std::vector<Rat> rational_roots(const UPoly& p) {
  std::vector<Rat> out;
  if (p.degree() <= 0) return out;
  UPoly q = squarefree_part(p);
  unsigned zero_mult = 0;
  while (!q.is_zero() && q.coeffs()[0] == 0) {
    q = divmod(q, UPoly::monomial(1, 1)).first;
    ++zero_mult;
  }
  if (zero_mult) out.push_back(Rat(0));
  if (q.degree() <= 0) return out;
  auto ic = integer_coeffs(q);
  auto ps = divisors(ic.front());
  auto qs = divisors(ic.back());
  for (const auto& a : ps)
    for (const auto& b : qs)
      for (int sign : {1, -1}) {
        Rat r(sign * a, b);
        r.canonicalize();
        if (q.eval(r) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<long double>> numeric_roots(const UPoly& p) {
  using C = std::complex<long double>;
  const int n = p.degree();
  std::vector<C> z;
  if (n <= 0) return z;
  UPoly m = p.monic();
  UPoly dm = m.derivative();
  long double bound = 0;
  for (int k = 0; k < n; ++k)
    bound = std::max(bound, std::pow(std::abs(static_cast<long double>(m.coeffs()[k].get_d())),
                                     1.0L / (n - k)));
  bound = 2 * bound + 0.1L;
  for (int k = 0; k < n; ++k)
    z.push_back(std::polar(bound * 0.5L, 2.0L * 3.14159265358979323846L * k / n + 0.4L));
  for (int iter = 0; iter < 2000; ++iter) {
    long double delta = 0;
    for (int k = 0; k < n; ++k) {
      C pv = m.eval(z[k]);
      if (pv == C(0)) continue;
      C w = pv / dm.eval(z[k]);
      C s(0);
      for (int j = 0; j < n; ++j)
        if (j != k) s += C(1) / (z[k] - z[j]);
      C step = w / (C(1) - w * s);
      z[k] -= step;
      delta = std::max(delta, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (delta < 1e-18L) break;
  }
  return z;
}

namespace {

/// Monic integer polynomial with integer coeffs v (v.back() == 1). Returns a factor list.
void factor_monic_integer(const std::vector<BigInt>& v, std::vector<std::vector<BigInt>>& out) {
  const int n = static_cast<int>(v.size()) - 1;
  if (n <= 1) {
    if (n == 1) out.push_back(v);
    return;
  }
  std::vector<Rat> rc(v.begin(), v.end());
  UPoly P{std::vector<Rat>(rc)};
  auto roots = numeric_roots(P);
  // Search subsets of size 2..n/2 whose product has integer coefficients.
  const int limit = std::min(n, 20);
  for (int size = 2; size <= limit / 2; ++size) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<std::complex<long double>> prod{1.0L};
      for (int i : idx) {
        std::vector<std::complex<long double>> next(prod.size() + 1);
        for (std::size_t k = 0; k < prod.size(); ++k) {
          next[k + 1] += prod[k];
          next[k] -= prod[k] * roots[i];
        }
        prod = std::move(next);
      }
      bool ok = true;
      std::vector<Rat> cand;
      for (auto& c : prod) {
        long double re = std::round(c.real());
        if (std::abs(c.imag()) > 1e-6L * (1 + std::abs(c)) ||
            std::abs(c.real() - re) > 1e-6L * (1 + std::abs(c))) {
          ok = false;
          break;
        }
        cand.emplace_back(static_cast<double>(re));
      }
      if (ok) {
        UPoly F{std::move(cand)};
        auto [q, r] = divmod(P, F);
        if (r.is_zero()) {
          auto to_int = [](const UPoly& u) {
            std::vector<BigInt> w;
            for (auto& c : u.coeffs()) w.push_back(c.get_num());
            return w;
          };
          factor_monic_integer(to_int(F), out);
          factor_monic_integer(to_int(q), out);
          return;
        }
      }
      int k = size - 1;
      while (k >= 0 && idx[k] == n - size + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  out.push_back(v);
}

bool factor_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k)
    if (a.coeffs()[k] != b.coeffs()[k]) return a.coeffs()[k] < b.coeffs()[k];
  return false;
}

}  // namespace

std::vector<UPoly> irreducible_factors(const UPoly& p) {
  std::vector<UPoly> out;
  if (p.degree() <= 0) return out;
  UPoly q = squarefree_part(p);
  for (const Rat& r : rational_roots(q)) {
    out.push_back(UPoly::linear_root(r));
    q = divmod(q, UPoly::linear_root(r)).first;
  }
  q = q.monic();
  if (q.degree() >= 2) {
    // t = s/D turns q into a monic integer polynomial in s.
    BigInt D = 1;
    for (const auto& c : q.coeffs()) D = lcm(D, BigInt(c.get_den()));
    const int n = q.degree();
    std::vector<BigInt> v(n + 1);
    BigInt pw = 1;
    for (int k = n; k >= 0; --k) {
      Rat s = q.coeffs()[k] * pw;
      v[k] = s.get_num();
      pw *= D;
    }
    std::vector<std::vector<BigInt>> fs;
    factor_monic_integer(v, fs);
    for (const auto& F : fs) {
      const int m = static_cast<int>(F.size()) - 1;
      std::vector<Rat> c(m + 1);
      BigInt dk = 1;
      for (int k = 0; k <= m; ++k) {
        c[k] = Rat(F[k] * dk);
        dk *= D;
      }
      out.push_back(UPoly(std::move(c)).monic());
    }
  }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

}  // namespace qhfol
