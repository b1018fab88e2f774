#include "qhfol/bipoly.hpp"

#include <algorithm>
#include <limits>

#include "detail/term_parser.hpp"
#include "qhfol/error.hpp"

namespace qhfol {

BiPoly::BiPoly(Terms terms) {
  for (auto& [m, c] : terms) {
    c.canonicalize();
    if (c != 0) terms_.emplace(m, c);
  }
}

BiPoly BiPoly::constant(const Rat& c) { return monomial(c, 0, 0); }

BiPoly BiPoly::monomial(const Rat& c, unsigned i, unsigned j) {
  BiPoly p;
  p.add_term({i, j}, c);
  return p;
}

void BiPoly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool BiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

Rat BiPoly::coeff(unsigned i, unsigned j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rat(0) : it->second;
}

std::pair<Monomial, Rat> BiPoly::leading() const {
  if (terms_.empty()) return {{0, 0}, Rat(0)};
  return *terms_.rbegin();
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
  return r;
}

BiPoly operator*(const Rat& s, const BiPoly& a) {
  if (s == 0) return {};
  BiPoly r = a;
  for (auto& [m, c] : r.terms_) c *= s;
  return r;
}

BiPoly BiPoly::pow(unsigned k) const {
  BiPoly result = constant(1), base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

BiPoly BiPoly::partial_x() const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (m.first > 0) r.add_term({m.first - 1, m.second}, c * static_cast<unsigned long>(m.first));
  return r;
}

BiPoly BiPoly::partial_y() const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (m.second > 0) r.add_term({m.first, m.second - 1}, c * static_cast<unsigned long>(m.second));
  return r;
}

BiPoly BiPoly::substitute(const BiPoly& X, const BiPoly& Y) const {
  std::vector<BiPoly> xp{constant(1)}, yp{constant(1)};
  BiPoly r;
  for (const auto& [m, c] : terms_) {
    while (xp.size() <= m.first) xp.push_back(xp.back() * X);
    while (yp.size() <= m.second) yp.push_back(yp.back() * Y);
    r += c * (xp[m.first] * yp[m.second]);
  }
  return r;
}

BiPoly BiPoly::swap_xy() const {
  BiPoly r;
  for (const auto& [m, c] : terms_) r.add_term({m.second, m.first}, c);
  return r;
}

Rat BiPoly::eval(const Rat& x, const Rat& y) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (unsigned k = 0; k < m.first; ++k) t *= x;
    for (unsigned k = 0; k < m.second; ++k) t *= y;
    acc += t;
  }
  return acc;
}

std::complex<double> BiPoly::eval(std::complex<double> x, std::complex<double> y) const {
  return NumericBiPoly(*this)(x, y);
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m.first + m.second);
  return d;
}

int BiPoly::order() const {
  if (terms_.empty()) return -1;
  int d = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) d = std::min<int>(d, m.first + m.second);
  return d;
}

unsigned BiPoly::x_valuation() const {
  unsigned v = std::numeric_limits<unsigned>::max();
  for (const auto& [m, c] : terms_) v = std::min(v, m.first);
  return v;
}

unsigned BiPoly::y_valuation() const {
  unsigned v = std::numeric_limits<unsigned>::max();
  for (const auto& [m, c] : terms_) v = std::min(v, m.second);
  return v;
}

BiPoly BiPoly::divide_monomial(unsigned a, unsigned b) const {
  BiPoly r;
  for (const auto& [m, c] : terms_) {
    if (m.first < a || m.second < b)
      throw Error(ErrorCode::InvalidArgument, "monomial does not divide polynomial");
    r.terms_.emplace(Monomial{m.first - a, m.second - b}, c);
  }
  return r;
}

std::optional<BiPoly> BiPoly::divide_exact(const BiPoly& g) const {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  BiPoly r = *this, q;
  const auto [mg, cg] = g.leading();
  while (!r.is_zero()) {
    const auto [m, c] = r.leading();
    if (m.first < mg.first || m.second < mg.second) return std::nullopt;
    BiPoly t = monomial(c / cg, m.first - mg.first, m.second - mg.second);
    q += t;
    r -= t * g;
  }
  return q;
}

BiPoly BiPoly::truncate_total(unsigned n) const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (m.first + m.second < n) r.terms_.emplace(m, c);
  return r;
}

BiPoly BiPoly::truncate_weighted(unsigned wx, unsigned wy, unsigned n) const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (wx * m.first + wy * m.second <= n) r.terms_.emplace(m, c);
  return r;
}

BiPoly BiPoly::weighted_part(unsigned wx, unsigned wy, unsigned d) const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (wx * m.first + wy * m.second == d) r.terms_.emplace(m, c);
  return r;
}

UPoly BiPoly::restrict_x0() const {
  UPoly r;
  for (const auto& [m, c] : terms_)
    if (m.first == 0) r = r + UPoly::monomial(c, m.second);
  return r;
}

UPoly BiPoly::restrict_y0() const {
  UPoly r;
  for (const auto& [m, c] : terms_)
    if (m.second == 0) r = r + UPoly::monomial(c, m.first);
  return r;
}

BiPoly BiPoly::translate(const Rat& x0, const Rat& y0) const {
  if (x0 == 0 && y0 == 0) return *this;
  return substitute(x() + constant(x0), y() + constant(y0));
}

std::vector<UPoly> BiPoly::as_poly_in_y() const {
  std::vector<std::vector<Rat>> dense;
  for (const auto& [m, c] : terms_) {
    if (dense.size() <= m.second) dense.resize(m.second + 1);
    auto& row = dense[m.second];
    if (row.size() <= m.first) row.resize(m.first + 1);
    row[m.first] = c;
  }
  std::vector<UPoly> out;
  out.reserve(dense.size());
  for (auto& row : dense) out.emplace_back(std::move(row));
  return out;
}

BiPoly BiPoly::from_poly_in_y(const std::vector<UPoly>& c) {
  BiPoly r;
  for (unsigned j = 0; j < c.size(); ++j)
    for (unsigned i = 0; i < c[j].coeffs().size(); ++i) r.add_term({i, j}, c[j].coeffs()[i]);
  return r;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    Rat mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool has_var = m.first > 0 || m.second > 0;
    std::string body;
    if (mag != 1 || !has_var) body = qhfol::to_string(mag);
    auto append = [&body](char v, unsigned e) {
      if (e == 0) return;
      if (!body.empty()) body += "*";
      body += v;
      if (e > 1) body += "^" + std::to_string(e);
    };
    append('x', m.first);
    append('y', m.second);
    out += body;
  }
  return out;
}

BiPoly BiPoly::parse(std::string_view text) {
  BiPoly p;
  for (const auto& [e, c] : detail::parse_terms(text, "xy")) p.add_term({e[0], e[1]}, c);
  return p;
}

namespace {

using YPoly = std::vector<UPoly>;  // coefficients in Q[x], indexed by y-degree

void trim(YPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly content(const YPoly& p) {
  UPoly g;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

YPoly primitive(const YPoly& p) {
  UPoly c = content(p);
  YPoly out;
  for (const auto& a : p) out.push_back(divmod(a, c).first);
  trim(out);
  return out;
}

YPoly pseudo_remainder(YPoly a, const YPoly& b) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    UPoly la = a.back();
    for (auto& c : a) c = b.back() * c;
    for (std::size_t j = 0; j <= db; ++j) a[j + shift] = a[j + shift] - la * b[j];
    trim(a);
  }
  return a;
}

BiPoly normalize(const BiPoly& p) {
  if (p.is_zero()) return p;
  return Rat(1) / p.leading().second * p;
}

}  // namespace

BiPoly gcd(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero()) return normalize(g);
  if (g.is_zero()) return normalize(f);
  YPoly a = f.as_poly_in_y(), b = g.as_poly_in_y();
  UPoly cont = gcd(content(a), content(b));
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    YPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive(r);
    if (b.empty()) break;
  }
  YPoly result;
  if (b.empty()) {
    result = a;  // last nonzero remainder
  } else {
    result = YPoly{UPoly::constant(1)};  // remainder of y-degree 0: coprime parts
  }
  result = primitive(result);
  for (auto& c : result) c = cont * c;
  return normalize(BiPoly::from_poly_in_y(result));
}

bool is_squarefree(const BiPoly& f) {
  if (f.is_zero()) return false;
  BiPoly g = gcd(gcd(f, f.partial_x()), f.partial_y());
  return g.is_constant();
}

NumericBiPoly::NumericBiPoly(const BiPoly& p) {
  for (const auto& [m, c] : p.terms()) {
    terms_.emplace_back(m, c.get_d());
    max_i_ = std::max(max_i_, m.first);
    max_j_ = std::max(max_j_, m.second);
  }
}

NumericBiPoly::NumericBiPoly(std::vector<std::pair<Monomial, std::complex<double>>> terms)
    : terms_(std::move(terms)) {
  for (const auto& [m, c] : terms_) {
    max_i_ = std::max(max_i_, m.first);
    max_j_ = std::max(max_j_, m.second);
  }
}

std::complex<double> NumericBiPoly::operator()(std::complex<double> x, std::complex<double> y) const {
  // Small stack caches for powers; degrees are desk-scale.
  std::vector<std::complex<double>> xp(max_i_ + 1), yp(max_j_ + 1);
  xp[0] = yp[0] = 1.0;
  for (unsigned k = 1; k <= max_i_; ++k) xp[k] = xp[k - 1] * x;
  for (unsigned k = 1; k <= max_j_; ++k) yp[k] = yp[k - 1] * y;
  std::complex<double> acc(0.0);
  for (const auto& [m, c] : terms_) acc += c * xp[m.first] * yp[m.second];
  return acc;
}

}  // namespace qhfol
