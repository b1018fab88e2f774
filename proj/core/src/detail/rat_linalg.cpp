#include "detail/rat_linalg.hpp"

namespace qhfol::detail {
namespace {

struct Echelon {
  RatMatrix m;  // augmented [A | b], reduced row echelon form
  std::vector<std::size_t> pivots;
  bool consistent = true;
};

Echelon rref(const RatMatrix& A, const std::vector<Rat>& b) {
  Echelon e;
  e.m = RatMatrix(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) e.m(i, j) = A(i, j);
    e.m(i, A.cols) = b[i];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
    std::size_t p = row;
    while (p < A.rows && e.m(p, col) == 0) ++p;
    if (p == A.rows) continue;
    if (p != row)
      for (std::size_t j = 0; j <= A.cols; ++j) std::swap(e.m(p, j), e.m(row, j));
    const Rat inv = Rat(1) / e.m(row, col);
    for (std::size_t j = col; j <= A.cols; ++j) e.m(row, j) *= inv;
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == row || e.m(i, col) == 0) continue;
      const Rat f = e.m(i, col);
      for (std::size_t j = col; j <= A.cols; ++j) e.m(i, j) -= f * e.m(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < A.rows; ++i)
    if (e.m(i, A.cols) != 0) e.consistent = false;
  return e;
}

}  // namespace

std::optional<std::vector<Rat>> solve_particular(const RatMatrix& A, const std::vector<Rat>& b) {
  Echelon e = rref(A, b);
  if (!e.consistent) return std::nullopt;
  std::vector<Rat> x(A.cols);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.m(r, A.cols);
  return x;
}

std::optional<std::vector<Rat>> solve_min_norm(const RatMatrix& A, const std::vector<Rat>& b) {
  Echelon e = rref(A, b);
  if (!e.consistent) return std::nullopt;
  const std::size_t r = e.pivots.size();
  if (r == 0) return std::vector<Rat>(A.cols);
  // R x = c with R full row rank: x = R^T (R R^T)^{-1} c.
  RatMatrix G(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      Rat s(0);
      for (std::size_t j = 0; j < A.cols; ++j) s += e.m(i, j) * e.m(k, j);
      G(i, k) = s;
    }
  std::vector<Rat> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = e.m(i, A.cols);
  auto y = solve_particular(G, c);
  std::vector<Rat> x(A.cols);
  for (std::size_t j = 0; j < A.cols; ++j)
    for (std::size_t i = 0; i < r; ++i) x[j] += e.m(i, j) * (*y)[i];
  return x;
}

}  // namespace qhfol::detail
