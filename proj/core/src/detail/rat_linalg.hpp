#pragma once

#include <optional>
#include <vector>

#include "qhfol/rational.hpp"

namespace qhfol::detail {

/// Row-major dense matrix over Q.
struct RatMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Rat> data;

  RatMatrix() = default;
  RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rat& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Solution of A x = b with every free variable set to zero (pivots chosen left to right),
/// or nullopt when the system is inconsistent.
std::optional<std::vector<Rat>> solve_particular(const RatMatrix& A, const std::vector<Rat>& b);

/// Minimal Euclidean-norm solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_min_norm(const RatMatrix& A, const std::vector<Rat>& b);

}  // namespace qhfol::detail
