#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "qhfol/rational.hpp"

namespace qhfol::detail {

using Exponents = std::array<unsigned, 2>;

/// Parses a signed sum of terms `c*v^i*w^j` over the variable letters in `vars`
/// (at most two). Repeated monomials are summed by the caller.
std::vector<std::pair<Exponents, Rat>> parse_terms(std::string_view text, std::string_view vars);

}  // namespace qhfol::detail
