#pragma once

#include <span>
#include <vector>

namespace dfra {

// Maximum-weight perfect matching on an n x n weight matrix (row-major).
// Returns col[row]. Deterministic: rows are processed in order and ties
// resolve toward low column indices, so an all-equal matrix yields identity.
std::vector<int> max_weight_assignment(std::span<const double> weights, int n);

}  // namespace dfra
