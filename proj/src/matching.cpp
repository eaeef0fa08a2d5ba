#include "dfra/matching.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfra {

// Hungarian algorithm with potentials, O(n^3). Formulated as min-cost
// assignment on cost = -weights.
std::vector<int> max_weight_assignment(std::span<const double> weights, int n) {
  if (n < 1) throw std::invalid_argument("max_weight_assignment: n must be >= 1");
  if (weights.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("max_weight_assignment: weight matrix size mismatch");
  for (double w : weights)
    if (!std::isfinite(w)) throw std::invalid_argument("max_weight_assignment: non-finite weight");

  const double kInf = std::numeric_limits<double>::infinity();
  auto cost = [&](int i, int j) { return -weights[static_cast<std::size_t>(i) * n + j]; };

  // 1-based arrays with a sentinel row/column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[j] = row assigned to column j
  std::vector<int> way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> result(n, -1);
  for (int j = 1; j <= n; ++j) result[match[j] - 1] = j - 1;
  return result;
}

}  // namespace dfra
