#pragma once

#include <span>
#include <vector>

namespace dfra {

struct WaterfillResult {
  std::vector<double> powers;
  double level = 0.0;  // theta; powers[i] = max(0, theta - 1/gains[i])
};

// Maximizes sum_i 0.5*log2(1 + p_i g_i) subject to sum p_i = budget, p_i >= 0.
// Zero-gain entries receive zero power. The water level is found exactly by
// sorted breakpoint search.
WaterfillResult waterfill_detailed(std::span<const double> gains, double budget);
std::vector<double> waterfill(std::span<const double> gains, double budget);

// Reusable scratch buffers for hot loops (the oracle evaluates millions of
// configurations).
class Waterfiller {
 public:
  // Achieved rate only.
  double rate(std::span<const double> gains, double budget);

 private:
  std::vector<double> inv_;
};

}  // namespace dfra
