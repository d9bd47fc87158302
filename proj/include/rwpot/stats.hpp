#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rwpot {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t n = 0;
};

// Sample mean and standard error (unbiased variance / n). Sums in index order.
MeanSe mean_se(std::span<const double> values);

// Binomial proportion with its standard error sqrt(p(1-p)/n).
MeanSe proportion(std::size_t successes, std::size_t trials);

// One-sided standard normal quantile for common confidence levels
// (0.95, 0.975, 0.99, 0.995); other levels are computed by bisection on erfc.
double normal_quantile(double level);

// Least-squares line y = a + b x. Returns {a, b}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace rwpot
