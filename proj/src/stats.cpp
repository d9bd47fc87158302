#include "rwpot/stats.hpp"

#include <cmath>

#include "rwpot/errors.hpp"
#include "rwpot/parallel.hpp"

namespace rwpot {

namespace {
int g_default_threads = 1;
}

int default_threads() { return g_default_threads; }
void set_default_threads(int threads) { g_default_threads = threads < 1 ? 1 : threads; }

MeanSe mean_se(std::span<const double> values) {
  MeanSe r;
  r.n = values.size();
  if (r.n == 0) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(r.n);
  if (r.n < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.se = std::sqrt(ss / static_cast<double>(r.n - 1) / static_cast<double>(r.n));
  return r;
}

MeanSe proportion(std::size_t successes, std::size_t trials) {
  MeanSe r;
  r.n = trials;
  if (trials == 0) return r;
  r.mean = static_cast<double>(successes) / static_cast<double>(trials);
  r.se = std::sqrt(r.mean * (1.0 - r.mean) / static_cast<double>(trials));
  return r;
}

double normal_quantile(double level) {
  if (!(level > 0.5 && level < 1.0)) throw DomainError("normal_quantile: level must lie in (0.5,1)");
  // Solve 0.5 * erfc(z / sqrt 2) = 1 - level.
  double lo = 0.0, hi = 40.0;
  const double target = 1.0 - level;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need two or more paired points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace rwpot
