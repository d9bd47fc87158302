#include "rwpot/rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rwpot/errors.hpp"
#include "rwpot/random.hpp"

namespace rwpot {

namespace {

double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

double log_mean_exp(const std::vector<double>& v) {
  double acc = -INFINITY;
  for (double x : v) acc = log_add(acc, x);
  return acc - std::log(static_cast<double>(v.size()));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Piecewise-linear interpolant through (lambda_i, f_i), constant beyond the ends.
double interpolate(const std::vector<CurvePoint>& pts, const std::vector<double>& f, double lambda) {
  if (lambda <= pts.front().lambda) return f.front();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (lambda <= pts[i].lambda) {
      const double t = (lambda - pts[i - 1].lambda) / (pts[i].lambda - pts[i - 1].lambda);
      return f[i - 1] + t * (f[i] - f[i - 1]);
    }
  }
  return f.back();
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::Quenched ? "quenched" : "annealed"; }

Mode parse_mode(const std::string& name) {
  if (name == "quenched") return Mode::Quenched;
  if (name == "annealed") return Mode::Annealed;
  throw DomainError("unknown mode '" + name + "' (quenched | annealed)");
}

double lambda_max(double bracket_bound, double l1) {
  if (!(l1 < 1.0)) return INFINITY;
  return l1 * bracket_bound / (1.0 - l1);
}

std::vector<double> lambda_grid(double lambda_max, int points, double ratio_span) {
  if (points < 3) throw DomainError("lambda_grid: need at least 3 points");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw DomainError("lambda_grid: lambda_max must be finite and > 0");
  std::vector<double> grid{0.0};
  const int geometric = points - 1;
  const double r = std::pow(ratio_span, 1.0 / (geometric - 1));
  for (int k = 1; k <= geometric; ++k) grid.push_back(lambda_max * std::pow(r, -(geometric - k)));
  grid.back() = lambda_max;
  return grid;
}

LyapunovCurve lyapunov_curve(const Distribution& phi, const Site& x, int d, const std::vector<double>& grid,
                             Mode mode, std::uint64_t seed, const CurveConfig& config) {
  if (l1_norm(x, d) == 0) throw DomainError("lyapunov_curve: direction must be nonzero");
  if (grid.empty()) throw DomainError("lyapunov_curve: empty lambda grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw DomainError("lyapunov_curve: lambda must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("lyapunov_curve: grid must increase strictly");
  }
  LyapunovCurve curve;
  curve.x = x;
  curve.d = d;
  curve.mode = mode;
  curve.spec_id = phi.id();
  curve.bracket_bound = mode == Mode::Quenched ? std::log(2.0 * d) + phi.mean()
                                               : std::log(2.0 * d) - phi.log_laplace(1.0);
  curve.neg_log_laplace1 = -phi.log_laplace(1.0);
  std::vector<Distribution> shifted;
  for (double l : grid) shifted.push_back(shift_by(phi, l));

  if (mode == Mode::Quenched) {
    // The same seed couples all shifts: omega + lambda on one uniform field.
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto pts = alpha_estimate(shifted[i], x, d, config.n_list, config.samples, seed, config.alpha);
      const CostEstimate& c = pts.back().per_step;
      curve.points.push_back({grid[i], c.value, c.std_error});
    }
  } else {
    BetaConfig bc = config.beta;
    bc.samples = config.samples;
    const auto seqs = beta_upper_sequence_multi(shifted, x, d, config.n_list, seed, bc);
    for (std::size_t i = 0; i < grid.size(); ++i) curve.points.push_back({grid[i], seqs[i].beta_hat, seqs[i].beta_se});
  }
  curve.warnings = check_curve(curve);
  return curve;
}

std::vector<std::string> check_curve(const LyapunovCurve& c) {
  std::vector<std::string> w;
  const auto& p = c.points;
  const double l1 = static_cast<double>(l1_norm(c.x, c.d));
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double tol = 3.0 * std::hypot(p[i].std_error, p[i - 1].std_error) + 1e-9;
    if (p[i].value < p[i - 1].value - tol) w.push_back("decrease between lambda=" + fmt(p[i - 1].lambda) + " and " + fmt(p[i].lambda));
  }
  for (const auto& q : p) {
    const double tol = 3.0 * q.std_error + 1e-6 * (1.0 + q.value);
    if (q.value < l1 * (q.lambda + c.neg_log_laplace1) - tol) w.push_back("below the sandwich at lambda=" + fmt(q.lambda));
    if (q.value > l1 * (q.lambda + c.bracket_bound) + tol) w.push_back("above the sandwich at lambda=" + fmt(q.lambda));
  }
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double h1 = p[i].lambda - p[i - 1].lambda, h2 = p[i + 1].lambda - p[i].lambda;
    const double s1 = (p[i].value - p[i - 1].value) / h1, s2 = (p[i + 1].value - p[i].value) / h2;
    const double sig1 = std::hypot(p[i].std_error, p[i - 1].std_error) / h1;
    const double sig2 = std::hypot(p[i + 1].std_error, p[i].std_error) / h2;
    if (s2 > s1 + 3.0 * (sig1 + sig2) + 1e-6 * (1.0 + std::abs(s1))) {
      w.push_back("concavity violated at lambda=" + fmt(p[i].lambda));
    }
  }
  return w;
}

std::vector<double> concave_fit(const std::vector<CurvePoint>& points) {
  const std::size_t n = points.size();
  std::vector<double> v(n), w(n, 1.0);
  double max_w = 0.0;
  bool any_se = false;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = points[i].value;
    if (points[i].std_error > 0.0) {
      any_se = true;
      w[i] = 1.0 / (points[i].std_error * points[i].std_error);
      max_w = std::max(max_w, w[i]);
    }
  }
  if (any_se) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(points[i].std_error > 0.0)) w[i] = 1e12 * max_w;
    }
  }
  if (n < 3) return v;

  // Constraint i (interior): a . f <= 0 with a supported on i-1, i, i+1.
  const std::size_t m = n - 2;
  std::vector<std::array<double, 3>> a(m);
  std::vector<double> denom(m);
  for (std::size_t c = 0; c < m; ++c) {
    const double h1 = points[c + 1].lambda - points[c].lambda;
    const double h2 = points[c + 2].lambda - points[c + 1].lambda;
    a[c] = {1.0 / h1, -(1.0 / h1 + 1.0 / h2), 1.0 / h2};
    denom[c] = a[c][0] * a[c][0] / w[c] + a[c][1] * a[c][1] / w[c + 1] + a[c][2] * a[c][2] / w[c + 2];
  }
  std::vector<double> f = v;
  std::vector<std::array<double, 3>> incr(m, {0.0, 0.0, 0.0});
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double tol = 1e-14 * (1.0 + scale);
  for (int cycle = 0; cycle < 200000; ++cycle) {
    double change = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      std::array<double, 3> y;
      for (int k = 0; k < 3; ++k) y[k] = f[c + k] + incr[c][k];
      const double viol = a[c][0] * y[0] + a[c][1] * y[1] + a[c][2] * y[2];
      const double t = viol > 0.0 ? viol / denom[c] : 0.0;
      for (int k = 0; k < 3; ++k) {
        const double proj = y[k] - t * a[c][k] / w[c + k];
        incr[c][k] = y[k] - proj;
        change = std::max(change, std::abs(proj - f[c + k]));
        f[c + k] = proj;
      }
    }
    if (change < tol) break;
  }
  return f;
}

RateResult rate_function(const LyapunovCurve& curve, double scale) {
  RateResult r;
  const double l1 = std::abs(scale) * static_cast<double>(l1_norm(curve.x, curve.d));
  if (l1 == 0.0) return r;
  if (l1 > 1.0 + 1e-12) {
    r.flag = RateFlag::Infinite;
    r.value = INFINITY;
    return r;
  }
  if (l1 >= 1.0 - 1e-12) {
    r.flag = RateFlag::Unknown;
    r.value = NAN;
    return r;
  }
  if (curve.points.empty() || curve.points.front().lambda != 0.0) {
    throw CoverageError("rate_function: curve must start at lambda = 0");
  }
  const double lmax = lambda_max(curve.bracket_bound, l1);
  if (curve.points.back().lambda < lmax * (1.0 - 1e-9)) {
    throw CoverageError("rate_function: curve ends at lambda=" + fmt(curve.points.back().lambda) +
                        " before lambda_max=" + fmt(lmax));
  }
  const double s = std::abs(scale);
  const auto fitted = concave_fit(curve.points);
  const auto& pts = curve.points;
  auto g = [&](double lambda) { return s * interpolate(pts, fitted, lambda) - lambda; };
  std::size_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (g(pts[i].lambda) > g(pts[best].lambda)) best = i;
  }
  // Golden-section refinement on the neighbouring segments.
  double lo = pts[best == 0 ? 0 : best - 1].lambda;
  double hi = pts[std::min(best + 1, pts.size() - 1)].lambda;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = hi - phi * (hi - lo), c2 = lo + phi * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    if (g(c1) < g(c2)) {
      lo = c1;
      c1 = c2;
      c2 = lo + phi * (hi - lo);
    } else {
      hi = c2;
      c2 = c1;
      c1 = hi - phi * (hi - lo);
    }
  }
  const double mid = 0.5 * (lo + hi);
  r.argmax_lambda = g(mid) > g(pts[best].lambda) ? mid : pts[best].lambda;
  r.value = std::max(0.0, g(r.argmax_lambda));
  return r;
}

double lambda_star(const LyapunovCurve& curve, double scale) {
  const auto& p = curve.points;
  if (p.size() < 2) throw DomainError("lambda_star: need at least two points");
  const double s = std::abs(scale);
  // Upper hull (least concave majorant) by a monotone chain.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (hull.size() >= 2) {
      const auto& A = p[hull[hull.size() - 2]];
      const auto& B = p[hull.back()];
      const double cross = (B.lambda - A.lambda) * (s * p[i].value - s * A.value) -
                           (s * B.value - s * A.value) * (p[i].lambda - A.lambda);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const auto& A = p[hull[k]];
    const auto& B = p[hull[k + 1]];
    const double slope = s * (B.value - A.value) / (B.lambda - A.lambda);
    if (slope <= 1.0) return A.lambda;
  }
  return INFINITY;
}

KmSpeed km_speed(const LyapunovCurve& curve) {
  if (curve.d != 1 || l1_norm(curve.x, 1) != 1) throw DomainError("km_speed: needs a d=1 curve at a unit vector");
  const auto& p = curve.points;
  if (p.size() < 3) throw DomainError("km_speed: need at least three points");
  KmSpeed out;
  out.slope = (p[1].value - p[0].value) / (p[1].lambda - p[0].lambda);
  const double next = (p[2].value - p[1].value) / (p[2].lambda - p[1].lambda);
  if (!(out.slope > 0.0)) throw NumericError("km_speed: initial slope " + fmt(out.slope) + " is not positive");
  out.v = 1.0 / out.slope;
  out.diverging = out.slope > 1.5 * next;
  return out;
}

std::vector<double> endpoint_log_distribution(const PotentialField& omega, int n) {
  if (omega.box.dim() != 1) throw DomainError("endpoint_distribution: d must be 1");
  if (n < 0) throw DomainError("endpoint_distribution: n must be >= 0");
  if (!omega.box.contains(make_site({-n})) || !omega.box.contains(make_site({n}))) {
    throw DomainError("endpoint_distribution: field must cover [-n, n]");
  }
  const std::size_t width = 2 * static_cast<std::size_t>(n) + 1;
  std::vector<double> killed(width);
  for (int z = -n; z <= n; ++z) killed[z + n] = -omega.at(make_site({z})) - std::log(2.0);
  std::vector<double> u(width, -INFINITY), next(width);
  u[n] = 0.0;
  for (int k = 0; k < n; ++k) {
    std::fill(next.begin(), next.end(), -INFINITY);
    for (std::size_t z = 0; z < width; ++z) {
      if (u[z] == -INFINITY) continue;
      const double w = u[z] + killed[z];
      if (z > 0) next[z - 1] = log_add(next[z - 1], w);
      if (z + 1 < width) next[z + 1] = log_add(next[z + 1], w);
    }
    u.swap(next);
  }
  return u;  // unnormalized
}

std::vector<double> endpoint_distribution(const PotentialField& omega, int n) {
  auto u = endpoint_log_distribution(omega, n);
  double z = -INFINITY;
  for (double l : u) z = log_add(z, l);
  for (double& l : u) l = l == -INFINITY ? 0.0 : std::exp(l - z);
  return u;
}

namespace {

struct Target {
  int m = 0;
  bool adjusted = false;
};

Target feasible_target(int n, double x) {
  if (n < 1 || n > 256) throw DomainError("ldp_dp_check: n must be in [1, 256]");
  if (!(std::abs(x) < 1.0)) throw DomainError("ldp_dp_check: |x| must be < 1");
  Target t;
  t.m = static_cast<int>(std::lround(n * x));
  if ((n + t.m) % 2 != 0) {
    // Nearest m of the right parity; ties go toward the origin.
    const int up = t.m + 1, down = t.m - 1;
    const double du = std::abs(up - n * x), dd = std::abs(down - n * x);
    t.m = du < dd ? up : (dd < du ? down : (std::abs(up) < std::abs(down) ? up : down));
    t.adjusted = true;
  }
  return t;
}

double log_total(const std::vector<double>& u) {
  double z = -INFINITY;
  for (double l : u) z = log_add(z, l);
  return z;
}

}  // namespace

LdpCheck ldp_dp_check(const PotentialField& omega, int n, double x) {
  const Target t = feasible_target(n, x);
  const auto u = endpoint_log_distribution(omega, n);
  LdpCheck out;
  out.n = n;
  out.m = t.m;
  out.parity_adjusted = t.adjusted;
  out.value = -(u[t.m + n] - log_total(u)) / n;
  if (t.adjusted) out.warning = "target moved to m=" + std::to_string(t.m) + " for parity";
  return out;
}

LdpCheck ldp_dp_check(const Distribution& phi, int n, double x, Mode mode, std::uint64_t seed,
                      std::size_t samples) {
  const Target t = feasible_target(n, x);
  const Box box(1, make_site({-n}), make_site({n}));
  if (mode == Mode::Quenched) {
    return ldp_dp_check(realize(sample_uniform_field(box, derive_seed(seed, 0)), phi), n, x);
  }
  if (samples < 1) throw DomainError("ldp_dp_check: need at least one sample");
  std::vector<double> num, part;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto u = endpoint_log_distribution(realize(sample_uniform_field(box, derive_seed(seed, s)), phi), n);
    num.push_back(u[t.m + n]);
    part.push_back(log_total(u));
  }
  LdpCheck out;
  out.n = n;
  out.m = t.m;
  out.parity_adjusted = t.adjusted;
  out.value = -(log_mean_exp(num) - log_mean_exp(part)) / n;
  if (t.adjusted) out.warning = "target moved to m=" + std::to_string(t.m) + " for parity";
  if (phi.support_min() > 0.0) {
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "essinf omega > 0: no LDP interpretation";
  }
  return out;
}

}  // namespace rwpot
