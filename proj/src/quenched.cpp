#include "rwpot/quenched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rwpot/errors.hpp"
#include "rwpot/parallel.hpp"
#include "rwpot/random.hpp"
#include "rwpot/stats.hpp"

namespace rwpot {

namespace {

constexpr std::size_t kNoNeighbour = std::numeric_limits<std::size_t>::max();

void check_inputs(const PotentialField& omega, const Site& y, const TruncatedDomain& domain) {
  const Box& box = domain.box;
  if (!box.interior(y)) {
    throw DomainError("solve_e: target " + to_string(y, box.dim()) + " is not an interior site of the domain");
  }
  if (!omega.box.covers(box)) throw DomainError("solve_e: potential does not cover the domain");
  if (omega.box.dim() != box.dim()) throw DomainError("solve_e: dimension mismatch");
}

// Harmonicity residual in the linear domain.
double residual_of(const std::vector<double>& e, const std::vector<double>& coef,
                   const std::vector<std::size_t>& nbr, int d, std::size_t target) {
  double worst = 0.0;
  const std::size_t deg = 2 * static_cast<std::size_t>(d);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i == target) continue;
    double sum = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      const std::size_t j = nbr[i * deg + k];
      if (j != kNoNeighbour) sum += e[j];
    }
    worst = std::max(worst, std::abs(e[i] - coef[i] * sum));
  }
  return worst;
}

std::vector<std::size_t> neighbour_table(const Box& box) {
  const int d = box.dim();
  const std::size_t deg = 2 * static_cast<std::size_t>(d);
  std::vector<std::size_t> nbr(box.size() * deg, kNoNeighbour);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Site s = box.site(i);
    for (int a = 0; a < d; ++a) {
      if (s[a] > box.lo()[a]) nbr[i * deg + 2 * a] = i - box.stride(a);
      if (s[a] < box.hi()[a]) nbr[i * deg + 2 * a + 1] = i + box.stride(a);
    }
  }
  return nbr;
}

// d = 1: with r(x) = e(x)/e(x+1) left of y and s(x) = e(x)/e(x-1) right of y,
// r(lo) = c/2, r(x) = (c/2) / (1 - (c/2) r(x-1)), mirrored for s.
void solve_1d(const std::vector<double>& half_c, int lo, int hi, int y, std::vector<double>& log_e) {
  const auto at = [lo](int x) { return static_cast<std::size_t>(x - lo); };
  log_e[at(y)] = 0.0;
  std::vector<double> log_ratio(half_c.size(), 0.0);
  double r = 0.0;
  for (int x = lo; x < y; ++x) {
    const double h = half_c[at(x)];
    r = h / (1.0 - h * r);
    log_ratio[at(x)] = std::log(r);
  }
  double acc = 0.0;
  for (int x = y - 1; x >= lo; --x) {
    acc += log_ratio[at(x)];
    log_e[at(x)] = acc;
  }
  double s = 0.0;
  for (int x = hi; x > y; --x) {
    const double h = half_c[at(x)];
    s = h / (1.0 - h * s);
    log_ratio[at(x)] = std::log(s);
  }
  acc = 0.0;
  for (int x = y + 1; x <= hi; ++x) {
    acc += log_ratio[at(x)];
    log_e[at(x)] = acc;
  }
}

}  // namespace

TruncatedDomain TruncatedDomain::around(int d, const Site& source, const Site& target, int margin) {
  if (margin < 1) throw DomainError("truncated domain: margin must be >= 1");
  TruncatedDomain t;
  t.box = Box::around(d, source, target, margin);
  t.source = source;
  t.target = target;
  t.margin = margin;
  return t;
}

double TwoPointSolution::value(const Site& x) const {
  const double l = log_value(x);
  return l == -INFINITY ? 0.0 : std::exp(l);
}

TwoPointSolution solve_e(const PotentialField& omega, const Site& y, const TruncatedDomain& domain,
                         const SolveOptions& options) {
  check_inputs(omega, y, domain);
  const Box& box = domain.box;
  const int d = box.dim();
  const std::size_t n = box.size();
  const std::size_t target = box.index(y);

  std::vector<double> coef(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = omega.at(box.site(i));
    if (!(w >= 0.0)) throw DomainError("solve_e: potential must be >= 0 on the domain");
    coef[i] = std::exp(-w) / (2.0 * d);
  }
  const auto nbr = neighbour_table(box);

  TwoPointSolution sol;
  sol.box = box;
  sol.target = y;
  sol.log_e.assign(n, -INFINITY);

  if (d == 1) {
    solve_1d(coef, box.lo()[0], box.hi()[0], y[0], sol.log_e);
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(sol.log_e[i]);
    sol.residual = residual_of(e, coef, nbr, d, target);
    if (sol.residual > options.residual_tol) {
      throw NumericError("solve_e: d=1 elimination residual " + std::to_string(sol.residual));
    }
    return sol;
  }

  // Gauss-Seidel from zero increases monotonically to the solution. The
  // error after a sweep is estimated as delta * rho / (1 - rho), with rho the
  // observed contraction of the largest relative update.
  std::vector<double> e(n, 0.0);
  e[target] = 1.0;
  const std::size_t deg = 2 * static_cast<std::size_t>(d);
  double prev_delta = 0.0;
  int calm = 0;
  for (std::size_t sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == target) continue;
      double sum = 0.0;
      for (std::size_t k = 0; k < deg; ++k) {
        const std::size_t j = nbr[i * deg + k];
        if (j != kNoNeighbour) sum += e[j];
      }
      const double v = coef[i] * sum;
      if (v > 0.0) delta = std::max(delta, (v - e[i]) / v);
      e[i] = v;
    }
    sol.sweeps = sweep;
    const double rho = prev_delta > 0.0 ? delta / prev_delta : 1.0;
    prev_delta = delta;
    const bool small = delta == 0.0 || (rho < 1.0 && delta * rho / (1.0 - rho) < options.relative_tol);
    calm = small ? calm + 1 : 0;
    if (calm >= 2) {
      sol.residual = residual_of(e, coef, nbr, d, target);
      if (sol.residual <= options.residual_tol) break;
      calm = 0;
    }
    if (sweep == options.max_sweeps) {
      sol.residual = residual_of(e, coef, nbr, d, target);
      throw NumericError("solve_e: no convergence after " + std::to_string(sweep) +
                         " sweeps, residual " + std::to_string(sol.residual));
    }
  }
  for (std::size_t i = 0; i < n; ++i) sol.log_e[i] = e[i] > 0.0 ? std::log(e[i]) : -INFINITY;
  return sol;
}

CostEstimate travel_cost_quenched(const PotentialField& omega, const Site& x, const Site& y,
                                  const TruncatedDomain& domain, const SolveOptions& options) {
  const TruncatedDomain wide = domain.with_margin(2 * domain.margin);
  if (!domain.box.contains(x)) throw DomainError("travel_cost_quenched: source outside the domain");
  const auto cost = [&](const TruncatedDomain& dom, bool& infinite) {
    const double l = solve_e(omega, y, dom, options).log_value(x);
    infinite = !(l >= std::log(kUnderflowThreshold)) && dom.box.dim() > 1;
    return -l;
  };
  CostEstimate c;
  bool inf_L = false, inf_2L = false;
  c.value_at_L = cost(domain, inf_L);
  c.value_at_2L = cost(wide, inf_2L);
  c.value = c.value_at_L;
  c.infinite = inf_L;
  if (c.infinite) c.value = INFINITY;
  return c;
}

int alpha_margin(const AlphaOptions& options, int n, const Site& x, int d) {
  if (options.fixed_margin > 0) return options.fixed_margin;
  return std::max<int>(1, options.margin_factor * n * static_cast<int>(linf_norm(x, d)));
}

std::vector<AlphaPoint> alpha_estimate(const Distribution& phi, const Site& x, int d,
                                       const std::vector<int>& n_list, std::size_t samples,
                                       std::uint64_t seed, const AlphaOptions& options) {
  if (l1_norm(x, d) == 0) throw DomainError("alpha_estimate: direction must be nonzero");
  if (n_list.empty()) throw DomainError("alpha_estimate: empty n list");
  if (samples < 1) throw DomainError("alpha_estimate: need at least one sample");
  if (d == 1 && !std::isfinite(phi.mean())) {
    throw ModelAssumptionError("alpha_estimate: d=1 requires a finite-mean potential");
  }
  for (int n : n_list) {
    if (n < 1) throw DomainError("alpha_estimate: n must be >= 1");
  }
  const Site origin{};
  // The widest (2L) box over all n; every sample draws its field there once.
  Box hull;
  {
    Site lo{}, hi{};
    for (int n : n_list) {
      const Box b = TruncatedDomain::around(d, origin, scale(x, n), 2 * alpha_margin(options, n, x, d)).box;
      for (int i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], b.lo()[i]);
        hi[i] = std::max(hi[i], b.hi()[i]);
      }
    }
    hull = Box(d, lo, hi);
  }
  const bool deterministic = phi.is_step() && phi.jump_points().size() == 1;
  const std::size_t runs = deterministic ? 1 : samples;

  struct Row {
    std::vector<double> at_L, at_2L;
    std::vector<char> infinite;
  };
  const auto rows = parallel_map<Row>(runs, options.threads, [&](std::size_t s) {
    const PotentialField omega = realize(sample_uniform_field(hull, derive_seed(seed, s)), phi);
    Row row;
    for (int n : n_list) {
      const auto dom = TruncatedDomain::around(d, origin, scale(x, n), alpha_margin(options, n, x, d));
      const CostEstimate c = travel_cost_quenched(omega, origin, scale(x, n), dom, options.solve);
      row.at_L.push_back(c.value_at_L / n);
      row.at_2L.push_back(c.value_at_2L / n);
      row.infinite.push_back(c.infinite ? 1 : 0);
    }
    return row;
  });

  const double norm1 = static_cast<double>(l1_norm(x, d));
  const double lower = -std::log(phi.laplace(1.0));
  const double upper = std::log(2.0 * d) + phi.mean();
  std::vector<AlphaPoint> out;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    std::vector<double> vL, v2L;
    bool any_inf = false;
    for (const Row& r : rows) {
      vL.push_back(r.at_L[k]);
      v2L.push_back(r.at_2L[k]);
      any_inf = any_inf || r.infinite[k];
    }
    AlphaPoint p;
    p.n = n_list[k];
    const MeanSe m = mean_se(vL);
    p.per_step.n_samples = runs;
    p.per_step.value_at_L = m.mean;
    p.per_step.value_at_2L = mean_se(v2L).mean;
    p.per_step.infinite = any_inf;
    p.per_step.value = any_inf ? INFINITY : m.mean;
    p.per_step.std_error = runs > 1 ? m.se : 0.0;
    p.lower_bound = lower;
    p.upper_bound = upper;
    const double per_unit = p.per_step.value / norm1;
    const double tol = 3.0 * p.per_step.std_error / norm1 + 1e-9;
    p.sandwich_ok = per_unit >= lower - tol && per_unit <= upper + tol;
    out.push_back(p);
  }
  return out;
}

}  // namespace rwpot
