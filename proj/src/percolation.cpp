#include "rwpot/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rwpot/errors.hpp"
#include "rwpot/parallel.hpp"
#include "rwpot/quenched.hpp"
#include "rwpot/random.hpp"
#include "rwpot/stats.hpp"

namespace rwpot {

PercolationConfig PercolationConfig::from_field(const PotentialField& omega, double M) {
  if (!(M >= 0.0)) throw DomainError("percolation: threshold M must be >= 0");
  PercolationConfig c;
  c.box = omega.box;
  c.M = M;
  c.open.resize(omega.values.size());
  for (std::size_t i = 0; i < omega.values.size(); ++i) c.open[i] = omega.values[i] <= M;
  return c;
}

PercolationConfig PercolationConfig::from_open(const Box& box, std::vector<char> open) {
  if (open.size() != box.size()) throw DomainError("percolation: open map size does not match its box");
  PercolationConfig c;
  c.box = box;
  c.open = std::move(open);
  return c;
}

Clusters clusters(const PercolationConfig& config) {
  const Box& box = config.box;
  const int d = box.dim();
  Clusters cl;
  cl.label.assign(box.size(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < box.size(); ++start) {
    if (!config.open[start] || cl.label[start] >= 0) continue;
    const int id = static_cast<int>(cl.sizes.size());
    cl.sizes.push_back(0);
    cl.label[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      ++cl.sizes[id];
      for_each_neighbour(box.site(i), d, [&](const Site& t) {
        if (!box.contains(t)) return;
        const std::size_t j = box.index(t);
        if (config.open[j] && cl.label[j] < 0) {
          cl.label[j] = id;
          queue.push_back(j);
        }
      });
    }
  }
  for (std::size_t k = 0; k < cl.sizes.size(); ++k) {
    if (cl.largest < 0 || cl.sizes[k] > cl.sizes[cl.largest]) cl.largest = static_cast<int>(k);
  }
  return cl;
}

std::optional<long> chemical_distance(const PercolationConfig& config, const Site& u, const Site& v) {
  if (!config.is_open(u) || !config.is_open(v)) return std::nullopt;
  const Box& box = config.box;
  const std::size_t target = box.index(v);
  std::vector<long> dist(box.size(), -1);
  std::deque<std::size_t> queue{box.index(u)};
  dist[queue.front()] = 0;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (i == target) return dist[i];
    for_each_neighbour(box.site(i), box.dim(), [&](const Site& t) {
      if (!box.contains(t)) return;
      const std::size_t j = box.index(t);
      if (config.open[j] && dist[j] < 0) {
        dist[j] = dist[i] + 1;
        queue.push_back(j);
      }
    });
  }
  return std::nullopt;
}

Site project_to_giant(const PercolationConfig& config, const Clusters& cl, const Site& z) {
  if (cl.largest < 0) throw DomainError("project_to_giant: no open site");
  const Box& box = config.box;
  long best = -1;
  Site best_site{};
  // Index order is lexicographic, so the first minimiser wins ties.
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (cl.label[i] != cl.largest) continue;
    const Site s = box.site(i);
    const long dd = l1_distance(s, z, box.dim());
    if (best < 0 || dd < best) {
      best = dd;
      best_site = s;
    }
  }
  return best_site;
}

bool spans_box(const PercolationConfig& config, const Clusters& cl, int label) {
  const Box& box = config.box;
  const int d = box.dim();
  std::vector<char> low(d, 0), high(d, 0);
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (cl.label[i] != label) continue;
    const Site s = box.site(i);
    for (int a = 0; a < d; ++a) {
      if (s[a] == box.lo()[a]) low[a] = 1;
      if (s[a] == box.hi()[a]) high[a] = 1;
    }
  }
  for (int a = 0; a < d; ++a) {
    if (!low[a] || !high[a]) return false;
  }
  return true;
}

namespace {

Box percolation_box(const Site& y, int d, int n, const MuOptions& options) {
  return Box::around(d, Site{}, scale(y, n), std::max(1, options.margin_factor * n));
}

void check_mu_inputs(const Distribution& phi, double M, int d, const MuOptions& options) {
  if (d < 2) throw DomainError("mu_estimate: percolation norms need d >= 2");
  if (phi.cdf(M) < options.guard) {
    throw PreconditionError("mu_estimate: phi(M) = " + std::to_string(phi.cdf(M)) + " is below the guard " +
                            std::to_string(options.guard));
  }
}

}  // namespace

std::vector<MuPoint> mu_estimate(const Distribution& phi, double M, const Site& y, int d,
                                 const std::vector<int>& n_list, std::size_t samples, std::uint64_t seed,
                                 const MuOptions& options) {
  check_mu_inputs(phi, M, d, options);
  if (l1_norm(y, d) == 0) throw DomainError("mu_estimate: direction must be nonzero");
  if (samples < 1) throw DomainError("mu_estimate: need at least one sample");
  std::vector<MuPoint> out;
  for (int n : n_list) {
    if (n < 1) throw DomainError("mu_estimate: n must be >= 1");
    const Box box = percolation_box(y, d, n, options);
    struct Row {
      double dist = 0.0;
      bool spanning = true;
    };
    const auto rows = parallel_map<Row>(samples, options.threads, [&](std::size_t s) {
      const auto config = PercolationConfig::from_field(realize(sample_uniform_field(box, derive_seed(seed, s)), phi), M);
      const Clusters cl = clusters(config);
      Row r;
      r.spanning = cl.largest >= 0 && spans_box(config, cl, cl.largest);
      if (cl.largest >= 0) {
        const Site a = project_to_giant(config, cl, Site{});
        const Site b = project_to_giant(config, cl, scale(y, n));
        r.dist = static_cast<double>(*chemical_distance(config, a, b));
      }
      return r;
    });
    std::vector<double> vals;
    std::size_t non_spanning = 0;
    for (const Row& r : rows) {
      vals.push_back(r.dist / n);
      non_spanning += r.spanning ? 0 : 1;
    }
    const MeanSe m = mean_se(vals);
    MuPoint p;
    p.n = n;
    p.mu_hat = m.mean;
    p.std_error = samples > 1 ? m.se : 0.0;
    p.samples = samples;
    p.unreachable_fraction = static_cast<double>(non_spanning) / static_cast<double>(samples);
    if (p.unreachable_fraction > 0.5) p.warning = "largest cluster fails to span in over half the samples";
    out.push_back(p);
  }
  return out;
}

ChainCheck chain_check(const Distribution& phi, double M, double lambda, const Site& y, int d, int n,
                       std::size_t samples, std::uint64_t seed, const MuOptions& options) {
  check_mu_inputs(phi, M, d, options);
  if (!(lambda >= 0.0)) throw DomainError("chain_check: lambda must be >= 0");
  const Site target = scale(y, n);
  const int margin = std::max(1, options.margin_factor * n);
  const auto dom = TruncatedDomain::around(d, Site{}, target, margin);
  const Box wide = dom.with_margin(2 * margin).box;
  const Distribution shifted = shift_by(phi, lambda);
  struct Row {
    bool checked = false;
    double ratio = 0.0;
  };
  const auto rows = parallel_map<Row>(samples, options.threads, [&](std::size_t s) {
    const UniformField U = sample_uniform_field(wide, derive_seed(seed, s));
    const PotentialField omega = realize(U, phi);
    PercolationConfig config = PercolationConfig::from_field(omega, M);
    // Restrict the percolation to the solve domain.
    std::vector<char> open(dom.box.size());
    for (std::size_t i = 0; i < open.size(); ++i) open[i] = config.is_open(dom.box.site(i));
    config = PercolationConfig::from_open(dom.box, std::move(open));
    config.M = M;
    const Clusters cl = clusters(config);
    Row r;
    if (cl.largest < 0) return r;
    const int g0 = cl.label[dom.box.index(Site{})], g1 = cl.label[dom.box.index(target)];
    if (g0 != cl.largest || g1 != cl.largest) return r;
    r.checked = true;
    const double dM = static_cast<double>(*chemical_distance(config, Site{}, target));
    const double a = -solve_e(realize(U, shifted), target, dom).log_value(Site{});
    r.ratio = a / (dM * (lambda + std::log(2.0 * d) + M));
    return r;
  });
  ChainCheck out;
  for (const Row& r : rows) {
    if (!r.checked) continue;
    ++out.checked;
    out.max_ratio = std::max(out.max_ratio, r.ratio);
    if (r.ratio > 1.0 + 1e-12) ++out.violations;
  }
  return out;
}

}  // namespace rwpot
