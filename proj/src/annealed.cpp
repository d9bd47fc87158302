#include "rwpot/annealed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "rwpot/errors.hpp"
#include "rwpot/field.hpp"
#include "rwpot/parallel.hpp"
#include "rwpot/random.hpp"
#include "rwpot/stats.hpp"
#include "rwpot/walk.hpp"

namespace rwpot {

namespace {

// b = -log mean(exp(l_i)) with the delta-method standard error, computed
// relative to the largest log weight.
struct LogMean {
  double b = INFINITY;
  double se = 0.0;
  double mean = 0.0;
  bool infinite = true;
};

LogMean log_mean(const std::vector<double>& logs) {
  LogMean out;
  double top = -INFINITY;
  for (double l : logs) top = std::max(top, l);
  if (top == -INFINITY) return out;
  std::vector<double> w(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) w[i] = std::exp(logs[i] - top);
  const MeanSe m = mean_se(w);
  out.b = -(top + std::log(m.mean));
  out.se = logs.size() > 1 ? m.se / m.mean : 0.0;
  out.mean = std::exp(-out.b);
  out.infinite = false;
  return out;
}

// Visit counts of one trace; dense in d = 1, hashed otherwise.
class VisitCounter {
 public:
  VisitCounter(int d, std::size_t cap) : d_(d), offset_(static_cast<long>(cap)) {
    if (d == 1) dense_.assign(2 * cap + 1, 0);
  }
  std::uint32_t bump(const Site& s) {
    if (d_ == 1) {
      const std::size_t i = static_cast<std::size_t>(s[0] + offset_);
      if (dense_[i] == 0) touched_.push_back(i);
      return ++dense_[i];
    }
    return ++sparse_[s];
  }
  void reset() {
    for (std::size_t i : touched_) dense_[i] = 0;
    touched_.clear();
    sparse_.clear();
  }

 private:
  int d_;
  long offset_;
  std::vector<std::uint32_t> dense_;
  std::vector<std::size_t> touched_;
  std::unordered_map<Site, std::uint32_t, SiteHash> sparse_;
};

// log L(k) for k = 0, 1, ..., extended on demand.
class LogLaplaceTable {
 public:
  explicit LogLaplaceTable(const Distribution& phi) : phi_(&phi), values_{0.0} {}
  double operator()(std::uint32_t k) {
    while (values_.size() <= k) values_.push_back(phi_->log_laplace(static_cast<double>(values_.size())));
    return values_[k];
  }

 private:
  const Distribution* phi_;
  std::vector<double> values_;
};

struct TraceScore {
  std::vector<double> log_w;  // per spec; -inf for 0
  bool capped = false;
  bool floored = false;
};

}  // namespace

std::string to_string(AnnealedEstimator e) { return e == AnnealedEstimator::WalkMc ? "walk_mc" : "potential_mc"; }

AnnealedEstimator parse_estimator(const std::string& name) {
  if (name == "walk_mc") return AnnealedEstimator::WalkMc;
  if (name == "potential_mc") return AnnealedEstimator::PotentialMc;
  throw DomainError("unknown estimator '" + name + "' (walk_mc | potential_mc)");
}

std::size_t default_walk_cap(const Site& y, int d) {
  const auto n = static_cast<std::size_t>(linf_norm(y, d));
  return std::max<std::size_t>(64, 64 * n * n);
}

std::vector<AnnealedEstimate> b_walk_mc_multi(const std::vector<Distribution>& phis, const Site& y, int d,
                                              std::size_t samples, std::size_t cap, std::uint64_t seed,
                                              const WalkMcOptions& options) {
  const long dist = l1_norm(y, d);
  if (dist == 0) throw DomainError("b_walk_mc: target must differ from the origin");
  if (cap < static_cast<std::size_t>(dist)) throw DomainError("b_walk_mc: cap T must be >= |y|_1");
  if (samples < 1) throw DomainError("b_walk_mc: need at least one sample");
  if (phis.empty()) throw DomainError("b_walk_mc: no specs");
  const std::size_t m = phis.size();

  std::vector<double> log_floor(m, -INFINITY);
  if (options.floor_rel > 0.0) {
    for (std::size_t j = 0; j < m; ++j) {
      const double log_m0 = static_cast<double>(dist) * (phis[j].log_laplace(1.0) - std::log(2.0 * d));
      log_floor[j] = log_m0 + std::log(options.floor_rel);
    }
  }

  // Fixed chunks keep results independent of the worker count.
  const std::size_t chunks = std::min<std::size_t>(samples, 256);
  const auto parts = parallel_map<std::vector<TraceScore>>(chunks, options.threads, [&](std::size_t c) {
    const std::size_t begin = c * samples / chunks, end = (c + 1) * samples / chunks;
    VisitCounter counts(d, cap);
    std::vector<LogLaplaceTable> tables;
    for (const auto& phi : phis) tables.emplace_back(phi);
    std::vector<TraceScore> out;
    for (std::size_t i = begin; i < end; ++i) {
      TraceScore score;
      score.log_w.assign(m, 0.0);
      Walker walker(Site{}, d, derive_seed(seed, i));
      bool hit = false;
      for (std::size_t k = 0; k < cap; ++k) {
        // S_k is visited before H(y) because it is not y.
        const std::uint32_t c_new = counts.bump(walker.position());
        bool all_floored = true;
        for (std::size_t j = 0; j < m; ++j) {
          score.log_w[j] += tables[j](c_new) - tables[j](c_new - 1);
          if (!(score.log_w[j] < log_floor[j])) all_floored = false;
        }
        if (all_floored) {
          score.floored = true;
          break;
        }
        walker.step();
        if (walker.position() == y) {
          hit = true;
          break;
        }
      }
      counts.reset();
      if (!hit) {
        score.capped = !score.floored;
        score.log_w.assign(m, -INFINITY);
      }
      out.push_back(std::move(score));
    }
    return out;
  });

  std::vector<AnnealedEstimate> out(m);
  std::size_t capped = 0, floored = 0;
  std::vector<std::vector<double>> logs(m);
  for (const auto& part : parts) {
    for (const auto& s : part) {
      capped += s.capped;
      floored += s.floored;
      for (std::size_t j = 0; j < m; ++j) logs[j].push_back(s.log_w[j]);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    const LogMean lm = log_mean(logs[j]);
    AnnealedEstimate& a = out[j];
    a.estimator = AnnealedEstimator::WalkMc;
    a.cap = cap;
    a.cost.n_samples = samples;
    a.cost.infinite = lm.infinite;
    a.cost.value = lm.b;
    a.cost.std_error = lm.se;
    a.cost.value_at_L = a.cost.value_at_2L = lm.b;
    a.cost.capped_fraction = static_cast<double>(capped) / static_cast<double>(samples);
    a.floored_fraction = static_cast<double>(floored) / static_cast<double>(samples);
    a.mean_e = lm.mean;
  }
  return out;
}

AnnealedEstimate b_walk_mc(const Distribution& phi, const Site& y, int d, std::size_t samples, std::size_t cap,
                           std::uint64_t seed, const WalkMcOptions& options) {
  return b_walk_mc_multi({phi}, y, d, samples, cap, seed, options).front();
}

AnnealedEstimate b_potential_mc(const Distribution& phi, const Site& y, int d, std::size_t samples, int margin,
                                std::uint64_t seed, const PotentialMcOptions& options) {
  if (samples < 1) throw DomainError("b_potential_mc: need at least one sample");
  const Site origin{};
  const auto dom = TruncatedDomain::around(d, origin, y, margin);
  const Box wide = dom.with_margin(2 * margin).box;
  const bool deterministic = phi.is_step() && phi.jump_points().size() == 1;
  const std::size_t runs = deterministic ? 1 : samples;

  struct Row {
    double at_L = 0.0, at_2L = 0.0;
  };
  const auto rows = parallel_map<Row>(runs, options.threads, [&](std::size_t s) {
    const PotentialField omega = realize(sample_uniform_field(wide, derive_seed(seed, s)), phi);
    const CostEstimate c = travel_cost_quenched(omega, origin, y, dom, options.solve);
    return Row{-c.value_at_L, -c.value_at_2L};
  });
  std::vector<double> lL, l2L, a;
  for (const Row& r : rows) {
    lL.push_back(r.at_L);
    l2L.push_back(r.at_2L);
    a.push_back(-r.at_L);
  }
  const LogMean mL = log_mean(lL), m2L = log_mean(l2L);
  AnnealedEstimate out;
  out.estimator = AnnealedEstimator::PotentialMc;
  out.margin = margin;
  out.cost.n_samples = runs;
  out.cost.infinite = mL.infinite;
  out.cost.value = mL.b;
  out.cost.std_error = runs > 1 ? mL.se : 0.0;
  out.cost.value_at_L = mL.b;
  out.cost.value_at_2L = m2L.b;
  out.mean_e = mL.mean;
  const MeanSe qa = mean_se(a);
  out.quenched_mean = qa.mean;
  out.quenched_se = runs > 1 ? qa.se : 0.0;
  return out;
}

std::vector<BetaSequence> beta_upper_sequence_multi(const std::vector<Distribution>& phis, const Site& x, int d,
                                                    const std::vector<int>& n_list, std::uint64_t seed,
                                                    const BetaConfig& config) {
  if (l1_norm(x, d) == 0) throw DomainError("beta_upper_sequence: direction must be nonzero");
  if (n_list.empty()) throw DomainError("beta_upper_sequence: empty n list");
  const std::size_t m = phis.size();
  std::vector<BetaSequence> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j].n_list = n_list;

  const long xinf = linf_norm(x, d);
  for (int n : n_list) {
    if (n < 1) throw DomainError("beta_upper_sequence: n must be >= 1");
    const Site y = scale(x, n);
    const std::uint64_t s_n = derive_seed(seed, static_cast<std::uint64_t>(n));
    std::vector<AnnealedEstimate> at_n;
    if (config.estimator == AnnealedEstimator::WalkMc) {
      const std::size_t span = static_cast<std::size_t>(n) * static_cast<std::size_t>(xinf);
      const std::size_t cap = std::max<std::size_t>(config.cap_factor * span * span, l1_norm(y, d));
      at_n = b_walk_mc_multi(phis, y, d, config.samples, cap, s_n, WalkMcOptions{config.floor_rel, config.threads});
    } else {
      const int margin = config.fixed_margin > 0 ? config.fixed_margin
                                                 : std::max<int>(1, config.margin_factor * n * static_cast<int>(xinf));
      for (const auto& phi : phis) {
        at_n.push_back(b_potential_mc(phi, y, d, config.samples, margin, s_n,
                                      PotentialMcOptions{config.threads, config.solve}));
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      AnnealedEstimate e = at_n[j];
      e.cost.value /= n;
      e.cost.std_error /= n;
      e.cost.value_at_L /= n;
      e.cost.value_at_2L /= n;
      e.quenched_mean /= n;
      e.quenched_se /= n;
      out[j].per_n.push_back(e);
    }
  }

  const double norm1 = static_cast<double>(l1_norm(x, d));
  for (std::size_t j = 0; j < m; ++j) {
    BetaSequence& seq = out[j];
    std::size_t best = 0;
    for (std::size_t k = 1; k < seq.per_n.size(); ++k) {
      if (seq.per_n[k].cost.value < seq.per_n[best].cost.value) best = k;
    }
    seq.beta_hat = seq.per_n[best].cost.value;
    seq.beta_se = seq.per_n[best].cost.std_error;
    seq.best_n = n_list[best];
    const double l1 = phis[j].log_laplace(1.0);
    seq.lower_bound = -l1;
    seq.upper_bound = std::log(2.0 * d) - l1;
    const double per_unit = seq.beta_hat / norm1;
    const double tol = 3.0 * seq.beta_se / norm1 + 1e-9;
    seq.sandwich_ok = per_unit >= seq.lower_bound - tol && per_unit <= seq.upper_bound + tol;
  }
  return out;
}

BetaSequence beta_upper_sequence(const Distribution& phi, const Site& x, int d, const std::vector<int>& n_list,
                                 std::uint64_t seed, const BetaConfig& config) {
  return beta_upper_sequence_multi({phi}, x, d, n_list, seed, config).front();
}

}  // namespace rwpot
