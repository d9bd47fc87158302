#include "rwpot/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rwpot/errors.hpp"
#include "rwpot/parallel.hpp"
#include "rwpot/random.hpp"

namespace rwpot {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool deterministic(const Distribution& phi) { return phi.is_step() && phi.jump_points().size() == 1; }

void require_dominance(const Distribution& F, const Distribution& G, const char* who) {
  if (!strictly_dominates(F, G).dominates) {
    throw PreconditionError(std::string(who) + ": F must strictly dominate G");
  }
}

// D(1/2 || p) extended to p = 1 as +inf; 0 for p <= 1/2 (no tail bound).
double half_entropy(double p) {
  if (p >= 1.0) return INFINITY;
  if (p <= 0.5) return 0.0;
  return relative_entropy(0.5, p);
}

}  // namespace

double relative_entropy(double delta, double p) {
  if (!(delta > 0.0 && delta < p && p < 1.0)) {
    throw DomainError("relative_entropy: need 0 < delta < p < 1, got delta=" + fmt(delta) + " p=" + fmt(p));
  }
  return delta * std::log(delta / p) + (1.0 - delta) * std::log((1.0 - delta) / (1.0 - p));
}

bool classify_white(const Box& box, const PotentialField& omega_F, const PotentialField& omega_G, double eta0,
                    double M) {
  bool gap = false;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Site z = box.site(i);
    const double g = omega_G.at(z);
    if (g > M) return false;
    if (omega_F.at(z) >= g + eta0) gap = true;
  }
  return gap;
}

double rho_measure(const Distribution& F, const Distribution& G, double eta0, int grid) {
  std::size_t hits = 0;
  for (int i = 0; i < grid; ++i) {
    const double s = (i + 0.5) / grid;
    if (F.pseudo_inverse(s) - G.pseudo_inverse(s) >= eta0) ++hits;
  }
  return static_cast<double>(hits) / grid;
}

namespace {

// Fraction of M-white boxes [0, R)^d, sample s keyed by derive_seed(seed, s).
MeanSe white_frequency(const Distribution& F, const Distribution& G, double eta0, double M, int R, int d,
                       std::size_t samples, std::uint64_t seed, int threads) {
  Site hi{};
  for (int i = 0; i < d; ++i) hi[i] = R - 1;
  const Box box(d, Site{}, hi);
  const std::size_t chunks = std::min<std::size_t>(samples, 64);
  const auto counts = parallel_map<std::size_t>(chunks, threads, [&](std::size_t c) {
    std::size_t white = 0;
    for (std::size_t s = c * samples / chunks; s < (c + 1) * samples / chunks; ++s) {
      const UniformField U = sample_uniform_field(box, derive_seed(seed, s));
      if (classify_white(box, realize(U, F), realize(U, G), eta0, M)) ++white;
    }
    return white;
  });
  std::size_t white = 0;
  for (std::size_t c : counts) white += c;
  return proportion(white, samples);
}

}  // namespace

WhiteBoxProb white_box_prob(const Distribution& F, const Distribution& G, double eta0, double M, int R, int d,
                            std::size_t samples, std::uint64_t seed, int threads) {
  if (R < 1 || samples < 1) throw DomainError("white_box_prob: need R >= 1 and samples >= 1");
  WhiteBoxProb out;
  const MeanSe m = white_frequency(F, G, eta0, M, R, d, samples, seed, threads);
  out.empirical = m.mean;
  out.std_error = m.se;
  out.samples = samples;
  out.rho = rho_measure(F, G, eta0);
  out.formula = 1.0 - std::pow(1.0 - out.rho, std::pow(static_cast<double>(R), d));
  const DominanceWitness w = dominance_witness(F, G);
  out.h_measure = w.h_measure();
  out.rho_ge_h = out.rho >= out.h_measure - 1.0 / kDefaultDominanceGrid;
  return out;
}

RMChoice choose_RM(const Distribution& F, const Distribution& G, int d, std::uint64_t seed,
                   const ChooseRMOptions& options) {
  require_dominance(F, G, "choose_RM");
  const DominanceWitness w = dominance_witness(F, G);
  const double target = 2.0 * std::log(2.0 * d);
  RMChoice out;
  auto passes = [&](int R, double M, MeanSe* est) {
    ++out.evaluations;
    const MeanSe m = white_frequency(F, G, w.eta0, M, R, d, options.samples,
                                     derive_seed(seed, out.evaluations), options.threads);
    if (est) *est = m;
    return half_entropy(m.mean - 3.0 * m.se) > target;
  };
  const double no_M = INFINITY;
  // R: doubling over even values, then bisection.
  int lo = 0, hi = 2;
  while (!passes(hi, no_M, nullptr)) {
    lo = hi;
    hi *= 2;
    if (hi > options.max_R) throw ResourceError("choose_RM: no R <= " + std::to_string(options.max_R) + " passes");
  }
  while (hi - lo > 2) {
    const int mid = lo + ((hi - lo) / 2 / 2) * 2;
    if (mid <= lo) break;
    if (passes(mid, no_M, nullptr)) hi = mid;
    else lo = mid;
  }
  const int R = hi;
  // M: 0, then doubling from 1, then bisection on integers.
  MeanSe est;
  double M = 0.0;
  if (!passes(R, 0.0, &est)) {
    double mlo = 0.0, mhi = 1.0;
    while (!passes(R, mhi, &est)) {
      mlo = mhi;
      mhi *= 2.0;
      if (mhi > options.max_M) throw ResourceError("choose_RM: no M <= " + fmt(options.max_M) + " passes");
    }
    while (mhi - mlo > 1.0) {
      const double mid = std::floor(0.5 * (mlo + mhi));
      if (passes(R, mid, nullptr)) mhi = mid;
      else mlo = mid;
    }
    M = mhi;
    passes(R, M, &est);
  }
  out.R = R;
  out.M = M;
  out.p_hat = est.mean;
  out.p_se = est.se;
  out.entropy = half_entropy(est.mean - 3.0 * est.se);
  return out;
}

double delta0(double eta0, int d, int R, double M) {
  if (!(eta0 > 0.0)) throw DomainError("delta0: eta0 must be > 0");
  const double base = -(2.0 * d * R) * (std::log(2.0 * d) + M);
  return 1.0 - (-std::expm1(-eta0)) * std::exp(base);
}

AnimalFraction animal_white_fraction(const LatticeAnimal& animal, const std::function<bool(const Site&)>& marked) {
  AnimalFraction out;
  out.size = animal.size();
  for (const Site& v : animal.labels) out.marked += marked(v) ? 1 : 0;
  out.fraction = out.size ? static_cast<double>(out.marked) / static_cast<double>(out.size) : 0.0;
  out.at_least_half = out.size > 0 && 2 * out.marked >= out.size;
  return out;
}

AnimalFraction animal_white_fraction(const WalkTrace& trace, int R, const std::function<bool(const Site&)>& marked) {
  const std::size_t stop = trace.hit_index ? *trace.hit_index + 1 : trace.sites.size();
  return animal_white_fraction(path_animal(trace, R, stop), marked);
}

AnimalFailureTable animal_failure_table(double p, int R, int d, const std::vector<int>& N_list, std::size_t samples,
                                        std::uint64_t seed, int threads) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("animal_failure_table: p must lie in (0,1)");
  AnimalFailureTable table;
  const double rate = half_entropy(p) - 2.0 * std::log(2.0 * d);
  for (int N : N_list) {
    if (N < 1) throw DomainError("animal_failure_table: N must be >= 1");
    const std::uint64_t seed_N = derive_seed(seed, static_cast<std::uint64_t>(N));
    const auto fails = parallel_map<char>(samples, threads, [&](std::size_t s) -> char {
      const std::uint64_t mark_seed = derive_seed(seed_N, 2 * s);
      auto marked = [&](const Site& v) { return keyed_uniform(mark_seed, v, d) < p; };
      Walker walker(Site{}, d, derive_seed(seed_N, 2 * s + 1));
      std::unordered_set<Site, SiteHash> labels{box_index(walker.position(), R, d)};
      std::size_t good = marked(*labels.begin()) ? 1 : 0;
      while (labels.size() < static_cast<std::size_t>(N)) {
        walker.step();
        const Site v = box_index(walker.position(), R, d);
        if (labels.insert(v).second && marked(v)) ++good;
      }
      return 2 * good < labels.size() ? 1 : 0;
    });
    std::size_t count = 0;
    for (char f : fails) count += f;
    const MeanSe m = proportion(count, samples);
    table.rows.push_back({N, samples, m.mean, m.se, std::min(1.0, std::exp(-N * rate))});
  }
  std::vector<double> xs, ys;
  for (const auto& r : table.rows) {
    if (r.failure_rate > 0.0) {
      xs.push_back(r.N);
      ys.push_back(std::log(r.failure_rate));
    }
  }
  if (xs.size() >= 2) {
    const LineFit f = fit_line(xs, ys);
    table.fit_log_c1 = f.intercept;
    table.fit_c2 = -f.slope;
  }
  return table;
}

double crossing_LB(double B, int R, int d) { return B * std::pow(static_cast<double>(R), 2 * d); }

CrossingStats crossing_statistics(const WalkTrace& trace, const PotentialField& omega_F, const Site& target,
                                  const CrossingParams& params) {
  const int d = trace.d;
  const int R = params.R;
  if (trace.sites.empty()) throw DomainError("crossing_statistics: empty trace");
  Site lo = trace.sites.front(), hi = trace.sites.front();
  for (const Site& s : trace.sites) {
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], s[i]);
      hi[i] = std::max(hi[i], s[i]);
    }
  }
  const Box hull = aligned_cover(Box(d, lo, hi), R);
  if (!omega_F.box.covers(hull)) throw DomainError("crossing_statistics: field does not cover the walk's R-boxes");

  std::unordered_map<Site, bool, SiteHash> good_cache;
  auto good = [&](const Site& v) {
    auto it = good_cache.find(v);
    if (it != good_cache.end()) return it->second;
    const Box b = box_sites(v, R, d);
    bool g = false;
    for (std::size_t i = 0; i < b.size() && !g; ++i) g = omega_F.at(b.site(i)) >= params.kappa;
    good_cache.emplace(v, g);
    return g;
  };

  const std::size_t stop = trace.hit_index ? *trace.hit_index + 1 : trace.sites.size();
  WalkTrace upto = trace;
  upto.sites.resize(stop);

  CrossingStats st;
  const LatticeAnimal animal = path_animal(upto, R, stop);
  st.animal_size = animal.size();
  for (const Site& v : animal.labels) st.good_in_animal += good(v) ? 1 : 0;
  st.good_fraction = st.animal_size ? static_cast<double>(st.good_in_animal) / st.animal_size : 0.0;

  const double LB = crossing_LB(params.B, R, d);
  const auto crossings = box_crossings(upto, good, R);
  st.traversals = crossings.size();
  std::unordered_map<Site, std::size_t, SiteHash> per_box;
  for (const auto& c : crossings) {
    ++per_box[c.label];
    if (static_cast<double>(c.exit - c.enter) <= LB) ++st.short_crossings;
  }
  for (const auto& [label, count] : per_box) st.boxes_ge_M += count >= static_cast<std::size_t>(params.M) ? 1 : 0;
  st.short_fraction = st.traversals ? static_cast<double>(st.short_crossings) / st.traversals : 1.0;
  st.e3_ok = st.boxes_ge_M <= static_cast<std::size_t>(params.A) * static_cast<std::size_t>(linf_norm(target, d) / R);

  const std::size_t H = trace.hit_index ? *trace.hit_index : trace.sites.size();
  const LocalTimeField lt = local_times(trace, H);
  for (const auto& [z, count] : lt.counts) {
    if (count >= 1 && static_cast<double>(count) <= params.M * LB) ++st.low_local_time_sites;
  }
  st.low_local_time_flag =
      static_cast<double>(st.low_local_time_sites) >= static_cast<double>(l1_norm(target, d)) / (12.0 * d * R);
  return st;
}

GapReport coupled_gap_experiment(const Distribution& F, const Distribution& G, const Site& x, int d,
                                 const std::vector<int>& n_list, std::size_t samples, Mode mode,
                                 std::uint64_t seed, const GapOptions& options) {
  require_dominance(F, G, "coupled_gap_experiment");
  if (l1_norm(x, d) == 0) throw DomainError("coupled_gap_experiment: direction must be nonzero");
  if (n_list.empty() || samples < 1) throw DomainError("coupled_gap_experiment: need n values and samples");
  const Site origin{};
  const AlphaOptions& ao = options.alpha;
  Box hull;
  {
    Site lo{}, hi{};
    for (int n : n_list) {
      if (n < 1) throw DomainError("coupled_gap_experiment: n must be >= 1");
      const Box b = TruncatedDomain::around(d, origin, scale(x, n), 2 * alpha_margin(ao, n, x, d)).box;
      for (int i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], b.lo()[i]);
        hi[i] = std::max(hi[i], b.hi()[i]);
      }
    }
    hull = Box(d, lo, hi);
  }
  const std::size_t runs = deterministic(F) && deterministic(G) ? 1 : samples;

  struct Row {
    std::vector<double> a_F, a_G;
    std::size_t site_violations = 0;
  };
  const auto rows = parallel_map<Row>(runs, options.threads > 0 ? options.threads : ao.threads, [&](std::size_t s) {
    const UniformField U = sample_uniform_field(hull, derive_seed(seed, s));
    const PotentialField wF = realize(U, F), wG = realize(U, G);
    Row row;
    for (std::size_t i = 0; i < wF.values.size(); ++i) row.site_violations += wF.values[i] < wG.values[i];
    for (int n : n_list) {
      const auto dom = TruncatedDomain::around(d, origin, scale(x, n), alpha_margin(ao, n, x, d));
      row.a_F.push_back(-solve_e(wF, scale(x, n), dom, ao.solve).log_value(origin));
      row.a_G.push_back(-solve_e(wG, scale(x, n), dom, ao.solve).log_value(origin));
    }
    return row;
  });

  GapReport rep;
  rep.mode = mode;
  rep.x = x;
  rep.d = d;
  rep.confidence = options.confidence;
  rep.samples = samples;
  rep.seed = seed;
  for (const Row& r : rows) {
    rep.site_violations += r.site_violations;
    for (std::size_t k = 0; k < n_list.size(); ++k) rep.negative_gaps += r.a_F[k] < r.a_G[k];
  }
  if (rep.site_violations > 0) {
    throw CouplingViolation("coupled_gap_experiment: omega_F < omega_G at " + std::to_string(rep.site_violations) +
                            " sites");
  }
  if (mode == Mode::Quenched && rep.negative_gaps > 0) {
    throw CouplingViolation("coupled_gap_experiment: a_F < a_G on " + std::to_string(rep.negative_gaps) +
                            " coupled samples");
  }

  const double z = normal_quantile(options.confidence);
  const double norm1 = static_cast<double>(l1_norm(x, d));
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    const double len = n_list[k] * norm1;
    GapRow g;
    g.n = n_list[k];
    if (mode == Mode::Quenched) {
      std::vector<double> diff, aF, aG;
      for (const Row& r : rows) {
        diff.push_back(r.a_F[k] - r.a_G[k]);
        aF.push_back(r.a_F[k]);
        aG.push_back(r.a_G[k]);
      }
      const MeanSe m = mean_se(diff);
      g.gap = m.mean;
      g.std_error = runs > 1 ? m.se : 0.0;
      g.cost_F = mean_se(aF).mean / len;
      g.cost_G = mean_se(aG).mean / len;
    } else {
      // b_F - b_G with the paired delta method, weights relative to the largest.
      double topF = -INFINITY, topG = -INFINITY;
      for (const Row& r : rows) {
        topF = std::max(topF, -r.a_F[k]);
        topG = std::max(topG, -r.a_G[k]);
      }
      std::vector<double> wF, wG;
      for (const Row& r : rows) {
        wF.push_back(std::exp(-r.a_F[k] - topF));
        wG.push_back(std::exp(-r.a_G[k] - topG));
      }
      const double mF = mean_se(wF).mean, mG = mean_se(wG).mean;
      std::vector<double> lin;
      for (std::size_t i = 0; i < wF.size(); ++i) lin.push_back(wG[i] / mG - wF[i] / mF);
      const double bF = -(topF + std::log(mF)), bG = -(topG + std::log(mG));
      g.gap = bF - bG;
      g.std_error = runs > 1 ? mean_se(lin).se : 0.0;
      g.cost_F = bF / len;
      g.cost_G = bG / len;
      if (d == 1 && k + 1 == n_list.size()) {
        const double F0 = F.cdf(0.0);
        const double betaG_lo = std::max(0.0, g.cost_G - 3.0 * g.std_error / len);
        if (!(F0 < std::exp(-betaG_lo))) {
          rep.warnings.push_back("F(0) < exp(-beta_G(1)) not established; annealed gap may vanish at |x| = 1");
        }
      }
    }
    g.per_unit = g.gap / len;
    g.per_unit_se = g.std_error / len;
    g.lower = g.per_unit - z * g.per_unit_se;
    g.positive = g.lower > 0.0;
    rep.rows.push_back(g);
  }
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    const auto& a = rep.rows[k - 1];
    const auto& b = rep.rows[k];
    if (std::abs(a.per_unit - b.per_unit) > 3.0 * std::hypot(a.per_unit_se, b.per_unit_se) + 1e-9) {
      rep.stable_across_n = false;
    }
  }
  if (!rep.stable_across_n) rep.warnings.push_back("per-unit gap not stable across n within 3 sigma");
  return rep;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::StrictGap:
      return "StrictGap";
    case Regime::Coincide:
      return "Coincide";
    case Regime::Undetermined:
      return "Undetermined";
  }
  return "?";
}

CriterionResult criterion_d1(const Distribution& F, const Distribution& G, const Estimate& beta_G,
                             const std::optional<Estimate>& beta_F, double confidence) {
  require_dominance(F, G, "criterion_d1");
  CriterionResult out;
  out.F0 = F.cdf(0.0);
  out.G0 = G.cdf(0.0);
  out.threshold = std::exp(-beta_G.value);
  const double z = normal_quantile(confidence);
  const double thr_lo = std::exp(-(beta_G.value + z * beta_G.std_error));
  const double thr_hi = std::exp(-std::max(0.0, beta_G.value - z * beta_G.std_error));
  out.below_threshold = out.F0 < thr_lo;
  if (out.F0 == 0.0) {
    out.regime = Regime::StrictGap;
    out.reason = "F(0) = 0";
  } else if (out.F0 < out.G0) {
    out.regime = Regime::StrictGap;
    out.reason = "F(0) < G(0)";
  } else if (out.below_threshold) {
    out.regime = Regime::StrictGap;
    out.reason = "F(0) < exp(-beta_G(1)) beyond the confidence interval";
  } else if (out.F0 > thr_hi || (out.F0 == out.G0 && out.F0 >= thr_lo && std::abs(std::log(out.F0) + beta_G.value) <=
                                                                            z * beta_G.std_error + 1e-12)) {
    out.regime = Regime::Coincide;
    out.predicted_common = -std::log(out.F0);
    out.reason = "F(0) >= exp(-beta_G(1)); common value -log F(0)";
  } else {
    out.regime = Regime::Undetermined;
    out.reason = "F(0) inside the confidence interval of exp(-beta_G(1))";
  }
  if (beta_F) {
    out.ceiling_checked = true;
    out.ceiling_ok = out.F0 == 0.0 || beta_F->value <= -std::log(out.F0) + 3.0 * beta_F->std_error + 1e-12;
  }
  return out;
}

double gamblers_ruin(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("gamblers_ruin: n, m must be >= 1");
  return static_cast<double>(m) / static_cast<double>(n + m);
}

MeanSe gamblers_ruin_mc(int n, int m, std::size_t walks, std::uint64_t seed, int threads) {
  if (n < 1 || m < 1) throw DomainError("gamblers_ruin_mc: n, m must be >= 1");
  const std::size_t chunks = std::min<std::size_t>(std::max<std::size_t>(walks, 1), 64);
  const auto wins = parallel_map<std::size_t>(chunks, threads, [&](std::size_t c) {
    std::size_t won = 0;
    for (std::size_t i = c * walks / chunks; i < (c + 1) * walks / chunks; ++i) {
      Walker w(Site{}, 1, derive_seed(seed, i));
      while (w.position()[0] < n && w.position()[0] > -m) w.step();
      won += w.position()[0] == n;
    }
    return won;
  });
  std::size_t won = 0;
  for (std::size_t v : wins) won += v;
  return proportion(won, walks);
}

ThresholdScan threshold_from_differences(const std::vector<double>& x, const std::vector<double>& diff,
                                         const std::vector<double>& se) {
  if (x.size() != diff.size() || x.size() != se.size()) throw DomainError("threshold scan: size mismatch");
  ThresholdScan out;
  out.x = x;
  out.diff = diff;
  out.se = se;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double noise = 3.0 * se[i] + 1e-9;
    if (diff[i] < -noise) out.nonnegative = false;
    if (std::abs(diff[i]) <= noise) {
      out.resolved = true;
      out.v0 = std::max(out.v0, x[i]);
    }
  }
  if (!out.resolved) out.warning = "no coincidence region resolved";
  if (!out.nonnegative) {
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "negative difference beyond 3 sigma";
  }
  return out;
}

ThresholdScan threshold_scan(const LyapunovCurve& curve_F, const LyapunovCurve& curve_G,
                             const std::vector<double>& x_grid, const CriterionResult& criterion) {
  if (curve_F.d != 1 || curve_G.d != 1) throw DomainError("threshold_scan: d=1 curves required");
  auto se_at = [](const LyapunovCurve& c, double lambda, double s) {
    double best = INFINITY, se = 0.0;
    for (const auto& p : c.points) {
      if (std::abs(p.lambda - lambda) < best) {
        best = std::abs(p.lambda - lambda);
        se = p.std_error;
      }
    }
    return s * se;
  };
  std::vector<double> diff, se;
  for (double x : x_grid) {
    const RateResult jF = rate_function(curve_F, x), jG = rate_function(curve_G, x);
    diff.push_back(jF.value - jG.value);
    se.push_back(std::hypot(se_at(curve_F, jF.argmax_lambda, x), se_at(curve_G, jG.argmax_lambda, x)));
  }
  ThresholdScan out = threshold_from_differences(x_grid, diff, se);
  if (criterion.below_threshold) {
    const std::string w = "F(0) < exp(-beta_G(1)) holds: a gap is expected at every 0 < |x| < 1";
    out.warning = out.warning.empty() ? w : w + "; " + out.warning;
  }
  return out;
}

}  // namespace rwpot
