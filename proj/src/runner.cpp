#include "rwpot/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rwpot/annealed.hpp"
#include "rwpot/comparison.hpp"
#include "rwpot/errors.hpp"
#include "rwpot/parallel.hpp"
#include "rwpot/percolation.hpp"
#include "rwpot/quenched.hpp"
#include "rwpot/random.hpp"
#include "rwpot/rates.hpp"
#include "rwpot/walk.hpp"

namespace rwpot {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{"lyapunov", "rate", "compare", "criterion", "percolation", "ldp",
                                              "stats"};
  return kinds;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) { row_strings(std::move(header)); }

  Csv& operator<<(const std::string& s) { return cell(s); }
  Csv& operator<<(const char* s) { return cell(s); }
  Csv& operator<<(double v) { return cell(csv_number(v)); }
  Csv& operator<<(int v) { return cell(std::to_string(v)); }
  Csv& operator<<(long v) { return cell(std::to_string(v)); }
  Csv& operator<<(std::size_t v) { return cell(std::to_string(v)); }
  Csv& operator<<(bool v) { return cell(v ? "1" : "0"); }

  void write(const fs::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write " + path.string());
    out << text_.str();
  }

 private:
  void row_strings(std::vector<std::string> cells) {
    for (auto& c : cells) cell(c);
  }
  Csv& cell(const std::string& s) {
    if (col_ > 0) text_ << ',';
    text_ << s;
    if (++col_ == cols_) {
      text_ << '\n';
      col_ = 0;
    }
    return *this;
  }

  std::size_t cols_;
  std::size_t col_ = 0;
  std::ostringstream text_;
};

std::string site_text(const Site& s, int d) {
  std::string out;
  for (int i = 0; i < d; ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

std::vector<int> to_ints(const std::vector<long>& v) { return {v.begin(), v.end()}; }

struct Context {
  const ExperimentConfig& cfg;
  RunOptions opts;
  std::uint64_t seed = 0;
  fs::path out;
  RunResult result;
  json details = json::object();

  void save(const std::string& name, const Csv& csv) {
    const fs::path p = out / name;
    csv.write(p);
    result.files.push_back(p.string());
  }
  void warn(const std::string& w) { result.warnings.push_back(w); }
  void error(const std::string& e) { result.errors.push_back(e); }
};

int dimension(const ExperimentConfig& cfg) {
  const long d = cfg.integer("d", 1);
  if (d < 1 || d > kMaxDim) throw ConfigError("field 'd': must be in 1.." + std::to_string(kMaxDim));
  return static_cast<int>(d);
}

std::size_t count_key(const ExperimentConfig& cfg, const std::string& key, long fallback) {
  const long v = cfg.integer(key, fallback);
  if (v < 1) throw ConfigError("field '" + key + "': must be >= 1");
  return static_cast<std::size_t>(v);
}

std::vector<int> n_list_key(const ExperimentConfig& cfg, std::vector<long> fallback) {
  const auto v = cfg.integers("n_list", std::move(fallback));
  for (long n : v) {
    if (n < 1) throw ConfigError("field 'n_list': entries must be >= 1");
  }
  return to_ints(v);
}

Site direction(const ExperimentConfig& cfg, const std::string& key, int d) {
  if (!cfg.has(key)) return unit_vector(d, 0);
  const Site x = cfg.site(key, d);
  if (l1_norm(x, d) == 0) throw ConfigError("field '" + key + "': must be nonzero");
  return x;
}

CurveConfig curve_config(const ExperimentConfig& cfg, int threads) {
  CurveConfig c;
  c.n_list = n_list_key(cfg, {8});
  c.samples = count_key(cfg, "samples", 200);
  c.alpha.margin_factor = static_cast<int>(cfg.integer("margin_factor", 2));
  c.alpha.fixed_margin = static_cast<int>(cfg.integer("fixed_margin", 0));
  c.alpha.threads = threads;
  c.beta.estimator = parse_estimator(cfg.str("estimator", "walk_mc"));
  c.beta.samples = c.samples;
  c.beta.cap_factor = count_key(cfg, "cap_factor", 64);
  c.beta.margin_factor = c.alpha.margin_factor;
  c.beta.fixed_margin = c.alpha.fixed_margin;
  c.beta.floor_rel = cfg.real("floor_rel", 1e-12);
  c.beta.threads = threads;
  if (c.alpha.margin_factor < 1) throw ConfigError("field 'margin_factor': must be >= 1");
  return c;
}

json curve_json(const CurveConfig& c) {
  return {{"n_list", c.n_list},
          {"samples", c.samples},
          {"margin_factor", c.alpha.margin_factor},
          {"fixed_margin", c.alpha.fixed_margin},
          {"estimator", to_string(c.beta.estimator)},
          {"cap_factor", c.beta.cap_factor},
          {"floor_rel", c.beta.floor_rel},
          {"concave_fit", "weighted least squares, Dykstra projection on second differences"}};
}

std::vector<double> grid_from(const ExperimentConfig& cfg, double lmax) {
  if (cfg.has("lambda")) {
    auto g = cfg.reals("lambda");
    for (double l : g) {
      if (!(l >= 0.0)) throw ConfigError("field 'lambda': entries must be >= 0");
    }
    return g;
  }
  return lambda_grid(lmax, static_cast<int>(cfg.integer("lambda_points", 17)));
}

Csv curve_csv(const LyapunovCurve& c) {
  Csv csv({"phi_id", "mode", "x", "lambda[nats]", "value[nats per n]", "stderr[nats per n]"});
  for (const auto& p : c.points) csv << c.spec_id << to_string(c.mode) << site_text(c.x, c.d) << p.lambda << p.value << p.std_error;
  return csv;
}

void run_lyapunov(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int d = dimension(cfg);
  const Distribution phi = cfg.distribution("phi");
  const Site x = direction(cfg, "x", d);
  const Mode mode = parse_mode(cfg.str("mode", "quenched"));
  const CurveConfig cc = curve_config(cfg, ctx.opts.threads);
  const double bound = mode == Mode::Quenched ? std::log(2.0 * d) + phi.mean() : std::log(2.0 * d) - phi.log_laplace(1.0);
  const auto grid = grid_from(cfg, cfg.real("lambda_max", lambda_max(bound, 0.5)));
  const LyapunovCurve curve = lyapunov_curve(phi, x, d, grid, mode, ctx.seed, cc);
  for (const auto& w : curve.warnings) ctx.warn("rates.lyapunov_curve: " + w);
  ctx.save("lyapunov.csv", curve_csv(curve));
  ctx.details["curve"] = curve_json(cc);
}

void run_rate(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int d = dimension(cfg);
  const Distribution phi = cfg.distribution("phi");
  const Site x = direction(cfg, "x", d);
  const Mode mode = parse_mode(cfg.str("mode", "annealed"));
  const auto scales = cfg.reals("scale", {0.5});
  const CurveConfig cc = curve_config(cfg, ctx.opts.threads);
  const double l1 = static_cast<double>(l1_norm(x, d));
  double reach = 0.0;
  for (double s : scales) {
    if (!(s >= 0.0)) throw ConfigError("field 'scale': entries must be >= 0");
    if (s * l1 < 1.0) reach = std::max(reach, s * l1);
  }
  std::optional<LyapunovCurve> curve;
  if (reach > 0.0) {
    const double bound = mode == Mode::Quenched ? std::log(2.0 * d) + phi.mean() : std::log(2.0 * d) - phi.log_laplace(1.0);
    curve = lyapunov_curve(phi, x, d, lambda_grid(lambda_max(bound, reach), static_cast<int>(cfg.integer("lambda_points", 17))),
                           mode, ctx.seed, cc);
    for (const auto& w : curve->warnings) ctx.warn("rates.lyapunov_curve: " + w);
    ctx.save("rate_curve.csv", curve_csv(*curve));
  }
  Csv csv({"phi_id", "mode", "x", "scale", "rate[nats per n]", "lambda_star[nats]"});
  for (double s : scales) {
    double rate = 0.0, lstar = NAN;
    if (s * l1 > 1.0) {
      rate = INFINITY;
    } else if (s * l1 == 1.0) {
      rate = NAN;
    } else if (s > 0.0) {
      const RateResult r = rate_function(*curve, s);
      rate = r.value;
      lstar = lambda_star(*curve, s);
    } else {
      lstar = 0.0;
    }
    csv << phi.id() << to_string(mode) << site_text(x, d) << s << rate << lstar;
  }
  ctx.save("rate.csv", csv);
  ctx.details["curve"] = curve_json(cc);
}

void run_compare(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int d = dimension(cfg);
  const Distribution F = cfg.distribution("F"), G = cfg.distribution("G");
  const Site x = direction(cfg, "x", d);
  const Mode mode = parse_mode(cfg.str("mode", "quenched"));
  const auto n_list = n_list_key(cfg, {8, 16});
  const std::size_t samples = count_key(cfg, "samples", 400);
  GapOptions go;
  go.alpha.margin_factor = static_cast<int>(cfg.integer("margin_factor", 2));
  go.alpha.fixed_margin = static_cast<int>(cfg.integer("fixed_margin", 0));
  go.alpha.threads = ctx.opts.threads;
  go.confidence = cfg.real("confidence", 0.99);
  go.threads = ctx.opts.threads;
  const GapReport rep = coupled_gap_experiment(F, G, x, d, n_list, samples, mode, ctx.seed, go);
  Csv csv({"mode", "x", "n", "gap[nats]", "stderr[nats]", "per_unit_gap[nats per unit l1]",
           "per_unit_stderr[nats per unit l1]", "lower_bound[nats per unit l1]", "positive"});
  for (const auto& r : rep.rows) {
    csv << to_string(mode) << site_text(x, d) << r.n << r.gap << r.std_error << r.per_unit << r.per_unit_se << r.lower
        << r.positive;
  }
  for (const auto& w : rep.warnings) ctx.warn("comparison.coupled_gap_experiment: " + w);
  if (!rep.stable_across_n) ctx.warn("comparison.coupled_gap_experiment: per-unit gap not stable across n");
  if (rep.site_violations || rep.negative_gaps) {
    ctx.error("comparison.coupled_gap_experiment: coupling violated (" + std::to_string(rep.site_violations) +
              " site, " + std::to_string(rep.negative_gaps) + " cost)");
  }
  ctx.save("gap.csv", csv);
  ctx.details["samples"] = samples;
  ctx.details["confidence"] = go.confidence;
}

void run_criterion(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int d = dimension(cfg);
  if (d != 1) throw ConfigError("field 'd': criterion is defined for d = 1 only");
  const Distribution F = cfg.distribution("F"), G = cfg.distribution("G");
  BetaConfig bc;
  bc.estimator = parse_estimator(cfg.str("estimator", "walk_mc"));
  bc.samples = count_key(cfg, "samples", 10000);
  bc.cap_factor = count_key(cfg, "cap_factor", 64);
  bc.fixed_margin = static_cast<int>(cfg.integer("fixed_margin", 0));
  bc.threads = ctx.opts.threads;
  const auto n_list = n_list_key(cfg, {8, 16, 32});
  const auto seq = beta_upper_sequence_multi({G, F}, unit_vector(1, 0), 1, n_list, ctx.seed, bc);
  const double conf = cfg.real("confidence", 0.99);
  const CriterionResult r =
      criterion_d1(F, G, {seq[0].beta_hat, seq[0].beta_se}, Estimate{seq[1].beta_hat, seq[1].beta_se}, conf);
  Csv csv({"F_id", "G_id", "F0", "G0", "beta_G[nats per unit l1]", "beta_G_stderr[nats per unit l1]",
           "beta_F[nats per unit l1]", "beta_F_stderr[nats per unit l1]", "threshold", "regime", "ceiling_ok"});
  csv << F.id() << G.id() << r.F0 << r.G0 << seq[0].beta_hat << seq[0].beta_se << seq[1].beta_hat << seq[1].beta_se
      << r.threshold << to_string(r.regime) << r.ceiling_ok;
  ctx.save("criterion.csv", csv);
  for (const auto& s : seq) {
    if (!s.sandwich_ok) ctx.warn("annealed.beta_upper_sequence: sandwich bound missed within 3 sigma");
  }
  if (r.ceiling_checked && !r.ceiling_ok) ctx.warn("comparison.criterion_d1: beta_F exceeds -log F(0) + 3 sigma");
  ctx.details["reason"] = r.reason;
  ctx.details["estimator"] = to_string(bc.estimator);
  ctx.details["samples"] = bc.samples;
}

void run_percolation(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int d = static_cast<int>(cfg.integer("d", 2));
  if (d < 2 || d > kMaxDim) throw ConfigError("field 'd': percolation needs 2 <= d <= " + std::to_string(kMaxDim));
  const Distribution phi = cfg.distribution("phi");
  const Site y = direction(cfg, "y", d);
  const auto Ms = cfg.reals("M");
  const auto n_list = n_list_key(cfg, {16, 32});
  const std::size_t samples = count_key(cfg, "samples", 100);
  MuOptions mo;
  mo.margin_factor = static_cast<int>(cfg.integer("margin_factor", 2));
  mo.guard = cfg.real("guard", 0.75);
  mo.threads = ctx.opts.threads;
  Csv csv({"phi_id", "M[nats]", "y", "n", "mu_hat[per unit n]", "stderr[per unit n]", "unreachable_fraction"});
  std::vector<double> previous;
  for (double M : Ms) {
    const auto pts = mu_estimate(phi, M, y, d, n_list, samples, ctx.seed, mo);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      csv << phi.id() << M << site_text(y, d) << p.n << p.mu_hat << p.std_error << p.unreachable_fraction;
      if (!p.warning.empty()) ctx.warn("percolation.mu_estimate: " + p.warning);
    }
  }
  ctx.save("percolation.csv", csv);
  ctx.details["guard"] = mo.guard;
  ctx.details["samples"] = samples;
}

void run_ldp(Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (dimension(cfg) != 1) throw ConfigError("field 'd': ldp is defined for d = 1 only");
  const Distribution phi = cfg.distribution("phi");
  const Mode mode = parse_mode(cfg.str("mode", "quenched"));
  const int n = static_cast<int>(cfg.integer("n", 128));
  const auto xs = cfg.reals("x", {0.5});
  const std::size_t samples = count_key(cfg, "samples", 100);
  Csv csv({"phi_id", "mode", "n", "x", "m", "value[nats per step]", "parity_adjusted"});
  for (double x : xs) {
    const LdpCheck c = ldp_dp_check(phi, n, x, mode, ctx.seed, samples);
    csv << phi.id() << to_string(mode) << c.n << x << c.m << c.value << c.parity_adjusted;
    if (!c.warning.empty()) ctx.warn("rates.ldp_dp_check: " + c.warning);
  }
  ctx.save("ldp.csv", csv);
  ctx.details["samples"] = samples;
}

void run_stats(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int d = dimension(cfg);
  const Distribution F = cfg.distribution("F"), G = cfg.distribution("G");
  const std::size_t samples = count_key(cfg, "samples", 100000);
  const DominanceWitness wit = dominance_witness(F, G);
  const double eta0 = cfg.real("eta0", wit.eta0);
  int R = 0;
  double M = 0.0;
  if (cfg.has("R")) {
    R = static_cast<int>(cfg.integer("R"));
    M = cfg.real("M", INFINITY);
  } else {
    ChooseRMOptions o;
    o.samples = samples;
    o.threads = ctx.opts.threads;
    const RMChoice c = choose_RM(F, G, d, derive_seed(ctx.seed, 1), o);
    R = c.R;
    M = c.M;
  }
  const WhiteBoxProb wb = white_box_prob(F, G, eta0, M, R, d, samples, derive_seed(ctx.seed, 2), ctx.opts.threads);
  Csv white({"R", "M[nats]", "eta0[nats]", "rho", "h_measure", "p_hat", "stderr", "formula",
             "entropy[nats]", "entropy_ok"});
  const double p_low = wb.empirical - 3.0 * wb.std_error;
  const double ent = p_low >= 1.0 ? INFINITY : (p_low <= 0.5 ? 0.0 : relative_entropy(0.5, p_low));
  white << R << M << eta0 << wb.rho << wb.h_measure << wb.empirical << wb.std_error << wb.formula << ent
        << (ent > 2.0 * std::log(2.0 * d));
  ctx.save("stats_white.csv", white);
  if (!wb.rho_ge_h) ctx.error("comparison.white_box_prob: rho < |H|");

  CrossingParams cp;
  cp.kappa = cfg.real("kappa", 1.0);
  cp.R = R;
  cp.M = static_cast<int>(cfg.integer("crossing_M", 1));
  cp.B = cfg.real("B", 1.0);
  cp.A = static_cast<int>(cfg.integer("A", 6));
  if (cp.A < 6) throw ConfigError("field 'A': must be >= 6");
  const Site x = direction(cfg, "x", d);
  const int n = static_cast<int>(cfg.integer("n", 16));
  const Site target = scale(x, n);
  const std::size_t walks = count_key(cfg, "walks", 100);
  const std::size_t cap = count_key(cfg, "cap", static_cast<long>(default_walk_cap(target, d)));
  const auto rows = parallel_map<CrossingStats>(walks, ctx.opts.threads, [&](std::size_t s) {
    const WalkTrace t = sample_walk_until(Site{}, SiteSet{target}, cap, derive_seed(derive_seed(ctx.seed, 3), s), d);
    Site lo = t.sites.front(), hi = lo;
    for (const Site& z : t.sites) {
      for (int i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], z[i]);
        hi[i] = std::max(hi[i], z[i]);
      }
    }
    const Box cover = aligned_cover(Box(d, lo, hi), R);
    const PotentialField omega = realize(sample_uniform_field(cover, derive_seed(derive_seed(ctx.seed, 4), s)), F);
    return crossing_statistics(t, omega, target, cp);
  });
  Csv cross({"walk", "animal_size", "good_in_animal", "good_fraction", "traversals", "boxes_ge_M", "e3_ok",
             "short_fraction", "low_local_time_sites", "low_local_time_flag"});
  double short_total = 0.0;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const auto& r = rows[s];
    cross << s << r.animal_size << r.good_in_animal << r.good_fraction << r.traversals << r.boxes_ge_M << r.e3_ok
          << r.short_fraction << r.low_local_time_sites << r.low_local_time_flag;
    short_total += r.short_fraction;
  }
  ctx.save("stats_crossing.csv", cross);
  if (short_total / walks < 1.0 - 1.0 / (cp.A * cp.A)) {
    ctx.warn("comparison.crossing_statistics: mean short-crossing fraction below 1 - A^-2; raise B");
  }
  ctx.details["samples"] = samples;
  ctx.details["walks"] = walks;
  ctx.details["cap"] = cap;
  ctx.details["witness"] = {{"t_prime", wit.t_prime}, {"epsilon", wit.epsilon}, {"eta0", wit.eta0},
                            {"h", {wit.h_lo, wit.h_hi}}};
}

json manifest_base(const ExperimentConfig& cfg, const std::string& kind, std::uint64_t seed, int threads) {
  json m;
  m["code_version"] = kCodeVersion;
  m["kind"] = kind;
  m["seed"] = seed;
  m["threads"] = threads;
  m["generator"] = kUniformGeneratorId;
  json echo = json::object();
  for (const auto& [k, v] : cfg.echo()) echo[k] = v;
  m["config"] = echo;
  const SolveOptions so;
  m["tolerances"] = {{"distributions", {{"quadrature_rel", kQuadratureRelTol}, {"bisection_abs", kBisectionAbsTol},
                                        {"cdf_compare", kCdfCompareTol}, {"dominance_grid", kDefaultDominanceGrid}}},
                     {"quenched", {{"residual", so.residual_tol}, {"relative", so.relative_tol},
                                   {"max_sweeps", so.max_sweeps}, {"underflow", kUnderflowThreshold}}}};
  return m;
}

}  // namespace

namespace {

RunResult run_impl(const std::string& kind, const ExperimentConfig& config, const RunOptions& options,
                   std::ostream& log, const std::string& parse_error) {
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx{config, options, 0, {}, {}};
  std::string k = kind;
  const std::string config_out = parse_error.empty() ? config.str("out", "") : "";
  ctx.out = options.out_dir.empty() ? fs::path(config_out.empty() ? "." : config_out) : fs::path(options.out_dir);
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  try {
    if (!parse_error.empty()) throw ConfigError(parse_error);
    if (ec) throw ResourceError("cannot create output directory " + ctx.out.string());
    if (config.has("kind")) {
      const std::string ck = config.str("kind");
      if (k.empty()) k = ck;
      else if (ck != k) throw ConfigError("field 'kind': config says '" + ck + "' but subcommand is '" + k + "'");
    }
    bool known = false;
    for (const auto& e : experiment_kinds()) known = known || e == k;
    if (!known) throw ConfigError("unknown experiment kind '" + k + "'");
    if (config.has("seed")) {
      const long s = config.integer("seed");
      if (s < 0) throw ConfigError("field 'seed': must be >= 0");
      ctx.seed = static_cast<std::uint64_t>(s);
    }
    if (options.seed) ctx.seed = *options.seed;
    if (options.threads > 0) set_default_threads(options.threads);

    if (k == "lyapunov") run_lyapunov(ctx);
    else if (k == "rate") run_rate(ctx);
    else if (k == "compare") run_compare(ctx);
    else if (k == "criterion") run_criterion(ctx);
    else if (k == "percolation") run_percolation(ctx);
    else if (k == "ldp") run_ldp(ctx);
    else run_stats(ctx);

    for (const auto& key : config.unused_keys()) ctx.warn("cli.run: unused config key '" + key + "'");
    if (!ctx.result.errors.empty()) ctx.result.exit_code = kExitInvariant;
  } catch (const ConfigError& e) {
    ctx.error(std::string("cli.config: ") + e.what());
    ctx.result.exit_code = kExitConfig;
  } catch (const DomainError& e) {
    ctx.error(std::string("cli.config: ") + e.what());
    ctx.result.exit_code = kExitConfig;
  } catch (const PreconditionError& e) {
    ctx.error(std::string("cli.config: ") + e.what());
    ctx.result.exit_code = kExitConfig;
  } catch (const ResourceError& e) {
    ctx.error(std::string("cli.run: ") + e.what());
    ctx.result.exit_code = kExitResource;
  } catch (const NumericError& e) {
    ctx.error(std::string("cli.run: ") + e.what());
    ctx.result.exit_code = kExitResource;
  } catch (const std::exception& e) {
    ctx.error(std::string("cli.run: ") + e.what());
    ctx.result.exit_code = kExitInvariant;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  {
    json m = manifest_base(config, k, ctx.seed, options.threads > 0 ? options.threads : default_threads());
    m["wall_clock_seconds"] = wall;
    m["details"] = ctx.details;
    m["outputs"] = ctx.result.files;
    m["warnings"] = ctx.result.warnings;
    m["errors"] = ctx.result.errors;
    m["exit_code"] = ctx.result.exit_code;
    const fs::path p = ctx.out / "manifest.json";
    std::ofstream out(p);
    if (out) {
      out << m.dump(2) << '\n';
      ctx.result.files.push_back(p.string());
    } else if (ctx.result.exit_code == kExitOk) {
      ctx.error("cli.run: cannot write " + p.string());
      ctx.result.exit_code = kExitResource;
    }
  }
  for (const auto& w : ctx.result.warnings) log << "warning: " << w << '\n';
  for (const auto& e : ctx.result.errors) log << "error: " << e << '\n';
  return ctx.result;
}

}  // namespace

RunResult run_experiment(const std::string& kind, ExperimentConfig config, const RunOptions& options,
                         std::ostream& log) {
  return run_impl(kind, config, options, log, "");
}

RunResult run_config_file(const std::string& kind, const std::string& path, const RunOptions& options,
                          std::ostream& log) {
  try {
    return run_impl(kind, ExperimentConfig::parse_file(path), options, log, "");
  } catch (const ConfigError& e) {
    return run_impl(kind, ExperimentConfig{}, options, log, e.what());
  }
}

}  // namespace rwpot
