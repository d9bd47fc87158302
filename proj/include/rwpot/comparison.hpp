#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rwpot/annealed.hpp"
#include "rwpot/distribution.hpp"
#include "rwpot/field.hpp"
#include "rwpot/quenched.hpp"
#include "rwpot/rates.hpp"
#include "rwpot/stats.hpp"
#include "rwpot/walk.hpp"

namespace rwpot {

// D(delta || p) for 0 < delta < p < 1.
double relative_entropy(double delta, double p);

// ---------------------------------------------------------------------------
// White boxes.

// M-white: some site has omega_F >= omega_G + eta0, and omega_G <= M on all
// sites of the box.
bool classify_white(const Box& box, const PotentialField& omega_F, const PotentialField& omega_G, double eta0,
                    double M);

// Lebesgue measure of {s : F^{-1}(s) - G^{-1}(s) >= eta0}, midpoint rule.
double rho_measure(const Distribution& F, const Distribution& G, double eta0, int grid = kDefaultDominanceGrid);

struct WhiteBoxProb {
  double empirical = 0.0;
  double std_error = 0.0;
  double formula = 0.0;   // 1 - (1 - rho)^{R^d}
  double rho = 0.0;
  double h_measure = 0.0;
  bool rho_ge_h = true;   // rho >= |H|
  std::size_t samples = 0;
};

// Empirical frequency of M-white boxes [0, R)^d over independent uniform
// fields, against the Bernoulli formula.
WhiteBoxProb white_box_prob(const Distribution& F, const Distribution& G, double eta0, double M, int R, int d,
                            std::size_t samples, std::uint64_t seed, int threads = 0);

struct RMChoice {
  int R = 0;
  double M = 0.0;
  double p_hat = 0.0;
  double p_se = 0.0;
  double entropy = 0.0;  // D(1/2 || p_hat - 3 se), +inf at p = 1
  std::size_t evaluations = 0;
};

struct ChooseRMOptions {
  std::size_t samples = 100000;
  int max_R = 4096;
  double max_M = 1e6;
  int threads = 0;
};

// Smallest even R (M disabled), then smallest integer M, with
// D(1/2 || p_{R,M} - 3 sigma) > 2 log 2d. Throws PreconditionError unless F
// strictly dominates G, ResourceError past the budget.
RMChoice choose_RM(const Distribution& F, const Distribution& G, int d, std::uint64_t seed,
                   const ChooseRMOptions& options = {});

// 1 - (1 - e^{-eta0}) (2d e^M)^{-2dR}.
double delta0(double eta0, int d, int R, double M);

// ---------------------------------------------------------------------------
// Lattice-animal statistics.

struct AnimalFraction {
  std::size_t size = 0;
  std::size_t marked = 0;
  double fraction = 0.0;
  bool at_least_half = false;
};

AnimalFraction animal_white_fraction(const LatticeAnimal& animal, const std::function<bool(const Site&)>& marked);
// Path animal of the trace up to and including its hit index (whole trace
// if it never hit).
AnimalFraction animal_white_fraction(const WalkTrace& trace, int R, const std::function<bool(const Site&)>& marked);

struct AnimalFailureRow {
  int N = 0;
  std::size_t samples = 0;
  double failure_rate = 0.0;
  double std_error = 0.0;
  double chernoff_bound = 0.0;  // min(1, e^{-N (D(1/2||p) - 2 log 2d)})
};

struct AnimalFailureTable {
  std::vector<AnimalFailureRow> rows;
  // log failure ~ log C1 - C2 N over rows with failures; diagnostic only.
  double fit_log_c1 = NAN;
  double fit_c2 = NAN;
};

// Boxes marked independently with probability p (R-box labels keyed by the
// seed); the walk runs until its path animal has N labels.
AnimalFailureTable animal_failure_table(double p, int R, int d, const std::vector<int>& N_list, std::size_t samples,
                                        std::uint64_t seed, int threads = 0);

// ---------------------------------------------------------------------------
// Box crossings of kappa-good boxes.

struct CrossingStats {
  std::size_t animal_size = 0;       // #A_R
  std::size_t good_in_animal = 0;
  double good_fraction = 0.0;        // among animal boxes
  std::size_t traversals = 0;        // crossings of good boxes
  std::size_t boxes_ge_M = 0;        // good boxes traversed >= M times
  bool e3_ok = true;                 // boxes_ge_M <= A floor(|y|_inf / R)
  std::size_t short_crossings = 0;   // tau - sigma <= L_B
  double short_fraction = 1.0;
  std::size_t low_local_time_sites = 0;  // #{z : 1 <= l_z(H) <= M L_B}
  bool low_local_time_flag = false;      // count >= |y|_1 / (12 d R)
};

struct CrossingParams {
  double kappa = 1.0;
  int R = 2;
  int M = 1;
  double B = 1.0;  // L_B = B R^{2d}
  int A = 6;
};

double crossing_LB(double B, int R, int d);

// Throws DomainError if omega_F does not cover the R-aligned hull of the
// trace.
CrossingStats crossing_statistics(const WalkTrace& trace, const PotentialField& omega_F, const Site& target,
                                  const CrossingParams& params);

// ---------------------------------------------------------------------------
// Coupled gap experiments.

struct GapRow {
  int n = 0;
  double gap = 0.0;        // mean cost_F - cost_G
  double std_error = 0.0;
  double per_unit = 0.0;   // gap / (n |x|_1)
  double per_unit_se = 0.0;
  double lower = 0.0;      // one-sided lower confidence bound on per_unit
  bool positive = false;
  double cost_F = 0.0;     // per-unit means, for reference
  double cost_G = 0.0;
};

struct GapReport {
  Mode mode = Mode::Quenched;
  Site x{};
  int d = 1;
  std::vector<GapRow> rows;
  double confidence = 0.99;
  bool stable_across_n = true;  // consecutive per-unit gaps within 3 combined sigma
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t site_violations = 0;  // omega_F < omega_G anywhere (should be 0)
  std::size_t negative_gaps = 0;    // quenched a_F < a_G (should be 0)
  std::vector<std::string> warnings;
};

struct GapOptions {
  AlphaOptions alpha{};
  double confidence = 0.99;
  int threads = 0;
};

// Throws PreconditionError unless F strictly dominates G, and
// CouplingViolation if any coupled sample breaks monotonicity.
GapReport coupled_gap_experiment(const Distribution& F, const Distribution& G, const Site& x, int d,
                                 const std::vector<int>& n_list, std::size_t samples, Mode mode,
                                 std::uint64_t seed, const GapOptions& options = {});

// ---------------------------------------------------------------------------
// d = 1 criteria.

enum class Regime { StrictGap, Coincide, Undetermined };
std::string to_string(Regime r);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct CriterionResult {
  Regime regime = Regime::Undetermined;
  std::string reason;
  double F0 = 0.0;
  double G0 = 0.0;
  double threshold = 0.0;        // e^{-beta_G(1)}
  bool below_threshold = false;  // F(0) < e^{-beta_G(1)} beyond the CI
  double predicted_common = NAN; // -log F(0) when Coincide
  bool ceiling_checked = false;
  bool ceiling_ok = true;        // beta_F(1) <= -log F(0) + 3 sigma
};

// Throws PreconditionError unless F strictly dominates G.
CriterionResult criterion_d1(const Distribution& F, const Distribution& G, const Estimate& beta_G,
                             const std::optional<Estimate>& beta_F = std::nullopt, double confidence = 0.99);

// P^0(H(n) < H(-m)) = m / (n + m).
double gamblers_ruin(int n, int m);
// Monte Carlo frequency of reaching n before -m.
MeanSe gamblers_ruin_mc(int n, int m, std::size_t walks, std::uint64_t seed, int threads = 0);

struct ThresholdScan {
  std::vector<double> x;
  std::vector<double> diff;  // J_F - J_G
  std::vector<double> se;
  double v0 = 0.0;
  bool resolved = false;     // some grid point with difference within noise of 0
  bool nonnegative = true;   // every difference >= -3 sigma
  std::string warning;
};

// v0 = largest grid x whose difference is within 3 sigma of 0.
ThresholdScan threshold_from_differences(const std::vector<double>& x, const std::vector<double>& diff,
                                         const std::vector<double>& se);
// J_F - J_G from unit-direction annealed curves. Warns when
// F(0) < e^{-beta_G(1)} holds, since a gap is then expected at every 0 < |x| < 1.
ThresholdScan threshold_scan(const LyapunovCurve& curve_F, const LyapunovCurve& curve_G,
                             const std::vector<double>& x_grid, const CriterionResult& criterion);

}  // namespace rwpot
