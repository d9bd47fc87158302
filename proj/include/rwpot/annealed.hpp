#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rwpot/distribution.hpp"
#include "rwpot/lattice.hpp"
#include "rwpot/quenched.hpp"

namespace rwpot {

enum class AnnealedEstimator { WalkMc, PotentialMc };
std::string to_string(AnnealedEstimator e);
AnnealedEstimator parse_estimator(const std::string& name);

struct AnnealedEstimate {
  CostEstimate cost;          // b and its standard error
  AnnealedEstimator estimator = AnnealedEstimator::WalkMc;
  std::size_t cap = 0;        // walk_mc step budget T
  int margin = 0;             // potential_mc truncation margin L
  double floored_fraction = 0.0;  // walk_mc traces stopped by the weight floor
  double mean_e = 0.0;        // estimate of E[e(0,y)] (0 if it underflows)
  // potential_mc only: mean and standard error of the quenched a on the
  // same samples, for the Jensen check.
  double quenched_mean = 0.0;
  double quenched_se = 0.0;
};

struct WalkMcOptions {
  // Traces whose weight drops below floor_rel * ((2d)^{-1} L(1))^{|y|_1}
  // (a lower bound on the mean) stop early and count as 0; the relative bias
  // is at most floor_rel. 0 disables the floor.
  double floor_rel = 1e-12;
  int threads = 0;
};

// Default cap T = 64 |y|_inf^2 (at least 64).
std::size_t default_walk_cap(const Site& y, int d);

// Mean over walks of prod_z L(l_z(H(y))), capped traces contributing 0.
AnnealedEstimate b_walk_mc(const Distribution& phi, const Site& y, int d, std::size_t samples,
                           std::size_t cap, std::uint64_t seed, const WalkMcOptions& options = {});
// Same walks scored for every spec (common random numbers).
std::vector<AnnealedEstimate> b_walk_mc_multi(const std::vector<Distribution>& phis, const Site& y, int d,
                                              std::size_t samples, std::size_t cap, std::uint64_t seed,
                                              const WalkMcOptions& options = {});

struct PotentialMcOptions {
  int threads = 0;
  SolveOptions solve{};
};

// -log of the sample mean of e(0,y,omega) over independent potentials on the
// margin-L domain; margin 2L is the truncation diagnostic. Sample s uses the
// uniform field keyed by derive_seed(seed, s), as alpha_estimate does.
AnnealedEstimate b_potential_mc(const Distribution& phi, const Site& y, int d, std::size_t samples, int margin,
                                std::uint64_t seed, const PotentialMcOptions& options = {});

struct BetaConfig {
  AnnealedEstimator estimator = AnnealedEstimator::WalkMc;
  std::size_t samples = 10000;
  std::size_t cap_factor = 64;   // walk_mc: T = cap_factor * n^2 |x|_inf^2
  int margin_factor = 2;         // potential_mc: L = margin_factor * n |x|_inf
  int fixed_margin = 0;
  double floor_rel = 1e-12;
  int threads = 0;
  SolveOptions solve{};
};

struct BetaSequence {
  std::vector<int> n_list;
  std::vector<AnnealedEstimate> per_n;  // cost values are b(0, n x) / n
  double beta_hat = 0.0;                // running minimum
  double beta_se = 0.0;
  int best_n = 0;
  double lower_bound = 0.0;  // -log L(1), per unit l1 length
  double upper_bound = 0.0;  // log(2d) - log L(1), per unit l1 length
  bool sandwich_ok = true;
};

BetaSequence beta_upper_sequence(const Distribution& phi, const Site& x, int d, const std::vector<int>& n_list,
                                 std::uint64_t seed, const BetaConfig& config = {});
// One sequence per spec; walk_mc reuses the same traces for every spec.
std::vector<BetaSequence> beta_upper_sequence_multi(const std::vector<Distribution>& phis, const Site& x, int d,
                                                    const std::vector<int>& n_list, std::uint64_t seed,
                                                    const BetaConfig& config = {});

}  // namespace rwpot
