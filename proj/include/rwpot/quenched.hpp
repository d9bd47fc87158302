#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rwpot/distribution.hpp"
#include "rwpot/field.hpp"
#include "rwpot/lattice.hpp"

namespace rwpot {

// Finite box around a source and a target; e vanishes outside it.
struct TruncatedDomain {
  Box box;
  Site source{};
  Site target{};
  int margin = 1;

  // Bounding box of {source, target} inflated by `margin` sites per face.
  static TruncatedDomain around(int d, const Site& source, const Site& target, int margin);
  TruncatedDomain with_margin(int margin) const { return around(box.dim(), source, target, margin); }
};

struct SolveOptions {
  std::size_t max_sweeps = 1'000'000;
  double residual_tol = 1e-10;
  // Gauss-Seidel stops once the estimated relative error of every value is
  // below this.
  double relative_tol = 1e-12;
};

// e(., y, omega) on a truncated domain. Values are stored as logarithms so
// that d = 1 solves never underflow; -inf marks an exact zero.
struct TwoPointSolution {
  Box box;
  Site target{};
  std::vector<double> log_e;
  double residual = 0.0;       // max-norm of the harmonicity residual
  std::size_t sweeps = 0;      // 0 for the direct d = 1 elimination

  double log_value(const Site& x) const { return box.contains(x) ? log_e[box.index(x)] : -INFINITY; }
  double value(const Site& x) const;
};

// Solves e(y) = 1, e(x) = exp(-omega(x)) (2d)^{-1} sum_{|x'-x|=1} e(x') for x != y,
// e = 0 outside the box. d = 1 uses elimination on successive ratios;
// d >= 2 uses Gauss-Seidel sweeps from below.
// Throws DomainError if y is not an interior site of the box or omega does
// not cover the box, NumericError if the sweep budget runs out.
TwoPointSolution solve_e(const PotentialField& omega, const Site& y, const TruncatedDomain& domain,
                         const SolveOptions& options = {});

// A cost with its sampling and truncation diagnostics.
struct CostEstimate {
  double value = 0.0;
  bool infinite = false;
  double std_error = 0.0;
  std::size_t n_samples = 1;
  double value_at_L = 0.0;   // truncation diagnostic: margin L
  double value_at_2L = 0.0;  // and margin 2L
  double capped_fraction = 0.0;

  double truncation_gap() const { return value_at_L - value_at_2L; }
};

inline constexpr double kUnderflowThreshold = 1e-300;

// a(x, y, omega) = -log e(x, y, omega) on `domain` (margin L) with the
// margin-2L value as diagnostic. omega must cover the 2L box.
CostEstimate travel_cost_quenched(const PotentialField& omega, const Site& x, const Site& y,
                                  const TruncatedDomain& domain, const SolveOptions& options = {});

struct AlphaOptions {
  int margin_factor = 2;  // margin L = margin_factor * n * |x|_inf (at least 1)
  int fixed_margin = 0;   // when > 0, overrides the factor
  int threads = 0;        // 0: process default
  SolveOptions solve{};
};

struct AlphaPoint {
  int n = 0;
  CostEstimate per_step;  // statistics of a(0, n x, omega) / n
  double lower_bound = 0.0;   // -log L(1) per unit l1 length
  double upper_bound = 0.0;   // log(2d) + E[omega] per unit l1 length
  bool sandwich_ok = true;    // bounds hold within 3 standard errors
};

// Sample means of a(0, n x, omega) / n over independent potentials. All n
// share each sample's uniform field. Throws ModelAssumptionError in d = 1
// when the spec has infinite mean.
std::vector<AlphaPoint> alpha_estimate(const Distribution& phi, const Site& x, int d,
                                       const std::vector<int>& n_list, std::size_t samples,
                                       std::uint64_t seed, const AlphaOptions& options = {});

// Margin used for a given n and direction.
int alpha_margin(const AlphaOptions& options, int n, const Site& x, int d);

}  // namespace rwpot
