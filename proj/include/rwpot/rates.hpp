#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwpot/annealed.hpp"
#include "rwpot/distribution.hpp"
#include "rwpot/field.hpp"
#include "rwpot/lattice.hpp"
#include "rwpot/quenched.hpp"

namespace rwpot {

enum class Mode { Quenched, Annealed };
std::string to_string(Mode m);
Mode parse_mode(const std::string& name);

struct CurvePoint {
  double lambda = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

// lambda -> alpha(lambda, x) or beta(lambda, x), the exponent of omega + lambda.
struct LyapunovCurve {
  Site x{};
  int d = 1;
  Mode mode = Mode::Quenched;
  std::string spec_id;
  std::vector<CurvePoint> points;
  // Per-unit-l1 upper bound of the unshifted exponent: log 2d + E[omega]
  // (quenched) or log 2d - log L(1) (annealed). Sets the lambda_max bracket.
  double bracket_bound = 0.0;
  double neg_log_laplace1 = 0.0;  // -log L(1) of the unshifted spec
  std::vector<std::string> warnings;
};

// lambda_max for the point s x: s|x|_1 B / (1 - s|x|_1), with B the bracket bound.
double lambda_max(double bracket_bound, double l1);
// 0 followed by `points - 1` geometric values ending at lambda_max, the
// smallest being lambda_max / ratio_span.
std::vector<double> lambda_grid(double lambda_max, int points = 17, double ratio_span = 1e3);

struct CurveConfig {
  std::vector<int> n_list{8};
  std::size_t samples = 200;
  AlphaOptions alpha{};
  BetaConfig beta{};
};

// Builds the curve from alpha_estimate (quenched, largest n) or
// beta_upper_sequence (annealed, running minimum) on shift_by(phi, lambda).
// Invariant violations become warnings.
LyapunovCurve lyapunov_curve(const Distribution& phi, const Site& x, int d, const std::vector<double>& grid,
                             Mode mode, std::uint64_t seed, const CurveConfig& config = {});

// Warnings for monotonicity, concavity and the shifted sandwich
// |x|_1 (lambda - log L(1)) <= curve(lambda) <= |x|_1 (B + lambda), all within 3 sigma.
std::vector<std::string> check_curve(const LyapunovCurve& curve);

// Weighted least-squares concave fit (Dykstra projections onto the
// second-difference halfspaces). Weights are 1/stderr^2, or uniform when all
// stderr vanish.
std::vector<double> concave_fit(const std::vector<CurvePoint>& points);

enum class RateFlag { Finite, Infinite, Unknown };

struct RateResult {
  double value = 0.0;
  RateFlag flag = RateFlag::Finite;
  double argmax_lambda = 0.0;
};

// I or J at the point scale * x: sup_{lambda >= 0} (scale * curve(lambda) - lambda) on
// the concave fit. Infinite outside the closed l1 unit ball, Unknown on its
// boundary, 0 at the origin. Throws CoverageError if the curve stops short of
// lambda_max.
RateResult rate_function(const LyapunovCurve& curve, double scale = 1.0);

// inf{lambda > 0 : left slope of the least concave majorant <= 1}; 0 when the
// initial slope is <= 1, +inf if the grid never gets there.
double lambda_star(const LyapunovCurve& curve, double scale = 1.0);

struct KmSpeed {
  double v = 0.0;
  double slope = 0.0;        // forward difference on the two smallest lambdas
  bool diverging = false;    // slope still steepening at 0: v -> 0
};

// 1 / right derivative at 0 of beta(., 1). Diagnostic only. Throws
// NumericError when the slope is <= 0, DomainError for a curve not at a d=1
// unit vector.
KmSpeed km_speed(const LyapunovCurve& curve);

// ---------------------------------------------------------------------------
// d = 1 path-measure check.

// Q_n(S_n = m) for m = -n..n under dQ ∝ exp(-sum_{k<n} omega(S_k)) dP. The
// field must cover [-n, n].
std::vector<double> endpoint_distribution(const PotentialField& omega, int n);
std::vector<double> endpoint_log_distribution(const PotentialField& omega, int n);

struct LdpCheck {
  double value = 0.0;  // -(1/n) log Q_n(S_n = m)
  int n = 0;
  int m = 0;
  bool parity_adjusted = false;
  std::string warning;
};

// Quenched: one field. Throws DomainError for d != 1, n > 256, |x| >= 1.
LdpCheck ldp_dp_check(const PotentialField& omega, int n, double x);
// Quenched on one sampled field, or annealed as mean numerator over mean
// partition function across `samples` fields.
LdpCheck ldp_dp_check(const Distribution& phi, int n, double x, Mode mode, std::uint64_t seed,
                      std::size_t samples = 100);

}  // namespace rwpot
