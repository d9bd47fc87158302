#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace rwpot {

// Tolerances used by the generic numerical paths; echoed in run manifests.
inline constexpr double kQuadratureRelTol = 1e-10;
inline constexpr double kBisectionAbsTol = 1e-12;
inline constexpr double kCdfCompareTol = 1e-12;
inline constexpr int kDefaultDominanceGrid = 10000;

// A distribution function on [0, inf). Immutable value type; shifted specs
// share their base.
class Distribution {
 public:
  enum class Kind { Point, Atomic, Exponential, Uniform, Shifted };

  struct Atom {
    double value;
    double prob;
  };

  static Distribution point(double value);
  // Atoms must have strictly increasing values >= 0 and positive
  // probabilities summing to 1 within 1e-12.
  static Distribution atomic(std::vector<Atom> atoms);
  static Distribution exponential(double rate);
  static Distribution uniform(double a, double b);

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  Distribution with_id(std::string id) const;

  double cdf(double t) const;
  // sup{t >= 0 : cdf(t) < s}, sup of the empty set taken as 0.
  double pseudo_inverse(double s) const;
  // E[exp(-k omega)].
  double laplace(double k) const;
  // log E[exp(-k omega)], accurate where laplace() underflows.
  double log_laplace(double k) const;
  double mean() const;

  // Piecewise constant CDF (point, atomic, or a shift of one).
  bool is_step() const;
  // Support points of a step CDF, increasing.
  std::vector<double> jump_points() const;
  // Essential infimum of the support.
  double support_min() const;
  // Shift applied on top of the innermost base (0 for unshifted kinds).
  double total_shift() const;
  // Innermost unshifted spec.
  const Distribution& innermost() const;

  // Canonical config-block text, e.g. "atomic 0:0.3 1:0.7".
  std::string describe() const;

  // Parameters (meaningful only for the matching kind).
  double point_value() const { return a_; }
  double rate() const { return a_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  double shift() const { return a_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Distribution& base() const { return *base_; }

  friend Distribution shift_by(const Distribution& spec, double lambda);

 private:
  Distribution() = default;

  Kind kind_ = Kind::Point;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::shared_ptr<const Distribution> base_;
  std::string id_;
};

double evaluate_cdf(const Distribution& spec, double t);
// Throws DomainError unless 0 < s < 1.
double pseudo_inverse(const Distribution& spec, double s);
// Throws DomainError for k < 0.
double laplace_transform(const Distribution& spec, double k);
// Throws DomainError for lambda < 0.
Distribution shift_by(const Distribution& spec, double lambda);

// Generic numerical paths, independent of the closed forms above.
double pseudo_inverse_bisect(const std::function<double(double)>& cdf, double s,
                             double upper_bracket, double tol = kBisectionAbsTol);
double laplace_transform_quadrature(const Distribution& spec, double k,
                                    double rel_tol = kQuadratureRelTol);

struct DominanceResult {
  bool dominates = false;
  bool numerical = false;  // decided on a grid rather than exactly
};

// F strictly dominates G: F(t) <= G(t) for all t and F differs from G.
DominanceResult strictly_dominates(const Distribution& F, const Distribution& G,
                                   int grid_points = kDefaultDominanceGrid);

struct DominanceWitness {
  double t_prime = 0.0;
  double epsilon = 0.0;
  double eta0 = 0.0;
  double h_lo = 0.0;
  double h_hi = 0.0;
  double h_measure() const { return h_hi - h_lo; }
};

// Constructs (t', epsilon, eta0, H) with F^{-1}(s) - G^{-1}(s) >= eta0 on H.
// Throws PreconditionError unless F strictly dominates G.
DominanceWitness dominance_witness(const Distribution& F, const Distribution& G,
                                   int grid_points = kDefaultDominanceGrid);

// Number of grid points s in H where F^{-1}(s) - G^{-1}(s) < eta0.
std::size_t witness_violations(const DominanceWitness& w, const Distribution& F,
                               const Distribution& G, int grid_points = kDefaultDominanceGrid);

}  // namespace rwpot
