#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwpot/distribution.hpp"
#include "rwpot/field.hpp"
#include "rwpot/lattice.hpp"

namespace rwpot {

// eta_M(z) = 1{omega(z) <= M} on a box.
struct PercolationConfig {
  Box box;
  double M = 0.0;
  std::vector<char> open;

  bool is_open(const Site& z) const { return box.contains(z) && open[box.index(z)] != 0; }
  static PercolationConfig from_field(const PotentialField& omega, double M);
  static PercolationConfig from_open(const Box& box, std::vector<char> open);
};

struct Clusters {
  std::vector<int> label;          // per box index; -1 for closed sites
  std::vector<std::size_t> sizes;  // per label
  int largest = -1;                // ties: lexicographically smallest member

  // Labels follow the lexicographic order of each cluster's smallest site.
  std::size_t count() const { return sizes.size(); }
};

// Connected components of the open sites (breadth-first).
Clusters clusters(const PercolationConfig& config);

// Shortest open path length between u and v inside the box; nullopt if they
// are not connected (or either is closed).
std::optional<long> chemical_distance(const PercolationConfig& config, const Site& u, const Site& v);

// l1-closest site of the largest cluster; ties go to the lexicographically
// smaller site. Throws DomainError when no site is open.
Site project_to_giant(const PercolationConfig& config, const Clusters& cl, const Site& z);

// True if the cluster meets all 2d faces of the box.
bool spans_box(const PercolationConfig& config, const Clusters& cl, int label);

struct MuOptions {
  int margin_factor = 2;   // box = bounding box of {0, n y} + margin_factor * n
  double guard = 0.75;     // minimum phi(M)
  int threads = 0;
};

struct MuPoint {
  int n = 0;
  double mu_hat = 0.0;     // mean of d_M(0~, (ny)~) / n
  double std_error = 0.0;
  // Samples whose largest cluster fails to span the box, i.e. is not a usable
  // proxy for the infinite cluster.
  double unreachable_fraction = 0.0;
  std::size_t samples = 0;
  std::string warning;
};

// Throws DomainError for d < 2, PreconditionError when phi(M) < guard.
std::vector<MuPoint> mu_estimate(const Distribution& phi, double M, const Site& y, int d,
                                 const std::vector<int>& n_list, std::size_t samples, std::uint64_t seed,
                                 const MuOptions& options = {});

struct ChainCheck {
  std::size_t checked = 0;     // samples with 0 and n y in the largest cluster
  std::size_t violations = 0;  // a > d_M (lambda + log 2d + M)
  double max_ratio = 0.0;      // max a / (d_M (lambda + log 2d + M))
};

// a(0, n y, omega + lambda) <= d_M(0, n y) (lambda + log 2d + M) on samples where
// both endpoints are in the largest cluster. The quenched solve uses the
// percolation box, so every open path counted by d_M is inside the domain.
ChainCheck chain_check(const Distribution& phi, double M, double lambda, const Site& y, int d, int n,
                       std::size_t samples, std::uint64_t seed, const MuOptions& options = {});

}  // namespace rwpot
