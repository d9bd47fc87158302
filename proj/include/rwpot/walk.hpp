#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rwpot/lattice.hpp"
#include "rwpot/random.hpp"

namespace rwpot {

// ---------------------------------------------------------------------------
// R-boxes: Lambda_R(v) = R v + [-R/2, R/2)^d. They partition Z^d.

// [z]_R. Throws DomainError for odd or non-positive R.
Site box_index(const Site& z, int R, int d);
// Sites of Lambda_R(label).
Box box_sites(const Site& label, int R, int d);
// Smallest box made of whole R-boxes that covers `region`.
Box aligned_cover(const Box& region, int R);

// ---------------------------------------------------------------------------
// Simple random walk.

// Streaming nearest-neighbour walker; sample_walk_until draws from the same
// stream, so a seed determines one path regardless of how it is consumed.
class Walker {
 public:
  Walker(const Site& start, int d, std::uint64_t seed) : pos_(start), steps_(seed, d) {}

  const Site& position() const { return pos_; }
  void step() {
    const int dir = steps_.next_direction();
    pos_[dir >> 1] += (dir & 1) ? 1 : -1;
  }

 private:
  Site pos_;
  StepSource steps_;
};

struct WalkTrace {
  int d = 1;
  // Visited sites S_0, S_1, ...; sites.size() - 1 steps were taken.
  std::vector<Site> sites;
  std::optional<std::size_t> hit_index;  // first index in the target
  bool capped = false;                   // step budget ran out first

  std::size_t steps() const { return sites.empty() ? 0 : sites.size() - 1; }
  const Site& start() const { return sites.front(); }
};

using SiteSet = std::vector<Site>;

// Walks until the first entry into `target` or until `cap` steps.
WalkTrace sample_walk_until(const Site& start, const SiteSet& target, std::size_t cap, std::uint64_t seed,
                            int d);
WalkTrace sample_walk_until(const Site& start, const std::function<bool(const Site&)>& in_target,
                            std::size_t cap, std::uint64_t seed, int d);
// A trace from an explicit path; validates nearest-neighbour steps.
WalkTrace trace_from_path(std::vector<Site> sites, int d);

// First index k with in_set(S_k), if any.
std::optional<std::size_t> hitting_index(const WalkTrace& trace,
                                         const std::function<bool(const Site&)>& in_set);

// ---------------------------------------------------------------------------
// Local times and ranges.

struct LocalTimeField {
  std::unordered_map<Site, std::size_t, SiteHash> counts;
  std::size_t horizon = 0;

  std::size_t at(const Site& z) const {
    auto it = counts.find(z);
    return it == counts.end() ? 0 : it->second;
  }
};

// l_z(N) = #{0 <= k < N : S_k = z}. Throws DomainError if N > sites.size().
LocalTimeField local_times(const WalkTrace& trace, std::size_t N);

// #{S_j : 0 <= j <= k}. Throws DomainError if k > trace.steps().
std::size_t range_size(const WalkTrace& trace, std::size_t k);

// ---------------------------------------------------------------------------
// Entrance/exit times of marked R-boxes:
//   tau_0 = 1, sigma_{j+1} = inf{k >= tau_j : S_k in a marked box},
//   tau_{j+1} = inf{k > sigma_{j+1} : S_k leaves the box entered at sigma_{j+1}}.

struct Crossing {
  std::size_t enter = 0;  // sigma
  std::size_t exit = 0;   // tau; equals sites.size() when truncated
  Site label{};           // box entered
  bool truncated = false;
};

std::vector<Crossing> box_crossings(const WalkTrace& trace, const std::function<bool(const Site&)>& marked,
                                    int R);
std::vector<Crossing> box_crossings(const WalkTrace& trace, const SiteSet& marked_labels, int R);

// ---------------------------------------------------------------------------
// Lattice animals.

struct LatticeAnimal {
  int d = 1;
  std::vector<Site> labels;  // sorted, unique
  std::size_t size() const { return labels.size(); }
  bool contains(const Site& v) const;
};

bool is_connected(const LatticeAnimal& animal);

// {[S_k]_R : 0 <= k < stop_index}. Throws DomainError if stop_index > sites.size().
LatticeAnimal path_animal(const WalkTrace& trace, int R, std::size_t stop_index);

struct AnimalEnumeration {
  std::size_t count = 0;
  std::vector<LatticeAnimal> animals;  // filled when requested
};

// Connected ell-site subsets of Z^d containing the origin, d in {1,2},
// ell <= 8. Throws ResourceError outside that budget.
AnimalEnumeration enumerate_animals(int d, int ell, bool keep_list = false);

}  // namespace rwpot
