#include "rwpot/walk.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "rwpot/errors.hpp"

namespace rwpot {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_R(int R) {
  if (R < 2 || R % 2 != 0) throw DomainError("R-boxes need an even R >= 2");
}

}  // namespace

Site box_index(const Site& z, int R, int d) {
  check_R(R);
  Site v{};
  for (int i = 0; i < d; ++i) v[i] = floor_div(z[i] + R / 2, R);
  return v;
}

Box box_sites(const Site& label, int R, int d) {
  check_R(R);
  Site lo{}, hi{};
  for (int i = 0; i < d; ++i) {
    lo[i] = R * label[i] - R / 2;
    hi[i] = R * label[i] + R / 2 - 1;
  }
  return Box(d, lo, hi);
}

Box aligned_cover(const Box& region, int R) {
  const int d = region.dim();
  const Site vlo = box_index(region.lo(), R, d);
  const Site vhi = box_index(region.hi(), R, d);
  Site lo{}, hi{};
  for (int i = 0; i < d; ++i) {
    lo[i] = R * vlo[i] - R / 2;
    hi[i] = R * vhi[i] + R / 2 - 1;
  }
  return Box(d, lo, hi);
}

WalkTrace sample_walk_until(const Site& start, const std::function<bool(const Site&)>& in_target,
                            std::size_t cap, std::uint64_t seed, int d) {
  if (cap < 1) throw DomainError("sample_walk_until: step budget must be >= 1");
  WalkTrace trace;
  trace.d = d;
  trace.sites.push_back(start);
  if (in_target(start)) {
    trace.hit_index = 0;
    return trace;
  }
  Walker walker(start, d, seed);
  for (std::size_t k = 1; k <= cap; ++k) {
    walker.step();
    trace.sites.push_back(walker.position());
    if (in_target(walker.position())) {
      trace.hit_index = k;
      return trace;
    }
  }
  trace.capped = true;
  return trace;
}

WalkTrace sample_walk_until(const Site& start, const SiteSet& target, std::size_t cap, std::uint64_t seed,
                            int d) {
  return sample_walk_until(
      start, [&](const Site& s) { return std::find(target.begin(), target.end(), s) != target.end(); }, cap,
      seed, d);
}

WalkTrace trace_from_path(std::vector<Site> sites, int d) {
  if (sites.empty()) throw DomainError("trace_from_path: empty path");
  for (std::size_t k = 1; k < sites.size(); ++k) {
    if (l1_distance(sites[k - 1], sites[k], d) != 1) throw DomainError("trace_from_path: non-neighbour step");
  }
  WalkTrace t;
  t.d = d;
  t.sites = std::move(sites);
  return t;
}

std::optional<std::size_t> hitting_index(const WalkTrace& trace,
                                         const std::function<bool(const Site&)>& in_set) {
  for (std::size_t k = 0; k < trace.sites.size(); ++k) {
    if (in_set(trace.sites[k])) return k;
  }
  return std::nullopt;
}

LocalTimeField local_times(const WalkTrace& trace, std::size_t N) {
  if (N > trace.sites.size()) throw DomainError("local_times: horizon exceeds the trace");
  LocalTimeField f;
  f.horizon = N;
  for (std::size_t k = 0; k < N; ++k) ++f.counts[trace.sites[k]];
  return f;
}

std::size_t range_size(const WalkTrace& trace, std::size_t k) {
  if (k > trace.steps()) throw DomainError("range_size: k exceeds the trace");
  std::unordered_set<Site, SiteHash> seen;
  for (std::size_t j = 0; j <= k; ++j) seen.insert(trace.sites[j]);
  return seen.size();
}

std::vector<Crossing> box_crossings(const WalkTrace& trace, const std::function<bool(const Site&)>& marked,
                                    int R) {
  check_R(R);
  const int d = trace.d;
  const std::size_t len = trace.sites.size();
  std::vector<Crossing> out;
  std::size_t k = 1;  // tau_0
  while (k < len) {
    // sigma: first k >= tau_j in a marked box.
    while (k < len && !marked(box_index(trace.sites[k], R, d))) ++k;
    if (k >= len) break;
    Crossing c;
    c.enter = k;
    c.label = box_index(trace.sites[k], R, d);
    std::size_t j = k + 1;
    while (j < len && box_index(trace.sites[j], R, d) == c.label) ++j;
    c.exit = j;
    c.truncated = (j >= len);
    out.push_back(c);
    k = j;
  }
  return out;
}

std::vector<Crossing> box_crossings(const WalkTrace& trace, const SiteSet& marked_labels, int R) {
  std::unordered_set<Site, SiteHash> marked(marked_labels.begin(), marked_labels.end());
  return box_crossings(trace, [&](const Site& v) { return marked.count(v) > 0; }, R);
}

bool LatticeAnimal::contains(const Site& v) const {
  return std::binary_search(labels.begin(), labels.end(), v);
}

bool is_connected(const LatticeAnimal& animal) {
  if (animal.labels.empty()) return true;
  std::unordered_set<Site, SiteHash> members(animal.labels.begin(), animal.labels.end());
  std::unordered_set<Site, SiteHash> seen{animal.labels.front()};
  std::deque<Site> queue{animal.labels.front()};
  while (!queue.empty()) {
    const Site s = queue.front();
    queue.pop_front();
    for_each_neighbour(s, animal.d, [&](const Site& t) {
      if (members.count(t) && seen.insert(t).second) queue.push_back(t);
    });
  }
  return seen.size() == members.size();
}

LatticeAnimal path_animal(const WalkTrace& trace, int R, std::size_t stop_index) {
  if (stop_index > trace.sites.size()) throw DomainError("path_animal: stop index exceeds the trace");
  LatticeAnimal a;
  a.d = trace.d;
  for (std::size_t k = 0; k < stop_index; ++k) a.labels.push_back(box_index(trace.sites[k], R, trace.d));
  std::sort(a.labels.begin(), a.labels.end());
  a.labels.erase(std::unique(a.labels.begin(), a.labels.end()), a.labels.end());
  return a;
}

AnimalEnumeration enumerate_animals(int d, int ell, bool keep_list) {
  if (d < 1 || d > 2 || ell < 1 || ell > 8) {
    throw ResourceError("enumerate_animals: budget is d in {1,2}, 1 <= ell <= 8");
  }
  // Grow every animal of size k by one boundary site; sorted site lists
  // deduplicate animals reached along different growth orders.
  std::set<std::vector<Site>> level{{Site{}}};
  for (int k = 1; k < ell; ++k) {
    std::set<std::vector<Site>> next;
    for (const auto& cells : level) {
      for (const Site& c : cells) {
        for_each_neighbour(c, d, [&](const Site& t) {
          if (std::binary_search(cells.begin(), cells.end(), t)) return;
          std::vector<Site> grown = cells;
          grown.insert(std::lower_bound(grown.begin(), grown.end(), t), t);
          next.insert(std::move(grown));
        });
      }
    }
    level = std::move(next);
  }
  AnimalEnumeration out;
  out.count = level.size();
  if (keep_list) {
    for (const auto& cells : level) out.animals.push_back(LatticeAnimal{d, cells});
  }
  return out;
}

}  // namespace rwpot
