#pragma once

#include <cmath>
#include <vector>

#include "rwpot/field.hpp"
#include "rwpot/lattice.hpp"

namespace oracle {

struct PathSum {
  double value = 0.0;  // weight of paths that reach y within max_len steps
  double tail = 0.0;   // weight still alive at max_len; bounds the remainder
};

// Sum over nearest-neighbour paths x -> y inside the box of length <= max_len
// of (2d)^{-len} exp(-sum of omega over the path before y), by propagating the
// prefix weights one step at a time.
inline PathSum path_sum(const rwpot::PotentialField& omega, const rwpot::Site& x, const rwpot::Site& y, int max_len) {
  const rwpot::Box& box = omega.box;
  const int d = box.dim();
  PathSum out;
  if (x == y) {
    out.value = 1.0;
    return out;
  }
  std::vector<double> alive(box.size(), 0.0), next(box.size());
  alive[box.index(x)] = 1.0;
  const std::size_t target = box.index(y);
  for (int len = 1; len <= max_len; ++len) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (alive[i] == 0.0) continue;
      const double w = alive[i] * std::exp(-omega.values[i]) / (2.0 * d);
      rwpot::for_each_neighbour(box.site(i), d, [&](const rwpot::Site& t) {
        if (box.contains(t)) next[box.index(t)] += w;
      });
    }
    out.value += next[target];
    next[target] = 0.0;
    alive.swap(next);
  }
  for (double a : alive) out.tail += a;
  return out;
}

}  // namespace oracle
