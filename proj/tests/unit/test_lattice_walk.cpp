#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rwpot/comparison.hpp"
#include "rwpot/errors.hpp"
#include "rwpot/stats.hpp"
#include "rwpot/walk.hpp"

using namespace rwpot;

TEST_CASE("box_index examples") {
  CHECK(box_index(make_site({-1}), 2, 1)[0] == 0);
  CHECK(box_index(make_site({1}), 2, 1)[0] == 1);
  const Site v = box_index(make_site({2, -3}), 4, 2);
  CHECK(v[0] == 1);
  CHECK(v[1] == -1);
  CHECK_THROWS_AS(box_index(make_site({0}), 3, 1), DomainError);
  // R-boxes partition: every site of box_sites(v) maps back to v.
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      const Box bx = box_sites(make_site({a, b}), 4, 2);
      for (std::size_t i = 0; i < bx.size(); ++i) CHECK(box_index(bx.site(i), 4, 2) == make_site({a, b}));
    }
  }
}

TEST_CASE("walk hitting") {
  const auto t = sample_walk_until(make_site({3}), SiteSet{make_site({3})}, 100, 1, 1);
  CHECK(t.steps() == 0);
  CHECK(t.hit_index == std::optional<std::size_t>(0));
  std::size_t hit = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    hit += sample_walk_until(Site{}, SiteSet{make_site({1})}, 1000000, derive_seed(4, s), 1).hit_index.has_value();
  }
  CHECK(hit >= 9990);
}

TEST_CASE("hitting n before -m") {
  std::size_t wins = 0;
  const std::size_t runs = 20000;
  for (std::uint64_t s = 0; s < runs; ++s) {
    const auto t = sample_walk_until(Site{}, SiteSet{make_site({3}), make_site({-1})}, 1000000, derive_seed(8, s), 1);
    wins += t.sites.back()[0] == 3;
  }
  const auto p = proportion(wins, runs);
  CHECK(std::abs(p.mean - 0.25) <= 3 * p.se);
}

TEST_CASE("local times and range") {
  const auto t = trace_from_path({make_site({0}), make_site({1}), make_site({0}), make_site({1})}, 1);
  const auto lt = local_times(t, 3);
  CHECK(lt.at(make_site({0})) == 2);
  CHECK(lt.at(make_site({1})) == 1);
  CHECK(local_times(t, 0).counts.empty());
  CHECK(range_size(t, 0) == 1);
  CHECK(range_size(t, 3) == 2);
  CHECK_THROWS_AS(trace_from_path({make_site({0}), make_site({2})}, 1), DomainError);
  const auto w = sample_walk_until(Site{}, SiteSet{make_site({50, 50})}, 5000, 3, 2);
  const auto all = local_times(w, w.sites.size());
  std::size_t total = 0;
  for (const auto& [z, c] : all.counts) total += c;
  CHECK(total == w.sites.size());
}

TEST_CASE("range growth in d=2") {
  std::vector<double> ranges;
  const std::size_t k = 10000;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto t = sample_walk_until(Site{}, [](const Site&) { return false; }, k, derive_seed(2, s), 2);
    ranges.push_back(static_cast<double>(range_size(t, k)));
  }
  std::nth_element(ranges.begin(), ranges.begin() + 100, ranges.end());
  CHECK(ranges[100] > std::sqrt(double(k)) / std::log(double(k)));
}

TEST_CASE("box crossings examples") {
  const auto t = trace_from_path({make_site({0}), make_site({1}), make_site({2}), make_site({3})}, 1);
  const auto c = box_crossings(t, SiteSet{make_site({1})}, 2);
  REQUIRE(c.size() == 1);
  CHECK(c[0].enter == 1);
  CHECK(c[0].exit == 3);
  CHECK(box_crossings(t, SiteSet{}, 2).empty());
  const auto stay = trace_from_path({make_site({1}), make_site({2}), make_site({1})}, 1);
  const auto s = box_crossings(stay, SiteSet{make_site({1})}, 2);
  REQUIRE(s.size() == 1);
  CHECK(s[0].truncated);
}

TEST_CASE("time inside marked boxes equals the summed crossing durations") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = sample_walk_until(Site{}, SiteSet{make_site({12, 0})}, 20000, seed, 2);
    auto marked = [](const Site& v) { return (v[0] + 3 * v[1]) % 3 == 0; };
    std::size_t inside = 0;
    for (std::size_t k = 1; k < t.sites.size(); ++k) inside += marked(box_index(t.sites[k], 2, 2));
    std::size_t summed = 0;
    for (const auto& c : box_crossings(t, marked, 2)) summed += c.exit - c.enter;
    CHECK(inside == summed);
  }
}

TEST_CASE("path animals") {
  const auto t = trace_from_path({make_site({0}), make_site({1}), make_site({2}), make_site({3}), make_site({4}),
                                  make_site({5})},
                                 1);
  const auto a = path_animal(t, 2, 5);
  REQUIRE(a.size() == 3);
  CHECK(a.labels[0][0] == 0);
  CHECK(a.labels[2][0] == 2);
  CHECK(path_animal(t, 2, 1).size() == 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Site target = make_site({9, -4});
    const auto w = sample_walk_until(Site{}, SiteSet{target}, 200000, seed, 2);
    if (!w.hit_index) continue;
    const auto an = path_animal(w, 4, *w.hit_index);
    CHECK(is_connected(an));
    CHECK(an.contains(box_index(Site{}, 4, 2)));
    CHECK(static_cast<long>(an.size()) >= linf_norm(target, 2) / 4);
  }
}

TEST_CASE("animal enumeration against known counts") {
  CHECK(enumerate_animals(1, 3).count == 3);
  const std::size_t expected[] = {1, 4, 18, 76, 315, 1296};
  for (int ell = 1; ell <= 6; ++ell) {
    const auto e = enumerate_animals(2, ell);
    CHECK(e.count == expected[ell - 1]);
    CHECK(double(e.count) <= std::pow(4.0, 2 * ell));
  }
  CHECK_THROWS_AS(enumerate_animals(2, 12), ResourceError);
}

namespace {
// Independent oracle: grow every connected set by adding neighbours and
// deduplicate as sorted site lists.
std::size_t brute_animals(int ell) {
  std::vector<std::vector<Site>> layer{{Site{}}};
  for (int k = 1; k < ell; ++k) {
    std::vector<std::vector<Site>> next;
    for (const auto& a : layer) {
      for (const Site& s : a) {
        for_each_neighbour(s, 2, [&](const Site& t) {
          if (std::find(a.begin(), a.end(), t) != a.end()) return;
          auto b = a;
          b.push_back(t);
          std::sort(b.begin(), b.end());
          next.push_back(std::move(b));
        });
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  return layer.size();
}
}  // namespace

TEST_CASE("animal enumeration matches the growth oracle") {
  for (int ell = 1; ell <= 7; ++ell) CHECK(enumerate_animals(2, ell).count == brute_animals(ell));
}

TEST_CASE("animal white fraction") {
  const auto an = enumerate_animals(2, 3, true).animals.front();
  CHECK(animal_white_fraction(an, [](const Site&) { return true; }).fraction == 1.0);
  const auto none = animal_white_fraction(an, [](const Site&) { return false; });
  CHECK(none.fraction == 0.0);
  CHECK_FALSE(none.at_least_half);
}
