#include <doctest.h>

#include <cmath>
#include <functional>

#include "rwpot/errors.hpp"
#include "rwpot/percolation.hpp"
#include "rwpot/random.hpp"

using namespace rwpot;

namespace {

PercolationConfig grid(int w, int h, const std::vector<std::string>& rows) {
  const Box box(2, make_site({0, 0}), make_site({w - 1, h - 1}));
  std::vector<char> open(box.size());
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) open[box.index(make_site({x, y}))] = rows[y][x] == '.';
  }
  return PercolationConfig::from_open(box, open);
}

// Recursive flood fill; the partition as a same-cluster predicate.
std::vector<int> flood(const PercolationConfig& c) {
  std::vector<int> lab(c.box.size(), -1);
  int next = 0;
  std::function<void(const Site&, int)> fill = [&](const Site& s, int id) {
    if (!c.is_open(s) || lab[c.box.index(s)] >= 0) return;
    lab[c.box.index(s)] = id;
    for_each_neighbour(s, 2, [&](const Site& t) { fill(t, id); });
  };
  for (std::size_t i = 0; i < c.box.size(); ++i) {
    if (c.open[i] && lab[i] < 0) fill(c.box.site(i), next++);
  }
  return lab;
}

}  // namespace

TEST_CASE("cluster examples") {
  const Box box(2, make_site({0, 0}), make_site({4, 4}));
  const auto all = clusters(PercolationConfig::from_open(box, std::vector<char>(box.size(), 1)));
  CHECK(all.count() == 1);
  CHECK(all.sizes[0] == box.size());
  const Box line(1, make_site({0}), make_site({9}));
  std::vector<char> alt(10);
  for (int i = 0; i < 10; ++i) alt[i] = i % 2 == 0;
  const auto a = clusters(PercolationConfig::from_open(line, alt));
  CHECK(a.count() == 5);
  for (auto s : a.sizes) CHECK(s == 1);
}

TEST_CASE("clusters match a flood-fill oracle on 8x8 boxes") {
  const Box box(2, make_site({0, 0}), make_site({7, 7}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = PercolationConfig::from_field(realize(sample_uniform_field(box, seed), Distribution::uniform(0, 1)), 0.55);
    const auto cl = clusters(c);
    const auto fl = flood(c);
    for (std::size_t i = 0; i < box.size(); ++i) {
      CHECK((cl.label[i] < 0) == (fl[i] < 0));
      for (std::size_t j = i + 1; j < box.size(); ++j) {
        if (cl.label[i] >= 0 && cl.label[j] >= 0) CHECK((cl.label[i] == cl.label[j]) == (fl[i] == fl[j]));
      }
    }
  }
}

TEST_CASE("chemical distance examples") {
  const Box box(2, make_site({0, 0}), make_site({12, 3}));
  const auto all = PercolationConfig::from_open(box, std::vector<char>(box.size(), 1));
  CHECK(chemical_distance(all, make_site({0, 1}), make_site({12, 1})) == 12);
  const Box line(1, make_site({0}), make_site({4}));
  CHECK_FALSE(chemical_distance(PercolationConfig::from_open(line, {1, 1, 0, 1, 1}), make_site({0}), make_site({4})));
  // A closed block forces the path around it: 4 right plus 2 up and 2 down.
  const auto detour = grid(5, 5, {".....", ".###.", ".###.", ".###.", "....."});
  CHECK(chemical_distance(detour, make_site({0, 2}), make_site({4, 2})) == 8);
}

TEST_CASE("chemical distance is a metric on sampled triples") {
  const Box box(2, make_site({0, 0}), make_site({14, 14}));
  const auto c = PercolationConfig::from_field(realize(sample_uniform_field(box, 5), Distribution::uniform(0, 1)), 0.8);
  const auto cl = clusters(c);
  std::vector<Site> members;
  for (std::size_t i = 0; i < box.size(); i += 7) {
    if (cl.label[i] == cl.largest) members.push_back(box.site(i));
  }
  for (std::size_t i = 0; i + 2 < members.size(); i += 3) {
    const auto &u = members[i], &v = members[i + 1], &w = members[i + 2];
    CHECK(*chemical_distance(c, u, v) == *chemical_distance(c, v, u));
    CHECK(*chemical_distance(c, u, w) <= *chemical_distance(c, u, v) + *chemical_distance(c, v, w));
    CHECK(*chemical_distance(c, u, v) >= l1_distance(u, v, 2));
  }
}

TEST_CASE("raising M never increases chemical distances") {
  const Box box(2, make_site({0, 0}), make_site({19, 19}));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto w = realize(sample_uniform_field(box, seed), Distribution::uniform(0, 1));
    const auto lo = PercolationConfig::from_field(w, 0.7), hi = PercolationConfig::from_field(w, 0.85);
    const auto d_lo = chemical_distance(lo, make_site({0, 10}), make_site({19, 10}));
    const auto d_hi = chemical_distance(hi, make_site({0, 10}), make_site({19, 10}));
    if (d_lo) {
      REQUIRE(d_hi);
      CHECK(*d_hi <= *d_lo);
    }
  }
}

TEST_CASE("projection to the giant cluster") {
  const Box line(1, make_site({0}), make_site({5}));
  const auto c = PercolationConfig::from_open(line, {0, 0, 1, 1, 0, 0});
  const auto cl = clusters(c);
  CHECK(project_to_giant(c, cl, make_site({0}))[0] == 2);
  CHECK(project_to_giant(c, cl, make_site({3}))[0] == 3);
  const auto tie = grid(3, 3, {"...", "#.#", "..."});
  const auto tl = clusters(tie);
  const Site p = project_to_giant(tie, tl, make_site({0, 1}));
  CHECK(p == make_site({0, 0}));
}

TEST_CASE("mu estimates") {
  const auto all = mu_estimate(Distribution::point(0), 0.0, make_site({1, 0}), 2, {8}, 3, 1);
  CHECK(all[0].mu_hat == 1.0);
  const auto diag = mu_estimate(Distribution::point(0), 0.0, make_site({1, 1}), 2, {4}, 2, 1);
  CHECK(diag[0].mu_hat == 2.0);
  const Distribution u = Distribution::uniform(0, 1);
  double prev = INFINITY;
  for (double M : {0.9, 0.95, 0.99}) {
    const auto p = mu_estimate(u, M, make_site({1, 0}), 2, {16}, 40, 2);
    CHECK(p[0].mu_hat >= 1.0);
    CHECK(p[0].mu_hat <= prev);
    if (M == 0.95) CHECK(p[0].mu_hat <= 1.3);
    prev = p[0].mu_hat;
  }
  CHECK_THROWS_AS(mu_estimate(u, 0.5, make_site({1, 0}), 2, {8}, 4, 1), PreconditionError);
  CHECK_THROWS_AS(mu_estimate(u, 0.9, make_site({1}), 1, {8}, 4, 1), DomainError);
}

TEST_CASE("chain bound on solved instances") {
  const auto c = chain_check(Distribution::uniform(0, 1), 0.9, 0.5, make_site({1, 0}), 2, 6, 20, 3);
  CHECK(c.checked > 0);
  CHECK(c.violations == 0);
}
