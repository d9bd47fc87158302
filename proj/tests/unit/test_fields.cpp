#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rwpot/errors.hpp"
#include "rwpot/field.hpp"
#include "rwpot/stats.hpp"

using namespace rwpot;

TEST_CASE("keyed fields do not depend on the domain") {
  const Box small(2, make_site({-2, -2}), make_site({2, 2}));
  const Box big(2, make_site({-10, -5}), make_site({7, 9}));
  const auto a = sample_uniform_field(small, 99), b = sample_uniform_field(big, 99);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(a.values[i] == b.at(small.site(i)));
}

TEST_CASE("uniform field moments and seed separation") {
  const Box box(1, make_site({0}), make_site({99999}));
  const auto u = sample_uniform_field(box, 1);
  CHECK(std::abs(mean_se(u.values).mean - 0.5) < 0.01);
  const Box b2(1, make_site({0}), make_site({9999}));
  const auto x = sample_uniform_field(b2, 11), y = sample_uniform_field(b2, 12);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < b2.size(); ++i) diff += x.values[i] != y.values[i];
  CHECK(diff > 9900);
  for (double v : u.values) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("realize examples") {
  const Box box(1, make_site({0}), make_site({99999}));
  const auto u = sample_uniform_field(box, 5);
  const auto zero = realize(u, Distribution::point(0));
  for (double v : zero.values) CHECK(v == 0.0);
  CHECK(std::abs(mean_se(realize(u, Distribution::exponential(1)).values).mean - 1.0) < 0.02);
  const auto f = realize(u, Distribution::point(1)), g = realize(u, Distribution::point(0));
  const auto delta = delta_field(f, g);
  for (double v : delta.values) CHECK(v == 1.0);
  for (double v : delta_field(f, f).values) CHECK(v == 0.0);
}

TEST_CASE("coupled Bernoulli pair: delta >= eta0 exactly where U in (0.3, 0.6]") {
  const Distribution F = Distribution::atomic({{0, 0.3}, {1, 0.7}});
  const Distribution G = Distribution::atomic({{0, 0.6}, {1, 0.4}});
  const Box box(2, make_site({0, 0}), make_site({99, 99}));
  const auto u = sample_uniform_field(box, 17);
  const auto dF = realize(u, F), dG = realize(u, G);
  const auto delta = delta_field(dF, dG);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    CHECK(dF.values[i] >= dG.values[i]);
    const bool in = u.values[i] > 0.3 && u.values[i] <= 0.6;
    CHECK((delta.values[i] >= 0.5) == in);
    hits += delta.values[i] >= 0.5;
  }
  // P(delta >= eta0) >= |H| = 0.1.
  const auto p = proportion(hits, box.size());
  CHECK(p.mean >= 0.1 - 3 * p.se);
}

TEST_CASE("delta_field rejects inverted pairs") {
  const Box box(1, make_site({0}), make_site({3}));
  CHECK_THROWS_AS(delta_field(PotentialField::constant(box, 0), PotentialField::constant(box, 1)), CouplingViolation);
}

TEST_CASE("field snapshot round trip") {
  const Box box(2, make_site({-1, 0}), make_site({2, 3}));
  auto f = realize(sample_uniform_field(box, 3), Distribution::exponential(1));
  std::stringstream ss;
  write_field(ss, f);
  const auto g = read_field(ss);
  CHECK(g.box == f.box);
  CHECK(g.values == f.values);
}
