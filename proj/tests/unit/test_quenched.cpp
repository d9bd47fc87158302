#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rwpot/errors.hpp"
#include "rwpot/quenched.hpp"
#include "rwpot/random.hpp"
#include "rwpot/stats.hpp"

using namespace rwpot;

namespace {
double constant_cost(double lambda) {
  const double s = std::exp(-lambda);
  return -std::log((1.0 - std::sqrt(1.0 - s * s)) / s);
}
}  // namespace

TEST_CASE("constant potential closed form") {
  const auto dom = TruncatedDomain::around(1, Site{}, make_site({1}), 64);
  const auto omega = PotentialField::constant(dom.with_margin(128).box, std::log(2.0));
  const auto sol = solve_e(omega, make_site({1}), dom);
  CHECK(std::abs(sol.value(Site{}) - (2.0 - std::sqrt(3.0))) < 1e-8);
  CHECK(sol.value(make_site({1})) == 1.0);
  const auto c = travel_cost_quenched(omega, Site{}, make_site({1}), dom);
  CHECK(std::abs(c.value - 1.316958) < 1e-6);
  CHECK(travel_cost_quenched(omega, make_site({1}), make_site({1}), dom).value == 0.0);
}

TEST_CASE("solve_e matches the path-sum oracle") {
  for (int d = 1; d <= 2; ++d) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Box box = d == 1 ? Box(1, make_site({0}), make_site({4})) : Box(2, make_site({0, 0}), make_site({4, 4}));
      const Site y = d == 1 ? make_site({2}) : make_site({2, 2});
      const auto omega = realize(sample_uniform_field(box, seed), Distribution::exponential(2.0));
      TruncatedDomain dom{box, Site{}, y, 1};
      const auto sol = solve_e(omega, y, dom);
      for (std::size_t i = 0; i < box.size(); ++i) {
        const auto o = oracle::path_sum(omega, box.site(i), y, 30);
        const double e = sol.value(box.site(i));
        CHECK(e >= o.value - 1e-12);
        CHECK(e <= o.value + o.tail + 1e-12);
      }
    }
  }
}

TEST_CASE("solver values lie in [0,1] and grow with the margin") {
  const Box wide(2, make_site({-12, -12}), make_site({16, 12}));
  const auto omega = realize(sample_uniform_field(wide, 3), Distribution::atomic({{0, 0.5}, {1, 0.5}}));
  const Site y = make_site({4, 0});
  double prev = 0.0, prev_gap = INFINITY;
  for (int L : {1, 2, 4}) {
    const auto dom = TruncatedDomain::around(2, Site{}, y, L);
    const auto sol = solve_e(omega, y, dom);
    for (double le : sol.log_e) CHECK(le <= 0.0);
    CHECK(sol.value(Site{}) >= prev);
    prev = sol.value(Site{});
    const auto c = travel_cost_quenched(omega, Site{}, y, dom);
    CHECK(c.truncation_gap() >= -1e-12);
    CHECK(c.truncation_gap() <= prev_gap + 1e-12);
    prev_gap = c.truncation_gap();
  }
}

TEST_CASE("triangle inequality and coupled monotonicity") {
  const Distribution F = Distribution::atomic({{0, 0.3}, {1, 0.7}});
  const Distribution G = Distribution::atomic({{0, 0.6}, {1, 0.4}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Box box(1, make_site({-40}), make_site({42}));
    const auto U = sample_uniform_field(box, seed);
    const auto wF = realize(U, F), wG = realize(U, G);
    auto a = [&](const PotentialField& w, int x, int y) {
      return travel_cost_quenched(w, make_site({x}), make_site({y}),
                                  TruncatedDomain::around(1, make_site({x}), make_site({y}), 10))
          .value;
    };
    CHECK(a(wG, 0, 2) <= a(wG, 0, 1) + a(wG, 1, 2) + 1e-9);
    CHECK(a(wF, 0, 2) >= a(wG, 0, 2));
  }
}

TEST_CASE("solve_e preconditions") {
  const auto dom = TruncatedDomain::around(1, Site{}, make_site({1}), 2);
  const auto omega = PotentialField::constant(dom.box, 0.1);
  CHECK_THROWS_AS(solve_e(omega, make_site({3}), dom), DomainError);
  CHECK_THROWS_AS(TruncatedDomain::around(1, Site{}, make_site({1}), 0), DomainError);
  const Box tiny(1, make_site({0}), make_site({1}));
  CHECK_THROWS_AS(solve_e(PotentialField::constant(tiny, 0.1), make_site({1}), dom), DomainError);
}

TEST_CASE("alpha_estimate examples") {
  for (int n : {1, 4, 16}) {
    const auto p = alpha_estimate(Distribution::point(0.7), make_site({1}), 1, {n}, 3, 1, {2, 4096});
    CHECK(p[0].per_step.value == doctest::Approx(constant_cost(0.7)).epsilon(1e-9));
    CHECK(p[0].per_step.n_samples == 1);
  }
  // Zero potential: the absorbing box [-L, n+L] gives e = (L+1)/(n+L+1),
  // which tends to 1 as the margin grows.
  const auto z = alpha_estimate(Distribution::point(0), make_site({1}), 1, {4, 8}, 2, 1, {});
  for (const auto& p : z) {
    const double L = 2.0 * p.n;
    CHECK(p.per_step.value == doctest::Approx(-std::log((L + 1) / (p.n + L + 1)) / p.n).epsilon(1e-9));
  }
  const auto far = alpha_estimate(Distribution::point(0), make_site({1}), 1, {4}, 1, 1, {2, 1000000});
  CHECK(far[0].per_step.value < 2e-6);

  const Distribution half = Distribution::atomic({{0, 0.5}, {1, 0.5}});
  const auto h = alpha_estimate(half, make_site({1}), 1, {16}, 200, 9, {});
  const double lo = -std::log(0.5 * (1 + std::exp(-1.0))), hi = std::log(2.0) + 0.5;
  CHECK(h[0].per_step.value >= lo);
  CHECK(h[0].per_step.value <= hi);
  CHECK(h[0].sandwich_ok);
  CHECK(h[0].lower_bound == doctest::Approx(lo));
}

TEST_CASE("subadditivity in expectation") {
  const Distribution half = Distribution::atomic({{0, 0.5}, {1, 0.5}});
  const auto p = alpha_estimate(half, make_site({1}), 1, {8, 16}, 300, 21, {});
  const double s = std::hypot(p[0].per_step.std_error, p[1].per_step.std_error);
  CHECK(p[1].per_step.value <= p[0].per_step.value + 3 * s);
}

TEST_CASE("d=2 alpha respects the sandwich") {
  const auto p = alpha_estimate(Distribution::uniform(0, 1), make_site({1, 0}), 2, {6}, 30, 4, {});
  CHECK(p[0].sandwich_ok);
  CHECK(p[0].per_step.value > 0.0);
}
