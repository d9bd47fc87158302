#include <doctest.h>

#include <cmath>

#include "rwpot/annealed.hpp"
#include "rwpot/errors.hpp"
#include "rwpot/quenched.hpp"

using namespace rwpot;

namespace {
const Distribution half = Distribution::atomic({{0, 0.5}, {1, 0.5}});
const double kLn2Cost = -std::log(2.0 - std::sqrt(3.0));
}  // namespace

TEST_CASE("walk_mc on the zero potential only loses capped walks") {
  const auto b = b_walk_mc(Distribution::point(0), make_site({8}), 1, 4000, default_walk_cap(make_site({8}), 1), 3);
  CHECK(b.cost.value == doctest::Approx(-std::log1p(-b.cost.capped_fraction)).epsilon(1e-12));
  CHECK(b.cost.capped_fraction < 0.2);
}

TEST_CASE("deterministic potentials reduce to one quenched solve") {
  const auto p = b_potential_mc(Distribution::point(std::log(2.0)), make_site({1}), 1, 50, 4096, 1);
  CHECK(p.cost.value == doctest::Approx(kLn2Cost).epsilon(1e-9));
  CHECK(p.cost.n_samples == 1);
  const auto w = b_walk_mc(Distribution::point(std::log(2.0)), make_site({1}), 1, 20000, 4096, 5);
  CHECK(std::abs(w.cost.value - kLn2Cost) <= 3 * w.cost.std_error);
}

TEST_CASE("walk_mc and potential_mc agree") {
  const auto w = b_walk_mc(half, make_site({4}), 1, 10000, default_walk_cap(make_site({4}), 1), 11);
  const auto p = b_potential_mc(half, make_site({4}), 1, 10000, 8, 12);
  CHECK(std::abs(w.cost.value - p.cost.value) <= 3 * std::hypot(w.cost.std_error, p.cost.std_error));
}

TEST_CASE("Jensen direction and annealed below quenched") {
  for (int y : {2, 4, 8}) {
    const auto p = b_potential_mc(half, make_site({y}), 1, 2000, 2 * y, 7);
    CHECK(p.cost.value <= p.quenched_mean + 3 * p.quenched_se);
  }
}

TEST_CASE("coupled potential_mc is monotone in the spec") {
  const Distribution F = Distribution::atomic({{0, 0.3}, {1, 0.7}});
  const Distribution G = Distribution::atomic({{0, 0.6}, {1, 0.4}});
  const auto bF = b_potential_mc(F, make_site({6}), 1, 500, 12, 2);
  const auto bG = b_potential_mc(G, make_site({6}), 1, 500, 12, 2);
  CHECK(bF.mean_e <= bG.mean_e);
}

TEST_CASE("walk_mc output does not depend on the worker count") {
  WalkMcOptions one, many;
  one.threads = 1;
  many.threads = 5;
  const auto a = b_walk_mc(half, make_site({6}), 1, 3000, 4096, 9, one);
  const auto b = b_walk_mc(half, make_site({6}), 1, 3000, 4096, 9, many);
  CHECK(a.cost.value == b.cost.value);
  CHECK(a.cost.std_error == b.cost.std_error);
}

TEST_CASE("multi-spec walk_mc reuses traces") {
  const auto m = b_walk_mc_multi({half, Distribution::point(0)}, make_site({4}), 1, 2000, 1024, 4);
  const auto s = b_walk_mc(half, make_site({4}), 1, 2000, 1024, 4);
  CHECK(m[0].cost.value == s.cost.value);
  CHECK(m[1].cost.value <= m[0].cost.value);
}

TEST_CASE("beta_upper_sequence examples") {
  BetaConfig pot;
  pot.estimator = AnnealedEstimator::PotentialMc;
  pot.fixed_margin = 1 << 16;
  pot.samples = 10;
  const auto z = beta_upper_sequence(Distribution::point(0), make_site({1}), 1, {4, 8}, 1, pot);
  CHECK(z.beta_hat < 1e-3);
  const auto l = beta_upper_sequence(Distribution::point(std::log(2.0)), make_site({1}), 1, {1, 4, 16}, 1, pot);
  for (const auto& e : l.per_n) CHECK(std::abs(e.cost.value - 1.316958) < 1e-6);

  BetaConfig walk;
  walk.samples = 10000;
  const auto h = beta_upper_sequence(half, make_site({1}), 1, {8, 16, 32, 64}, 3, walk);
  CHECK(h.sandwich_ok);
  CHECK(h.beta_hat > 0.0);
  CHECK(h.beta_hat <= std::log(2.0) + 3 * h.beta_se);
  CHECK(h.lower_bound == doctest::Approx(-std::log(0.5 * (1 + std::exp(-1.0)))));
  // Subadditivity of the estimates.
  for (std::size_t i = 0; i + 1 < h.per_n.size(); ++i) {
    const auto& a = h.per_n[i].cost;
    const auto& b = h.per_n[i + 1].cost;
    CHECK(b.value <= a.value + 3 * std::hypot(a.std_error, b.std_error));
  }
}

TEST_CASE("annealed below quenched per unit") {
  BetaConfig walk;
  walk.samples = 5000;
  const auto b = beta_upper_sequence(half, make_site({1}), 1, {16}, 5, walk);
  const auto a = alpha_estimate(half, make_site({1}), 1, {16}, 300, 6);
  CHECK(b.beta_hat <= a[0].per_step.value + 3 * std::hypot(b.beta_se, a[0].per_step.std_error));
}

TEST_CASE("estimator names") {
  CHECK(parse_estimator("walk_mc") == AnnealedEstimator::WalkMc);
  CHECK(to_string(AnnealedEstimator::PotentialMc) == "potential_mc");
  CHECK_THROWS_AS(parse_estimator("nope"), DomainError);
}
