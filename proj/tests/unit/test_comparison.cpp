#include <doctest.h>

#include <cmath>

#include "rwpot/comparison.hpp"
#include "rwpot/errors.hpp"

using namespace rwpot;

namespace {
const Distribution bern_F = Distribution::atomic({{0, 0.3}, {1, 0.7}});
const Distribution bern_G = Distribution::atomic({{0, 0.6}, {1, 0.4}});
const Distribution half = Distribution::atomic({{0, 0.5}, {1, 0.5}});
}  // namespace

TEST_CASE("relative entropy") {
  CHECK(relative_entropy(0.5 - 1e-9, 0.5) < 1e-15);
  CHECK(relative_entropy(0.5, 0.9) == doctest::Approx(0.5108256).epsilon(1e-6));
  CHECK(relative_entropy(0.5, 0.99) == doctest::Approx(1.614).epsilon(1e-3));
  CHECK(relative_entropy(0.5, 0.99) > relative_entropy(0.5, 0.9));
}

TEST_CASE("classify_white examples") {
  const Box box(1, make_site({0}), make_site({1}));
  const auto one = PotentialField::constant(box, 1.0), zero = PotentialField::constant(box, 0.0);
  CHECK(classify_white(box, one, zero, 0.5, 1.0));
  CHECK_FALSE(classify_white(box, zero, zero, 0.5, 1.0));
  auto high = zero;
  high.values[0] = 2.0;
  auto big = PotentialField::constant(box, 5.0);
  CHECK_FALSE(classify_white(box, big, high, 0.5, 1.0));
}

TEST_CASE("white box probabilities") {
  const auto p = white_box_prob(Distribution::point(1), Distribution::point(0), 0.5, 1e6, 2, 1, 1000, 1);
  CHECK(p.rho == doctest::Approx(1.0));
  CHECK(p.empirical == 1.0);
  // rho = 0.5 pair: F = {0:0.25, 1:0.75}, G = {0:0.75, 1:0.25}.
  const Distribution F = Distribution::atomic({{0, 0.25}, {1, 0.75}});
  const Distribution G = Distribution::atomic({{0, 0.75}, {1, 0.25}});
  const auto q = white_box_prob(F, G, 0.5, 1e6, 2, 1, 20000, 2);
  CHECK(q.rho == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(q.formula == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(std::abs(q.empirical - q.formula) <= 3 * q.std_error);
  CHECK(q.rho_ge_h);
  const auto e = white_box_prob(Distribution::exponential(0.5), Distribution::exponential(1.0), 0.1, 0.0, 8, 2, 2000, 3);
  CHECK(e.empirical < 0.01);
}

TEST_CASE("choose_RM") {
  ChooseRMOptions o;
  o.samples = 20000;
  const auto pm = choose_RM(Distribution::point(1), Distribution::point(0), 1, 1, o);
  CHECK(pm.R == 2);
  CHECK(pm.M <= 1.0);
  CHECK_THROWS_AS(choose_RM(bern_F, bern_F, 1, 1, o), PreconditionError);
  const auto c = choose_RM(bern_F, bern_G, 1, 5, o);
  const auto fresh = white_box_prob(bern_F, bern_G, dominance_witness(bern_F, bern_G).eta0, c.M, c.R, 1, 20000, 99);
  const double low = fresh.empirical - 3 * fresh.std_error;
  CHECK((low >= 1.0 || relative_entropy(0.5, low) > 2 * std::log(2.0)));
}

TEST_CASE("delta0") {
  CHECK(delta0(std::log(2.0), 1, 2, 1.0) == doctest::Approx(1 - 0.5 * std::pow(2 * std::exp(1.0), -4)).epsilon(1e-12));
  CHECK(std::abs(delta0(std::log(2.0), 1, 2, 1.0) - 0.999428) < 1e-6);
  CHECK(delta0(1e-12, 1, 2, 1.0) == doctest::Approx(1.0));
  CHECK(delta0(0.5, 1, 2, 1.0) > delta0(1.0, 1, 2, 1.0));
  CHECK(delta0(0.5, 1, 2, 2.0) > delta0(0.5, 1, 2, 1.0));
  CHECK(delta0(0.5, 1, 4, 1.0) > delta0(0.5, 1, 2, 1.0));
}

TEST_CASE("animal failure table respects the Chernoff bound") {
  const auto t = animal_failure_table(0.9, 2, 1, {20}, 2000, 4);
  for (const auto& r : t.rows) CHECK(r.failure_rate <= r.chernoff_bound + 3 * r.std_error);
}

TEST_CASE("crossing statistics examples") {
  const auto path = trace_from_path({make_site({0}), make_site({1}), make_site({2}), make_site({3})}, 1);
  const Box cover(1, make_site({-1}), make_site({4}));
  auto omega = PotentialField::constant(cover, 0.0);
  CrossingParams cp;
  cp.kappa = 1.0;
  cp.R = 2;
  const auto none = crossing_statistics(path, omega, make_site({3}), cp);
  CHECK(none.good_in_animal == 0);
  CHECK(none.traversals == 0);
  omega.values[cover.index(make_site({1}))] = 1.0;
  const auto one = crossing_statistics(path, omega, make_site({3}), cp);
  CHECK(one.traversals == 1);
  CHECK(one.short_crossings == 1);
  CHECK(crossing_LB(1.0, 2, 1) == 4.0);
}

TEST_CASE("short crossings grow with B") {
  double prev = -1.0;
  for (double B : {0.05, 0.5, 5.0}) {
    std::size_t shorts = 0, total = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto t = sample_walk_until(Site{}, SiteSet{make_site({24})}, 100000, s, 1);
      Site lo = t.sites.front(), hi = lo;
      for (const auto& z : t.sites) {
        lo[0] = std::min(lo[0], z[0]);
        hi[0] = std::max(hi[0], z[0]);
      }
      const Box cover = aligned_cover(Box(1, lo, hi), 4);
      const auto omega = realize(sample_uniform_field(cover, s), bern_F);
      CrossingParams cp;
      cp.R = 4;
      cp.B = B;
      const auto st = crossing_statistics(t, omega, make_site({24}), cp);
      shorts += st.short_crossings;
      total += st.traversals;
    }
    const double f = double(shorts) / double(total);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(prev > 0.9);
}

TEST_CASE("coupled gap experiments") {
  GapOptions o;
  o.alpha.fixed_margin = 1 << 20;
  const auto det = coupled_gap_experiment(Distribution::point(1), Distribution::point(0), make_site({1}), 1, {4}, 1,
                                          Mode::Quenched, 1, o);
  CHECK(std::abs(det.rows[0].per_unit - std::acosh(std::exp(1.0))) < 1e-5);
  CHECK_THROWS_AS(coupled_gap_experiment(bern_F, bern_F, make_site({1}), 1, {4}, 10, Mode::Quenched, 1),
                  PreconditionError);
  const auto g = coupled_gap_experiment(bern_F, bern_G, make_site({1}), 1, {16}, 400, Mode::Quenched, 2);
  CHECK(g.rows[0].positive);
  CHECK(g.site_violations == 0);
  CHECK(g.negative_gaps == 0);
  const auto a = coupled_gap_experiment(bern_F, bern_G, make_site({1}), 1, {8}, 2000, Mode::Annealed, 3);
  CHECK(a.rows[0].gap > 0.0);
}

TEST_CASE("criterion_d1 examples") {
  const auto r1 = criterion_d1(Distribution::point(1), Distribution::point(0), {0.0, 0.0});
  CHECK(r1.regime == Regime::StrictGap);
  const auto r2 = criterion_d1(bern_F, bern_G, {0.2, 0.01});
  CHECK(r2.regime == Regime::StrictGap);
  const auto r3 = criterion_d1(half, Distribution::point(0), {0.0, 0.001}, Estimate{0.69, 0.01});
  CHECK(r3.regime == Regime::StrictGap);
  CHECK(r3.ceiling_checked);
  CHECK(r3.ceiling_ok);
  const auto r4 = criterion_d1(half, Distribution::point(0), {0.0, 0.001}, Estimate{0.8, 0.01});
  CHECK_FALSE(r4.ceiling_ok);
  CHECK_THROWS_AS(criterion_d1(half, half, {0.1, 0.01}), PreconditionError);
  // F(0) = G(0) with a large beta_G: the coincidence regime is open.
  const Distribution F = Distribution::atomic({{0, 0.5}, {2, 0.5}});
  const Distribution G = Distribution::atomic({{0, 0.5}, {1, 0.5}});
  CHECK(criterion_d1(F, G, {2.0, 0.01}).regime != Regime::StrictGap);
}

TEST_CASE("gambler's ruin") {
  CHECK(gamblers_ruin(1, 1) == 0.5);
  CHECK(gamblers_ruin(3, 1) == 0.25);
  const auto m = gamblers_ruin_mc(3, 1, 100000, 12);
  CHECK(std::abs(m.mean - 0.25) <= 3 * m.se);
}

TEST_CASE("threshold scans") {
  const auto none = threshold_from_differences({0.2, 0.4, 0.6}, {0.5, 0.6, 0.7}, {0.01, 0.01, 0.01});
  CHECK_FALSE(none.resolved);
  CHECK(none.v0 == 0.0);
  CHECK(none.warning.find("no coincidence region resolved") != std::string::npos);
  std::vector<double> x, diff, se;
  for (int i = 1; i < 10; ++i) {
    x.push_back(0.1 * i);
    diff.push_back(std::max(0.0, 0.1 * i - 0.6));
    se.push_back(0.001);
  }
  const auto s = threshold_from_differences(x, diff, se);
  CHECK(s.resolved);
  CHECK(std::abs(s.v0 - 0.6) <= 0.1 + 1e-12);
}
