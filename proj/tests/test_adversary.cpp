#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "test_helpers.hpp"
#include "wcf/adversary.hpp"

using namespace wcf;
using test::bench_efficiencies;
using test::ideal_efficiencies;

TEST_CASE("bob_optimal_attack") {
  SUBCASE("blind Alice cannot sanction") {
    PathEfficiencies eff = ideal_efficiencies();
    eff.eta_a_s = 0.0;
    const OutcomeDistribution d = bob_optimal_attack(eff, 1.0);
    CHECK(d.bob_wins == 1.0);
    CHECK(d.bob_sanctioned == 0.0);
  }
  SUBCASE("lossless case sanctions with probability 1/4") {
    const OutcomeDistribution d = bob_optimal_attack(ideal_efficiencies(), 1.0);
    CHECK(d.bob_sanctioned == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("benchmarked efficiencies") {
    const OutcomeDistribution d = bob_optimal_attack(bench_efficiencies(), 0.96);
    CHECK(std::abs(d.bob_sanctioned - 0.08400689509886591) < 1e-12);
  }
  SUBCASE("the two outcomes are complementary") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uv(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const OutcomeDistribution d =
          bob_optimal_attack(test::random_efficiencies(rng), uv(rng));
      CHECK(d.bob_wins + d.bob_sanctioned == 1.0);
      CHECK(d.alice_wins == 0.0);
      CHECK(d.abort == 0.0);
    }
  }
}

TEST_CASE("alice_x_attack") {
  SUBCASE("honest x reproduces the honest outcomes") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> uv(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const PathEfficiencies eff = test::random_factorized_efficiencies(rng);
      const double v = uv(rng);
      const OutcomeDistribution honest = honest_outcomes(eff, v);
      const OutcomeDistribution attack =
          alice_x_attack(honest_reflectivities(eff, v).x, eff, v);
      CHECK(std::abs(attack.alice_wins - honest.alice_wins) < 1e-12);
      CHECK(std::abs(attack.bob_wins - honest.bob_wins) < 1e-12);
      CHECK(std::abs(attack.alice_sanctioned - honest.alice_sanctioned) < 1e-12);
      CHECK(std::abs(attack.abort - honest.abort) < 1e-12);
    }
  }
  SUBCASE("x = 1 starves Bob") {
    const OutcomeDistribution d = alice_x_attack(1.0, bench_efficiencies(), 0.96);
    CHECK(d.bob_wins == 0.0);
    CHECK(d.alice_wins == doctest::Approx(0.5 * bench_efficiencies().eta_a_v1).epsilon(1e-14));
  }
  SUBCASE("winning probability peaks inside the expected band") {
    const std::vector<double> grid = sweep_grid(0.0, 1.0, kDefaultSweepPoints);
    double best_x = 0.0, best = -1.0;
    for (double x : grid) {
      const double paw = alice_x_attack(x, bench_efficiencies(), 0.96).alice_wins;
      if (paw > best) {
        best = paw;
        best_x = x;
      }
    }
    CHECK(best_x >= 0.70);
    CHECK(best_x <= 0.82);
  }
  SUBCASE("rejects x outside [0,1]") {
    CHECK_THROWS_AS(alice_x_attack(1.5, bench_efficiencies(), 0.96), std::domain_error);
  }
}

TEST_CASE("interest function") {
  OutcomeDistribution d;
  SUBCASE("symmetric honest distribution has zero interest") {
    d.alice_wins = d.bob_wins = 0.3;
    d.abort = 0.4;
    CHECK(interest(d, 0.0) == 0.0);
    CHECK(interest(d, 5.0) == 0.0);
  }
  SUBCASE("certain win") {
    d.alice_wins = 0.2;
    d.abort = 0.8;
    CHECK(interest(d, 0.0) == 1.0);
  }
  SUBCASE("worked example") {
    d.alice_wins = 0.3;
    d.bob_wins = 0.1;
    d.alice_sanctioned = 0.1;
    d.abort = 0.5;
    CHECK(interest(d, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("degenerate denominator and bad delta") {
    OutcomeDistribution empty;
    empty.abort = 1.0;
    CHECK_THROWS_AS(interest(empty, 1.0), std::domain_error);
    CHECK_THROWS_AS(interest(d, -0.5), std::domain_error);
  }
}

TEST_CASE("interest_bob mirrors the roles") {
  OutcomeDistribution d;
  d.alice_wins = 0.1;
  d.bob_wins = 0.3;
  d.bob_sanctioned = 0.1;
  d.abort = 0.5;
  CHECK(interest_bob(d, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("fairness_under_sanction") {
  SUBCASE("no sanction transfer leaves an honest distribution fair") {
    const OutcomeDistribution honest = honest_outcomes(bench_efficiencies(), 0.96);
    CHECK(fairness_under_sanction(honest, 0.0) == 1.0);
  }
  SUBCASE("worked example at delta = 1") {
    OutcomeDistribution d;
    d.alice_wins = 0.3;
    d.bob_wins = 0.1;
    d.alice_sanctioned = 0.1;
    d.abort = 0.5;
    CHECK(fairness_under_sanction(d, 1.0) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(fairness_under_sanction(d, 1.0) - (1.0 - std::abs(interest(d, 1.0)))) <
          1e-12);
  }
  SUBCASE("identity with the interest function on random distributions") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
      const OutcomeDistribution d = test::random_distribution(rng);
      const double delta = ud(rng);
      CHECK(std::abs(fairness_under_sanction(d, delta) -
                     (1.0 - std::abs(interest(d, delta)))) < 1e-12);
    }
  }
  SUBCASE("the win-transfer reading only exists for delta in [0,1]") {
    const OutcomeDistribution honest = honest_outcomes(bench_efficiencies(), 0.96);
    CHECK_THROWS_AS(fairness_under_sanction(honest, 1.5), std::domain_error);
    CHECK_NOTHROW(interest(honest, 1.5));
  }
}

TEST_CASE("interest decreases with the deterrent factor") {
  OutcomeDistribution d;
  d.alice_wins = 0.4;
  d.bob_wins = 0.1;
  d.alice_sanctioned = 0.2;
  d.abort = 0.3;
  double previous = interest(d, 0.0);
  for (double delta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double current = interest(d, delta);
    CHECK(current < previous);
    previous = current;
  }
}

TEST_CASE("the most interesting x never grows with the deterrent factor") {
  const std::vector<double> grid = sweep_grid(0.0, 1.0, kDefaultSweepPoints);
  std::vector<OutcomeDistribution> dists;
  dists.reserve(grid.size());
  for (double x : grid) dists.push_back(alice_x_attack(x, bench_efficiencies(), 0.96));

  double previous_argmax = 1.0;
  for (double delta : {0.0, 0.5, 1.0, 2.0}) {
    double best = -2.0, best_x = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double value = interest(dists[i], delta);
      if (value > best) {
        best = value;
        best_x = grid[i];
      }
    }
    CHECK(best_x <= previous_argmax + 1e-12);
    previous_argmax = best_x;
  }
}

TEST_CASE("sweep_grid endpoints and spacing") {
  const std::vector<double> g = sweep_grid(0.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK_THROWS_AS(sweep_grid(0.0, 1.0, 1), std::domain_error);
}
