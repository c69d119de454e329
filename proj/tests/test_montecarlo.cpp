#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "test_helpers.hpp"
#include "wcf/adversary.hpp"
#include "wcf/montecarlo.hpp"

using namespace wcf;
using test::bench_efficiencies;
using test::ideal_efficiencies;

namespace {

NoiseModel quiet_noise(double pair_prob = 0.015) {
  NoiseModel n;
  n.pair_prob = pair_prob;
  n.herald_dark_prob = 0.0;
  n.signal_dark_prob = 0.0;
  return n;
}

std::array<std::uint64_t, 5> outcome_histogram(const std::vector<RunRecord>& records) {
  std::array<std::uint64_t, 5> counts{};
  for (const RunRecord& rec : records) {
    if (rec.herald) ++counts[static_cast<std::size_t>(classify(rec))];
  }
  return counts;
}

}  // namespace

TEST_CASE("sample_run: deterministic path when x = z = 1") {
  CampaignConfig c;
  c.refl = {1.0, 0.5, 1.0};
  c.eff = ideal_efficiencies();
  c.visibility = 1.0;
  c.noise = quiet_noise(1.0);
  const std::vector<RunRecord> records = run_campaign(c, 500, 99);
  REQUIRE(records.size() == 500);
  for (const RunRecord& rec : records) {
    CHECK(rec.herald);
    CHECK(classify(rec) == Outcome::AliceWins);
  }
}

TEST_CASE("sample_run: nothing triggers without pairs or darks") {
  RunRng rng(1, 0);
  const NoiseModel silent = quiet_noise(0.0);
  for (int i = 0; i < 100; ++i) {
    const RunRecord rec = sample_run(rng, {0.5, 0.5, 0.5}, ideal_efficiencies(),
                                     {1.0, 0.0}, silent);
    CHECK(!rec.herald);
  }
  CampaignConfig c;
  c.refl = {0.5, 0.5, 0.5};
  c.eff = ideal_efficiencies();
  c.noise = silent;
  CHECK_THROWS_AS(run_campaign(c, 10, 1), std::domain_error);
}

TEST_CASE("campaigns are reproducible for a fixed seed") {
  CampaignConfig c;
  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.noise = quiet_noise();
  c.noise.slow_phase = {SlowPhaseProcess::Kind::RandomWalk, 0.0, 0.01};
  c.refl = honest_reflectivities(c.eff, c.visibility);
  const std::vector<RunRecord> a = run_campaign(c, 2000, 4242);
  const std::vector<RunRecord> b = run_campaign(c, 2000, 4242);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].b == b[i].b);
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].v1 == b[i].v1);
    CHECK(a[i].v2 == b[i].v2);
    CHECK(a[i].slow_phase == b[i].slow_phase);
  }
  const std::vector<RunRecord> other = run_campaign(c, 2000, 4243);
  CHECK(outcome_histogram(a) != outcome_histogram(other));
}

TEST_CASE("empirical honest frequencies track the analytic distribution") {
  CampaignConfig c;
  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.noise = quiet_noise();
  c.refl = honest_reflectivities(c.eff, c.visibility);
  const std::uint64_t n = 100000;
  const std::vector<RunRecord> records = run_campaign(c, n, 7);
  const std::array<std::uint64_t, 5> counts = outcome_histogram(records);
  const OutcomeDistribution expected = honest_outcomes(c.eff, c.visibility);
  const double probs[5] = {expected.alice_wins, expected.bob_wins,
                           expected.alice_sanctioned, expected.bob_sanctioned,
                           expected.abort};
  for (int i = 0; i < 5; ++i) {
    const double se = std::sqrt(probs[i] * (1.0 - probs[i]) / static_cast<double>(n));
    const double empirical = static_cast<double>(counts[i]) / static_cast<double>(n);
    CHECK(std::abs(empirical - probs[i]) <= 5.0 * se + 1e-12);
  }
}

TEST_CASE("accumulate tallies single records as expected") {
  SUBCASE("empty input") {
    const CoincidenceCounts c = accumulate({});
    CHECK(c.r_h == 0);
    CHECK_THROWS_AS(outcome_rates(c), std::domain_error);
  }
  SUBCASE("one Alice win") {
    RunRecord rec;
    rec.herald = true;
    rec.b = false;
    rec.v1 = true;
    rec.v2 = false;
    const CoincidenceCounts c = accumulate(std::array{rec});
    CHECK(c.r_h == 1);
    CHECK(c.r_hv1 == 1);
    CHECK(c.r_hb + c.r_ha + c.r_hv2 + c.r_hv1v2 == 0);
    const OutcomeDistribution d = outcome_rates(c);
    CHECK(d.alice_wins == 1.0);
    CHECK(d.abort == 0.0);
  }
  SUBCASE("one sanctioned Bob") {
    RunRecord rec;
    rec.herald = true;
    rec.b = true;
    rec.a = true;
    const CoincidenceCounts c = accumulate(std::array{rec});
    CHECK(c.r_hab == 1);
    CHECK(outcome_rates(c).bob_sanctioned == 1.0);
  }
}

TEST_CASE("rate algebra equals direct outcome counting") {
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<RunRecord> records;
  records.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    RunRecord rec;
    rec.herald = coin(rng) || coin(rng);  // mostly heralded
    rec.b = coin(rng) == 1;
    if (rec.b) {
      rec.a = coin(rng) == 1;
    } else {
      rec.v1 = coin(rng) == 1;
      rec.v2 = coin(rng) == 1;
    }
    records.push_back(rec);
  }
  const CoincidenceCounts counts = accumulate(records);
  const OutcomeDistribution rates = outcome_rates(counts);

  std::array<std::uint64_t, 5> direct = outcome_histogram(records);
  const double n = static_cast<double>(counts.r_h);
  CHECK(rates.alice_wins == static_cast<double>(direct[0]) / n);
  CHECK(rates.bob_wins == static_cast<double>(direct[1]) / n);
  CHECK(rates.alice_sanctioned == static_cast<double>(direct[2]) / n);
  CHECK(rates.bob_sanctioned == static_cast<double>(direct[3]) / n);
  CHECK(rates.abort == static_cast<double>(direct[4]) / n);
}

TEST_CASE("accumulate merges associatively") {
  CampaignConfig c;
  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.noise = quiet_noise();
  c.refl = honest_reflectivities(c.eff, c.visibility);
  const std::vector<RunRecord> records = run_campaign(c, 5000, 3);
  const CoincidenceCounts whole = accumulate(records);
  const std::size_t cut = records.size() / 3;
  CoincidenceCounts merged = accumulate(std::span(records).subspan(0, cut));
  merged += accumulate(std::span(records).subspan(cut));
  CHECK(merged.r_h == whole.r_h);
  CHECK(merged.r_hv1 == whole.r_hv1);
  CHECK(merged.r_hb == whole.r_hb);
  CHECK(merged.r_hv2 == whole.r_hv2);
  CHECK(merged.r_hab == whole.r_hab);
}

TEST_CASE("phase post-selection lowers the honest sanction rate") {
  CampaignConfig c;
  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.noise = quiet_noise();
  c.noise.slow_phase = {SlowPhaseProcess::Kind::RandomWalk, 0.0, 0.01};
  c.refl = honest_reflectivities(c.eff, c.visibility);
  const std::vector<RunRecord> records = run_campaign(c, 200000, 2024);

  const OutcomeDistribution unfiltered = outcome_rates(accumulate(records));
  const OutcomeDistribution filtered = outcome_rates(accumulate(records, 0.1));
  CHECK(filtered.alice_sanctioned < unfiltered.alice_sanctioned);

  // Tightening the window must not raise the sanction rate.
  const OutcomeDistribution wide = outcome_rates(accumulate(records, 1.0));
  CHECK(filtered.alice_sanctioned <= wide.alice_sanctioned + 1e-12);
  CHECK(wide.alice_sanctioned <= unfiltered.alice_sanctioned + 1e-12);
}

TEST_CASE("herald dark counts add aborting runs at the expected fraction") {
  CampaignConfig c;
  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.noise = quiet_noise();
  c.noise.herald_dark_prob = c.noise.pair_prob * (40.0 / 51000.0);
  c.refl = honest_reflectivities(c.eff, c.visibility);
  const std::uint64_t n = 400000;
  const std::vector<RunRecord> records = run_campaign(c, n, 77);

  std::uint64_t false_triggers = 0;
  std::uint64_t dark_aborts = 0;
  for (const RunRecord& rec : records) {
    if (!rec.false_trigger) continue;
    ++false_triggers;
    if (classify(rec) == Outcome::Abort) ++dark_aborts;
  }
  const double expected = c.noise.herald_dark_prob /
                          (c.noise.pair_prob + c.noise.herald_dark_prob);
  const double fraction = static_cast<double>(false_triggers) / static_cast<double>(n);
  const double se = std::sqrt(expected / static_cast<double>(n));
  CHECK(std::abs(fraction - expected) <= 5.0 * se);
  CHECK(dark_aborts == false_triggers);  // signal darks are off here
}

TEST_CASE("forced decision bit reproduces the always-claim attack") {
  CampaignConfig c;
  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.noise = quiet_noise();
  c.refl = honest_reflectivities(c.eff, c.visibility);
  c.bob_forces_one = true;
  const std::uint64_t n = 100000;
  const std::vector<RunRecord> records = run_campaign(c, n, 8);
  const OutcomeDistribution rates = outcome_rates(accumulate(records));
  const OutcomeDistribution expected = bob_optimal_attack(c.eff, c.visibility);
  CHECK(rates.alice_wins == 0.0);
  CHECK(rates.abort == 0.0);
  const double se =
      std::sqrt(expected.bob_sanctioned * (1.0 - expected.bob_sanctioned) / n);
  CHECK(std::abs(rates.bob_sanctioned - expected.bob_sanctioned) <= 5.0 * se);
}

TEST_CASE("double pairs occasionally fire both verification detectors") {
  CampaignConfig c;
  c.eff = ideal_efficiencies();
  c.visibility = 0.0;  // incoherent mix spreads photons over both outputs
  c.noise = quiet_noise(0.6);
  c.noise.double_pair_enabled = true;
  c.refl = {0.5, 1.0, 0.5};
  const std::vector<RunRecord> records = run_campaign(c, 50000, 12);
  const CoincidenceCounts counts = accumulate(records);
  validate(counts);
  CHECK(counts.r_hv1v2 > 0);
}

TEST_CASE("outcome_rates rejects corrupt tallies") {
  CoincidenceCounts c;
  c.r_h = 10;
  c.r_hb = 4;
  c.r_hab = 5;  // coincidence exceeds its sub-tally
  CHECK_THROWS_AS(outcome_rates(c), std::domain_error);
}

TEST_CASE("estimate_visibility_mc recovers the configured visibility") {
  CampaignConfig c;
  c.eff = ideal_efficiencies();
  c.visibility = 1.0;
  c.noise = quiet_noise(0.05);
  c.refl = honest_reflectivities(c.eff, c.visibility);
  CHECK(estimate_visibility_mc(c, 100000, 5) > 0.99);

  c.eff = bench_efficiencies();
  c.visibility = 0.96;
  c.refl = honest_reflectivities(c.eff, c.visibility);
  CHECK(std::abs(estimate_visibility_mc(c, 200000, 6) - 0.96) < 0.01);

  c.visibility = 0.0;
  c.refl = honest_reflectivities(c.eff, c.visibility);
  CHECK(estimate_visibility_mc(c, 200000, 9) < 0.02);
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5));
  CHECK(std::abs(wrap_angle(2.0 * std::numbers::pi)) < 1e-12);
}
