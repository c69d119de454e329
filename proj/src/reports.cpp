#include "wcf/reports.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "wcf/adversary.hpp"

namespace wcf {

namespace {

using nlohmann::json;

ChannelModel channel_at(const ExperimentConfig& config, double distance_km) {
  ChannelModel c = config.channel;
  c.distance_km = distance_km;
  return c;
}

// Campaign setup for the configured scenario; Alice keeps the honest
// parameters against a lying Bob, and a dishonest Alice only moves x.
CampaignConfig campaign_config(const ExperimentConfig& config) {
  const PathEfficiencies eff =
      apply_channel(config.efficiencies, channel_at(config, config.channel.distance_km));
  CampaignConfig c;
  c.eff = eff;
  c.visibility = config.visibility;
  c.noise = config.noise;
  c.refl = honest_reflectivities(eff, config.visibility);
  if (config.mc.scenario == "bob_attack") {
    c.bob_forces_one = true;
  } else if (config.mc.scenario == "alice_attack") {
    c.refl.x = config.mc.alice_x;
  }
  return c;
}

OutcomeDistribution analytic_reference(const ExperimentConfig& config) {
  const PathEfficiencies eff =
      apply_channel(config.efficiencies, channel_at(config, config.channel.distance_km));
  if (config.mc.scenario == "bob_attack") return bob_optimal_attack(eff, config.visibility);
  if (config.mc.scenario == "alice_attack") {
    return alice_x_attack(config.mc.alice_x, eff, config.visibility);
  }
  return honest_outcomes(eff, config.visibility);
}

json outcome_entry(double empirical, double analytic, std::uint64_t n) {
  const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(n));
  double z = 0.0;
  if (se > 0.0) {
    z = (empirical - analytic) / se;
  } else if (empirical != analytic) {
    z = std::numeric_limits<double>::infinity();
  }
  return json{{"empirical", empirical}, {"analytic", analytic}, {"std_error", se}, {"z", z}};
}

}  // namespace

std::string format_value(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string honest_csv(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "L_km,x_h,y_h,z_h,p_alice_wins,p_bob_wins,p_alice_sanctioned,p_bob_sanctioned,"
         "p_abort,fairness,correctness\n";
  for (double L : config.sweeps.distances_km) {
    const PathEfficiencies eff = apply_channel(config.efficiencies, channel_at(config, L));
    const Reflectivities r = honest_reflectivities(eff, config.visibility);
    const OutcomeDistribution d = honest_outcomes(eff, config.visibility);
    const Metrics m = metrics(d);
    out << format_value(L) << ',' << format_value(r.x) << ',' << format_value(r.y) << ','
        << format_value(r.z) << ',' << format_value(d.alice_wins) << ','
        << format_value(d.bob_wins) << ',' << format_value(d.alice_sanctioned) << ','
        << format_value(d.bob_sanctioned) << ',' << format_value(d.abort) << ','
        << format_value(m.fairness) << ',' << format_value(m.correctness) << '\n';
  }
  return out.str();
}

std::string cheat_bob_csv(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "L_km,p_bob_wins,p_bob_sanctioned\n";
  for (double L : config.sweeps.distances_km) {
    const PathEfficiencies eff = apply_channel(config.efficiencies, channel_at(config, L));
    const OutcomeDistribution d = bob_optimal_attack(eff, config.visibility);
    out << format_value(L) << ',' << format_value(d.bob_wins) << ','
        << format_value(d.bob_sanctioned) << '\n';
  }
  return out.str();
}

std::string cheat_alice_csv(const ExperimentConfig& config) {
  const PathEfficiencies eff =
      apply_channel(config.efficiencies, channel_at(config, config.channel.distance_km));
  std::ostringstream out;
  out << "x,p_alice_wins,p_alice_sanctioned,p_bob_wins";
  for (double delta : config.sweeps.deltas) {
    out << ",I_A(delta=" << format_value(delta) << ')';
  }
  out << '\n';
  const std::vector<double> grid =
      sweep_grid(config.sweeps.x_min, config.sweeps.x_max, config.sweeps.x_points);
  for (double x : grid) {
    const OutcomeDistribution d = alice_x_attack(x, eff, config.visibility);
    out << format_value(x) << ',' << format_value(d.alice_wins) << ','
        << format_value(d.alice_sanctioned) << ',' << format_value(d.bob_wins);
    for (double delta : config.sweeps.deltas) {
      out << ',' << format_value(interest(d, delta));
    }
    out << '\n';
  }
  return out.str();
}

json mc_summary(const ExperimentConfig& config) {
  if (config.mc.runs == 0) throw std::domain_error("mc: no runs requested");
  const CampaignConfig campaign = campaign_config(config);
  const std::vector<RunRecord> records = run_campaign(campaign, config.mc.runs, config.seed);
  const CoincidenceCounts counts = accumulate(records, config.mc.phase_window);
  if (counts.r_h == 0) {
    throw std::domain_error("mc: phase window rejected every heralded run");
  }
  const OutcomeDistribution empirical = outcome_rates(counts);
  const OutcomeDistribution analytic = analytic_reference(config);

  std::uint64_t false_triggers = 0;
  std::uint64_t dark_aborts = 0;
  for (const RunRecord& rec : records) {
    if (!rec.false_trigger) continue;
    ++false_triggers;
    if (classify(rec) == Outcome::Abort) ++dark_aborts;
  }
  const double n_heralded = static_cast<double>(records.size());

  json j;
  j["scenario"] = config.mc.scenario;
  j["runs"] = records.size();
  j["runs_in_window"] = counts.r_h;
  j["seed"] = config.seed;
  j["distance_km"] = config.channel.distance_km;
  if (config.mc.scenario == "alice_attack") j["alice_x"] = config.mc.alice_x;
  if (config.mc.phase_window) {
    j["phase_window"] = *config.mc.phase_window;
  } else {
    j["phase_window"] = nullptr;
  }
  j["counts"] = {{"r_h", counts.r_h},         {"r_hb", counts.r_hb},
                 {"r_ha", counts.r_ha},       {"r_hab", counts.r_hab},
                 {"r_hv1", counts.r_hv1},     {"r_hv2", counts.r_hv2},
                 {"r_hbv1", counts.r_hbv1},   {"r_hbv2", counts.r_hbv2},
                 {"r_hv1v2", counts.r_hv1v2}, {"r_hbv1v2", counts.r_hbv1v2}};
  j["outcomes"] = {
      {"alice_wins", outcome_entry(empirical.alice_wins, analytic.alice_wins, counts.r_h)},
      {"bob_wins", outcome_entry(empirical.bob_wins, analytic.bob_wins, counts.r_h)},
      {"alice_sanctioned",
       outcome_entry(empirical.alice_sanctioned, analytic.alice_sanctioned, counts.r_h)},
      {"bob_sanctioned",
       outcome_entry(empirical.bob_sanctioned, analytic.bob_sanctioned, counts.r_h)},
      {"abort", outcome_entry(empirical.abort, analytic.abort, counts.r_h)}};
  // Herald dark counts trigger runs with no photon; those runs abort (up to
  // signal darks) and make up the abort surplus over the dark-free model.
  j["false_trigger_fraction"] = static_cast<double>(false_triggers) / n_heralded;
  j["dark_attributable_abort"] = static_cast<double>(dark_aborts) / n_heralded;
  j["abort_surplus_vs_analytic"] = empirical.abort - analytic.abort;
  return j;
}

std::string mc_run_log(const ExperimentConfig& config) {
  if (config.mc.runs == 0) throw std::domain_error("mc: no runs requested");
  const CampaignConfig campaign = campaign_config(config);
  const std::vector<RunRecord> records = run_campaign(campaign, config.mc.runs, config.seed);
  std::ostringstream out;
  for (const RunRecord& rec : records) {
    json line = {{"b", rec.b ? 1 : 0}, {"phase", rec.slow_phase}};
    if (rec.a) line["a"] = *rec.a ? 1 : 0;
    if (rec.v1) line["v1"] = *rec.v1 ? 1 : 0;
    if (rec.v2) line["v2"] = *rec.v2 ? 1 : 0;
    if (rec.false_trigger) line["false_trigger"] = true;
    out << line.dump() << '\n';
  }
  return out.str();
}

JsaReport jsa_report(const ExperimentConfig& config) {
  const JsaGrid grid = config.jsa.separable_toy
                           ? separable_toy_jsa(config.jsa.source, config.jsa.grid_size,
                                               config.jsa.window_sigmas)
                           : compute_jsa(config.jsa.source, config.jsa.grid_size,
                                         config.jsa.window_sigmas);
  const SchmidtResult schmidt = schmidt_analysis(grid);
  const SpectralSummaries spectra = spectral_summaries(grid);

  std::ostringstream csv;
  csv << "idler_freq_rad_s";
  for (Eigen::Index j = 0; j < grid.signal_freq.size(); ++j) {
    csv << ',' << format_value(grid.signal_freq[j]);
  }
  csv << '\n';
  for (Eigen::Index i = 0; i < grid.idler_freq.size(); ++i) {
    csv << format_value(grid.idler_freq[i]);
    for (Eigen::Index j = 0; j < grid.signal_freq.size(); ++j) {
      csv << ',' << format_value(std::norm(grid.amplitude(i, j)));
    }
    csv << '\n';
  }

  JsaReport report;
  report.grid_csv = csv.str();
  report.summary = {{"schmidt_number", schmidt.schmidt_number},
                    {"purity", schmidt.purity},
                    {"signal_fwhm_nm", spectra.signal_fwhm * 1e9},
                    {"coherence_length_mm", spectra.coherence_length * 1e3},
                    {"grid_size", config.jsa.grid_size},
                    {"window_sigmas", config.jsa.window_sigmas},
                    {"separable_toy", config.jsa.separable_toy}};
  return report;
}

}  // namespace wcf
