#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wcf/reports.hpp"

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  std::cout << "wrote " << path.string() << "\n";
}

// "min:max:points" -> sweep grid fields
void parse_x_grid(const std::string& text, wcf::SweepSpec& sweeps) {
  std::istringstream in(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw wcf::ConfigError("config: --x-grid expects min:max:points");
  }
  try {
    sweeps.x_min = std::stod(parts[0]);
    sweeps.x_max = std::stod(parts[1]);
    sweeps.x_points = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw wcf::ConfigError("config: --x-grid expects numeric min:max:points");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cheat-sensitive single-photon weak coin flipping: analytic sweeps, Monte Carlo "
      "campaigns and photon-pair source spectra"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --config/--seed/--out after the subcommand too

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON configuration file (see docs/formats.md)");
  app.add_option("--seed", seed, "random seed override");
  app.add_option("--out", out_dir, "output directory (overrides the config's out_dir)");

  std::vector<double> distances;
  std::vector<double> deltas;
  std::string x_grid;
  std::optional<std::uint64_t> runs;
  std::optional<std::string> scenario;
  std::optional<double> alice_x;
  std::string log_path;
  std::optional<int> grid_size;
  bool separable_toy = false;

  CLI::App* honest = app.add_subcommand("honest", "honest-protocol sweep over distance");
  honest->add_option("--distance", distances, "distance list in km (overrides config)");

  CLI::App* cheat_bob =
      app.add_subcommand("cheat-bob", "always-claim attack sweep over distance");
  cheat_bob->add_option("--distance", distances, "distance list in km (overrides config)");

  CLI::App* cheat_alice =
      app.add_subcommand("cheat-alice", "reflectivity attack sweep with interest columns");
  cheat_alice->add_option("--x-grid", x_grid, "x sweep as min:max:points");
  cheat_alice->add_option("--delta", deltas, "deterrent factor list (overrides config)");

  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo campaign with empirical outcome rates");
  mc->add_option("--runs", runs, "number of heralded runs");
  mc->add_option("--distance", distances, "single distance in km");
  mc->add_option("--scenario", scenario, "honest, bob_attack or alice_attack");
  mc->add_option("--alice-x", alice_x, "reflectivity for the alice_attack scenario");
  mc->add_option("--log", log_path, "also write a line-delimited run log to this path");

  CLI::App* jsa = app.add_subcommand("jsa", "joint spectral amplitude grid and summary");
  jsa->add_option("--grid", grid_size, "grid size per axis");
  jsa->add_flag("--separable-toy", separable_toy, "rank-1 reference source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    wcf::ExperimentConfig config =
        config_path.empty() ? wcf::default_config() : wcf::load_config(config_path);
    if (seed) config.seed = *seed;
    if (out_dir) config.out_dir = *out_dir;
    if (!distances.empty()) {
      config.sweeps.distances_km = distances;
      config.channel.distance_km = distances.front();
    }
    if (!deltas.empty()) config.sweeps.deltas = deltas;
    if (!x_grid.empty()) parse_x_grid(x_grid, config.sweeps);
    if (runs) config.mc.runs = *runs;
    if (scenario) config.mc.scenario = *scenario;
    if (alice_x) config.mc.alice_x = *alice_x;
    if (grid_size) config.jsa.grid_size = *grid_size;
    if (separable_toy) config.jsa.separable_toy = true;
    validate(config);

    const std::filesystem::path out(config.out_dir);
    if (honest->parsed()) {
      write_file(out / "honest.csv", wcf::honest_csv(config));
    } else if (cheat_bob->parsed()) {
      write_file(out / "cheat_bob.csv", wcf::cheat_bob_csv(config));
    } else if (cheat_alice->parsed()) {
      write_file(out / "cheat_alice.csv", wcf::cheat_alice_csv(config));
    } else if (mc->parsed()) {
      write_file(out / "mc_summary.json", wcf::mc_summary(config).dump(2) + "\n");
      if (!log_path.empty()) {
        write_file(log_path, wcf::mc_run_log(config));
      }
    } else if (jsa->parsed()) {
      const wcf::JsaReport report = wcf::jsa_report(config);
      write_file(out / "jsa_grid.csv", report.grid_csv);
      write_file(out / "jsa_summary.json", report.summary.dump(2) + "\n");
    }
  } catch (const wcf::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
