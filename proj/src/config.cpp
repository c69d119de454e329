#include "wcf/config.hpp"

#include <fstream>
#include <initializer_list>

namespace wcf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config: " + path + ": " + msg);
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, item.key().c_str()), "unknown key");
  }
}

double get_number(const json& j, const std::string& path, const char* key, double fallback) {
  const json* f = find(j, key);
  if (!f) return fallback;
  if (!f->is_number()) fail(join(path, key), "expected a number");
  return f->get<double>();
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
  const json* f = find(j, key);
  if (!f) return fallback;
  if (!f->is_number_integer()) fail(join(path, key), "expected an integer");
  return f->get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& path, const char* key,
                      std::uint64_t fallback) {
  const json* f = find(j, key);
  if (!f) return fallback;
  if (!f->is_number_unsigned() && !f->is_number_integer()) {
    fail(join(path, key), "expected a non-negative integer");
  }
  if (f->is_number_integer() && f->get<std::int64_t>() < 0) {
    fail(join(path, key), "expected a non-negative integer");
  }
  return f->get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
  const json* f = find(j, key);
  if (!f) return fallback;
  if (!f->is_boolean()) fail(join(path, key), "expected a boolean");
  return f->get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  const json* f = find(j, key);
  if (!f) return fallback;
  if (!f->is_string()) fail(join(path, key), "expected a string");
  return f->get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& path, const char* key,
                                std::vector<double> fallback) {
  const json* f = find(j, key);
  if (!f) return fallback;
  if (!f->is_array()) fail(join(path, key), "expected an array of numbers");
  std::vector<double> out;
  for (const json& item : *f) {
    if (!item.is_number()) fail(join(path, key), "expected an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

PathEfficiencies parse_efficiencies(const json& j, const std::string& path,
                                    PathEfficiencies base) {
  check_keys(j, path, {"eta_a_s", "eta_b_y", "eta_a_v1", "eta_a_v2", "eta_b_v1", "eta_b_v2"});
  base.eta_a_s = get_number(j, path, "eta_a_s", base.eta_a_s);
  base.eta_b_y = get_number(j, path, "eta_b_y", base.eta_b_y);
  base.eta_a_v1 = get_number(j, path, "eta_a_v1", base.eta_a_v1);
  base.eta_a_v2 = get_number(j, path, "eta_a_v2", base.eta_a_v2);
  base.eta_b_v1 = get_number(j, path, "eta_b_v1", base.eta_b_v1);
  base.eta_b_v2 = get_number(j, path, "eta_b_v2", base.eta_b_v2);
  return base;
}

VoaCounts parse_voa_counts(const json& j, const std::string& path, VoaCounts base) {
  check_keys(j, path, {"eta_a_s", "eta_b_y", "eta_a_v1", "eta_a_v2", "eta_b_v1", "eta_b_v2"});
  base.eta_a_s = get_int(j, path, "eta_a_s", base.eta_a_s);
  base.eta_b_y = get_int(j, path, "eta_b_y", base.eta_b_y);
  base.eta_a_v1 = get_int(j, path, "eta_a_v1", base.eta_a_v1);
  base.eta_a_v2 = get_int(j, path, "eta_a_v2", base.eta_a_v2);
  base.eta_b_v1 = get_int(j, path, "eta_b_v1", base.eta_b_v1);
  base.eta_b_v2 = get_int(j, path, "eta_b_v2", base.eta_b_v2);
  return base;
}

SlowPhaseProcess parse_slow_phase(const json& j, const std::string& path,
                                  SlowPhaseProcess base) {
  check_keys(j, path, {"type", "value", "step_std"});
  const std::string type = get_string(
      j, path, "type",
      base.kind == SlowPhaseProcess::Kind::Constant ? "constant" : "random_walk");
  if (type == "constant") {
    base.kind = SlowPhaseProcess::Kind::Constant;
  } else if (type == "random_walk") {
    base.kind = SlowPhaseProcess::Kind::RandomWalk;
  } else {
    fail(join(path, "type"), "expected \"constant\" or \"random_walk\"");
  }
  base.value = get_number(j, path, "value", base.value);
  base.step_std = get_number(j, path, "step_std", base.step_std);
  return base;
}

NoiseModel parse_noise(const json& j, const std::string& path, NoiseModel base) {
  check_keys(j, path, {"pair_prob", "herald_dark_prob", "signal_dark_prob",
                       "double_pair_enabled", "slow_phase"});
  base.pair_prob = get_number(j, path, "pair_prob", base.pair_prob);
  base.herald_dark_prob = get_number(j, path, "herald_dark_prob", base.herald_dark_prob);
  base.signal_dark_prob = get_number(j, path, "signal_dark_prob", base.signal_dark_prob);
  base.double_pair_enabled = get_bool(j, path, "double_pair_enabled", base.double_pair_enabled);
  if (const json* f = find(j, "slow_phase")) {
    base.slow_phase = parse_slow_phase(*f, join(path, "slow_phase"), base.slow_phase);
  }
  return base;
}

SourceParams parse_source(const json& j, const std::string& path, SourceParams base) {
  check_keys(j, path,
             {"pump_center_wavelength_nm", "pump_bandwidth_nm", "crystal_length_mm",
              "poling_period_um", "n_pump", "n_signal", "n_idler",
              "signal_center_wavelength_nm", "idler_center_wavelength_nm", "pump_waist_um",
              "signal_waist_um", "idler_waist_um"});
  // Scale by the exactly representable 1e9/1e6/1e3 in both directions so the
  // canonical form round trips bit-for-bit.
  const double nm = 1e9, mm = 1e3, um = 1e6;
  base.pump_center_wavelength =
      get_number(j, path, "pump_center_wavelength_nm", base.pump_center_wavelength * nm) / nm;
  base.pump_bandwidth = get_number(j, path, "pump_bandwidth_nm", base.pump_bandwidth * nm) / nm;
  base.crystal_length = get_number(j, path, "crystal_length_mm", base.crystal_length * mm) / mm;
  base.poling_period = get_number(j, path, "poling_period_um", base.poling_period * um) / um;
  base.n_pump = get_number(j, path, "n_pump", base.n_pump);
  base.n_signal = get_number(j, path, "n_signal", base.n_signal);
  base.n_idler = get_number(j, path, "n_idler", base.n_idler);
  base.signal_center_wavelength =
      get_number(j, path, "signal_center_wavelength_nm", base.signal_center_wavelength * nm) /
      nm;
  base.idler_center_wavelength =
      get_number(j, path, "idler_center_wavelength_nm", base.idler_center_wavelength * nm) / nm;
  base.pump_waist = get_number(j, path, "pump_waist_um", base.pump_waist * um) / um;
  base.signal_waist = get_number(j, path, "signal_waist_um", base.signal_waist * um) / um;
  base.idler_waist = get_number(j, path, "idler_waist_um", base.idler_waist * um) / um;
  return base;
}

}  // namespace

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig config;
  check_keys(j, "", {"seed", "visibility", "efficiencies", "noise", "channel", "sweeps", "mc",
                     "jsa", "out_dir"});
  config.seed = get_u64(j, "", "seed", config.seed);
  config.out_dir = get_string(j, "", "out_dir", config.out_dir);
  config.visibility = get_number(j, "", "visibility", config.visibility);
  if (const json* f = find(j, "efficiencies")) {
    config.efficiencies = parse_efficiencies(*f, "efficiencies", config.efficiencies);
  }
  if (const json* f = find(j, "noise")) {
    config.noise = parse_noise(*f, "noise", config.noise);
  }
  if (const json* f = find(j, "channel")) {
    check_keys(*f, "channel", {"attenuation_per_km", "voa_counts"});
    config.channel.attenuation_per_km =
        get_number(*f, "channel", "attenuation_per_km", config.channel.attenuation_per_km);
    if (const json* v = find(*f, "voa_counts")) {
      config.channel.voa_counts =
          parse_voa_counts(*v, "channel.voa_counts", config.channel.voa_counts);
    }
  }
  if (const json* f = find(j, "sweeps")) {
    check_keys(*f, "sweeps", {"distances_km", "x_grid", "deltas"});
    config.sweeps.distances_km =
        get_numbers(*f, "sweeps", "distances_km", config.sweeps.distances_km);
    config.sweeps.deltas = get_numbers(*f, "sweeps", "deltas", config.sweeps.deltas);
    if (const json* g = find(*f, "x_grid")) {
      check_keys(*g, "sweeps.x_grid", {"min", "max", "points"});
      config.sweeps.x_min = get_number(*g, "sweeps.x_grid", "min", config.sweeps.x_min);
      config.sweeps.x_max = get_number(*g, "sweeps.x_grid", "max", config.sweeps.x_max);
      config.sweeps.x_points = get_int(*g, "sweeps.x_grid", "points", config.sweeps.x_points);
    }
  }
  if (const json* f = find(j, "mc")) {
    check_keys(*f, "mc", {"runs", "scenario", "alice_x", "phase_window"});
    config.mc.runs = get_u64(*f, "mc", "runs", config.mc.runs);
    config.mc.scenario = get_string(*f, "mc", "scenario", config.mc.scenario);
    config.mc.alice_x = get_number(*f, "mc", "alice_x", config.mc.alice_x);
    if (const json* w = find(*f, "phase_window")) {
      if (w->is_null()) {
        config.mc.phase_window.reset();
      } else if (w->is_number()) {
        config.mc.phase_window = w->get<double>();
      } else {
        fail("mc.phase_window", "expected a number or null");
      }
    }
  }
  if (const json* f = find(j, "jsa")) {
    check_keys(*f, "jsa", {"grid_size", "window_sigmas", "separable_toy", "source"});
    config.jsa.grid_size = get_int(*f, "jsa", "grid_size", config.jsa.grid_size);
    config.jsa.window_sigmas =
        get_number(*f, "jsa", "window_sigmas", config.jsa.window_sigmas);
    config.jsa.separable_toy = get_bool(*f, "jsa", "separable_toy", config.jsa.separable_toy);
    if (const json* s = find(*f, "source")) {
      config.jsa.source = parse_source(*s, "jsa.source", config.jsa.source);
    }
  }
  validate(config);
  return config;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["visibility"] = c.visibility;
  j["efficiencies"] = {{"eta_a_s", c.efficiencies.eta_a_s},
                       {"eta_b_y", c.efficiencies.eta_b_y},
                       {"eta_a_v1", c.efficiencies.eta_a_v1},
                       {"eta_a_v2", c.efficiencies.eta_a_v2},
                       {"eta_b_v1", c.efficiencies.eta_b_v1},
                       {"eta_b_v2", c.efficiencies.eta_b_v2}};
  j["noise"] = {
      {"pair_prob", c.noise.pair_prob},
      {"herald_dark_prob", c.noise.herald_dark_prob},
      {"signal_dark_prob", c.noise.signal_dark_prob},
      {"double_pair_enabled", c.noise.double_pair_enabled},
      {"slow_phase",
       {{"type", c.noise.slow_phase.kind == SlowPhaseProcess::Kind::Constant ? "constant"
                                                                             : "random_walk"},
        {"value", c.noise.slow_phase.value},
        {"step_std", c.noise.slow_phase.step_std}}}};
  j["channel"] = {{"attenuation_per_km", c.channel.attenuation_per_km},
                  {"voa_counts",
                   {{"eta_a_s", c.channel.voa_counts.eta_a_s},
                    {"eta_b_y", c.channel.voa_counts.eta_b_y},
                    {"eta_a_v1", c.channel.voa_counts.eta_a_v1},
                    {"eta_a_v2", c.channel.voa_counts.eta_a_v2},
                    {"eta_b_v1", c.channel.voa_counts.eta_b_v1},
                    {"eta_b_v2", c.channel.voa_counts.eta_b_v2}}}};
  j["sweeps"] = {
      {"distances_km", c.sweeps.distances_km},
      {"x_grid",
       {{"min", c.sweeps.x_min}, {"max", c.sweeps.x_max}, {"points", c.sweeps.x_points}}},
      {"deltas", c.sweeps.deltas}};
  j["mc"] = {{"runs", c.mc.runs}, {"scenario", c.mc.scenario}, {"alice_x", c.mc.alice_x}};
  if (c.mc.phase_window) {
    j["mc"]["phase_window"] = *c.mc.phase_window;
  } else {
    j["mc"]["phase_window"] = nullptr;
  }
  const SourceParams& s = c.jsa.source;
  j["jsa"] = {{"grid_size", c.jsa.grid_size},
              {"window_sigmas", c.jsa.window_sigmas},
              {"separable_toy", c.jsa.separable_toy},
              {"source",
               {{"pump_center_wavelength_nm", s.pump_center_wavelength * 1e9},
                {"pump_bandwidth_nm", s.pump_bandwidth * 1e9},
                {"crystal_length_mm", s.crystal_length * 1e3},
                {"poling_period_um", s.poling_period * 1e6},
                {"n_pump", s.n_pump},
                {"n_signal", s.n_signal},
                {"n_idler", s.n_idler},
                {"signal_center_wavelength_nm", s.signal_center_wavelength * 1e9},
                {"idler_center_wavelength_nm", s.idler_center_wavelength * 1e9},
                {"pump_waist_um", s.pump_waist * 1e6},
                {"signal_waist_um", s.signal_waist * 1e6},
                {"idler_waist_um", s.idler_waist * 1e6}}}};
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return parse_config(j);
}

void validate(const ExperimentConfig& c) {
  try {
    validate(c.efficiencies);
    validate(InterferenceModel{c.visibility, 0.0});
    validate(c.noise);
    validate(c.channel);
    validate(c.jsa.source);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (double d : c.sweeps.distances_km) {
    if (!(d >= 0.0)) throw ConfigError("config: sweeps.distances_km: negative distance");
  }
  if (!(c.sweeps.x_min >= 0.0 && c.sweeps.x_max <= 1.0 && c.sweeps.x_min < c.sweeps.x_max)) {
    throw ConfigError("config: sweeps.x_grid: need 0 <= min < max <= 1");
  }
  if (c.sweeps.x_points < 2) throw ConfigError("config: sweeps.x_grid.points: need >= 2");
  for (double d : c.sweeps.deltas) {
    if (!(d >= 0.0)) throw ConfigError("config: sweeps.deltas: negative deterrent factor");
  }
  if (c.mc.runs == 0) throw ConfigError("config: mc.runs: no runs requested");
  if (c.mc.scenario != "honest" && c.mc.scenario != "bob_attack" &&
      c.mc.scenario != "alice_attack") {
    throw ConfigError("config: mc.scenario: expected honest, bob_attack or alice_attack");
  }
  if (!(c.mc.alice_x >= 0.0 && c.mc.alice_x <= 1.0)) {
    throw ConfigError("config: mc.alice_x: outside [0,1]");
  }
  if (c.mc.phase_window && !(*c.mc.phase_window > 0.0)) {
    throw ConfigError("config: mc.phase_window: must be > 0");
  }
  if (c.jsa.grid_size < 16) throw ConfigError("config: jsa.grid_size: need >= 16");
  if (!(c.jsa.window_sigmas > 0.0)) throw ConfigError("config: jsa.window_sigmas: must be > 0");
}

}  // namespace wcf
