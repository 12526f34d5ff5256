#include "ecsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ecsim/errors.hpp"

namespace ecsim {

namespace {

using nlohmann::json;

cplx parse_complex(const json& j, const std::string& name) {
  if (j.is_number()) {
    return cplx(j.get<double>(), 0.0);
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cplx(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError(name + ": expected a number or [re, im] pair");
}

int parse_int(const json& j, const std::string& name, int min_value) {
  if (!j.is_number_integer()) {
    throw ConfigError(name + ": expected an integer");
  }
  const int v = j.get<int>();
  if (v < min_value) {
    throw ConfigError(name + ": must be >= " + std::to_string(min_value));
  }
  return v;
}

}  // namespace

ModeLadder RunConfig::ladder() const {
  std::vector<int> energies{1};
  energies.insert(energies.end(), harmonics.begin(), harmonics.end());
  return ModeLadder(energies);
}

std::vector<cplx> RunConfig::mode_amplitudes() const {
  std::vector<cplx> amps{alpha + delta_alpha};
  for (int q : harmonics) amps.push_back(chi.at(q));
  return amps;
}

std::vector<int> RunConfig::mode_truncations() const {
  // The window's top energy must be reachable, so truncations are the
  // coherent default or the window requirement, whichever is larger.
  int top_energy = 0;
  if (subspace.single_energy) top_energy = *subspace.single_energy;
  if (subspace.center_energy) top_energy = *subspace.center_energy + subspace.half_width;

  std::vector<int> truncs;
  truncs.push_back(ir_truncation
                       ? *ir_truncation
                       : std::max(default_coherent_cutoff(alpha + delta_alpha),
                                  top_energy));
  for (int q : harmonics) {
    auto it = harmonic_truncations.find(q);
    truncs.push_back(it != harmonic_truncations.end()
                         ? it->second
                         : std::max(default_coherent_cutoff(chi.at(q)),
                                    top_energy / q));
  }
  return truncs;
}

std::vector<int> RunConfig::window() const {
  std::vector<int> out;
  if (subspace.single_energy) {
    out.push_back(*subspace.single_energy);
    return out;
  }
  if (!subspace.center_energy) {
    throw ConfigError("subspace: need either N or N0/delta_N");
  }
  for (int n = *subspace.center_energy - subspace.half_width;
       n <= *subspace.center_energy + subspace.half_width; ++n) {
    if (n >= 0) out.push_back(n);
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root must be an object");
  }

  RunConfig cfg;

  if (!root.contains("amplitudes") || !root["amplitudes"].is_object()) {
    throw ConfigError("missing amplitudes section");
  }
  const json& amps = root["amplitudes"];
  if (!amps.contains("alpha")) throw ConfigError("amplitudes.alpha is required");
  cfg.alpha = parse_complex(amps["alpha"], "amplitudes.alpha");
  cfg.delta_alpha = amps.contains("delta_alpha")
                        ? parse_complex(amps["delta_alpha"], "amplitudes.delta_alpha")
                        : cplx(0.0, 0.0);

  if (!root.contains("ladder") || !root["ladder"].is_array() || root["ladder"].empty()) {
    throw ConfigError("ladder: expected a nonempty array of harmonic orders");
  }
  for (const json& q : root["ladder"]) {
    cfg.harmonics.push_back(parse_int(q, "ladder entry", 2));
  }
  if (!std::is_sorted(cfg.harmonics.begin(), cfg.harmonics.end()) ||
      std::adjacent_find(cfg.harmonics.begin(), cfg.harmonics.end()) !=
          cfg.harmonics.end()) {
    throw ConfigError("ladder: harmonic orders must be strictly increasing");
  }

  if (amps.contains("chi")) {
    if (!amps["chi"].is_object()) {
      throw ConfigError("amplitudes.chi: expected an object keyed by harmonic order");
    }
    for (const auto& [key, value] : amps["chi"].items()) {
      int q = 0;
      try {
        q = std::stoi(key);
      } catch (...) {
        throw ConfigError("amplitudes.chi: key '" + key + "' is not a harmonic order");
      }
      cfg.chi[q] = parse_complex(value, "amplitudes.chi." + key);
    }
  }
  for (const auto& [q, amp] : cfg.chi) {
    if (std::find(cfg.harmonics.begin(), cfg.harmonics.end(), q) ==
        cfg.harmonics.end()) {
      throw ConfigError("amplitudes.chi references harmonic " + std::to_string(q) +
                        " absent from the ladder");
    }
  }
  for (int q : cfg.harmonics) {
    if (!cfg.chi.count(q)) {
      throw ConfigError("amplitudes.chi missing entry for harmonic " +
                        std::to_string(q));
    }
  }

  if (root.contains("subspace")) {
    const json& sub = root["subspace"];
    if (!sub.is_object()) throw ConfigError("subspace: expected an object");
    if (sub.contains("N")) {
      cfg.subspace.single_energy = parse_int(sub["N"], "subspace.N", 0);
    }
    if (sub.contains("N0")) {
      cfg.subspace.center_energy = parse_int(sub["N0"], "subspace.N0", 0);
      cfg.subspace.half_width =
          sub.contains("delta_N") ? parse_int(sub["delta_N"], "subspace.delta_N", 0) : 0;
    }
    if (cfg.subspace.single_energy && cfg.subspace.center_energy) {
      throw ConfigError("subspace: give either N or N0, not both");
    }
    if (!cfg.subspace.single_energy && !cfg.subspace.center_energy) {
      throw ConfigError("subspace: need N or N0");
    }
  }

  if (root.contains("conditioning")) {
    const json& cond = root["conditioning"];
    if (!cond.is_object() || !cond.contains("q") || !cond.contains("n_q")) {
      throw ConfigError("conditioning: expected an object with q and n_q");
    }
    ConditioningSpec spec;
    spec.harmonic_order = parse_int(cond["q"], "conditioning.q", 2);
    spec.photon_count = parse_int(cond["n_q"], "conditioning.n_q", 0);
    if (std::find(cfg.harmonics.begin(), cfg.harmonics.end(), spec.harmonic_order) ==
        cfg.harmonics.end()) {
      throw ConfigError("conditioning.q references a harmonic absent from the ladder");
    }
    cfg.conditioning = spec;
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) throw ConfigError("grid: expected an object");
    auto num = [&](const char* key, double fallback) {
      if (!g.contains(key)) return fallback;
      if (!g[key].is_number()) throw ConfigError(std::string("grid.") + key);
      return g[key].get<double>();
    };
    cfg.grid.re_min = num("re_min", cfg.grid.re_min);
    cfg.grid.re_max = num("re_max", cfg.grid.re_max);
    cfg.grid.im_min = num("im_min", cfg.grid.im_min);
    cfg.grid.im_max = num("im_max", cfg.grid.im_max);
    if (g.contains("re_points")) {
      cfg.grid.re_points = parse_int(g["re_points"], "grid.re_points", 2);
    }
    if (g.contains("im_points")) {
      cfg.grid.im_points = parse_int(g["im_points"], "grid.im_points", 2);
    }
    if (cfg.grid.re_min >= cfg.grid.re_max || cfg.grid.im_min >= cfg.grid.im_max) {
      throw ConfigError("grid: min must be below max on both axes");
    }
  }

  if (root.contains("wigner_source")) {
    if (!root["wigner_source"].is_string()) {
      throw ConfigError("wigner_source: expected a string");
    }
    cfg.wigner_source = root["wigner_source"].get<std::string>();
    if (cfg.wigner_source != "mixture" && cfg.wigner_source != "conditioned") {
      throw ConfigError("wigner_source: must be 'mixture' or 'conditioned'");
    }
  }

  if (root.contains("truncations")) {
    const json& t = root["truncations"];
    if (!t.is_object()) throw ConfigError("truncations: expected an object");
    for (const auto& [key, value] : t.items()) {
      const int v = parse_int(value, "truncations." + key, 0);
      if (key == "ir") {
        cfg.ir_truncation = v;
      } else {
        int q = 0;
        try {
          q = std::stoi(key);
        } catch (...) {
          throw ConfigError("truncations: key '" + key + "' is not 'ir' or a harmonic");
        }
        cfg.harmonic_truncations[q] = v;
      }
    }
  }

  return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open config file " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace ecsim
