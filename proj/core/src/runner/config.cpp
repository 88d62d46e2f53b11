// Copyright 2026 The qpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpair/runner/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qpair/errors.hpp"

namespace qpair::runner {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr Index kMaxDimension = 4096;
constexpr int kMaxPairs = 4;
constexpr int kMaxCutoff = 16;

// Walks the JSON document, converting fields and collecting every problem.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }

  bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) fail(path + "." + key, "unknown key");
    }
    return true;
  }

  template <typename T>
  void number(const json& obj, const char* key, const std::string& path, T& out,
              bool required = false) {
    if (!obj.contains(key)) {
      if (required) fail(path + "." + key, "required");
      return;
    }
    read_number(obj.at(key), path + "." + key, out);
  }

  template <typename T>
  bool read_number(const json& j, const std::string& path, T& out) {
    if constexpr (std::is_integral_v<T>) {
      if (!j.is_number_integer()) {
        fail(path, "expected an integer");
        return false;
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (j.is_number_unsigned()) {
          out = j.get<T>();
          return true;
        }
        if (j.get<long long>() < 0) {
          fail(path, "must be nonnegative");
          return false;
        }
      }
      out = j.get<T>();
      return true;
    } else {
      if (!j.is_number()) {
        fail(path, "expected a number");
        return false;
      }
      out = j.get<T>();
      return true;
    }
  }

  void string(const json& obj, const char* key, const std::string& path, std::string& out,
              bool required = false) {
    if (!obj.contains(key)) {
      if (required) fail(path + "." + key, "required");
      return;
    }
    if (!obj.at(key).is_string()) {
      fail(path + "." + key, "expected a string");
      return;
    }
    out = obj.at(key).get<std::string>();
  }

  template <typename T>
  void number_list(const json& j, const std::string& path, std::vector<T>& out) {
    if (!j.is_array()) {
      fail(path, "expected an array");
      return;
    }
    std::vector<T> values;
    for (std::size_t i = 0; i < j.size(); ++i) {
      T v{};
      if (read_number(j[i], path + "[" + std::to_string(i) + "]", v)) values.push_back(v);
    }
    out = std::move(values);
  }
};

void read_noise(Reader& r, const json& j, NoiseModel& nm) {
  if (!r.object(j, "noise", {"lambda", "omega0"})) return;
  if (!j.contains("lambda")) {
    r.fail("noise.lambda", "required");
  } else {
    std::vector<double> l;
    r.number_list(j.at("lambda"), "noise.lambda", l);
    if (l.size() == 3) {
      nm.noise = {l[0], l[1], l[2]};
    } else if (j.at("lambda").is_array()) {
      r.fail("noise.lambda", "expected exactly three numbers");
    }
  }
  r.number(j, "omega0", "noise", nm.omega0);
}

void read_bath(Reader& r, const json& j, std::vector<ModeEntry>& modes) {
  if (!r.object(j, "bath", {"modes"})) return;
  if (!j.contains("modes")) return;
  const json& arr = j.at("modes");
  if (!arr.is_array()) {
    r.fail("bath.modes", "expected an array");
    return;
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "bath.modes[" + std::to_string(i) + "]";
    const json& m = arr[i];
    if (!r.object(m, path, {"id", "frequency", "cutoff", "g", "pairs"})) continue;
    ModeEntry e;
    r.string(m, "id", path, e.id, true);
    r.number(m, "frequency", path, e.frequency, true);
    r.number(m, "cutoff", path, e.cutoff, true);
    r.number(m, "g", path, e.g, true);
    if (m.contains("pairs")) r.number_list(m.at("pairs"), path + ".pairs", e.pairs);
    modes.push_back(std::move(e));
  }
}

void read_bath_init(Reader& r, const json& j, BathInit& init) {
  if (!j.is_object()) {
    r.fail("bath_init", "expected an object");
    return;
  }
  std::string kind = "vacuum";
  r.string(j, "kind", "bath_init", kind, true);
  if (kind == "vacuum") {
    r.object(j, "bath_init", {"kind"});
    init = BathInit::vacuum();
  } else if (kind == "thermal") {
    r.object(j, "bath_init", {"kind", "temperature"});
    double t = 0.0;
    r.number(j, "temperature", "bath_init", t, true);
    init = BathInit::thermal(t);
  } else if (kind == "coherent") {
    r.object(j, "bath_init", {"kind", "amplitudes"});
    std::vector<double> amps;
    if (j.contains("amplitudes")) {
      r.number_list(j.at("amplitudes"), "bath_init.amplitudes", amps);
    } else {
      r.fail("bath_init.amplitudes", "required");
    }
    init = BathInit::coherent(std::move(amps));
  } else {
    r.fail("bath_init.kind", "must be one of vacuum, thermal, coherent");
  }
}

void read_logical(Reader& r, const json& j, std::optional<std::vector<Complex>>& out) {
  if (!j.is_array()) {
    r.fail("logical", "expected an array of numbers or [re, im] pairs");
    return;
  }
  std::vector<Complex> amps;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "logical[" + std::to_string(i) + "]";
    const json& v = j[i];
    if (v.is_number()) {
      amps.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      amps.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      r.fail(path, "expected a number or [re, im]");
    }
  }
  out = std::move(amps);
}

void read_times(Reader& r, const json& j, TimeGrid& t) {
  if (!r.object(j, "times", {"start", "stop", "count"})) return;
  r.number(j, "start", "times", t.start);
  r.number(j, "stop", "times", t.stop, true);
  r.number(j, "count", "times", t.count, true);
}

void read_gate(Reader& r, const json& j, std::optional<GateParams>& out) {
  if (!r.object(j, "gate", {"alpha", "theta", "phi"})) return;
  GateParams p;
  r.number(j, "alpha", "gate", p.alpha, true);
  r.number(j, "theta", "gate", p.theta_gate, true);
  r.number(j, "phi", "gate", p.phi, true);
  out = p;
}

void read_collectivity(Reader& r, const json& j, CollectivitySpec& c) {
  if (!r.object(j, "collectivity", {"modes_per_pair", "frequency", "cutoff", "g", "fractions"})) {
    return;
  }
  r.number(j, "modes_per_pair", "collectivity", c.modes_per_pair);
  r.number(j, "frequency", "collectivity", c.frequency);
  r.number(j, "cutoff", "collectivity", c.cutoff);
  r.number(j, "g", "collectivity", c.g);
  if (j.contains("fractions")) r.number_list(j.at("fractions"), "collectivity.fractions", c.fractions);
}

bool needs_drive(Scenario s) {
  return s == Scenario::storage || s == Scenario::gate || s == Scenario::collectivity_sweep ||
         s == Scenario::asymmetry_sweep;
}

bool uses_bath(Scenario s) {
  return s == Scenario::storage || s == Scenario::gate || s == Scenario::asymmetry_sweep;
}

// Bath consistency problems; also used by resolve_bath.
std::vector<std::string> bath_violations(const std::vector<ModeEntry>& modes, int pairs) {
  std::vector<std::string> errs;
  std::map<std::string, std::pair<double, int>> seen;
  std::set<std::pair<int, std::string>> coupled;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    const std::string path = "bath.modes[" + std::to_string(i) + "]";
    if (m.id.empty()) errs.push_back(path + ".id: must be a nonempty string");
    if (!(m.frequency > 0.0) || !std::isfinite(m.frequency)) {
      errs.push_back(path + ".frequency: must be > 0");
    }
    if (m.cutoff < 2 || m.cutoff > kMaxCutoff) {
      errs.push_back(path + ".cutoff: must lie in [2, " + std::to_string(kMaxCutoff) + "]");
    }
    if (!std::isfinite(m.g)) errs.push_back(path + ".g: must be finite");
    auto [it, inserted] = seen.emplace(m.id, std::make_pair(m.frequency, m.cutoff));
    if (!inserted && (it->second.first != m.frequency || it->second.second != m.cutoff)) {
      errs.push_back(path + ": mode id '" + m.id +
                     "' is reused with a different frequency or cutoff");
    }
    std::vector<int> targets = m.pairs;
    if (targets.empty()) {
      for (int l = 0; l < pairs; ++l) targets.push_back(l);
    }
    for (int l : targets) {
      if (l < 0 || l >= pairs) {
        errs.push_back(path + ".pairs: pair " + std::to_string(l) + " does not exist");
      } else if (!coupled.emplace(l, m.id).second) {
        errs.push_back(path + ": pair " + std::to_string(l) + " already couples to mode '" + m.id +
                       "'");
      }
    }
  }
  return errs;
}

Index bath_dimension(const std::vector<ModeEntry>& modes) {
  std::map<std::string, int> cutoffs;
  for (const auto& m : modes) cutoffs.emplace(m.id, m.cutoff);
  Index d = 1;
  for (const auto& [id, c] : cutoffs) d *= std::max(c, 1);
  return d;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::storage:
      return "storage";
    case Scenario::gate:
      return "gate";
    case Scenario::efficiency_table:
      return "efficiency_table";
    case Scenario::subspace_dims:
      return "subspace_dims";
    case Scenario::collectivity_sweep:
      return "collectivity_sweep";
    case Scenario::asymmetry_sweep:
      return "asymmetry_sweep";
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  for (Scenario s : {Scenario::storage, Scenario::gate, Scenario::efficiency_table,
                     Scenario::subspace_dims, Scenario::collectivity_sweep,
                     Scenario::asymmetry_sweep}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {start};
  out.reserve(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count - 1; ++i) out.push_back(start + step * i);
  out.push_back(stop);
  return out;
}

std::string ExperimentConfig::prefix() const {
  return output.prefix.empty() ? std::string(to_string(scenario)) : output.prefix;
}

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("parse error: ") + e.what()});
  }

  Reader r;
  ExperimentConfig cfg;
  if (!r.object(root, "config",
                {"description", "scenario", "noise", "pairs", "bath", "bath_init", "logical",
                 "times", "epsilon", "gate", "seed", "efficiency", "subspace", "collectivity",
                 "output"})) {
    throw ConfigError(r.errors);
  }
  if (root.contains("description") && !root.at("description").is_string()) {
    r.fail("description", "expected a string");
  }

  std::string scenario;
  r.string(root, "scenario", "config", scenario, true);
  if (!scenario.empty()) {
    if (auto s = scenario_from_string(scenario)) {
      cfg.scenario = *s;
    } else {
      r.fail("scenario", "unknown scenario '" + scenario + "'");
    }
  }
  if (cfg.scenario == Scenario::gate || cfg.scenario == Scenario::collectivity_sweep) cfg.pairs = 2;
  if (cfg.scenario == Scenario::gate) cfg.times = {0.0, 1.0, 11};

  if (root.contains("noise")) {
    read_noise(r, root.at("noise"), cfg.noise);
  } else if (needs_drive(cfg.scenario)) {
    r.fail("noise", "required for scenario " + std::string(to_string(cfg.scenario)));
  }
  r.number(root, "pairs", "config", cfg.pairs);
  if (root.contains("bath")) read_bath(r, root.at("bath"), cfg.modes);
  if (root.contains("bath_init")) read_bath_init(r, root.at("bath_init"), cfg.bath_init);
  if (root.contains("logical")) read_logical(r, root.at("logical"), cfg.logical);
  if (root.contains("times")) read_times(r, root.at("times"), cfg.times);
  if (root.contains("epsilon")) {
    const json& e = root.at("epsilon");
    if (e.is_number()) {
      cfg.epsilon = {e.get<double>()};
    } else {
      r.number_list(e, "epsilon", cfg.epsilon);
    }
  }
  if (root.contains("gate")) read_gate(r, root.at("gate"), cfg.gate);
  r.number(root, "seed", "config", cfg.seed);
  if (root.contains("efficiency")) {
    const json& j = root.at("efficiency");
    if (r.object(j, "efficiency", {"m_max"})) r.number(j, "m_max", "efficiency", cfg.efficiency_m_max);
  }
  if (root.contains("subspace")) {
    const json& j = root.at("subspace");
    if (r.object(j, "subspace", {"m"}) && j.contains("m")) {
      r.number_list(j.at("m"), "subspace.m", cfg.subspace_m);
    }
  }
  if (root.contains("collectivity")) read_collectivity(r, root.at("collectivity"), cfg.collectivity);
  if (root.contains("output")) {
    const json& j = root.at("output");
    if (r.object(j, "output", {"dir", "prefix"})) {
      r.string(j, "dir", "output", cfg.output.dir);
      r.string(j, "prefix", "output", cfg.output.prefix);
    }
  }

  auto physics = validate_config(cfg);
  r.errors.insert(r.errors.end(), physics.begin(), physics.end());
  if (!r.errors.empty()) throw ConfigError(r.errors);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  const NoiseVector& nv = cfg.noise.noise;
  if (!std::isfinite(nv.lambda1) || !std::isfinite(nv.lambda2) || !std::isfinite(nv.lambda3)) {
    errs.push_back("noise.lambda: components must be finite");
  } else if (nv.magnitude() == 0.0) {
    errs.push_back("noise.lambda: must not be the zero vector");
  }
  if (!std::isfinite(cfg.noise.omega0) || cfg.noise.omega0 < 0.0) {
    errs.push_back("noise.omega0: must be finite and >= 0");
  }
  if (needs_drive(cfg.scenario) && nv.lambda3 == 0.0 && cfg.noise.omega0 != 0.0) {
    errs.push_back(
        "noise: undrivable model: no drive satisfies the ratio g1:g2:omega0 = "
        "lambda1:lambda2:lambda3 when lambda3 = 0 and omega0 != 0 (pure amplitude damping "
        "with a nonzero splitting is unresolved, see docs/config.md); set omega0 = 0");
  }

  const bool bath_scenario = uses_bath(cfg.scenario);
  const bool dynamic = bath_scenario || cfg.scenario == Scenario::collectivity_sweep;
  if (cfg.pairs < 1 || cfg.pairs > kMaxPairs) {
    errs.push_back("pairs: must lie in [1, " + std::to_string(kMaxPairs) + "]");
  }
  if (cfg.scenario == Scenario::gate && cfg.pairs != 2) {
    errs.push_back("pairs: the gate scenario acts on exactly 2 pairs");
  }
  const bool pairs_ok = cfg.pairs >= 1 && cfg.pairs <= kMaxPairs;

  if (pairs_ok) {
    auto b = bath_violations(cfg.modes, cfg.pairs);
    errs.insert(errs.end(), b.begin(), b.end());
  }
  std::set<std::string> ids;
  for (const auto& m : cfg.modes) ids.insert(m.id);

  if (dynamic && pairs_ok) {
    Index bath_dim = bath_dimension(cfg.modes);
    if (cfg.scenario == Scenario::collectivity_sweep) {
      bath_dim = 1;
      for (int k = 0; k < cfg.pairs * cfg.collectivity.modes_per_pair; ++k) {
        bath_dim *= std::max(cfg.collectivity.cutoff, 1);
        if (bath_dim > kMaxDimension) break;
      }
    }
    const Index dim = (Index{1} << (2 * cfg.pairs)) * bath_dim;
    if (dim > kMaxDimension) {
      errs.push_back("Hilbert space dimension " + std::to_string(dim) + " exceeds " +
                     std::to_string(kMaxDimension));
    }
  }

  switch (cfg.bath_init.kind) {
    case BathInit::Kind::vacuum:
      break;
    case BathInit::Kind::thermal:
      if (!(cfg.bath_init.temperature > 0.0) || !std::isfinite(cfg.bath_init.temperature)) {
        errs.push_back("bath_init.temperature: must be > 0");
      }
      break;
    case BathInit::Kind::coherent:
      if (cfg.scenario == Scenario::collectivity_sweep) {
        errs.push_back("bath_init: coherent initialization is not supported by the "
                       "collectivity sweep (mode count varies per run)");
      } else if (cfg.bath_init.amplitudes.size() != ids.size()) {
        errs.push_back("bath_init.amplitudes: expected one amplitude per distinct mode (" +
                       std::to_string(ids.size()) + ")");
      }
      for (double a : cfg.bath_init.amplitudes) {
        if (!std::isfinite(a)) errs.push_back("bath_init.amplitudes: must be finite");
      }
      break;
  }

  if (cfg.logical && pairs_ok) {
    const auto& amps = *cfg.logical;
    if (amps.size() != (std::size_t{1} << cfg.pairs)) {
      errs.push_back("logical: expected " + std::to_string(std::size_t{1} << cfg.pairs) +
                     " amplitudes for " + std::to_string(cfg.pairs) + " pairs");
    }
    double norm = 0.0;
    for (const auto& a : amps) norm += std::norm(a);
    if (!(norm > 0.0) || !std::isfinite(norm)) errs.push_back("logical: must have nonzero finite norm");
  }

  if (dynamic) {
    const TimeGrid& t = cfg.times;
    if (t.count < 1) errs.push_back("times.count: must be >= 1");
    if (!std::isfinite(t.start) || t.start < 0.0) errs.push_back("times.start: must be >= 0");
    if (!std::isfinite(t.stop) || t.stop < t.start) errs.push_back("times.stop: must be >= start");
  }

  if (cfg.epsilon.empty()) errs.push_back("epsilon: must list at least one value");
  for (double e : cfg.epsilon) {
    if (!std::isfinite(e) || e <= -1.0) errs.push_back("epsilon: values must be finite and > -1");
  }
  if (cfg.scenario == Scenario::asymmetry_sweep) {
    if (cfg.epsilon.size() < 2) errs.push_back("epsilon: the asymmetry sweep needs >= 2 values");
    for (std::size_t i = 1; i < cfg.epsilon.size(); ++i) {
      if (!(cfg.epsilon[i] > cfg.epsilon[i - 1])) {
        errs.push_back("epsilon: values must be strictly ascending for the asymmetry sweep");
        break;
      }
    }
  }
  if (cfg.gate) {
    const auto& g = *cfg.gate;
    if (!std::isfinite(g.alpha) || !std::isfinite(g.theta_gate) || !std::isfinite(g.phi)) {
      errs.push_back("gate: angles must be finite");
    }
  }
  if (cfg.scenario == Scenario::efficiency_table &&
      (cfg.efficiency_m_max < 1 || cfg.efficiency_m_max > 4096)) {
    errs.push_back("efficiency.m_max: must lie in [1, 4096]");
  }
  if (cfg.scenario == Scenario::subspace_dims) {
    if (cfg.subspace_m.empty()) errs.push_back("subspace.m: must list at least one value");
    for (int m : cfg.subspace_m) {
      if (m < 1 || m > kMaxClusterHalf) {
        errs.push_back("subspace.m: " + std::to_string(m) + " is outside [1, " +
                       std::to_string(kMaxClusterHalf) + "]");
      }
    }
  }
  if (cfg.scenario == Scenario::collectivity_sweep) {
    const auto& c = cfg.collectivity;
    if (c.modes_per_pair < 1) errs.push_back("collectivity.modes_per_pair: must be >= 1");
    if (c.cutoff < 2 || c.cutoff > kMaxCutoff) errs.push_back("collectivity.cutoff: out of range");
    if (!(c.frequency > 0.0)) errs.push_back("collectivity.frequency: must be > 0");
    if (!std::isfinite(c.g)) errs.push_back("collectivity.g: must be finite");
    if (c.fractions.empty()) errs.push_back("collectivity.fractions: must list at least one value");
    for (double f : c.fractions) {
      if (!(f >= 0.0 && f <= 1.0)) errs.push_back("collectivity.fractions: values must lie in [0, 1]");
    }
  }
  if (cfg.output.dir.empty()) errs.push_back("output.dir: must not be empty");
  for (char ch : cfg.output.prefix) {
    if (ch == '/' || ch == '\\') {
      errs.push_back("output.prefix: must not contain path separators");
      break;
    }
  }
  return errs;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["scenario"] = std::string(to_string(cfg.scenario));
  j["noise"] = {{"lambda", {cfg.noise.noise.lambda1, cfg.noise.noise.lambda2, cfg.noise.noise.lambda3}},
                {"omega0", cfg.noise.omega0}};
  j["pairs"] = cfg.pairs;
  ordered_json modes = ordered_json::array();
  for (const auto& m : cfg.modes) {
    ordered_json e;
    e["id"] = m.id;
    e["frequency"] = m.frequency;
    e["cutoff"] = m.cutoff;
    e["g"] = m.g;
    e["pairs"] = m.pairs;
    modes.push_back(e);
  }
  j["bath"] = {{"modes", modes}};
  ordered_json init;
  switch (cfg.bath_init.kind) {
    case BathInit::Kind::vacuum:
      init["kind"] = "vacuum";
      break;
    case BathInit::Kind::thermal:
      init["kind"] = "thermal";
      init["temperature"] = cfg.bath_init.temperature;
      break;
    case BathInit::Kind::coherent:
      init["kind"] = "coherent";
      init["amplitudes"] = cfg.bath_init.amplitudes;
      break;
  }
  j["bath_init"] = init;
  if (cfg.logical) {
    ordered_json amps = ordered_json::array();
    for (const auto& a : *cfg.logical) amps.push_back({a.real(), a.imag()});
    j["logical"] = amps;
  } else {
    j["logical"] = nullptr;
  }
  j["times"] = {{"start", cfg.times.start}, {"stop", cfg.times.stop}, {"count", cfg.times.count}};
  j["epsilon"] = cfg.epsilon;
  if (cfg.gate) {
    j["gate"] = {{"alpha", cfg.gate->alpha}, {"theta", cfg.gate->theta_gate}, {"phi", cfg.gate->phi}};
  } else {
    j["gate"] = nullptr;
  }
  j["seed"] = cfg.seed;
  j["efficiency"] = {{"m_max", cfg.efficiency_m_max}};
  j["subspace"] = {{"m", cfg.subspace_m}};
  const auto& c = cfg.collectivity;
  j["collectivity"] = {{"modes_per_pair", c.modes_per_pair}, {"frequency", c.frequency},
                       {"cutoff", c.cutoff}, {"g", c.g}, {"fractions", c.fractions}};
  j["output"] = {{"dir", cfg.output.dir}, {"prefix", cfg.prefix()}};
  return j.dump(2);
}

ResolvedBath resolve_bath(const std::vector<ModeEntry>& modes, int pairs) {
  auto errs = bath_violations(modes, pairs);
  if (!errs.empty()) throw ConfigError(std::move(errs));
  ResolvedBath out;
  std::map<std::string, int> index;
  for (const auto& m : modes) {
    auto it = index.find(m.id);
    if (it == index.end()) {
      it = index.emplace(m.id, out.spec.add_mode(m.frequency, m.cutoff)).first;
      out.mode_ids.push_back(m.id);
    }
    if (m.pairs.empty()) {
      for (int l = 0; l < pairs; ++l) out.spec.couple(l, it->second, m.g);
    } else {
      for (int l : m.pairs) out.spec.couple(l, it->second, m.g);
    }
  }
  return out;
}

LogicalState resolve_logical(const ExperimentConfig& cfg) {
  if (cfg.logical) {
    Vector v(static_cast<Index>(cfg.logical->size()));
    for (std::size_t i = 0; i < cfg.logical->size(); ++i) v(static_cast<Index>(i)) = (*cfg.logical)[i];
    return LogicalState::from_amplitudes(std::move(v));
  }
  std::mt19937_64 rng(cfg.seed);
  return LogicalState::random(cfg.pairs, rng);
}

GateParams resolve_gate(const ExperimentConfig& cfg) {
  if (cfg.gate) return *cfg.gate;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  GateParams p;
  p.alpha = angle(rng);
  p.theta_gate = angle(rng);
  p.phi = angle(rng);
  return p;
}

}  // namespace qpair::runner
