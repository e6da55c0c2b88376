// Copyright 2026 The dressed-cool Authors
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

#include "dressed_cool/config.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "dressed_cool/errors.hpp"
#include "dressed_cool/units.hpp"
#include "json.hpp"

namespace dressed_cool {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw ValidationError("config key '" + key + "': " + msg);
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

int get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) fail(key, "out of range");
  return static_cast<int>(x);
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

AxisSpec get_axis(const json& v, const std::string& key) {
  if (!v.is_object()) fail(key, "expected an object {start, stop, count}");
  AxisSpec axis;
  for (const auto& [k, item] : v.items()) {
    const std::string path = key + "." + k;
    if (k == "start") axis.start = get_number(item, path);
    else if (k == "stop") axis.stop = get_number(item, path);
    else if (k == "count") axis.count = get_int(item, path);
    else fail(path, "unknown key");
  }
  return axis;
}

void check_axis(const AxisSpec& axis, const std::string& key) {
  if (axis.count < 1) fail(key + ".count", "must be >= 1");
  if (axis.count > 1 && axis.start == axis.stop) fail(key, "start and stop must differ when count > 1");
}

json axis_json(const AxisSpec& a) { return json{{"start", a.start}, {"stop", a.stop}, {"count", a.count}}; }

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
  out.back() = stop;
  return out;
}

void Config::validate() const {
  if (!(kappa_mhz > 0.0)) fail("kappa_mhz", "must be > 0");
  if (!(n_bar >= 0.0)) fail("n_bar", "must be >= 0");
  if (eps_d_mhz && !(*eps_d_mhz >= 0.0)) fail("eps_d_mhz", "must be >= 0");
  if (!(t1_us > 0.0)) fail("t1_us", "must be > 0");
  if (!(t2_us > 0.0 && t2_us <= 2.0 * t1_us)) fail("t2_us", "must lie in (0, 2 t1_us]");
  if (!(p_ground > 0.0 && p_ground <= 1.0)) fail("p_ground", "must lie in (0, 1]");
  if (!(p_excited >= 0.0 && p_excited < p_ground)) fail("p_excited", "must lie in [0, p_ground)");
  if (n_fock != 0 && n_fock < 2) fail("n_fock", "must be 0 (automatic) or >= 2");
  if (frame != "displaced" && frame != "undisplaced") fail("frame", "must be \"displaced\" or \"undisplaced\"");
  if (mode != "steady_tomography" && mode != "cooling_rate" && mode != "rates_analytic_map") {
    fail("mode", "must be steady_tomography, cooling_rate or rates_analytic_map");
  }
  if (!std::isfinite(theta_deg)) fail("theta_deg", "must be finite");
  check_axis(power_db, "grid.power_db");
  check_axis(detuning_mhz, "grid.detuning_mhz");
  if (!(rtol > 0.0 && rtol < 1.0)) fail("rtol", "must lie in (0, 1)");
  if (!(atol > 0.0)) fail("atol", "must be > 0");
  if (!(t_final_us > 0.0)) fail("t_final_us", "must be > 0");
  if (n_times < 2) fail("n_times", "must be >= 2");
  if (initial_state != "undriven" && initial_state != "dressed_excited") {
    fail("initial_state", "must be \"undriven\" or \"dressed_excited\"");
  }
  if (!(fit_tolerance > 0.0)) fail("fit_tolerance", "must be > 0");
  if (workers < 1) fail("workers", "must be >= 1");
  if (!(tomography_scale > 0.0 && tomography_scale <= 1.0)) fail("tomography_scale", "must lie in (0, 1]");
}

Config parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("config must be a JSON object");

  Config c;
  using Setter = std::function<void(const json&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"chi_mhz", [&](const json& v, const std::string& k) { c.chi_mhz = get_number(v, k); }},
      {"kappa_mhz", [&](const json& v, const std::string& k) { c.kappa_mhz = get_number(v, k); }},
      {"omega_r_mhz", [&](const json& v, const std::string& k) { c.omega_r_mhz = get_number(v, k); }},
      {"delta_c_mhz", [&](const json& v, const std::string& k) { c.delta_c_mhz = get_number(v, k); }},
      {"delta_q_prime_mhz", [&](const json& v, const std::string& k) { c.delta_q_prime_mhz = get_number(v, k); }},
      {"n_bar", [&](const json& v, const std::string& k) { c.n_bar = get_number(v, k); }},
      {"eps_d_mhz", [&](const json& v, const std::string& k) { c.eps_d_mhz = get_number(v, k); }},
      {"t1_us", [&](const json& v, const std::string& k) { c.t1_us = get_number(v, k); }},
      {"t2_us", [&](const json& v, const std::string& k) { c.t2_us = get_number(v, k); }},
      {"thermal", [&](const json& v, const std::string& k) { c.thermal = get_bool(v, k); }},
      {"p_ground", [&](const json& v, const std::string& k) { c.p_ground = get_number(v, k); }},
      {"p_excited", [&](const json& v, const std::string& k) { c.p_excited = get_number(v, k); }},
      {"n_fock", [&](const json& v, const std::string& k) { c.n_fock = get_int(v, k); }},
      {"frame", [&](const json& v, const std::string& k) { c.frame = get_string(v, k); }},
      {"mode", [&](const json& v, const std::string& k) { c.mode = get_string(v, k); }},
      {"theta_deg", [&](const json& v, const std::string& k) { c.theta_deg = get_number(v, k); }},
      {"rtol", [&](const json& v, const std::string& k) { c.rtol = get_number(v, k); }},
      {"atol", [&](const json& v, const std::string& k) { c.atol = get_number(v, k); }},
      {"t_final_us", [&](const json& v, const std::string& k) { c.t_final_us = get_number(v, k); }},
      {"n_times", [&](const json& v, const std::string& k) { c.n_times = get_int(v, k); }},
      {"initial_state", [&](const json& v, const std::string& k) { c.initial_state = get_string(v, k); }},
      {"fit_tolerance", [&](const json& v, const std::string& k) { c.fit_tolerance = get_number(v, k); }},
      {"workers", [&](const json& v, const std::string& k) { c.workers = get_int(v, k); }},
      {"output", [&](const json& v, const std::string& k) { c.output = get_string(v, k); }},
      {"tomography_scale", [&](const json& v, const std::string& k) { c.tomography_scale = get_number(v, k); }},
      {"timestamps", [&](const json& v, const std::string& k) { c.timestamps = get_bool(v, k); }},
      {"grid",
       [&](const json& v, const std::string& k) {
         if (!v.is_object()) fail(k, "expected an object");
         for (const auto& [gk, item] : v.items()) {
           const std::string path = k + "." + gk;
           if (gk == "power_db") c.power_db = get_axis(item, path);
           else if (gk == "detuning_mhz") c.detuning_mhz = get_axis(item, path);
           else fail(path, "unknown key");
         }
       }},
  };

  for (const auto& [key, value] : root.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) fail(key, "unknown key");
    it->second(value, key);
  }
  if (root.contains("eps_d_mhz") && root.contains("n_bar")) {
    fail("eps_d_mhz", "give either n_bar or eps_d_mhz, not both");
  }
  c.validate();
  return c;
}

std::string render_config(const Config& c) {
  nlohmann::ordered_json j;
  j["chi_mhz"] = c.chi_mhz;
  j["kappa_mhz"] = c.kappa_mhz;
  j["omega_r_mhz"] = c.omega_r_mhz;
  j["delta_c_mhz"] = c.delta_c_mhz;
  j["delta_q_prime_mhz"] = c.delta_q_prime_mhz;
  if (c.eps_d_mhz) j["eps_d_mhz"] = *c.eps_d_mhz;
  else j["n_bar"] = c.n_bar;
  j["t1_us"] = c.t1_us;
  j["t2_us"] = c.t2_us;
  j["thermal"] = c.thermal;
  j["p_ground"] = c.p_ground;
  j["p_excited"] = c.p_excited;
  j["n_fock"] = c.n_fock;
  j["frame"] = c.frame;
  j["mode"] = c.mode;
  j["theta_deg"] = c.theta_deg;
  j["grid"] = {{"power_db", axis_json(c.power_db)}, {"detuning_mhz", axis_json(c.detuning_mhz)}};
  j["rtol"] = c.rtol;
  j["atol"] = c.atol;
  j["t_final_us"] = c.t_final_us;
  j["n_times"] = c.n_times;
  j["initial_state"] = c.initial_state;
  j["fit_tolerance"] = c.fit_tolerance;
  j["workers"] = c.workers;
  j["output"] = c.output;
  j["tomography_scale"] = c.tomography_scale;
  j["timestamps"] = c.timestamps;
  return j.dump(2) + "\n";
}

bool operator==(const AxisSpec& a, const AxisSpec& b) {
  return a.start == b.start && a.stop == b.stop && a.count == b.count;
}

bool operator==(const Config& a, const Config& b) {
  // n_bar is ignored when eps_d_mhz is set.
  const bool drive_equal = a.eps_d_mhz == b.eps_d_mhz && (a.eps_d_mhz || a.n_bar == b.n_bar);
  return a.chi_mhz == b.chi_mhz && a.kappa_mhz == b.kappa_mhz && a.omega_r_mhz == b.omega_r_mhz &&
         a.delta_c_mhz == b.delta_c_mhz && a.delta_q_prime_mhz == b.delta_q_prime_mhz && drive_equal &&
         a.t1_us == b.t1_us && a.t2_us == b.t2_us && a.thermal == b.thermal && a.p_ground == b.p_ground &&
         a.p_excited == b.p_excited && a.n_fock == b.n_fock && a.frame == b.frame && a.mode == b.mode &&
         a.theta_deg == b.theta_deg && a.power_db == b.power_db && a.detuning_mhz == b.detuning_mhz &&
         a.rtol == b.rtol && a.atol == b.atol && a.t_final_us == b.t_final_us && a.n_times == b.n_times &&
         a.initial_state == b.initial_state && a.fit_tolerance == b.fit_tolerance && a.workers == b.workers &&
         a.output == b.output && a.tomography_scale == b.tomography_scale && a.timestamps == b.timestamps;
}

Frame frame_from_config(const Config& c) {
  return c.frame == "undisplaced" ? Frame::kUndisplaced : Frame::kDisplaced;
}

InitialState initial_state_from_config(const Config& c) {
  return c.initial_state == "dressed_excited" ? InitialState::kDressedExcited : InitialState::kUndrivenSteady;
}

SystemParams to_system_params(const Config& c) {
  c.validate();
  SystemParams p;
  p.chi = units::mhz_to_angular(c.chi_mhz);
  p.kappa = units::mhz_to_angular(c.kappa_mhz);
  p.omega_r_rabi = units::mhz_to_angular(c.omega_r_mhz);
  p.delta_c = units::mhz_to_angular(c.delta_c_mhz);
  p.delta_q_prime = units::mhz_to_angular(c.delta_q_prime_mhz);
  p.eps_d = c.eps_d_mhz ? units::mhz_to_angular(*c.eps_d_mhz) : drive_for_photons(c.n_bar, p.delta_c, p.kappa);
  const double excited = c.thermal ? two_level_excited_fraction(c.p_ground, c.p_excited) : 0.0;
  const QubitRates q = qubit_rates_from_times(c.t1_us, c.t2_us, excited);
  p.gamma_down = q.gamma_down;
  p.gamma_up = q.gamma_up;
  p.gamma_phi = q.gamma_phi;
  p.n_fock = c.n_fock != 0 ? c.n_fock : choose_fock_cutoff(p, frame_from_config(c));
  p.validate();
  return p;
}

SweepGrid to_sweep_grid(const Config& c) {
  SweepGrid grid;
  grid.fixed = to_system_params(c);
  grid.power_axis_db = c.power_db.values();
  for (const double f : c.detuning_mhz.values()) grid.detuning_axis.push_back(units::mhz_to_angular(f));
  grid.mode = sweep_mode_from_string(c.mode);
  grid.theta = c.theta_deg * std::numbers::pi / 180.0;
  grid.cooling.tolerance = c.fit_tolerance;
  grid.cooling.initial = initial_state_from_config(c);
  grid.cooling.evolve = to_evolve_options(c);
  return grid;
}

EvolveOptions to_evolve_options(const Config& c) {
  EvolveOptions o;
  o.rtol = c.rtol;
  o.atol = c.atol;
  return o;
}

}  // namespace dressed_cool
