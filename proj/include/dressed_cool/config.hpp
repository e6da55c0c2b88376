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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dressed_cool/analysis.hpp"
#include "dressed_cool/model.hpp"
#include "dressed_cool/sweep.hpp"

namespace dressed_cool {

struct AxisSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

/// Run configuration. Frequencies are given as f = omega/2pi in MHz (keys
/// ending in _mhz), times in microseconds (keys ending in _us). Defaults are
/// the resonant cooling operating point of the reference device.
struct Config {
  double chi_mhz = -0.66;
  double kappa_mhz = 4.3;
  double omega_r_mhz = 9.0;
  double delta_c_mhz = -9.0;
  double delta_q_prime_mhz = 0.0;
  double n_bar = 1.0;
  std::optional<double> eps_d_mhz;  // overrides n_bar when set
  double t1_us = 10.0;
  double t2_us = 10.6;
  bool thermal = false;  // include gamma_up from the equilibrium populations
  double p_ground = 0.77;
  double p_excited = 0.14;
  int n_fock = 0;  // 0 selects choose_fock_cutoff()
  std::string frame = "displaced";

  std::string mode = "steady_tomography";
  double theta_deg = 90.0;
  AxisSpec power_db{-10.0, 8.0, 41};
  AxisSpec detuning_mhz{-5.0, 15.0, 41};

  double rtol = 1e-8;
  double atol = 1e-10;
  double t_final_us = 10.0;
  int n_times = 1001;
  std::string initial_state = "undriven";
  double fit_tolerance = 0.10;

  int workers = 1;
  std::string output;  // empty: standard output
  double tomography_scale = 1.0;
  bool timestamps = true;

  /// Throws ValidationError naming the key.
  void validate() const;
};

/// Parses a flat JSON object (only "grid" nests). Unknown keys, wrong types
/// and out-of-range values are rejected with the key path in the message.
Config parse_config(std::string_view text);

/// Inverse of parse_config(): parse_config(render_config(c)) == c.
std::string render_config(const Config& config);

bool operator==(const AxisSpec& a, const AxisSpec& b);
bool operator==(const Config& a, const Config& b);

/// The single point where MHz values become angular frequencies.
SystemParams to_system_params(const Config& config);
Frame frame_from_config(const Config& config);
InitialState initial_state_from_config(const Config& config);
SweepGrid to_sweep_grid(const Config& config);
EvolveOptions to_evolve_options(const Config& config);

}  // namespace dressed_cool
