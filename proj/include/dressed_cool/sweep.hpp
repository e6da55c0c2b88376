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

#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dressed_cool/analysis.hpp"
#include "dressed_cool/model.hpp"

namespace dressed_cool {

inline constexpr std::string_view kVersion = "dressed-cool 0.1.0";

enum class SweepMode { kSteadyTomography, kCoolingRate, kRatesAnalyticMap };

std::string_view to_string(SweepMode mode);
SweepMode sweep_mode_from_string(std::string_view name);

/// Drive power P_d = 10 log10(n_bar) dB; -inf is the undriven cavity.
double photons_from_power_db(double p_d_db);
double power_db_from_photons(double n_bar);

/// Grid over cavity drive power and bare qubit detuning dq = w_q - w_r.
/// At each point dq' = dq + 2 chi n_bar and eps_d is set from n_bar; the
/// template's eps_d, delta_q_prime and n_fock are ignored.
struct SweepGrid {
  std::vector<double> power_axis_db;
  std::vector<double> detuning_axis;  // rad/us
  SystemParams fixed;
  SweepMode mode = SweepMode::kSteadyTomography;
  double theta = std::numbers::pi / 2.0;  // projection axis for s_theta
  CompareOptions cooling;                 // used in kCoolingRate mode

  void validate() const;
};

struct SweepRow {
  double p_d_db = 0.0;
  double delta_q = 0.0;  // rad/us
  double n_bar = 0.0;
  double eps_d = 0.0;    // rad/us
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double s_theta = 0.0;
  double gamma_fit = 0.0;  // NaN unless mode == kCoolingRate and the fit succeeded
  bool converged = false;
  std::string error;
};

struct SweepMetadata {
  SystemParams params;
  SweepMode mode = SweepMode::kSteadyTomography;
  double theta = std::numbers::pi / 2.0;
  double tomography_scale = 1.0;
  std::size_t n_power = 0;
  std::size_t n_detuning = 0;
  std::string code_version{kVersion};
  std::string started;   // ISO-8601 UTC, empty when timestamps are disabled
  std::string finished;
};

/// Rows are row-major over (power, detuning).
struct SweepTable {
  SweepMetadata meta;
  std::vector<SweepRow> rows;

  const SweepRow& at(std::size_t power_index, std::size_t detuning_index) const;
};

struct SweepOptions {
  unsigned workers = 1;
  bool timestamps = true;
};

/// Evaluates every grid point independently on `workers` threads. Output is
/// identical for any worker count. Point failures are recorded in the row
/// (converged = false) and never abort the sweep.
SweepTable run_sweep(const SweepGrid& grid, const SweepOptions& options = {});

/// Evaluates a single grid point.
SweepRow evaluate_point(const SweepGrid& grid, double p_d_db, double delta_q);

/// Bare detuning at which the drive tracks the Stark-shifted qubit,
/// dq = -2 chi n_bar(P_d).
std::vector<std::pair<double, double>> stark_line(const std::vector<double>& power_axis_db, double chi);

/// sqrt(delta_c^2 - Omega_R^2); throws when |delta_c| < |Omega_R|.
double optimal_theta_detuning(double delta_c, double omega_r_rabi);

/// Scales the Bloch columns by s in (0, 1] and records s in the metadata.
SweepTable apply_tomography_scale(SweepTable table, double s);

}  // namespace dressed_cool
