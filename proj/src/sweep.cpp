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

#include "dressed_cool/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <thread>

#include "dressed_cool/dynamics.hpp"
#include "dressed_cool/errors.hpp"
#include "dressed_cool/rates.hpp"

namespace dressed_cool {

namespace {

void require_strictly_monotonic(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ValidationError(std::string("SweepGrid.") + name + ": axis is empty");
  if (axis.size() < 2) return;
  const bool increasing = axis[1] > axis[0];
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const bool ok = increasing ? axis[i] > axis[i - 1] : axis[i] < axis[i - 1];
    if (!ok) throw ValidationError(std::string("SweepGrid.") + name + ": axis must be strictly monotonic");
  }
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void fill_from_state(SweepRow& row, const DensityMatrix& rho, double theta) {
  const BlochVector v = bloch_vector(rho);
  row.sx = v.x;
  row.sy = v.y;
  row.sz = v.z;
  row.s_theta = sigma_theta_projection(v, theta);
}

}  // namespace

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::kSteadyTomography: return "steady_tomography";
    case SweepMode::kCoolingRate: return "cooling_rate";
    case SweepMode::kRatesAnalyticMap: return "rates_analytic_map";
  }
  return "unknown";
}

SweepMode sweep_mode_from_string(std::string_view name) {
  if (name == "steady_tomography") return SweepMode::kSteadyTomography;
  if (name == "cooling_rate") return SweepMode::kCoolingRate;
  if (name == "rates_analytic_map") return SweepMode::kRatesAnalyticMap;
  throw ValidationError("unknown sweep mode '" + std::string(name) + "'");
}

double photons_from_power_db(double p_d_db) { return std::pow(10.0, p_d_db / 10.0); }

double power_db_from_photons(double n_bar) { return 10.0 * std::log10(n_bar); }

void SweepGrid::validate() const {
  require_strictly_monotonic(power_axis_db, "power_axis_db");
  require_strictly_monotonic(detuning_axis, "detuning_axis");
  for (const double p : power_axis_db) {
    if (std::isnan(p) || p == std::numeric_limits<double>::infinity()) {
      throw ValidationError("SweepGrid.power_axis_db: values must be finite or -inf");
    }
  }
  for (const double d : detuning_axis) {
    if (!std::isfinite(d)) throw ValidationError("SweepGrid.detuning_axis: values must be finite");
  }
  SystemParams probe = fixed;
  probe.eps_d = 0.0;
  probe.validate();
}

const SweepRow& SweepTable::at(std::size_t power_index, std::size_t detuning_index) const {
  if (power_index >= meta.n_power || detuning_index >= meta.n_detuning) {
    throw ValidationError("SweepTable::at: index out of range");
  }
  return rows.at(power_index * meta.n_detuning + detuning_index);
}

SweepRow evaluate_point(const SweepGrid& grid, double p_d_db, double delta_q) {
  SweepRow row;
  row.p_d_db = p_d_db;
  row.delta_q = delta_q;
  row.gamma_fit = std::numeric_limits<double>::quiet_NaN();
  try {
    SystemParams p = grid.fixed;
    row.n_bar = photons_from_power_db(p_d_db);
    row.eps_d = drive_for_photons(row.n_bar, p.delta_c, p.kappa);
    p.eps_d = row.eps_d;
    p.delta_q_prime = delta_q + 2.0 * p.chi * row.n_bar;
    p.n_fock = choose_fock_cutoff(p, Frame::kDisplaced);

    switch (grid.mode) {
      case SweepMode::kRatesAnalyticMap: {
        const BlochPrediction b = steady_bloch(rates_general(p), p);
        const BlochVector v{std::sin(b.theta) * b.sigma_theta_ss, 0.0, std::cos(b.theta) * b.sigma_theta_ss};
        row.sx = v.x;
        row.sy = v.y;
        row.sz = v.z;
        row.s_theta = sigma_theta_projection(v, grid.theta);
        break;
      }
      case SweepMode::kSteadyTomography:
        fill_from_state(row, steady_state(build_hamiltonian_displaced(p), collapse_ops(p, Frame::kDisplaced)),
                        grid.theta);
        break;
      case SweepMode::kCoolingRate: {
        fill_from_state(row, steady_state(build_hamiltonian_displaced(p), collapse_ops(p, Frame::kDisplaced)),
                        grid.theta);
        const ComparisonReport report = compare_sim_analytic(p, grid.cooling);
        row.gamma_fit = report.gamma_fit;
        if (!std::isfinite(report.gamma_fit)) {
          row.error = report.note.empty() ? "fit failed" : report.note;
          return row;
        }
        break;
      }
    }
    row.converged = true;
  } catch (const std::exception& e) {
    row.converged = false;
    row.error = e.what();
  }
  return row;
}

SweepTable run_sweep(const SweepGrid& grid, const SweepOptions& options) {
  grid.validate();
  SweepTable table;
  table.meta.params = grid.fixed;
  table.meta.mode = grid.mode;
  table.meta.theta = grid.theta;
  table.meta.n_power = grid.power_axis_db.size();
  table.meta.n_detuning = grid.detuning_axis.size();
  if (options.timestamps) table.meta.started = utc_now();

  const std::size_t total = table.meta.n_power * table.meta.n_detuning;
  table.rows.resize(total);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      const std::size_t ip = i / table.meta.n_detuning;
      const std::size_t iq = i % table.meta.n_detuning;
      table.rows[i] = evaluate_point(grid, grid.power_axis_db[ip], grid.detuning_axis[iq]);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(total)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (options.timestamps) table.meta.finished = utc_now();
  return table;
}

std::vector<std::pair<double, double>> stark_line(const std::vector<double>& power_axis_db, double chi) {
  std::vector<std::pair<double, double>> out;
  out.reserve(power_axis_db.size());
  for (const double p : power_axis_db) out.emplace_back(p, -2.0 * chi * photons_from_power_db(p));
  return out;
}

double optimal_theta_detuning(double delta_c, double omega_r_rabi) {
  const double diff = delta_c * delta_c - omega_r_rabi * omega_r_rabi;
  if (diff < 0.0) {
    throw ValidationError("optimal_theta_detuning: |delta_c| < |Omega_R|, the cavity cannot match the dressed splitting");
  }
  return std::sqrt(diff);
}

SweepTable apply_tomography_scale(SweepTable table, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw ValidationError("tomography scale must lie in (0, 1]");
  for (auto& row : table.rows) {
    row.sx *= s;
    row.sy *= s;
    row.sz *= s;
    row.s_theta *= s;
  }
  table.meta.tomography_scale *= s;
  return table;
}

}  // namespace dressed_cool
