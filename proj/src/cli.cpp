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

#include "dressed_cool/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dressed_cool/acceptance.hpp"
#include "dressed_cool/analysis.hpp"
#include "dressed_cool/config.hpp"
#include "dressed_cool/csv.hpp"
#include "dressed_cool/errors.hpp"
#include "dressed_cool/rates.hpp"
#include "dressed_cool/sweep.hpp"
#include "dressed_cool/units.hpp"
#include "json.hpp"

namespace dressed_cool::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Common {
  std::string config_path;
  std::string output;
  bool no_timestamp = false;
  std::optional<int> workers;
};

Config load_config(const Common& c) {
  std::string text = "{}";
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file " + c.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Config config = parse_config(text);
  if (const char* env = std::getenv("DRESSED_COOL_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long w = std::strtol(env, &end, 10);
    if (*end != '\0' || w < 1 || w > 4096) throw ValidationError("DRESSED_COOL_WORKERS must be a positive integer");
    config.workers = static_cast<int>(w);
  }
  if (c.workers) config.workers = *c.workers;
  if (!c.output.empty()) config.output = c.output;
  if (c.no_timestamp) config.timestamps = false;
  config.validate();
  return config;
}

// Writes to the configured file, or to `out` when none is set.
template <typename Fn>
void emit(const Config& config, std::ostream& out, Fn&& write) {
  if (config.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file " + config.output);
  write(file);
  if (!file) throw ValidationError("failed writing " + config.output);
}

RatePair rates_for(const SystemParams& p, const std::string& regime) {
  if (regime == "general") return rates_general(p);
  if (regime == "resonant") return rates_resonant(p);
  if (regime == "sideband") return rates_sideband_limit(p);
  if (regime == "raman") return raman_rates(p);
  throw ValidationError("unknown regime '" + regime + "'");
}

void cmd_rates(const Config& config, const std::string& regime, std::ostream& out) {
  const SystemParams p = to_system_params(config);
  const RatePair rates = rates_for(p, regime);
  const BlochPrediction b = steady_bloch(rates, p);
  const EffectiveTemperature t = effective_temperature(b.purity_plus, b.omega_tilde);
  ordered_json j;
  j["regime"] = std::string(to_string(rates.regime));
  j["n_bar"] = p.n_bar();
  j["gamma_minus_per_us"] = rates.gamma_minus;
  j["gamma_plus_per_us"] = rates.gamma_plus;
  j["gamma_total_per_us"] = rates.total();
  j["theta_deg"] = b.theta * 180.0 / std::numbers::pi;
  j["omega_tilde_mhz"] = units::angular_to_mhz(b.omega_tilde);
  j["sigma_theta"] = b.sigma_theta_ss;
  j["sx"] = std::sin(b.theta) * b.sigma_theta_ss;
  j["purity"] = b.purity_plus;
  j["t_eff_uk"] = std::isinf(t.kelvin) ? ordered_json(nullptr) : ordered_json(t.kelvin * 1e6);
  j["inverted"] = t.inverted;
  j["cooling_condition"] = cooling_condition(p);
  emit(config, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

struct Model {
  SystemParams p;
  Frame frame;
  ComplexMatrix h;
  CollapseSet ls;
};

Model build_model(const Config& config) {
  Model m{to_system_params(config), frame_from_config(config), {}, {}};
  m.h = m.frame == Frame::kDisplaced ? build_hamiltonian_displaced(m.p) : build_hamiltonian_undisplaced(m.p);
  m.ls = collapse_ops(m.p, m.frame);
  return m;
}

void cmd_evolve(const Config& config, std::ostream& out) {
  const Model m = build_model(config);
  const int nf = m.p.n_fock;
  const HilbertLayout layout(nf);
  const DensityMatrix rho0 = initial_state_from_config(config) == InitialState::kDressedExcited
                                 ? dressed_excited_state(nf)
                                 : undriven_initial_state(m.p);
  const std::vector<Observable> obs{{"sx", qubit_operator(PauliAxis::kX, nf)},
                                    {"sy", qubit_operator(PauliAxis::kY, nf)},
                                    {"sz", qubit_operator(PauliAxis::kZ, nf)},
                                    {"photons", layout.cavity_op(number_op(nf))}};
  const Trajectory traj = evolve(m.h, m.ls, rho0, linspace(0.0, config.t_final_us, config.n_times), obs,
                                 to_evolve_options(config));
  emit(config, out, [&](std::ostream& os) { write_trajectory_csv(traj, os); });
}

void cmd_steady(const Config& config, std::ostream& out) {
  const Model m = build_model(config);
  const SteadyStateResult ss = steady_state_solve(m.h, m.ls);
  const BlochVector v = bloch_vector(ss.rho);
  const double theta = config.theta_deg * std::numbers::pi / 180.0;
  ordered_json j;
  j["sx"] = v.x;
  j["sy"] = v.y;
  j["sz"] = v.z;
  j["s_theta"] = sigma_theta_projection(v, theta);
  j["theta_deg"] = config.theta_deg;
  j["bloch_norm"] = v.norm();
  j["n_fock"] = m.p.n_fock;
  j["residual"] = ss.residual;
  emit(config, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void cmd_sweep(const Config& config, std::ostream& out) {
  const SweepGrid grid = to_sweep_grid(config);
  SweepOptions opts;
  opts.workers = static_cast<unsigned>(config.workers);
  opts.timestamps = config.timestamps;
  SweepTable table = run_sweep(grid, opts);
  if (config.tomography_scale != 1.0) table = apply_tomography_scale(std::move(table), config.tomography_scale);
  emit(config, out, [&](std::ostream& os) { write_csv(table, os, config.timestamps); });
}

std::pair<std::vector<double>, std::vector<double>> load_series(const std::string& input, const std::string& time_col,
                                                                const std::string& value_col) {
  const CsvTable t = read_csv(std::filesystem::path(input));
  return {t.column(time_col), t.column(value_col)};
}

void cmd_fit(const Config& config, const std::string& input, const std::string& time_col,
             const std::string& value_col, std::ostream& out) {
  const auto [t, y] = load_series(input, time_col, value_col);
  const ExpFit f = fit_exponential(t, y);
  ordered_json j;
  j["column"] = value_col;
  j["rate_per_us"] = f.rate;
  j["y_inf"] = f.y_inf;
  j["y_0"] = f.y_0;
  j["rms_residual"] = f.rms_residual;
  j["iterations"] = f.iterations;
  emit(config, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void cmd_spectrum(const Config& config, const std::string& input, const std::string& time_col,
                  const std::string& value_col, std::ostream& out) {
  const auto [t, y] = load_series(input, time_col, value_col);
  ordered_json j;
  j["column"] = value_col;
  j["peak_mhz"] = dominant_frequency(t, y);
  emit(config, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

int cmd_verify(std::ostream& out) {
  bool all = true;
  run_acceptance([&](const CriterionResult& r) {
    all = all && r.pass;
    out << format_result(r) << std::endl;
  });
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity-assisted cooling of a driven qubit: rates, dynamics and sweeps", "dressed_cool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common common;
  const auto add_common = [&](CLI::App* sub, bool with_output = true) {
    sub->add_option("-c,--config", common.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    if (with_output) sub->add_option("-o,--output", common.output, "write results here instead of stdout");
    sub->add_option("-j,--workers", common.workers, "worker threads (sweep)")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timestamp", common.no_timestamp, "omit wall-clock timestamps from the output");
  };

  std::string regime = "general";
  auto* rates = app.add_subcommand("rates", "analytic cooling/heating rates and steady state");
  add_common(rates);
  rates->add_option("--regime", regime, "general | resonant | sideband | raman")
      ->check(CLI::IsMember({"general", "resonant", "sideband", "raman"}));

  auto* evolve_cmd = app.add_subcommand("evolve", "integrate the master equation, write a trajectory CSV");
  add_common(evolve_cmd);
  auto* steady = app.add_subcommand("steady", "steady-state Bloch vector as JSON");
  add_common(steady);
  auto* sweep = app.add_subcommand("sweep", "power x detuning sweep, written as CSV");
  add_common(sweep);

  std::string input;
  std::string time_col = "t_us";
  std::string value_col = "sx";
  auto* fit = app.add_subcommand("fit", "exponential fit of one column of a trajectory CSV");
  auto* spectrum = app.add_subcommand("spectrum", "dominant frequency of one column of a trajectory CSV");
  for (auto* sub : {fit, spectrum}) {
    add_common(sub);
    sub->add_option("input", input, "trajectory CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("--column", value_col, "value column");
    sub->add_option("--time-column", time_col, "time column (us)");
  }
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");

  std::vector<const char*> argv{"dressed_cool"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (verify->parsed()) return cmd_verify(out);
    const Config config = load_config(common);
    if (rates->parsed()) cmd_rates(config, regime, out);
    else if (evolve_cmd->parsed()) cmd_evolve(config, out);
    else if (steady->parsed()) cmd_steady(config, out);
    else if (sweep->parsed()) cmd_sweep(config, out);
    else if (fit->parsed()) cmd_fit(config, input, time_col, value_col, out);
    else if (spectrum->parsed()) cmd_spectrum(config, input, time_col, value_col, out);
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace dressed_cool::cli
