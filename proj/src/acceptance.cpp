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

#include "dressed_cool/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>

#include "dressed_cool/analysis.hpp"
#include "dressed_cool/dynamics.hpp"
#include "dressed_cool/errors.hpp"
#include "dressed_cool/rates.hpp"
#include "dressed_cool/sweep.hpp"
#include "dressed_cool/units.hpp"

namespace dressed_cool {

namespace {

using units::mhz_to_angular;

constexpr double kTraceBound = 1e-7;
constexpr double kHermitianBound = 1e-10;
constexpr double kEigenBound = -1e-7;

std::string fmt(const char* format, auto... args) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Conservation diagnostics gathered from every trajectory simulated by the
// other checks.
struct Ledger {
  double trace = 0.0;
  double hermitian = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  int count = 0;

  void add(const Trajectory& t) {
    trace = std::max(trace, t.max_trace_error);
    hermitian = std::max(hermitian, t.max_hermiticity_residual);
    if (std::isnan(t.min_eigenvalue)) {
      min_eig = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isnan(min_eig)) {
      min_eig = std::min(min_eig, t.min_eigenvalue);
    }
    ++count;
  }
};

EvolveOptions checked_options() {
  EvolveOptions o;
  o.check_positivity = true;
  return o;
}

CriterionResult begin(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double steady_sx(const SystemParams& p) {
  const DensityMatrix rho = steady_state(build_hamiltonian_displaced(p), collapse_ops(p, Frame::kDisplaced));
  return bloch_vector(rho).x;
}

CriterionResult golden_rule_rate_check(Ledger& ledger) {
  CriterionResult r = begin(1, "golden-rule cooling rate");
  CompareOptions opts;
  opts.evolve = checked_options();
  std::vector<double> ns{0.25, 0.5, 1.0};
  std::vector<double> fitted;
  bool ok = true;
  for (const double n : ns) {
    const SystemParams p = reference_params(n);
    const ComparisonReport rep = compare_sim_analytic(p, opts);
    ledger.add(rep.trajectory);
    const double predicted = rates_resonant(p).total();
    const double err = relative(rep.gamma_fit, predicted);
    ok = ok && err <= 0.10;
    fitted.push_back(rep.gamma_fit);
    r.detail += fmt("n=%.2f fit %.3f vs %.3f (%.1f%%); ", n, rep.gamma_fit, predicted, 100 * err);
  }
  const double s = slope(ns, fitted);
  const double target = golden_rule_rate(reference_params(1.0));
  const double serr = relative(s, target);
  ok = ok && serr <= 0.10;
  r.detail += fmt("slope %.3f vs %.3f /us (%.1f%%, tol 10%%)", s, target, 100 * serr);
  r.pass = ok;
  return r;
}

CriterionResult purity_check() {
  CriterionResult r = begin(2, "steady-state purity");
  SweepGrid grid;
  grid.fixed = reference_params(1.0);
  grid.power_axis_db = {0.0};
  grid.detuning_axis = {-2.0 * grid.fixed.chi};  // dq' = 0 at n_bar = 1
  SweepOptions so;
  so.timestamps = false;
  const SweepTable table = run_sweep(grid, so);
  const double sx = table.rows.at(0).sx;
  const SweepTable scaled = apply_tomography_scale(table, 0.8);
  const double sx_scaled = scaled.rows.at(0).sx;
  const BlochPrediction db = steady_bloch(rates_resonant(grid.fixed), grid.fixed);
  const double balance = std::sin(db.theta) * db.sigma_theta_ss;
  r.pass = table.rows[0].converged && std::abs(sx - 0.94) <= 0.03 && std::abs(balance - 0.94) <= 0.03 &&
           std::abs(sx_scaled - 0.75) <= 0.03;
  r.detail = fmt("<sx> %.4f (target 0.94 +- 0.03, detailed balance %.4f); scaled x0.8 %.4f (target 0.75 +- 0.03)",
                 sx, balance, sx_scaled);
  return r;
}

CriterionResult oscillation_check(Ledger& ledger) {
  CriterionResult r = begin(3, "strong-coupling oscillation");
  SystemParams p = reference_params(3.31);
  p.kappa = mhz_to_angular(0.2);
  p.eps_d = drive_for_photons(3.31, p.delta_c, p.kappa);
  p.n_fock = choose_fock_cutoff(p, Frame::kDisplaced);
  const auto times = linspace(0.0, 20.0, 2001);
  const Trajectory traj = evolve(build_hamiltonian_displaced(p), collapse_ops(p, Frame::kDisplaced),
                                 undriven_initial_state(p), times,
                                 {{"sx", qubit_operator(PauliAxis::kX, p.n_fock)}}, checked_options());
  ledger.add(traj);
  const double peak = dominant_frequency(traj.times, traj.series("sx"));
  const double target = units::angular_to_mhz(2.0 * std::abs(p.chi) * std::sqrt(p.n_bar()));
  const double err = relative(peak, target);
  r.pass = err <= 0.05;
  r.detail = fmt("peak %.4f MHz vs 2|chi|sqrt(n) %.4f MHz (%.2f%%, tol 5%%, n_fock %d)", peak, target, 100 * err,
                 p.n_fock);
  return r;
}

CriterionResult inversion_check() {
  CriterionResult r = begin(4, "blue-detuned inversion");
  SystemParams blue = reference_params(1.0);
  blue.delta_c = -blue.delta_c;
  blue.eps_d = drive_for_photons(1.0, blue.delta_c, blue.kappa);
  const double sx_blue = steady_sx(blue);

  SweepGrid red_grid;
  red_grid.fixed = reference_params(1.0);
  red_grid.fixed.gamma_down = red_grid.fixed.gamma_up = red_grid.fixed.gamma_phi = 0.0;
  for (int i = 0; i < 5; ++i) {
    red_grid.power_axis_db.push_back(-10.0 + 4.5 * i);
    red_grid.detuning_axis.push_back(mhz_to_angular(-5.0 + 5.0 * i));
  }
  SweepGrid blue_grid = red_grid;
  blue_grid.fixed.delta_c = -red_grid.fixed.delta_c;
  SweepOptions so;
  so.timestamps = false;
  const SweepTable red_map = run_sweep(red_grid, so);
  const SweepTable blue_map = run_sweep(blue_grid, so);
  double worst = 0.0;
  bool converged = true;
  for (std::size_t i = 0; i < red_map.rows.size(); ++i) {
    converged = converged && red_map.rows[i].converged && blue_map.rows[i].converged;
    worst = std::max(worst, std::abs(red_map.rows[i].sx + blue_map.rows[i].sx));
  }
  r.pass = sx_blue <= -0.85 && converged && worst <= 0.05;
  r.detail = fmt("blue <sx> %.4f (<= -0.85); max |red + blue| over 5x5 map %.2e (<= 0.05)%s", sx_blue, worst,
                 converged ? "" : "; some points failed");
  return r;
}

CriterionResult theta_check() {
  CriterionResult r = begin(5, "theta-cooling optimum");
  SweepGrid grid;
  grid.fixed = reference_params(1.0);
  grid.fixed.delta_c = mhz_to_angular(-15.0);
  const double optimum = optimal_theta_detuning(grid.fixed.delta_c, grid.fixed.omega_r_rabi);
  grid.theta = std::atan2(grid.fixed.omega_r_rabi, optimum);
  grid.power_axis_db = {0.0};
  const double step_mhz = 1.0;
  std::vector<double> dq_prime_mhz;
  for (int i = 0; i <= 24; ++i) {
    dq_prime_mhz.push_back(step_mhz * i);
    grid.detuning_axis.push_back(mhz_to_angular(step_mhz * i) - 2.0 * grid.fixed.chi);
  }
  SweepOptions so;
  so.timestamps = false;
  const SweepTable table = run_sweep(grid, so);
  std::size_t best = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!table.rows[i].converged) throw NumericalError("theta sweep: " + table.rows[i].error);
    if (table.rows[i].s_theta > table.rows[best].s_theta) best = i;
  }
  const double target = units::angular_to_mhz(optimum);
  r.pass = std::abs(dq_prime_mhz[best] - target) <= step_mhz + 1e-9;
  r.detail = fmt("argmax dq'/2pi = %.1f MHz (<s_theta> %.4f) vs %.2f MHz, grid step %.1f MHz", dq_prime_mhz[best],
                 table.rows[best].s_theta, target, step_mhz);
  return r;
}

Eigen::VectorXcd coherent_ket(Complex alpha, int n_fock) {
  Eigen::VectorXcd psi(n_fock);
  psi(0) = 1.0;
  for (int m = 1; m < n_fock; ++m) psi(m) = psi(m - 1) * alpha / std::sqrt(static_cast<double>(m));
  return psi / psi.norm();
}

double frame_mismatch(double n_bar, Ledger& ledger) {
  SystemParams p = reference_params(n_bar);
  const DisplacedFrame df = displacement(p.eps_d, p.delta_c, p.kappa);
  const auto times = linspace(0.0, 10.0, 201);

  SystemParams pd = p;
  pd.n_fock = choose_fock_cutoff(p, Frame::kDisplaced);
  const int nd = pd.n_fock;
  const HilbertLayout ld(nd);
  Eigen::VectorXcd ket_d = Eigen::VectorXcd::Zero(ld.dim());
  ket_d(ld.index(0, 0)) = 1.0;
  const Trajectory td = evolve(build_hamiltonian_displaced(pd), collapse_ops(pd, Frame::kDisplaced),
                               DensityMatrix::pure(ket_d), times,
                               {{"sx", qubit_operator(PauliAxis::kX, nd)},
                                {"sz", qubit_operator(PauliAxis::kZ, nd)},
                                {"d_re", ld.cavity_op(0.5 * (annihilation(nd) + creation(nd)))},
                                {"d_im", ld.cavity_op(Complex(0, -0.5) * (annihilation(nd) - creation(nd)))}},
                               checked_options());
  ledger.add(td);

  SystemParams pu = p;
  pu.n_fock = choose_fock_cutoff(p, Frame::kUndisplaced);
  const int nu = pu.n_fock;
  const HilbertLayout lu(nu);
  Eigen::VectorXcd ket_u = Eigen::VectorXcd::Zero(lu.dim());
  ket_u.head(nu) = coherent_ket(df.a_bar, nu);  // qubit |g> block
  const Trajectory tu = evolve(build_hamiltonian_undisplaced(pu), collapse_ops(pu, Frame::kUndisplaced),
                               DensityMatrix::pure(ket_u), times,
                               {{"sx", qubit_operator(PauliAxis::kX, nu)},
                                {"sz", qubit_operator(PauliAxis::kZ, nu)},
                                {"a_re", lu.cavity_op(0.5 * (annihilation(nu) + creation(nu)))},
                                {"a_im", lu.cavity_op(Complex(0, -0.5) * (annihilation(nu) - creation(nu)))}},
                               checked_options());
  ledger.add(tu);

  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    worst = std::max(worst, std::abs(td.series("sx")[i] - tu.series("sx")[i]));
    worst = std::max(worst, std::abs(td.series("sz")[i] - tu.series("sz")[i]));
    worst = std::max(worst, std::abs(df.a_bar.real() + td.series("d_re")[i] - tu.series("a_re")[i]));
    worst = std::max(worst, std::abs(df.a_bar.imag() + td.series("d_im")[i] - tu.series("a_im")[i]));
  }
  return worst;
}

CriterionResult equivalence_check(Ledger& ledger) {
  CriterionResult r = begin(6, "formula equivalence");
  double general_vs_resonant = 0.0;
  for (const double n : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const SystemParams p = reference_params(n);
    const RatePair a = rates_general(p);
    const RatePair b = rates_resonant(p);
    general_vs_resonant = std::max({general_vs_resonant, relative(a.gamma_minus, b.gamma_minus),
                                    relative(a.gamma_plus, b.gamma_plus)});
  }

  // Far-detuned Raman regime without intrinsic decoherence.
  double raman_vs_sideband = 0.0;
  for (const double dq : {30.0, 45.0, 60.0}) {
    SystemParams p = reference_params(1.0);
    p.gamma_down = p.gamma_up = p.gamma_phi = 0.0;
    p.omega_r_rabi = mhz_to_angular(3.0);
    p.delta_q_prime = mhz_to_angular(dq);
    p.delta_c = -p.delta_q_prime;
    p.eps_d = drive_for_photons(1.0, p.delta_c, p.kappa);
    const RatePair a = raman_rates(p);
    const RatePair b = rates_sideband_limit(p);
    raman_vs_sideband = std::max({raman_vs_sideband, relative(a.gamma_minus, b.gamma_minus),
                                  relative(a.gamma_plus, b.gamma_plus)});
  }

  double frames = 0.0;
  for (const double n : {1.0, 4.0}) frames = std::max(frames, frame_mismatch(n, ledger));

  r.pass = general_vs_resonant <= 1e-14 && raman_vs_sideband <= 1e-15 && frames <= 2e-3;
  r.detail = fmt("general/resonant %.1e (<= 1e-14); raman/sideband %.1e (<= 1e-15, rounding only); "
                 "frames max dev %.2e (<= 2e-3, n <= 4)",
                 general_vs_resonant, raman_vs_sideband, frames);
  return r;
}

CriterionResult conservation_check(const Ledger& ledger) {
  CriterionResult r = begin(7, "conservation");
  r.pass = ledger.count > 0 && ledger.trace <= kTraceBound && ledger.hermitian <= kHermitianBound &&
           !std::isnan(ledger.min_eig) && ledger.min_eig >= kEigenBound;
  r.detail = fmt("%d trajectories: max |Tr-1| %.1e, max herm %.1e, min eig %.1e", ledger.count, ledger.trace,
                 ledger.hermitian, ledger.min_eig);
  return r;
}

CriterionResult temperature_check() {
  CriterionResult r = begin(8, "effective temperature");
  const EffectiveTemperature t = effective_temperature(0.94, mhz_to_angular(9.0));
  const double micro_k = t.kelvin * 1e6;
  r.pass = !t.inverted && micro_k >= 140.0 && micro_k <= 165.0;
  r.detail = fmt("T_eff %.1f uK (window [140, 165])", micro_k);
  return r;
}

}  // namespace

SystemParams reference_params(double n_bar) {
  SystemParams p;
  p.chi = mhz_to_angular(-0.66);
  p.kappa = mhz_to_angular(4.3);
  p.omega_r_rabi = mhz_to_angular(9.0);
  p.delta_c = -p.omega_r_rabi;
  p.delta_q_prime = 0.0;
  p.eps_d = drive_for_photons(n_bar, p.delta_c, p.kappa);
  const QubitRates q = qubit_rates_from_times(10.0, 10.6);
  p.gamma_down = q.gamma_down;
  p.gamma_up = q.gamma_up;
  p.gamma_phi = q.gamma_phi;
  p.n_fock = choose_fock_cutoff(p, Frame::kDisplaced);
  return p;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
  Ledger ledger;
  const std::vector<std::pair<std::pair<int, const char*>, std::function<CriterionResult()>>> checks{
      {{1, "golden-rule cooling rate"}, [&] { return golden_rule_rate_check(ledger); }},
      {{2, "steady-state purity"}, [] { return purity_check(); }},
      {{3, "strong-coupling oscillation"}, [&] { return oscillation_check(ledger); }},
      {{4, "blue-detuned inversion"}, [] { return inversion_check(); }},
      {{5, "theta-cooling optimum"}, [] { return theta_check(); }},
      {{6, "formula equivalence"}, [&] { return equivalence_check(ledger); }},
      {{7, "conservation"}, [&] { return conservation_check(ledger); }},
      {{8, "effective temperature"}, [] { return temperature_check(); }},
  };
  std::vector<CriterionResult> results;
  for (const auto& [label, check] : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = check();
    } catch (const std::exception& e) {
      res = begin(label.first, label.second);
      res.detail = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(res);
    results.push_back(std::move(res));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  return fmt("%s [%d] %s: %s (%.1f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
             r.seconds);
}

}  // namespace dressed_cool
