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

#include <span>
#include <string>

#include "dressed_cool/dynamics.hpp"
#include "dressed_cool/model.hpp"
#include "dressed_cool/operators.hpp"
#include "dressed_cool/rates.hpp"

namespace dressed_cool {

/// y(t) = y_inf + (y_0 - y_inf) exp(-rate (t - t_first)).
struct ExpFit {
  double rate = 0.0;
  double y_inf = 0.0;
  double y_0 = 0.0;
  double rms_residual = 0.0;
  int iterations = 0;

  double operator()(double t_since_start) const;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) fit of a single exponential.
/// Needs >= 8 samples; throws NonMonotonicError when the data retrace by
/// more than 10% of their net change, NumericalError when the iteration does
/// not converge in 200 steps or the window covers fewer than two decay times.
ExpFit fit_exponential(std::span<const double> times, std::span<const double> values);

/// Peak frequency (MHz for times in us) of a uniformly sampled signal:
/// mean removal, Hann window, FFT, parabolic interpolation of the log
/// magnitude around the largest bin. Bins below 5 cycles per record are
/// excluded. Throws NumericalError when no peak rises above 3x the median
/// spectral floor.
double dominant_frequency(std::span<const double> times, std::span<const double> values);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Reduced qubit state Tr_cavity(rho) in the qubit-major layout.
ComplexMatrix partial_trace_cavity(const DensityMatrix& rho);

BlochVector bloch_vector(const DensityMatrix& rho);

/// <sigma_theta> = sin(theta) x + cos(theta) z.
double sigma_theta_projection(const BlochVector& v, double theta);

enum class InitialState {
  kUndrivenSteady,  // thermal qubit populations, cavity in d-vacuum
  kDressedExcited,  // |-> (x) d-vacuum
};

/// |g><g| p_g + |e><e| p_e (x) |0><0|, with p_e = gamma_up / gamma_1
/// (ground state when gamma_1 = 0).
DensityMatrix undriven_initial_state(const SystemParams& p);
DensityMatrix dressed_excited_state(int n_fock);

struct CompareOptions {
  double tolerance = 0.10;
  InitialState initial = InitialState::kUndrivenSteady;
  double window_decay_times = 10.0;  // fit over [0, window / min(gamma_analytic, kappa / 2)]
  std::size_t samples = 401;
  double strong_coupling_threshold = 1.0;  // on |chi| sqrt(n) / kappa
  EvolveOptions evolve;
};

struct ComparisonReport {
  double n_bar = 0.0;
  double gamma_fit = 0.0;  // NaN when the trace was not fitted
  double gamma_analytic = 0.0;
  double sx_sim = 0.0;
  double sx_analytic = 0.0;
  double coupling_ratio = 0.0;
  double window_us = 0.0;
  double tolerance = 0.0;
  int n_fock = 0;
  bool strong_coupling = false;
  bool non_exponential = false;
  bool pass = false;
  std::string note;
  Trajectory trajectory;
};

/// Simulates the sudden turn-on of both drives, fits the <sigma_x> build-up
/// and compares rate and steady <sigma_x> against rates_general + detailed
/// balance. The rate passes on relative error, <sigma_x> on absolute error.
ComparisonReport compare_sim_analytic(const SystemParams& p, const CompareOptions& options = {});

/// Flat key/value JSON object (trajectory omitted).
std::string to_json(const ComparisonReport& report);

}  // namespace dressed_cool
