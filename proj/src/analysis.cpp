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

#include "dressed_cool/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "dressed_cool/errors.hpp"
#include "dressed_cool/units.hpp"
#include "json.hpp"

namespace dressed_cool {

namespace {

constexpr int kMaxFitIterations = 200;
constexpr double kRetraceFraction = 0.10;

void check_series(std::span<const double> times, std::span<const double> values, std::size_t min_samples,
                  const char* who) {
  if (times.size() != values.size()) {
    throw ValidationError(std::string(who) + ": times and values differ in length");
  }
  if (times.size() < min_samples) {
    throw ValidationError(std::string(who) + ": needs at least " + std::to_string(min_samples) + " samples");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
      throw ValidationError(std::string(who) + ": non-finite sample");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ValidationError(std::string(who) + ": times must be strictly increasing");
    }
  }
}

// Largest pullback against the net direction of travel, as a fraction of
// the net change.
double retrace_fraction(std::span<const double> values) {
  const double net = values.back() - values.front();
  const double dir = net >= 0.0 ? 1.0 : -1.0;
  double extreme = values.front();
  double worst = 0.0;
  for (const double v : values) {
    if (dir * (v - extreme) > 0.0) extreme = v;
    worst = std::max(worst, dir * (extreme - v));
  }
  return worst / std::abs(net);
}

struct FitState {
  double y_inf, y_0, rate;
};

double sum_squares(std::span<const double> t, std::span<const double> y, const FitState& s) {
  double sse = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (s.y_inf + (s.y_0 - s.y_inf) * std::exp(-s.rate * t[i]));
    sse += r * r;
  }
  return sse;
}

double initial_rate(std::span<const double> t, std::span<const double> y, double y_inf) {
  const double amp0 = std::abs(y.front() - y_inf);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double amp = std::abs(y[i] - y_inf);
    if (amp <= 0.05 * amp0) continue;
    const double ly = std::log(amp);
    sx += t[i];
    sy += ly;
    sxx += t[i] * t[i];
    sxy += t[i] * ly;
    ++n;
  }
  const double span = t.back() - t.front();
  if (n >= 2) {
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (std::isfinite(slope) && slope < 0.0) return -slope;
  }
  return 3.0 / span;
}

}  // namespace

double ExpFit::operator()(double t_since_start) const {
  return y_inf + (y_0 - y_inf) * std::exp(-rate * t_since_start);
}

ExpFit fit_exponential(std::span<const double> times, std::span<const double> values) {
  check_series(times, values, 8, "fit_exponential");
  const double net = values.back() - values.front();
  const double scale = std::max({std::abs(values.front()), std::abs(values.back()), 1e-300});
  if (std::abs(net) <= 1e-12 * scale) throw NumericalError("fit_exponential: data show no net change");
  if (const double f = retrace_fraction(values); f > kRetraceFraction) {
    std::ostringstream msg;
    msg << "fit_exponential: data are not monotonic (retrace " << 100.0 * f
        << "% of the net change); possible coherent oscillation";
    throw NonMonotonicError(msg.str());
  }

  std::vector<double> t(times.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = times[i] - times.front();
  const std::span<const double> y = values;

  FitState s{y.back(), y.front(), 0.0};
  s.rate = initial_rate(t, y, s.y_inf);
  double sse = sum_squares(t, y, s);
  double lambda = 1e-3;

  for (int iter = 1; iter <= kMaxFitIterations; ++iter) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double e = std::exp(-s.rate * t[i]);
      const Eigen::Vector3d g(1.0 - e, e, -(s.y_0 - s.y_inf) * t[i] * e);
      const double r = y[i] - (s.y_inf + (s.y_0 - s.y_inf) * e);
      jtj += g * g.transpose();
      jtr += g * r;
    }

    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      const Eigen::Vector3d step = a.ldlt().solve(jtr);
      const FitState trial{s.y_inf + step(0), s.y_0 + step(1), s.rate + step(2)};
      const double trial_sse = trial.rate > 0.0 ? sum_squares(t, y, trial) : std::numeric_limits<double>::infinity();
      if (trial_sse <= sse) {
        const bool converged = step.cwiseAbs().maxCoeff() <
                               1e-10 * std::max(1.0, std::max({std::abs(s.y_inf), std::abs(s.y_0), s.rate}));
        s = trial;
        sse = trial_sse;
        lambda = std::max(lambda / 10.0, 1e-12);
        if (converged) {
          ExpFit fit{s.rate, s.y_inf, s.y_0, std::sqrt(sse / static_cast<double>(t.size())), iter};
          if (fit.rate * t.back() < 2.0) {
            throw NumericalError("fit_exponential: window spans fewer than two decay times");
          }
          return fit;
        }
        break;
      }
      lambda *= 10.0;
      if (attempt == 59) throw NumericalError("fit_exponential: damping failed to reduce the residual");
    }
  }
  throw NumericalError("fit_exponential: no convergence after 200 iterations");
}

double dominant_frequency(std::span<const double> times, std::span<const double> values) {
  check_series(times, values, 64, "dominant_frequency");
  const std::size_t n = values.size();
  const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-6 * dt) {
      throw ValidationError("dominant_frequency: time grid is not uniform");
    }
  }

  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  std::vector<double> windowed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(units::kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
    windowed[i] = (values[i] - mean) * w;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, windowed);

  const std::size_t half = n / 2;
  constexpr std::size_t kFirstBin = 5;
  if (half <= kFirstBin + 2) throw ValidationError("dominant_frequency: too few samples");
  std::vector<double> mag(half + 1);
  for (std::size_t k = 0; k <= half; ++k) mag[k] = std::abs(spectrum[k]);

  std::size_t peak = kFirstBin;
  for (std::size_t k = kFirstBin; k < half; ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  std::vector<double> floor(mag.begin() + kFirstBin, mag.begin() + half);
  std::nth_element(floor.begin(), floor.begin() + floor.size() / 2, floor.end());
  const double median = floor[floor.size() / 2];
  if (!(mag[peak] > 3.0 * median)) {
    throw NumericalError("dominant_frequency: no spectral peak above 3x the median floor");
  }

  double offset = 0.0;
  if (peak > kFirstBin && mag[peak - 1] > 0.0 && mag[peak + 1] > 0.0) {
    const double a = std::log(mag[peak - 1]);
    const double b = std::log(mag[peak]);
    const double c = std::log(mag[peak + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = 0.5 * (a - c) / denom;
  }
  return (static_cast<double>(peak) + offset) / (static_cast<double>(n) * dt);
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

ComplexMatrix partial_trace_cavity(const DensityMatrix& rho) {
  const int d = rho.dim();
  if (d % 2 != 0) throw ValidationError("partial_trace_cavity: dimension must be 2 * n_fock");
  const int n_fock = d / 2;
  ComplexMatrix q = ComplexMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int m = 0; m < n_fock; ++m) q(a, b) += rho.mat()(a * n_fock + m, b * n_fock + m);
    }
  }
  return q;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  const DensityMatrix q(partial_trace_cavity(rho));
  return {expectation_real(pauli(PauliAxis::kX), q), expectation_real(pauli(PauliAxis::kY), q),
          expectation_real(pauli(PauliAxis::kZ), q)};
}

double sigma_theta_projection(const BlochVector& v, double theta) {
  // Snap the rounding residue of sin/cos at multiples of pi/2 so that the
  // axis cases return the component exactly.
  const auto snap = [](double c) { return std::abs(c) < 1e-15 ? 0.0 : c; };
  return snap(std::sin(theta)) * v.x + snap(std::cos(theta)) * v.z;
}

DensityMatrix undriven_initial_state(const SystemParams& p) {
  const int n = p.n_fock;
  ComplexMatrix rho = ComplexMatrix::Zero(2 * n, 2 * n);
  const double g1 = p.gamma_1();
  const double p_e = g1 > 0.0 ? p.gamma_up / g1 : 0.0;
  rho(0, 0) = 1.0 - p_e;
  rho(n, n) = p_e;
  return DensityMatrix(std::move(rho));
}

DensityMatrix dressed_excited_state(int n_fock) {
  const HilbertLayout layout(n_fock);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(layout.dim());
  psi(layout.index(0, 0)) = 1.0 / std::sqrt(2.0);
  psi(layout.index(1, 0)) = -1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(psi);
}

ComparisonReport compare_sim_analytic(const SystemParams& params, const CompareOptions& options) {
  SystemParams p = params;
  p.validate();
  p.n_fock = std::max(p.n_fock, choose_fock_cutoff(p, Frame::kDisplaced));

  ComparisonReport report;
  report.n_bar = p.n_bar();
  report.n_fock = p.n_fock;
  report.tolerance = options.tolerance;
  report.coupling_ratio = std::abs(p.chi) * std::sqrt(report.n_bar) / p.kappa;
  report.strong_coupling = report.coupling_ratio >= options.strong_coupling_threshold;

  const RatePair rates = rates_general(p);
  const BlochPrediction prediction = steady_bloch(rates, p);
  report.gamma_analytic = rates.total();
  report.sx_analytic = std::sin(prediction.theta) * prediction.sigma_theta_ss;
  // The dressed qubit cannot relax faster than its bath, the cavity, decays;
  // past |chi| sqrt(n) ~ kappa the golden-rule rate overestimates the dynamics.
  report.window_us = options.window_decay_times / std::min(report.gamma_analytic, p.kappa / 2.0);

  const ComplexMatrix h = build_hamiltonian_displaced(p);
  const CollapseSet ls = collapse_ops(p, Frame::kDisplaced);
  report.sx_sim = bloch_vector(steady_state(h, ls)).x;

  const DensityMatrix rho0 = options.initial == InitialState::kUndrivenSteady
                                 ? undriven_initial_state(p)
                                 : dressed_excited_state(p.n_fock);
  const std::vector<Observable> observables{
      {"sx", qubit_operator(PauliAxis::kX, p.n_fock)},
      {"sz", qubit_operator(PauliAxis::kZ, p.n_fock)},
  };
  report.trajectory =
      evolve(h, ls, rho0, linspace(0.0, report.window_us, options.samples), observables, options.evolve);

  report.gamma_fit = std::numeric_limits<double>::quiet_NaN();
  try {
    const ExpFit fit = fit_exponential(report.trajectory.times, report.trajectory.series("sx"));
    report.gamma_fit = fit.rate;
  } catch (const NonMonotonicError& e) {
    report.non_exponential = true;
    report.note = e.what();
  } catch (const NumericalError& e) {
    report.note = e.what();
  }

  const bool rate_ok = std::isfinite(report.gamma_fit) &&
                       std::abs(report.gamma_fit - report.gamma_analytic) <= options.tolerance * report.gamma_analytic;
  const bool sx_ok = std::abs(report.sx_sim - report.sx_analytic) <= options.tolerance;
  report.pass = rate_ok && sx_ok;
  return report;
}

std::string to_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["n_bar"] = r.n_bar;
  j["gamma_fit"] = r.gamma_fit;
  j["gamma_analytic"] = r.gamma_analytic;
  j["sx_sim"] = r.sx_sim;
  j["sx_analytic"] = r.sx_analytic;
  j["coupling_ratio"] = r.coupling_ratio;
  j["strong_coupling"] = r.strong_coupling;
  j["non_exponential"] = r.non_exponential;
  j["fit_window_us"] = r.window_us;
  j["tolerance"] = r.tolerance;
  j["n_fock"] = r.n_fock;
  j["pass"] = r.pass;
  j["note"] = r.note;
  return j.dump();
}

}  // namespace dressed_cool
