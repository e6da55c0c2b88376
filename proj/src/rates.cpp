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

#include "dressed_cool/rates.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "dressed_cool/errors.hpp"
#include "dressed_cool/units.hpp"

namespace dressed_cool {

namespace {

// Intrinsic dephasing contribution to both rates at resonance, 1/(2 T2).
double half_t2_rate(const SystemParams& p) { return p.gamma_phi / 2.0 + p.gamma_1() / 4.0; }

// Photon part of G+ for a Raman/heating photon detuned by `offset` from the
// cavity: kappa chi^2 n / ((kappa/2)^2 + offset^2).
double detuned_photon_rate(double chi, double n_bar, double kappa, double offset) {
  return kappa * chi * chi * n_bar / (kappa * kappa / 4.0 + offset * offset);
}

double suppression(const SystemParams& p) {
  if (p.delta_q_prime == 0.0) throw ValidationError("sideband rates need a nonzero delta_q_prime");
  const double r = p.omega_r_rabi / p.delta_q_prime;
  return r * r;
}

void warn_if_not_far_detuned(const SystemParams& p, const char* who) {
  if (std::abs(p.delta_q_prime) < 5.0 * std::abs(p.omega_r_rabi)) {
    std::clog << "warning: " << who << " assumes |delta_q'| >> Omega_R but the ratio is "
              << std::abs(p.delta_q_prime / p.omega_r_rabi) << '\n';
  }
}

}  // namespace

std::string_view to_string(RateRegime regime) {
  switch (regime) {
    case RateRegime::kResonant: return "resonant";
    case RateRegime::kGeneralTheta: return "general_theta";
    case RateRegime::kSidebandLimit: return "sideband_limit";
    case RateRegime::kRaman: return "raman";
    case RateRegime::kGoldenRule: return "golden_rule";
  }
  return "unknown";
}

double s_nn(double omega, double n_bar, double kappa, double delta_c) {
  if (!(kappa > 0.0)) throw ValidationError("s_nn: kappa must be > 0");
  const double detuning = omega + delta_c;
  return n_bar * kappa / (kappa * kappa / 4.0 + detuning * detuning);
}

double cavity_density_of_states(double omega, double center, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("cavity_density_of_states: kappa must be > 0");
  const double x = omega - center;
  return (kappa / 2.0) / (std::numbers::pi * (x * x + kappa * kappa / 4.0));
}

RatePair rates_resonant(const SystemParams& p) {
  p.validate();
  const double n_bar = p.n_bar();
  const double intrinsic = half_t2_rate(p);
  return {golden_rule_rate(p) + intrinsic,
          detuned_photon_rate(p.chi, n_bar, p.kappa, 2.0 * p.omega_r_rabi) + intrinsic,
          RateRegime::kResonant};
}

RatePair rates_general(const SystemParams& p) {
  p.validate();
  if (p.omega_r_rabi == 0.0 && p.delta_q_prime == 0.0) {
    throw ValidationError("rates_general: Omega_R and delta_q' are both zero, theta undefined");
  }
  const double n_bar = p.n_bar();
  const double w2 = p.omega_r_rabi * p.omega_r_rabi + p.delta_q_prime * p.delta_q_prime;
  const double omega_tilde = std::sqrt(w2);
  const double sin2 = p.omega_r_rabi * p.omega_r_rabi / w2;
  const double cos2 = p.delta_q_prime * p.delta_q_prime / w2;
  const double chi2 = p.chi * p.chi;
  const double intrinsic = (p.gamma_phi / 2.0) * sin2 + (p.gamma_1() / 4.0) * (1.0 + cos2);
  return {chi2 * s_nn(omega_tilde, n_bar, p.kappa, p.delta_c) * sin2 + intrinsic,
          chi2 * s_nn(-omega_tilde, n_bar, p.kappa, p.delta_c) * sin2 + intrinsic,
          RateRegime::kGeneralTheta};
}

RatePair rates_sideband_limit(const SystemParams& p) {
  p.validate();
  const double r2 = suppression(p);
  warn_if_not_far_detuned(p, "rates_sideband_limit");
  const double n_bar = p.n_bar();
  const double common = (p.gamma_phi / 2.0) * r2 + p.gamma_1() / 2.0;
  return {golden_rule_rate(p) * r2 + common,
          detuned_photon_rate(p.chi, n_bar, p.kappa, 2.0 * p.delta_q_prime) * r2 + common,
          RateRegime::kSidebandLimit};
}

RatePair raman_rates(const SystemParams& p) {
  p.validate();
  const double r2 = suppression(p);
  warn_if_not_far_detuned(p, "raman_rates");
  const double matrix_element = p.chi * p.chi * p.n_bar() * r2;
  const double two_pi = units::kTwoPi;
  // Cooling emits on the cavity resonance, heating 2 dq' away from it.
  const double rho_cool = cavity_density_of_states(p.delta_q_prime, p.delta_q_prime, p.kappa);
  const double rho_heat = cavity_density_of_states(-p.delta_q_prime, p.delta_q_prime, p.kappa);
  return {two_pi * matrix_element * rho_cool, two_pi * matrix_element * rho_heat, RateRegime::kRaman};
}

double golden_rule_rate(const SystemParams& p) {
  p.validate();
  return 4.0 * p.chi * p.chi * p.n_bar() / p.kappa;
}

BlochPrediction steady_bloch(const RatePair& rates, double theta, double omega_tilde) {
  const double total = rates.gamma_minus + rates.gamma_plus;
  if (!(rates.gamma_minus >= 0.0 && rates.gamma_plus >= 0.0)) {
    throw ValidationError("steady_bloch: rates must be >= 0");
  }
  if (!(total > 0.0)) throw ValidationError("steady_bloch: both rates are zero");
  BlochPrediction out;
  out.purity_plus = rates.gamma_minus / total;
  out.sigma_theta_ss = 2.0 * out.purity_plus - 1.0;
  out.theta = theta;
  out.omega_tilde = omega_tilde;
  return out;
}

BlochPrediction steady_bloch(const RatePair& rates, const SystemParams& p) {
  return steady_bloch(rates, std::atan2(p.omega_r_rabi, p.delta_q_prime),
                      std::hypot(p.omega_r_rabi, p.delta_q_prime));
}

EffectiveTemperature effective_temperature(double purity_plus, double omega_tilde) {
  if (!(purity_plus >= 0.0 && purity_plus <= 1.0)) {
    throw ValidationError("effective_temperature: purity must lie in [0, 1]");
  }
  if (purity_plus == 0.5) return {std::numeric_limits<double>::infinity(), true};
  if (purity_plus == 1.0) return {0.0, false};
  if (purity_plus == 0.0) return {-0.0, true};
  const double energy = units::kHbar * std::abs(omega_tilde) * units::kPerMicrosecond;
  const double kelvin = energy / (units::kBoltzmann * std::log(purity_plus / (1.0 - purity_plus)));
  return {kelvin, purity_plus < 0.5};
}

double cooling_condition(const SystemParams& p) {
  const double intrinsic = half_t2_rate(p);
  if (!(intrinsic > 0.0)) throw ValidationError("cooling_condition: gamma_phi/2 + gamma_1/4 must be > 0");
  return golden_rule_rate(p) / intrinsic;
}

double photons_for_cooling_ratio(const SystemParams& p, double ratio) {
  p.validate();
  const double per_photon = 4.0 * p.chi * p.chi / p.kappa;
  if (per_photon == 0.0) throw ValidationError("photons_for_cooling_ratio: chi is zero");
  return ratio * half_t2_rate(p) / per_photon;
}

}  // namespace dressed_cool
