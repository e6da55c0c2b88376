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

#include <string_view>

#include "dressed_cool/model.hpp"

namespace dressed_cool {

enum class RateRegime { kResonant, kGeneralTheta, kSidebandLimit, kRaman, kGoldenRule };

std::string_view to_string(RateRegime regime);

/// Cooling (|-> to |+>) and heating rates between the dressed states, 1/us.
struct RatePair {
  double gamma_minus = 0.0;
  double gamma_plus = 0.0;
  RateRegime regime = RateRegime::kResonant;

  double total() const { return gamma_minus + gamma_plus; }
};

struct BlochPrediction {
  double sigma_theta_ss = 0.0;  // (G- - G+) / (G- + G+)
  double purity_plus = 0.0;     // G- / (G- + G+)
  double theta = 0.0;           // atan2(Omega_R, dq'), radians
  double omega_tilde = 0.0;     // sqrt(Omega_R^2 + dq'^2)
};

/// Photon-number noise spectrum of the driven cavity,
/// S_nn(w) = n_bar kappa / ((kappa/2)^2 + (w + delta_c)^2).
double s_nn(double omega, double n_bar, double kappa, double delta_c);

/// Lorentzian density of states seen by a Raman photon,
/// rho(w) = -(1/pi) Im 1 / (w - center + i kappa/2).
double cavity_density_of_states(double omega, double center, double kappa);

/// Resonant drive (dq' = 0, delta_c = -Omega_R):
///   G- = 4 chi^2 n/kappa + 1/(2 T2)
///   G+ = kappa chi^2 n / ((2 Omega_R)^2 + (kappa/2)^2) + 1/(2 T2)
/// with 1/(2 T2) = gamma_phi/2 + gamma_1/4.
RatePair rates_resonant(const SystemParams& p);

/// Tilted drive at angle tan(theta) = Omega_R / dq':
///   G+- = chi^2 S_nn(-+W~) sin^2 + (gamma_phi/2) sin^2 + (gamma_1/4)(1 + cos^2).
RatePair rates_general(const SystemParams& p);

/// |dq'| >> Omega_R limit of rates_general. Warns on std::clog when
/// |dq' / Omega_R| < 5.
RatePair rates_sideband_limit(const SystemParams& p);

/// Golden-rule Raman sideband rates from the dressed-state matrix element
/// chi^2 n (Omega_R/dq')^2 and cavity_density_of_states().
RatePair raman_rates(const SystemParams& p);

/// G = 2 pi |chi a_bar|^2 rho_peak = 4 chi^2 n_bar / kappa.
double golden_rule_rate(const SystemParams& p);

/// Detailed balance between |+> and |->. Throws when both rates vanish.
BlochPrediction steady_bloch(const RatePair& rates, double theta, double omega_tilde = 0.0);

/// Convenience: theta and omega_tilde from the drive parameters.
BlochPrediction steady_bloch(const RatePair& rates, const SystemParams& p);

struct EffectiveTemperature {
  double kelvin = 0.0;
  bool inverted = false;  // purity <= 1/2: kelvin is negative (or +inf at exactly 1/2)
};

/// T = hbar W~ / (k_B ln(p / (1 - p))) for the |+> population p.
EffectiveTemperature effective_temperature(double purity_plus, double omega_tilde);

/// (4 chi^2 n / kappa) / (gamma_phi/2 + gamma_1/4); cooling is effective
/// when this exceeds a threshold (default 10).
double cooling_condition(const SystemParams& p);
inline constexpr double kCoolingThreshold = 10.0;

/// Photon number at which cooling_condition() equals `ratio`.
double photons_for_cooling_ratio(const SystemParams& p, double ratio);

}  // namespace dressed_cool
