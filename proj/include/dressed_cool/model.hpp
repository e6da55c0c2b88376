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

#include <string>
#include <vector>

#include "dressed_cool/operators.hpp"

namespace dressed_cool {

/// Physical parameters of the driven qubit + cavity model. Frequencies are
/// angular (rad/us), rates in 1/us.
struct SystemParams {
  double chi = 0.0;            // dispersive shift
  double kappa = 1.0;          // cavity linewidth
  double omega_r_rabi = 0.0;   // Rabi amplitude of the qubit drive
  double delta_c = 0.0;        // cavity drive detuning w_d - w_c
  double delta_q_prime = 0.0;  // Stark-shifted qubit detuning w_q' - w_r
  double eps_d = 0.0;          // cavity drive amplitude, real >= 0
  double gamma_down = 0.0;     // qubit decay
  double gamma_up = 0.0;       // qubit excitation
  double gamma_phi = 0.0;      // pure dephasing 1/T_phi
  int n_fock = 8;              // cavity truncation

  /// Throws ValidationError naming the offending field.
  void validate() const;

  double gamma_1() const { return gamma_down + gamma_up; }
  /// Mean photon number of the driven cavity, |eps_d / (delta_c + i kappa/2)|^2.
  double n_bar() const;
};

struct DisplacedFrame {
  Complex a_bar;
  double n_bar = 0.0;
};

enum class Frame { kDisplaced, kUndisplaced };

struct CollapseTerm {
  std::string name;
  ComplexMatrix op;  // unscaled jump operator on the full space
  double rate = 0.0;

  ComplexMatrix scaled() const;
};

/// Dissipators rate * D[op], D[L]rho = (2 L rho L^+ - L^+L rho - rho L^+L) / 2.
using CollapseSet = std::vector<CollapseTerm>;

struct DispersiveParams {
  double chi = 0.0;
  double omega_r_rabi = 0.0;
};

/// chi = g^2 / delta and Omega_R = -2 eps_r g / delta. delta = 0 is rejected.
DispersiveParams dispersive_map(double g, double delta, double eps_r);

DisplacedFrame displacement(double eps_d, double delta_c, double kappa);

/// Inverse of displacement(): eps_d = sqrt(n_bar (delta_c^2 + kappa^2/4)).
double drive_for_photons(double n_bar, double delta_c, double kappa);

/// Qubit rates from coherence times. `excited_fraction` is the thermal
/// two-level excited population; zero gives gamma_up = 0.
struct QubitRates {
  double gamma_down = 0.0;
  double gamma_up = 0.0;
  double gamma_phi = 0.0;
};
QubitRates qubit_rates_from_times(double t1, double t2, double excited_fraction = 0.0);

/// Two-level excited fraction p_e / (p_g + p_e) from measured populations.
double two_level_excited_fraction(double p_ground, double p_excited);

/// H = -dc d+d - (dq'/2) sz - (W/2) sx - chi (a* d + a d+ + d+d) sz.
ComplexMatrix build_hamiltonian_displaced(const SystemParams& p);

/// Bare qubit detuning for the undisplaced frame so that both frames describe
/// the same operating point: dq = dq' - 2 chi n_bar - chi.
double bare_qubit_detuning(const SystemParams& p);

/// H = -dc a+a - ((dq + chi)/2) sz - (W/2) sx - chi a+a sz + eps_d (a+ + a).
/// Logs a warning to std::clog when n_fock is below the coherent-state rule.
ComplexMatrix build_hamiltonian_undisplaced(const SystemParams& p);

/// H = -dc d+d - (W/2) sz - chi (a* d s+ + a d+ s-), valid at dq' = 0.
ComplexMatrix build_effective_jc(const SystemParams& p);

/// d+d + s+s- on the full space.
ComplexMatrix excitation_number(int n_fock);

CollapseSet collapse_ops(const SystemParams& p, Frame frame);

/// Fock cutoff at the parameters' photon number.
///   displaced:   max(8, ceil(2 |chi| sqrt(n_bar) / kappa) + 6)
/// The displaced mode only carries fluctuations (well under one photon even
/// in the strong-coupling regime), so the cutoff grows slowly.
///   undisplaced: ceil(n_bar + 7 sqrt(n_bar) + 5)
int choose_fock_cutoff(const SystemParams& p, Frame frame);

/// The 2x2 qubit operator embedded in the layout for `p.n_fock`.
ComplexMatrix qubit_operator(PauliAxis axis, int n_fock);

}  // namespace dressed_cool
