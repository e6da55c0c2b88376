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

#include "dressed_cool/model.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "dressed_cool/errors.hpp"

namespace dressed_cool {

namespace {

void require(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw ValidationError("SystemParams." + field + ": " + msg);
}

int undisplaced_cutoff(double n_bar) {
  return static_cast<int>(std::ceil(n_bar + 7.0 * std::sqrt(n_bar) + 5.0));
}

}  // namespace

void SystemParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(chi), "chi", "must be finite");
  require(finite(kappa) && kappa > 0.0, "kappa", "must be > 0");
  require(finite(omega_r_rabi), "omega_r_rabi", "must be finite");
  require(finite(delta_c), "delta_c", "must be finite");
  require(finite(delta_q_prime), "delta_q_prime", "must be finite");
  require(finite(eps_d) && eps_d >= 0.0, "eps_d", "must be >= 0");
  require(finite(gamma_down) && gamma_down >= 0.0, "gamma_down", "must be >= 0");
  require(finite(gamma_up) && gamma_up >= 0.0, "gamma_up", "must be >= 0");
  require(finite(gamma_phi) && gamma_phi >= 0.0, "gamma_phi", "must be >= 0");
  require(n_fock >= 2, "n_fock", "must be >= 2");
}

double SystemParams::n_bar() const { return displacement(eps_d, delta_c, kappa).n_bar; }

ComplexMatrix CollapseTerm::scaled() const { return std::sqrt(rate) * op; }

DispersiveParams dispersive_map(double g, double delta, double eps_r) {
  if (delta == 0.0) {
    throw ValidationError("dispersive_map: qubit-cavity detuning is zero, dispersive limit invalid");
  }
  return {g * g / delta, -2.0 * eps_r * g / delta};
}

DisplacedFrame displacement(double eps_d, double delta_c, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("displacement: kappa must be > 0");
  const Complex a_bar = eps_d / Complex(delta_c, kappa / 2.0);
  return {a_bar, std::norm(a_bar)};
}

double drive_for_photons(double n_bar, double delta_c, double kappa) {
  if (!(n_bar >= 0.0)) throw ValidationError("drive_for_photons: n_bar must be >= 0");
  return std::sqrt(n_bar * (delta_c * delta_c + kappa * kappa / 4.0));
}

QubitRates qubit_rates_from_times(double t1, double t2, double excited_fraction) {
  if (!(t1 > 0.0)) throw ValidationError("t1 must be > 0");
  if (!(t2 > 0.0)) throw ValidationError("t2 must be > 0");
  if (t2 > 2.0 * t1) throw ValidationError("t2 must not exceed 2 t1");
  if (!(excited_fraction >= 0.0 && excited_fraction < 0.5)) {
    throw ValidationError("excited_fraction must lie in [0, 0.5)");
  }
  const double gamma_1 = 1.0 / t1;
  return {gamma_1 * (1.0 - excited_fraction), gamma_1 * excited_fraction,
          1.0 / t2 - gamma_1 / 2.0};
}

double two_level_excited_fraction(double p_ground, double p_excited) {
  if (!(p_ground > 0.0 && p_excited >= 0.0)) {
    throw ValidationError("two_level_excited_fraction: invalid populations");
  }
  return p_excited / (p_ground + p_excited);
}

ComplexMatrix qubit_operator(PauliAxis axis, int n_fock) {
  return HilbertLayout(n_fock).qubit_op(pauli(axis));
}

ComplexMatrix build_hamiltonian_displaced(const SystemParams& p) {
  p.validate();
  const HilbertLayout layout(p.n_fock);
  const Complex a_bar = displacement(p.eps_d, p.delta_c, p.kappa).a_bar;
  const ComplexMatrix d = layout.cavity_op(annihilation(p.n_fock));
  const ComplexMatrix dd = d.adjoint();
  const ComplexMatrix sz = layout.qubit_op(pauli(PauliAxis::kZ));
  const ComplexMatrix sx = layout.qubit_op(pauli(PauliAxis::kX));

  ComplexMatrix h = -p.delta_c * (dd * d) - (p.delta_q_prime / 2.0) * sz -
                    (p.omega_r_rabi / 2.0) * sx;
  h -= p.chi * (std::conj(a_bar) * d + a_bar * dd + dd * d) * sz;
  return h;
}

double bare_qubit_detuning(const SystemParams& p) {
  return p.delta_q_prime - 2.0 * p.chi * p.n_bar() - p.chi;
}

ComplexMatrix build_hamiltonian_undisplaced(const SystemParams& p) {
  p.validate();
  const double n_bar = p.n_bar();
  if (p.n_fock < undisplaced_cutoff(n_bar)) {
    std::clog << "warning: n_fock = " << p.n_fock << " is below the coherent-state cutoff "
              << undisplaced_cutoff(n_bar) << " for n_bar = " << n_bar << '\n';
  }
  const HilbertLayout layout(p.n_fock);
  const ComplexMatrix a = layout.cavity_op(annihilation(p.n_fock));
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix sz = layout.qubit_op(pauli(PauliAxis::kZ));
  const ComplexMatrix sx = layout.qubit_op(pauli(PauliAxis::kX));
  const double delta_q = bare_qubit_detuning(p);

  ComplexMatrix h = -p.delta_c * (ad * a) - ((delta_q + p.chi) / 2.0) * sz -
                    (p.omega_r_rabi / 2.0) * sx - p.chi * (ad * a) * sz;
  h += p.eps_d * (ad + a);
  return h;
}

ComplexMatrix build_effective_jc(const SystemParams& p) {
  p.validate();
  const HilbertLayout layout(p.n_fock);
  const Complex a_bar = displacement(p.eps_d, p.delta_c, p.kappa).a_bar;
  const ComplexMatrix d = layout.cavity_op(annihilation(p.n_fock));
  const ComplexMatrix dd = d.adjoint();
  const ComplexMatrix sz = layout.qubit_op(pauli(PauliAxis::kZ));
  const ComplexMatrix sp = layout.qubit_op(pauli(PauliAxis::kPlus));
  const ComplexMatrix sm = layout.qubit_op(pauli(PauliAxis::kMinus));

  ComplexMatrix h = -p.delta_c * (dd * d) - (p.omega_r_rabi / 2.0) * sz;
  h -= p.chi * (std::conj(a_bar) * d * sp + a_bar * dd * sm);
  return h;
}

ComplexMatrix excitation_number(int n_fock) {
  const HilbertLayout layout(n_fock);
  const ComplexMatrix sp = pauli(PauliAxis::kPlus);
  return layout.cavity_op(number_op(n_fock)) + layout.qubit_op(sp * sp.adjoint());
}

CollapseSet collapse_ops(const SystemParams& p, Frame frame) {
  p.validate();
  const HilbertLayout layout(p.n_fock);
  CollapseSet out;
  const auto add = [&](std::string name, ComplexMatrix op, double rate) {
    if (rate > 0.0) out.push_back({std::move(name), std::move(op), rate});
  };
  add(frame == Frame::kDisplaced ? "d" : "a", layout.cavity_op(annihilation(p.n_fock)), p.kappa);
  add("sigma_minus", layout.qubit_op(pauli(PauliAxis::kMinus)), p.gamma_down);
  add("sigma_plus", layout.qubit_op(pauli(PauliAxis::kPlus)), p.gamma_up);
  add("sigma_z", layout.qubit_op(pauli(PauliAxis::kZ)), p.gamma_phi / 2.0);
  return out;
}

int choose_fock_cutoff(const SystemParams& p, Frame frame) {
  p.validate();
  const double n_bar = p.n_bar();
  if (frame == Frame::kUndisplaced) return std::max(2, undisplaced_cutoff(n_bar));
  const double coupling_ratio = std::abs(p.chi) * std::sqrt(n_bar) / p.kappa;
  return std::max(8, static_cast<int>(std::ceil(2.0 * coupling_ratio)) + 6);
}

}  // namespace dressed_cool
