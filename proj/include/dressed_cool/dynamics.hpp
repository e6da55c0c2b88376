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

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "dressed_cool/model.hpp"
#include "dressed_cool/operators.hpp"

namespace dressed_cool {

using SparseComplex = Eigen::SparseMatrix<Complex>;

/// rho_dot = -i[H, rho] + sum_k rate_k D[L_k] rho, with the jump terms and
/// the anti-Hermitian part folded into H_eff = H - (i/2) sum rate L^+L:
///   rho_dot = -i H_eff rho + h.c. + sum rate L rho L^+.
/// Operators are held sparse; the input state must be Hermitian.
class LindbladGenerator {
 public:
  LindbladGenerator(const ComplexMatrix& h, const CollapseSet& ls);

  int dim() const { return dim_; }
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  int dim_;
  SparseComplex h_eff_;
  std::vector<SparseComplex> jumps_;  // sqrt(rate) L
  mutable ComplexMatrix scratch_;
};

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const CollapseSet& ls, const DensityMatrix& rho);

struct Observable {
  std::string name;
  ComplexMatrix op;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  /// Nonzero switches off adaptivity and takes steps of exactly this size
  /// (shortened only to land on output times).
  double fixed_step = 0.0;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 20'000'000;
  bool store_states = false;
  /// Smallest eigenvalue of every output state, O(d^3) per output.
  bool check_positivity = false;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[observable][time]
  std::vector<DensityMatrix> states;        // only with store_states

  // Worst-case diagnostics over all output times.
  double max_trace_error = 0.0;
  double max_hermiticity_residual = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  const std::vector<double>& series(const std::string& name) const;
};

/// Adaptive Dormand-Prince 5(4) integration of the master equation. The
/// state is symmetrised (rho + rho^+)/2 after every accepted step. Throws
/// NumericalError on step-size underflow, reporting the failing time.
Trajectory evolve(const ComplexMatrix& h, const CollapseSet& ls, const DensityMatrix& rho0,
                  const std::vector<double>& t_grid, const std::vector<Observable>& observables,
                  const EvolveOptions& options = {});

/// Superoperator on column-stacked rho: vec(A rho B) = (B^T (x) A) vec(rho).
struct Liouvillian {
  int dim = 0;  // Hilbert-space dimension d; mat is d^2 x d^2
  ComplexMatrix mat;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& vec_rho) const { return mat * vec_rho; }
};

Liouvillian liouvillian_matrix(const ComplexMatrix& h, const CollapseSet& ls);

Eigen::VectorXcd vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const Eigen::VectorXcd& v, int dim);

struct SteadyStateResult {
  DensityMatrix rho;
  double residual = 0.0;  // ||L vec(rho)||_inf
};

/// Solves L vec(rho) = 0 with the first row replaced by Tr rho = 1 (dense LU).
/// Throws NumericalError if the reduced system is singular, i.e. the
/// steady state is not unique.
SteadyStateResult steady_state_solve(const ComplexMatrix& h, const CollapseSet& ls);
DensityMatrix steady_state(const ComplexMatrix& h, const CollapseSet& ls);

/// Uniform grid t0, t0 + dt, ..., t1 with `count` points.
std::vector<double> linspace(double t0, double t1, std::size_t count);

}  // namespace dressed_cool
