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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace dressed_cool {

using Complex = std::complex<double>;

/// Dense square complex matrix. Operators and density matrices on the
/// truncated qubit (x) cavity space are all carried in this type.
using ComplexMatrix = Eigen::MatrixXcd;

/// Qubit (x) cavity ordering, qubit index major: basis index = q * n_fock + m.
class HilbertLayout {
 public:
  explicit HilbertLayout(int n_fock);

  int n_fock() const { return n_fock_; }
  int dim() const { return 2 * n_fock_; }
  int index(int qubit, int fock) const { return qubit * n_fock_ + fock; }

  /// op (x) 1_cavity
  ComplexMatrix qubit_op(const ComplexMatrix& op) const;
  /// 1_qubit (x) op
  ComplexMatrix cavity_op(const ComplexMatrix& op) const;

 private:
  int n_fock_;
};

enum class PauliAxis { kX, kY, kZ, kPlus, kMinus };

// Qubit basis: index 0 = |g>, index 1 = |e>, so sigma_z |g> = +|g>.
// sigma_+ = |e><g| = (sigma_x + i sigma_y) / 2, which fixes
// sigma_y = [[0, i], [-i, 0]] in this basis.
ComplexMatrix pauli(PauliAxis axis);

ComplexMatrix identity(int dim);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Truncated annihilation operator: a(m, m+1) = sqrt(m+1).
ComplexMatrix annihilation(int n_fock);
ComplexMatrix creation(int n_fock);
ComplexMatrix number_op(int n_fock);

double max_abs(const ComplexMatrix& m);
double hermiticity_residual(const ComplexMatrix& m);
bool is_finite(const ComplexMatrix& m);

/// Unit-trace Hermitian positive state. Hermiticity and trace are checked
/// at construction; positivity is O(d^3) and only checked on request.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kPositivityTol = 1e-8;

  explicit DensityMatrix(ComplexMatrix mat);

  /// |psi><psi| for a normalised ket.
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  const ComplexMatrix& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  double min_eigenvalue() const;
  bool is_positive(double tol = kPositivityTol) const;

 private:
  ComplexMatrix mat_;
};

/// Tr(op rho).
Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho);

/// Real part of Tr(op rho) for a Hermitian op; throws if |Im| > 1e-9.
double expectation_real(const ComplexMatrix& op, const DensityMatrix& rho);

}  // namespace dressed_cool
