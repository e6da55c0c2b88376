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

#include "dressed_cool/operators.hpp"

#include <cmath>
#include <string>

#include "dressed_cool/errors.hpp"

namespace dressed_cool {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

HilbertLayout::HilbertLayout(int n_fock) : n_fock_(n_fock) {
  if (n_fock < 2) throw ValidationError("n_fock must be >= 2, got " + std::to_string(n_fock));
}

ComplexMatrix HilbertLayout::qubit_op(const ComplexMatrix& op) const {
  return kron(op, identity(n_fock_));
}

ComplexMatrix HilbertLayout::cavity_op(const ComplexMatrix& op) const {
  return kron(identity(2), op);
}

ComplexMatrix pauli(PauliAxis axis) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (axis) {
    case PauliAxis::kX:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::kY:
      m(0, 1) = i;
      m(1, 0) = -i;
      break;
    case PauliAxis::kZ:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case PauliAxis::kPlus:  // |e><g|
      m(1, 0) = 1.0;
      break;
    case PauliAxis::kMinus:  // |g><e|
      m(0, 1) = 1.0;
      break;
  }
  return m;
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() == 0 || b.size() == 0) throw ValidationError("kron: empty operand");
  const Eigen::Index ra = a.rows();
  const Eigen::Index ca = a.cols();
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix annihilation(int n_fock) {
  if (n_fock < 2) throw ValidationError("annihilation: n_fock must be >= 2");
  ComplexMatrix a = ComplexMatrix::Zero(n_fock, n_fock);
  for (int m = 0; m + 1 < n_fock; ++m) a(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
  return a;
}

ComplexMatrix creation(int n_fock) { return annihilation(n_fock).adjoint(); }

ComplexMatrix number_op(int n_fock) {
  if (n_fock < 2) throw ValidationError("number_op: n_fock must be >= 2");
  ComplexMatrix n = ComplexMatrix::Zero(n_fock, n_fock);
  for (int m = 0; m < n_fock; ++m) n(m, m) = static_cast<double>(m);
  return n;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

bool is_finite(const ComplexMatrix& m) { return m.allFinite(); }

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  require_square(mat_, "DensityMatrix");
  if (!is_finite(mat_)) throw ValidationError("DensityMatrix: non-finite entries");
  if (const double h = hermiticity_residual(mat_); h > kHermitianTol) {
    throw ValidationError("DensityMatrix: not Hermitian (residual " + std::to_string(h) + ")");
  }
  if (const double t = std::abs(mat_.trace() - 1.0); t > kTraceTol) {
    throw ValidationError("DensityMatrix: trace deviates from 1 by " + std::to_string(t));
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
  const Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_positive(double tol) const { return min_eigenvalue() >= -tol; }

Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
    throw ValidationError("expectation: operator is " + std::to_string(op.rows()) + "x" +
                          std::to_string(op.cols()) + ", state is " + std::to_string(rho.dim()));
  }
  // Tr(A B) = sum_ij A_ij B_ji
  return (op.transpose().cwiseProduct(rho.mat())).sum();
}

double expectation_real(const ComplexMatrix& op, const DensityMatrix& rho) {
  const Complex v = expectation(op, rho);
  if (std::abs(v.imag()) > 1e-9) {
    throw NumericalError("expectation of Hermitian operator has imaginary part " +
                         std::to_string(v.imag()));
  }
  return v.real();
}

}  // namespace dressed_cool
