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

#include <gtest/gtest.h>

#include <random>

#include "dressed_cool/errors.hpp"
#include "dressed_cool/operators.hpp"

namespace dc = dressed_cool;
using dc::Complex;
using dc::ComplexMatrix;
using dc::PauliAxis;

namespace {

ComplexMatrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

ComplexMatrix random_hermitian(int d, std::mt19937& rng) {
  const ComplexMatrix m = random_matrix(d, d, rng);
  return 0.5 * (m + m.adjoint());
}

dc::DensityMatrix random_state(int d, std::mt19937& rng) {
  const ComplexMatrix g = random_matrix(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return dc::DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(dc::max_abs(dc::kron(dc::identity(2), dc::identity(3)) - dc::identity(6)), 0.0);
}

TEST(Kron, SigmaZTensorIdentityDiagonal) {
  const ComplexMatrix k = dc::kron(dc::pauli(PauliAxis::kZ), dc::identity(2));
  const Eigen::VectorXcd expected = (Eigen::VectorXcd(4) << 1, 1, -1, -1).finished();
  EXPECT_EQ((k.diagonal() - expected).norm(), 0.0);
  EXPECT_EQ(dc::max_abs(k - ComplexMatrix(k.diagonal().asDiagonal())), 0.0);
}

TEST(Kron, SigmaXSquaredIsIdentity) {
  const ComplexMatrix xx = dc::kron(dc::pauli(PauliAxis::kX), dc::pauli(PauliAxis::kX));
  EXPECT_EQ(dc::max_abs(xx * xx - dc::identity(4)), 0.0);
}

TEST(Kron, MatchesBlockDefinition) {
  std::mt19937 rng(7);
  const ComplexMatrix a = random_matrix(2, 3, rng);
  const ComplexMatrix b = random_matrix(3, 2, rng);
  const ComplexMatrix k = dc::kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Kron, AssociativeOnRandomMatrices) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(2 + trial % 2, 2 + (trial / 2) % 2, rng);
    const ComplexMatrix b = random_matrix(3, 2, rng);
    const ComplexMatrix c = random_matrix(2, 3, rng);
    EXPECT_LE(dc::max_abs(dc::kron(dc::kron(a, b), c) - dc::kron(a, dc::kron(b, c))), 1e-12);
  }
}

TEST(Ladder, TwoLevelAnnihilation) {
  ComplexMatrix expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_EQ(dc::max_abs(dc::annihilation(2) - expected), 0.0);
}

TEST(Ladder, NumberOperatorDiagonal) {
  const ComplexMatrix n = dc::creation(4) * dc::annihilation(4);
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(n(m, m).real(), m, 1e-15);
  EXPECT_LE(dc::max_abs(n - dc::number_op(4)), 1e-15);
}

TEST(Ladder, CommutatorTruncationCorner) {
  const ComplexMatrix a = dc::annihilation(6);
  const ComplexMatrix ad = dc::creation(6);
  ComplexMatrix expected = dc::identity(6);
  expected(5, 5) = -5.0;
  EXPECT_LE(dc::max_abs(a * ad - ad * a - expected), 1e-14);
}

TEST(Ladder, CreationIsAdjointExactly) {
  for (int n : {2, 5, 9}) {
    EXPECT_EQ(dc::max_abs(ComplexMatrix(dc::creation(n).adjoint()) - dc::annihilation(n)), 0.0);
  }
}

TEST(Ladder, RejectsTooSmallCutoff) {
  EXPECT_THROW(dc::annihilation(1), dc::ValidationError);
  EXPECT_THROW(dc::HilbertLayout(1), dc::ValidationError);
}

TEST(Pauli, SquaresToIdentity) {
  for (auto axis : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
    const ComplexMatrix s = dc::pauli(axis);
    EXPECT_EQ(dc::max_abs(s * s - dc::identity(2)), 0.0);
  }
}

TEST(Pauli, RaisingMapsGroundToExcited) {
  const Complex i(0, 1);
  const ComplexMatrix plus = 0.5 * (dc::pauli(PauliAxis::kX) + i * dc::pauli(PauliAxis::kY));
  EXPECT_EQ(dc::max_abs(plus - dc::pauli(PauliAxis::kPlus)), 0.0);
  const Eigen::Vector2cd g(1, 0);
  const Eigen::Vector2cd e(0, 1);
  EXPECT_EQ((plus * g - e).norm(), 0.0);
  EXPECT_EQ((dc::pauli(PauliAxis::kMinus) * e - g).norm(), 0.0);
}

TEST(Pauli, Orthogonality) {
  EXPECT_EQ(std::abs((dc::pauli(PauliAxis::kZ) * dc::pauli(PauliAxis::kX)).trace()), 0.0);
}

TEST(Pauli, SigmaZGroundIsPlusOne) {
  EXPECT_EQ(dc::pauli(PauliAxis::kZ)(0, 0), Complex(1, 0));
  EXPECT_EQ(dc::pauli(PauliAxis::kZ)(1, 1), Complex(-1, 0));
}

TEST(Layout, QubitMajorIndex) {
  const dc::HilbertLayout layout(5);
  EXPECT_EQ(layout.dim(), 10);
  EXPECT_EQ(layout.index(0, 3), 3);
  EXPECT_EQ(layout.index(1, 0), 5);
  const ComplexMatrix n = layout.cavity_op(dc::number_op(5));
  EXPECT_EQ(n(layout.index(1, 4), layout.index(1, 4)), Complex(4, 0));
  const ComplexMatrix z = layout.qubit_op(dc::pauli(PauliAxis::kZ));
  EXPECT_EQ(z(layout.index(1, 2), layout.index(1, 2)), Complex(-1, 0));
}

TEST(Expectation, IdentityIsOne) {
  std::mt19937 rng(3);
  for (int d : {2, 4, 8}) {
    EXPECT_NEAR(dc::expectation(dc::identity(d), random_state(d, rng)).real(), 1.0, 1e-12);
  }
}

TEST(Expectation, GroundStateSigmaZ) {
  const dc::HilbertLayout layout(3);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
  psi(layout.index(0, 0)) = 1.0;
  const auto rho = dc::DensityMatrix::pure(psi);
  EXPECT_EQ(dc::expectation_real(layout.qubit_op(dc::pauli(PauliAxis::kZ)), rho), 1.0);
}

TEST(Expectation, PlusStateSigmaX) {
  const dc::HilbertLayout layout(3);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
  psi(layout.index(0, 0)) = 1.0 / std::sqrt(2.0);
  psi(layout.index(1, 0)) = 1.0 / std::sqrt(2.0);
  const auto rho = dc::DensityMatrix::pure(psi);
  EXPECT_NEAR(dc::expectation_real(layout.qubit_op(dc::pauli(PauliAxis::kX)), rho), 1.0, 1e-15);
}

TEST(Expectation, Linearity) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 6;
    const ComplexMatrix a = random_hermitian(d, rng);
    const ComplexMatrix b = random_hermitian(d, rng);
    const auto rho = random_state(d, rng);
    const Complex alpha(0.3, -1.2);
    const Complex beta(-2.0, 0.7);
    const Complex lhs = dc::expectation(alpha * a + beta * b, rho);
    const Complex rhs = alpha * dc::expectation(a, rho) + beta * dc::expectation(b, rho);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(Expectation, DimensionMismatchThrows) {
  const auto rho = dc::DensityMatrix(dc::identity(4) / 4.0);
  EXPECT_THROW(dc::expectation(dc::identity(2), rho), dc::ValidationError);
}

TEST(DensityMatrix, RejectsNonHermitian) {
  ComplexMatrix m = dc::identity(2) / 2.0;
  m(0, 1) = 1e-9;
  EXPECT_THROW(dc::DensityMatrix{m}, dc::ValidationError);
  m(0, 1) = 1e-11;  // within the 1e-10 Hermiticity tolerance
  EXPECT_NO_THROW(dc::DensityMatrix{m});
}

TEST(DensityMatrix, RejectsBadTrace) {
  ComplexMatrix m = dc::identity(2) / 2.0;
  m(0, 0) += 2e-9;
  EXPECT_THROW(dc::DensityMatrix{m}, dc::ValidationError);
  m(0, 0) -= 1.5e-9;  // trace off by 5e-10
  EXPECT_NO_THROW(dc::DensityMatrix{m});
}

TEST(DensityMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(dc::DensityMatrix{ComplexMatrix::Zero(2, 3)}, dc::ValidationError);
  ComplexMatrix m = dc::identity(2) / 2.0;
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(dc::DensityMatrix{m}, dc::ValidationError);
}

TEST(DensityMatrix, PositivityCheck) {
  ComplexMatrix m(2, 2);
  m << 1.2, 0, 0, -0.2;
  const dc::DensityMatrix bad(m);
  EXPECT_FALSE(bad.is_positive());
  EXPECT_NEAR(bad.min_eigenvalue(), -0.2, 1e-14);
  std::mt19937 rng(9);
  EXPECT_TRUE(random_state(5, rng).is_positive());
}

TEST(Hermiticity, Residual) {
  ComplexMatrix m = dc::pauli(PauliAxis::kY);
  EXPECT_EQ(dc::hermiticity_residual(m), 0.0);
  m(0, 1) += Complex(0, 0.5);
  EXPECT_DOUBLE_EQ(dc::hermiticity_residual(m), 0.5);
}
