#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnnw/lincore.hpp"
#include "support.hpp"

using namespace qnnw;
using test::random_matrix;

namespace {

const ComplexMatrix X = ComplexMatrix::pauli_x();
const ComplexMatrix Z = ComplexMatrix::pauli_z();
const ComplexMatrix I2 = ComplexMatrix::identity(2);

DensityMatrix bell() { return DensityMatrix(PureState({1.0, 0.0, 0.0, 1.0})); }

}  // namespace

TEST(Kron, ZZIsParityDiagonal) {
  const ComplexMatrix zz = kron(Z, Z);
  const std::vector<Complex> d{1.0, -1.0, -1.0, 1.0};
  EXPECT_EQ(zz, ComplexMatrix::diagonal(d));
}

TEST(Kron, IdentityTimesIdentity) { EXPECT_EQ(kron(I2, I2), ComplexMatrix::identity(4)); }

TEST(Kron, XZHasOffDiagonalZBlocks) {
  const ComplexMatrix expected{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  EXPECT_EQ(kron(X, Z), expected);
}

TEST(Kron, AssociativeOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_matrix(2, rng), b = random_matrix(3 - rep % 2, rng), c = random_matrix(2, rng);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
  }
}

TEST(Kron, TraceFactorizes) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_matrix(2, rng), b = random_matrix(4, rng);
    EXPECT_LT(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-10);
  }
}

TEST(Expectation, ProductEigenstate) {
  const DensityMatrix rho(PureState({1.0, 0.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(expectation(rho, kron(Z, Z)), 1.0);
}

TEST(Expectation, BellParityAndMarginal) {
  EXPECT_NEAR(expectation(bell(), kron(Z, Z)), 1.0, 1e-15);
  EXPECT_NEAR(expectation(bell(), kron(Z, I2)), 0.0, 1e-15);
}

TEST(Expectation, RejectsDimensionMismatch) { EXPECT_THROW(expectation(bell(), Z), DimensionError); }

TEST(Expectation, RejectsNonHermitianObservable) {
  const ComplexMatrix y_like{{0, 1}, {-1, 0}};  // anti-Hermitian: Tr(rho m) imaginary for |+i>
  const DensityMatrix plus_i(PureState({1.0, Complex(0, 1)}));
  EXPECT_THROW(expectation(plus_i, y_like), std::domain_error);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const auto r = partial_trace(bell(), {0});
  EXPECT_LT(max_abs_diff(r.matrix(), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
}

TEST(PartialTrace, ProductRecoversFactor) {
  std::mt19937_64 rng(3);
  const auto a = test::random_density(1, rng), b = test::random_density(1, rng);
  const DensityMatrix ab(kron(a.matrix(), b.matrix()));
  EXPECT_LT(max_abs_diff(partial_trace(ab, {0}).matrix(), a.matrix()), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {1}).matrix(), b.matrix()), 1e-14);
}

TEST(PartialTrace, GhzPairIsClassicalMixture) {
  std::vector<Complex> amps(8);
  amps[0] = amps[7] = 1.0;
  const auto r = partial_trace(DensityMatrix(PureState(amps)), {0, 1});
  const std::vector<Complex> d{0.5, 0.0, 0.0, 0.5};
  EXPECT_LT(max_abs_diff(r.matrix(), ComplexMatrix::diagonal(d)), 1e-15);
}

TEST(PartialTrace, KeepsQubitOrderAscending) {
  // |0>_A |1>_B |0>_C: keeping {A, B} gives |01>, keeping {B, C} gives |10>.
  std::vector<Complex> amps(8);
  amps[0b010] = 1.0;
  const DensityMatrix rho{PureState(amps)};
  EXPECT_DOUBLE_EQ(partial_trace(rho, {0, 1}).matrix()(1, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(partial_trace(rho, {1, 2}).matrix()(2, 2).real(), 1.0);
}

TEST(PartialTrace, AllQubitsAndTraceProperty) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const auto rho = test::random_density(3, rng);
    EXPECT_LT(max_abs_diff(partial_trace(rho, QubitSubset::all(3)).matrix(), rho.matrix()), 1e-15);
    for (std::uint32_t m = 1; m < 8; ++m)
      EXPECT_NEAR(partial_trace(rho, QubitSubset(m)).matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(PartialTrace, RejectsBadSubsets) {
  EXPECT_THROW(partial_trace(bell(), QubitSubset()), std::invalid_argument);
  EXPECT_THROW(partial_trace(bell(), {2}), std::invalid_argument);
}

TEST(Eigenvalues, PauliZ) {
  const auto v = hermitian_eigenvalues(Z);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(v[0], 1.0, 1e-15);
  EXPECT_NEAR(v[1], -1.0, 1e-15);
}

TEST(Eigenvalues, IdentityAndDiagonal) {
  for (double x : hermitian_eigenvalues(ComplexMatrix::identity(4))) EXPECT_NEAR(x, 1.0, 1e-15);
  const std::vector<Complex> d{3.0, -1.0};
  const auto v = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
  EXPECT_NEAR(v[0], 3.0, 1e-15);
  EXPECT_NEAR(v[1], -1.0, 1e-15);
}

TEST(Eigenvalues, SumToTraceAndDescend) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto h = test::random_hermitian(8, rng);
    const auto v = hermitian_eigenvalues(h);
    double s = 0.0;
    for (double x : v) s += x;
    EXPECT_NEAR(s, h.trace().real(), 1e-8);
    EXPECT_TRUE(std::is_sorted(v.rbegin(), v.rend()));
  }
}

TEST(Eigenvalues, RejectsNonHermitian) {
  const ComplexMatrix m{{0, 1}, {0, 0}};
  EXPECT_THROW(hermitian_eigenvalues(m), std::invalid_argument);
}

TEST(HermitianFunction, SquareRootSquaresBack) {
  std::mt19937_64 rng(8);
  const auto rho = test::random_density(2, rng);
  const auto s = hermitian_function(rho.matrix(), [](double x) { return std::sqrt(std::max(0.0, x)); });
  EXPECT_LT(max_abs_diff(s * s, rho.matrix()), 1e-12);
}

TEST(States, PureStateNormalizes) {
  const PureState psi({3.0, Complex(0, 4.0)});
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
  EXPECT_THROW(PureState({0.0, 0.0}), InvalidStateError);
  EXPECT_THROW(PureState({1.0, 0.0, 0.0}), DimensionError);
}

TEST(States, DensityMatrixValidation) {
  const ComplexMatrix not_hermitian{{0.5, 0.1}, {0.0, 0.5}};
  const ComplexMatrix bad_trace{{0.6, 0.0}, {0.0, 0.6}};
  const ComplexMatrix negative{{1.2, 0.0}, {0.0, -0.2}};
  EXPECT_THROW(DensityMatrix{not_hermitian}, InvalidStateError);
  EXPECT_THROW(DensityMatrix{bad_trace}, InvalidStateError);
  EXPECT_THROW(DensityMatrix{negative}, InvalidStateError);
  EXPECT_NEAR(bell().purity(), 1.0, 1e-15);
  EXPECT_NEAR(DensityMatrix(ComplexMatrix::identity(4) * Complex(0.25)).purity(), 0.25, 1e-15);
}

TEST(QubitSubsetTest, LabelsAndBits) {
  const QubitSubset s{0, 2};
  EXPECT_EQ(s.label(), "AC");
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.fits(3));
  EXPECT_FALSE(s.fits(2));
  EXPECT_EQ(qubit_bit(0, 3), 4u);  // A is the most significant bit
  EXPECT_EQ(qubit_bit(2, 3), 1u);
}
