#pragma once

// Shared helpers for the unit tests: random matrices and states, and
// oracles built directly on Eigen so they share no code with the library.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

#include "qnnw/dynamics.hpp"
#include "qnnw/lincore.hpp"

namespace qnnw::test {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd e(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) e(r, c) = m(r, c);
  return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

inline ComplexMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(d);
  for (auto& z : m.data()) {
    const double re = g(rng);
    z = Complex(re, g(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const auto a = random_matrix(d, rng);
  return (a + a.adjoint()) * Complex(0.5);
}

// Random full-rank mixed state: A A^dagger / Tr.
inline DensityMatrix random_density(int n_qubits, std::mt19937_64& rng) {
  const auto a = random_matrix(std::size_t{1} << n_qubits, rng);
  auto m = a * a.adjoint();
  m *= Complex(1.0 / m.trace().real());
  return DensityMatrix(std::move(m));
}

inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  const Eigen::MatrixXcd h = to_eigen(random_hermitian(d, rng));
  return from_eigen((Complex(0, 1) * h).exp());
}

// exp(-i H t) rho exp(+i H t) by the dense matrix exponential.
inline ComplexMatrix exact_propagation(const ComplexMatrix& rho, const ComplexMatrix& h, double t) {
  const Eigen::MatrixXcd u = (Complex(0, -t) * to_eigen(h)).exp();
  return from_eigen(u * to_eigen(rho) * u.adjoint());
}

inline ChunkParams random_chunk(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> k(1.0, 4.0), e(-1.5, 1.5), z(-0.6, 0.6);
  ChunkParams c = ChunkParams::zeros(n);
  for (auto& x : c.k) x = k(rng);
  for (auto& x : c.eps) x = e(rng);
  for (auto& x : c.zeta) x = z(rng);
  return c;
}

}  // namespace qnnw::test
