#pragma once

// Dense complex linear algebra for register operators of up to 5 qubits.
//
// Qubit ordering: qubit 0 (A) is the most significant bit of the basis
// index, so |101> on three qubits is index 5.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnnw {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Set of qubits, stored as a bitmask where bit q means qubit q (q = 0 is A).
class QubitSubset {
 public:
  constexpr QubitSubset() = default;
  constexpr explicit QubitSubset(std::uint32_t mask) : mask_(mask) {}
  QubitSubset(std::initializer_list<int> qubits);

  static QubitSubset all(int n_qubits) { return QubitSubset((1u << n_qubits) - 1u); }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool contains(int q) const { return (mask_ >> q) & 1u; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  // Qubit indices in ascending order.
  std::vector<int> qubits() const;
  // True when every qubit index is below n_qubits.
  bool fits(int n_qubits) const { return (mask_ >> n_qubits) == 0; }
  // "AB", "ACE", ...
  std::string label() const;

  friend constexpr bool operator==(QubitSubset, QubitSubset) = default;

 private:
  std::uint32_t mask_ = 0;
};

// Basis-index bit that encodes qubit q in an n-qubit register.
constexpr std::size_t qubit_bit(int q, int n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - q);
}

int qubit_count_for_dim(std::size_t dim);

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
  // Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix pauli_x();
  static ComplexMatrix pauli_y();
  static ComplexMatrix pauli_z();

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  // max_ij |M_ij - conj(M_ji)|
  double hermiticity_defect() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

class PureState {
 public:
  PureState() = default;
  // Normalizes; throws InvalidStateError for a zero vector.
  explicit PureState(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  int n_qubits() const { return qubit_count_for_dim(amps_.size()); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;
  // |psi><psi|
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amps_;
};

class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  DensityMatrix() = default;
  // Validates Hermiticity, unit trace and positivity at kTolerance.
  explicit DensityMatrix(ComplexMatrix m);
  explicit DensityMatrix(const PureState& psi);

  // Skips validation; for integrator output whose invariants are
  // checked separately.
  static DensityMatrix unchecked(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  int n_qubits() const { return qubit_count_for_dim(m_.dim()); }
  double purity() const;

 private:
  ComplexMatrix m_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Re Tr(rho m). Throws DimensionError on mismatch, std::domain_error if the
// imaginary part of the trace exceeds 1e-9.
double expectation(const DensityMatrix& rho, const ComplexMatrix& m);

// Reduced state on `keep`, kept qubits in ascending order.
DensityMatrix partial_trace(const DensityMatrix& rho, QubitSubset keep);

// Descending eigenvalues of a Hermitian matrix (defect <= 1e-8).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct HermitianEigensystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column j pairs with values[j]
};
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

// f(M) = V f(Lambda) V^dagger for a Hermitian M.
template <class F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
  const auto es = hermitian_eigensystem(m);
  const std::size_t d = m.dim();
  ComplexMatrix out(d);
  for (std::size_t k = 0; k < d; ++k) {
    const Complex fk = f(es.values[k]);
    for (std::size_t r = 0; r < d; ++r) {
      const Complex vr = es.vectors(r, k) * fk;
      for (std::size_t c = 0; c < d; ++c) out(r, c) += vr * std::conj(es.vectors(c, k));
    }
  }
  return out;
}

}  // namespace qnnw
