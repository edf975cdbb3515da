#include "qnnw/lincore.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qnnw {

QubitSubset::QubitSubset(std::initializer_list<int> qubits) {
  for (int q : qubits) {
    if (q < 0 || q >= 32) throw std::out_of_range("qubit index out of range");
    mask_ |= 1u << q;
  }
}

int QubitSubset::size() const { return std::popcount(mask_); }

std::vector<int> QubitSubset::qubits() const {
  std::vector<int> out;
  for (int q = 0; q < 32; ++q)
    if (contains(q)) out.push_back(q);
  return out;
}

std::string QubitSubset::label() const {
  std::string s;
  for (int q : qubits()) s.push_back(static_cast<char>('A' + q));
  return s;
}

int qubit_count_for_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim))
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  return std::countr_zero(dim);
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) throw DimensionError("entry count does not match dim*dim");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix ComplexMatrix::pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix ComplexMatrix::pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (const auto& z : data_) worst = std::max(worst, std::abs(z));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix sum dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix difference dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("matrix product dimension mismatch");
  const std::size_t d = a.dim_;
  ComplexMatrix out(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0)) continue;
      for (std::size_t c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  qubit_count_for_dim(amps_.size());
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw InvalidStateError("state vector has zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amps_) a *= inv;
}

double PureState::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

ComplexMatrix PureState::projector() const {
  const std::size_t d = amps_.size();
  ComplexMatrix p(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) p(r, c) = amps_[r] * std::conj(amps_[c]);
  return p;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  qubit_count_for_dim(m_.dim());
  if (m_.hermiticity_defect() > kTolerance) throw InvalidStateError("density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kTolerance) throw InvalidStateError("density matrix trace is not 1");
  const auto ev = hermitian_eigenvalues(m_);
  if (ev.back() < -kTolerance) throw InvalidStateError("density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& psi) : m_(psi.projector()) {}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  DensityMatrix rho;
  rho.m_ = std::move(m);
  return rho;
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
  double p = 0.0;
  for (const auto& z : m_.data()) p += std::norm(z);
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t ar = 0; ar < da; ++ar)
    for (std::size_t ac = 0; ac < da; ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < db; ++br)
        for (std::size_t bc = 0; bc < db; ++bc) out(ar * db + br, ac * db + bc) = s * b(br, bc);
    }
  return out;
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& m) {
  if (rho.dim() != m.dim()) throw DimensionError("expectation: operator and state dimensions differ");
  const auto& r = rho.matrix();
  const std::size_t d = m.dim();
  Complex t = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) t += r(i, k) * m(k, i);
  if (std::abs(t.imag()) >= 1e-9) throw std::domain_error("expectation has a non-negligible imaginary part");
  return t.real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, QubitSubset keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty qubit subset");
  if (!keep.fits(n)) throw std::invalid_argument("partial_trace: subset names qubits outside the register");
  const auto kept = keep.qubits();
  const int k = static_cast<int>(kept.size());
  const std::size_t d = rho.dim();
  std::size_t keep_bits = 0;
  for (int q : kept) keep_bits |= qubit_bit(q, n);

  auto reduced_index = [&](std::size_t full) {
    std::size_t r = 0;
    for (int j = 0; j < k; ++j)
      if (full & qubit_bit(kept[j], n)) r |= qubit_bit(j, k);
    return r;
  };

  ComplexMatrix out(std::size_t{1} << k);
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t ri = reduced_index(i);
    for (std::size_t j = 0; j < d; ++j) {
      if ((i & ~keep_bits) != (j & ~keep_bits)) continue;
      out(ri, reduced_index(j)) += m(i, j);
    }
  }
  return DensityMatrix::unchecked(std::move(out));
}

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd e(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) e(r, c) = m(r, c);
  // symmetrize so tiny defects do not bias the solver
  return (e + e.adjoint()) * 0.5;
}

void require_hermitian(const ComplexMatrix& m) {
  if (m.hermiticity_defect() > 1e-8) throw std::invalid_argument("matrix is not Hermitian");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
  const auto d = static_cast<Eigen::Index>(m.dim());
  HermitianEigensystem es{std::vector<double>(m.dim()), ComplexMatrix(m.dim())};
  // Eigen orders ascending
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::Index src = d - 1 - j;
    es.values[j] = solver.eigenvalues()(src);
    for (Eigen::Index r = 0; r < d; ++r) es.vectors(r, j) = solver.eigenvectors()(r, src);
  }
  return es;
}

}  // namespace qnnw
