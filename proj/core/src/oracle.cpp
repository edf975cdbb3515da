#include "qnnw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnnw/witness.hpp"

namespace qnnw {

double concurrence(const DensityMatrix& rho2) {
  const auto& rho = rho2.matrix();
  if (rho.dim() != 4) throw DimensionError("concurrence needs a two-qubit state");
  if (rho.hermiticity_defect() > 1e-8 || std::abs(rho.trace() - 1.0) > 1e-8)
    throw InvalidStateError("concurrence input is not a density matrix");

  // Wootters decomposition: with v_i = sqrt(p_i) e_i over the spectrum of rho,
  // the lambdas are the singular values of tau_ij = v_i^T (Y x Y) v_j. They are
  // read off the Hermitian dilation [[0, tau], [tau^dag, 0]], whose spectrum is
  // +-sigma. This avoids square roots of near-zero eigenvalues.
  const auto es = hermitian_eigensystem(rho);
  if (es.values.back() < -1e-8) throw InvalidStateError("concurrence input is not positive semidefinite");
  const auto yy = kron(ComplexMatrix::pauli_y(), ComplexMatrix::pauli_y());
  ComplexMatrix v(4);
  for (std::size_t j = 0; j < 4; ++j) {
    const double w = std::sqrt(std::max(es.values[j], 0.0));
    for (std::size_t r = 0; r < 4; ++r) v(r, j) = es.vectors(r, j) * w;
  }
  const auto tau = v.conjugate().adjoint() * yy * v;
  ComplexMatrix dilation(8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, c + 4) = tau(r, c);
      dilation(c + 4, r) = std::conj(tau(r, c));
    }
  const auto ev = hermitian_eigenvalues(dilation);
  const std::vector<double> lam(ev.begin(), ev.begin() + 4);
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double pairwise_tangle(const DensityMatrix& state, int a, int b) {
  if (a == b) throw std::invalid_argument("pairwise tangle needs two distinct qubits");
  const QubitSubset pair{a, b};
  const double c = concurrence(partial_trace(state, pair));
  return c * c;
}

namespace {

void require_three_qubit_pure(const PureState& psi) {
  if (psi.dim() != 8) throw DimensionError("3-tangle needs a three-qubit state");
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw InvalidStateError("3-tangle input is not normalized");
}

}  // namespace

double ckw_residual(const PureState& psi, int focus) {
  require_three_qubit_pure(psi);
  if (focus < 0 || focus > 2) throw std::invalid_argument("focus qubit out of range");
  const DensityMatrix rho(psi);
  const auto r1 = partial_trace(rho, QubitSubset{focus}).matrix();
  const double det = (r1(0, 0) * r1(1, 1) - r1(0, 1) * r1(1, 0)).real();
  double residual = 4.0 * det;
  for (int other = 0; other < 3; ++other)
    if (other != focus) residual -= pairwise_tangle(rho, focus, other);
  return residual;
}

double residual_3tangle(const PureState& psi) { return std::clamp(ckw_residual(psi, 0), 0.0, 1.0); }

TangleReport tangle_report(const DensityMatrix& state, const PureState* pure) {
  const int n = state.n_qubits();
  TangleReport rep;
  for (const auto s : canonical_subsets(n)) {
    if (s.size() != 2) break;
    const auto q = s.qubits();
    rep.pairs.push_back(s);
    rep.pairwise_tangle.push_back(pairwise_tangle(state, q[0], q[1]));
  }
  if (pure != nullptr && n == 3) rep.residual_3tangle = residual_3tangle(*pure);
  return rep;
}

}  // namespace qnnw
