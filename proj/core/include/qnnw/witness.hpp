#pragma once

// Network outputs: O_S = <prod_{q in S} sigma_z^q (t_f)>^2 for every qubit
// subset S with |S| >= 2.

#include <string>
#include <vector>

#include "qnnw/dynamics.hpp"
#include "qnnw/lincore.hpp"

namespace qnnw {

// Subsets of size >= 2 ordered by size, then lexicographically by qubit
// list (AB, AC, ..., DE, ABC, ..., ABCDE).
const std::vector<QubitSubset>& canonical_subsets(int n_qubits);
std::size_t output_count(int n_qubits);
// Position of `s` in canonical_subsets(n_qubits).
std::size_t output_index(QubitSubset s, int n_qubits);
// "O_AB", ...
std::string output_label(QubitSubset s);

// Diagonal of the sigma_z product on `s`: entry i is the parity sign.
std::vector<double> correlator_diagonal(QubitSubset s, int n_qubits);
ComplexMatrix correlator_operator(QubitSubset s, int n_qubits);

struct WitnessVector {
  int n_qubits = 0;
  std::vector<double> values;  // canonical order

  double at(QubitSubset s) const { return values.at(output_index(s, n_qubits)); }
};

// Un-squared correlators <M_S>, canonical order.
std::vector<double> correlator_expectations(const DensityMatrix& rho_final);
WitnessVector witness_outputs(const DensityMatrix& rho_final);

WitnessVector evaluate(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched,
                       const UnitConvention& u);

}  // namespace qnnw
