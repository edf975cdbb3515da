#pragma once

// Input-state constructors: two-qubit training states, GHZ and W families,
// superpositions and mixtures.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qnnw/lincore.hpp"

namespace qnnw {

struct StateTerm {
  std::string bits;  // one character per qubit, qubit A first
  Complex amplitude;
};

struct StateSpec {
  int n_qubits = 0;
  std::vector<StateTerm> terms;
};

// Throws InvalidStateError for malformed bitstrings or an all-zero spec.
PureState make_state(const StateSpec& spec);

enum class PairKind { Bell, Flat, Corr, P };

const char* to_string(PairKind kind);
inline constexpr PairKind kAllPairKinds[] = {PairKind::Bell, PairKind::Flat, PairKind::Corr, PairKind::P};

// Unnormalized two-qubit amplitudes over |00>, |01>, |10>, |11>.
std::vector<Complex> pair_amplitudes(PairKind kind);

// Two-qubit state `kind` on qubits (a, b), |0> on every other qubit.
PureState pair_training_state(PairKind kind, int a, int b, int n_qubits);

// (|0..0> + |1 on subset>)/sqrt(2)
PureState ghz(QubitSubset subset, int n_qubits);

// Equal-weight superposition of the single-excitation (or, when flipped,
// single-hole) strings on `subset`, qubits outside it in |0>. signs[j]
// multiplies the string whose excitation/hole sits on the j-th subset qubit.
PureState w_state(QubitSubset subset, const std::vector<int>& signs, bool flipped, int n_qubits);

// All 2^(k-1) sign vectors of length k with a leading +1.
std::vector<std::vector<int>> sign_patterns(int k);

PureState superpose(const std::vector<std::pair<double, PureState>>& terms);
PureState superpose(const std::vector<std::pair<Complex, PureState>>& terms);

// Convex combination; weights must be >= 0 and sum to 1 within 1e-10.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms);

// Pads `psi` with |0> on `extra` trailing qubits.
PureState pad_with_zeros(const PureState& psi, int extra);

// Haar-random pure state (normalized complex Gaussian vector).
PureState random_pure_state(int n_qubits, std::mt19937_64& rng);

}  // namespace qnnw
