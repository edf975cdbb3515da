#include "qnnw/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qnnw {

PureState make_state(const StateSpec& spec) {
  if (spec.n_qubits < 1 || spec.n_qubits > 10) throw InvalidStateError("state spec qubit count out of range");
  std::vector<Complex> amps(std::size_t{1} << spec.n_qubits);
  for (const auto& t : spec.terms) {
    if (static_cast<int>(t.bits.size()) != spec.n_qubits)
      throw InvalidStateError("bitstring '" + t.bits + "' does not have " + std::to_string(spec.n_qubits) + " bits");
    std::size_t idx = 0;
    for (char ch : t.bits) {
      if (ch != '0' && ch != '1') throw InvalidStateError("bitstring '" + t.bits + "' has a non-binary digit");
      idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
    }
    amps[idx] += t.amplitude;
  }
  return PureState(std::move(amps));
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::Bell: return "Bell";
    case PairKind::Flat: return "Flat";
    case PairKind::Corr: return "Corr";
    case PairKind::P: return "P";
  }
  return "?";
}

std::vector<Complex> pair_amplitudes(PairKind kind) {
  switch (kind) {
    case PairKind::Bell: return {1.0, 0.0, 0.0, 1.0};
    case PairKind::Flat: return {1.0, 1.0, 1.0, 1.0};
    case PairKind::Corr: return {0.0, 0.0, 0.5, 1.0};
    case PairKind::P: return {1.0, 1.0, 1.0, 0.0};
  }
  throw std::invalid_argument("unknown pair kind");
}

PureState pair_training_state(PairKind kind, int a, int b, int n_qubits) {
  if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits)
    throw std::invalid_argument("invalid qubit pair for a pair training state");
  const auto two = pair_amplitudes(kind);
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  for (std::size_t v = 0; v < 4; ++v) {
    std::size_t idx = 0;
    if (v & 2) idx |= qubit_bit(a, n_qubits);
    if (v & 1) idx |= qubit_bit(b, n_qubits);
    amps[idx] = two[v];
  }
  return PureState(std::move(amps));
}

PureState ghz(QubitSubset subset, int n_qubits) {
  if (subset.size() < 2) throw std::invalid_argument("GHZ state needs at least two qubits");
  if (!subset.fits(n_qubits)) throw std::invalid_argument("GHZ subset exceeds register");
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  std::size_t ones = 0;
  for (int q : subset.qubits()) ones |= qubit_bit(q, n_qubits);
  amps[0] = 1.0;
  amps[ones] = 1.0;
  return PureState(std::move(amps));
}

PureState w_state(QubitSubset subset, const std::vector<int>& signs, bool flipped, int n_qubits) {
  const auto qs = subset.qubits();
  if (qs.empty() || !subset.fits(n_qubits)) throw std::invalid_argument("invalid W-state subset");
  if (signs.size() != qs.size()) throw std::invalid_argument("W-state sign count differs from subset size");
  std::size_t all = 0;
  for (int q : qs) all |= qubit_bit(q, n_qubits);
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  for (std::size_t j = 0; j < qs.size(); ++j) {
    if (signs[j] != 1 && signs[j] != -1) throw std::invalid_argument("W-state signs must be +1 or -1");
    const std::size_t bit = qubit_bit(qs[j], n_qubits);
    amps[flipped ? (all & ~bit) : bit] = static_cast<double>(signs[j]);
  }
  return PureState(std::move(amps));
}

std::vector<std::vector<int>> sign_patterns(int k) {
  if (k < 1) throw std::invalid_argument("sign pattern length must be positive");
  std::vector<std::vector<int>> out;
  for (std::size_t m = 0; m < (std::size_t{1} << (k - 1)); ++m) {
    std::vector<int> s(static_cast<std::size_t>(k), 1);
    for (int j = 1; j < k; ++j)
      if (m & (std::size_t{1} << (j - 1))) s[j] = -1;
    out.push_back(std::move(s));
  }
  return out;
}

PureState superpose(const std::vector<std::pair<Complex, PureState>>& terms) {
  if (terms.empty()) throw InvalidStateError("superposition of no states");
  std::vector<Complex> amps(terms.front().second.dim());
  for (const auto& [c, psi] : terms) {
    if (psi.dim() != amps.size()) throw DimensionError("superposed states have different dimensions");
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += c * psi[i];
  }
  return PureState(std::move(amps));
}

PureState superpose(const std::vector<std::pair<double, PureState>>& terms) {
  std::vector<std::pair<Complex, PureState>> c;
  c.reserve(terms.size());
  for (const auto& [w, psi] : terms) c.emplace_back(Complex(w), psi);
  return superpose(c);
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms) {
  if (terms.empty()) throw InvalidStateError("mixture of no states");
  const std::size_t d = terms.front().second.dim();
  ComplexMatrix m(d);
  double total = 0.0;
  for (const auto& [w, rho] : terms) {
    if (w < 0.0) throw InvalidStateError("negative mixture weight");
    if (rho.dim() != d) throw DimensionError("mixed states have different dimensions");
    total += w;
    m += rho.matrix() * Complex(w);
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidStateError("mixture weights do not sum to 1");
  return DensityMatrix(std::move(m));
}

PureState pad_with_zeros(const PureState& psi, int extra) {
  if (extra < 0) throw std::invalid_argument("negative padding");
  std::vector<Complex> amps(psi.dim() << extra);
  for (std::size_t i = 0; i < psi.dim(); ++i) amps[i << extra] = psi[i];
  return PureState(std::move(amps));
}

PureState random_pure_state(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) {
    const double re = g(rng);
    a = Complex(re, g(rng));
  }
  return PureState(std::move(amps));
}

}  // namespace qnnw
