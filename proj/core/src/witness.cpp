#include "qnnw/witness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace qnnw {

namespace {

std::vector<QubitSubset> build_canonical(int n) {
  std::vector<QubitSubset> out;
  for (int size = 2; size <= n; ++size) {
    std::vector<QubitSubset> level;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
      if (std::popcount(m) == size) level.emplace_back(m);
    std::sort(level.begin(), level.end(), [](QubitSubset a, QubitSubset b) { return a.qubits() < b.qubits(); });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

constexpr int kMaxQubits = 8;

}  // namespace

const std::vector<QubitSubset>& canonical_subsets(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  static std::array<std::vector<QubitSubset>, kMaxQubits + 1> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int n = 1; n <= kMaxQubits; ++n) cache[n] = build_canonical(n);
  });
  return cache[n_qubits];
}

std::size_t output_count(int n_qubits) { return canonical_subsets(n_qubits).size(); }

std::size_t output_index(QubitSubset s, int n_qubits) {
  const auto& all = canonical_subsets(n_qubits);
  const auto it = std::find(all.begin(), all.end(), s);
  if (it == all.end()) throw std::invalid_argument("subset " + s.label() + " is not a correlator index");
  return static_cast<std::size_t>(it - all.begin());
}

std::string output_label(QubitSubset s) { return "O_" + s.label(); }

std::vector<double> correlator_diagonal(QubitSubset s, int n_qubits) {
  if (s.size() < 2 || !s.fits(n_qubits)) throw std::invalid_argument("invalid correlator subset");
  std::size_t bits = 0;
  for (int q : s.qubits()) bits |= qubit_bit(q, n_qubits);
  std::vector<double> diag(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = (std::popcount(i & bits) & 1) ? -1.0 : 1.0;
  return diag;
}

ComplexMatrix correlator_operator(QubitSubset s, int n_qubits) {
  const auto diag = correlator_diagonal(s, n_qubits);
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

std::vector<double> correlator_expectations(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  const auto& subsets = canonical_subsets(n);
  const auto& m = rho.matrix();
  std::vector<double> out;
  out.reserve(subsets.size());
  for (const auto s : subsets) {
    std::size_t bits = 0;
    for (int q : s.qubits()) bits |= qubit_bit(q, n);
    double e = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) e += ((std::popcount(i & bits) & 1) ? -1.0 : 1.0) * m(i, i).real();
    out.push_back(e);
  }
  return out;
}

WitnessVector witness_outputs(const DensityMatrix& rho_final) {
  WitnessVector w{rho_final.n_qubits(), correlator_expectations(rho_final)};
  for (auto& v : w.values) v *= v;
  return w;
}

WitnessVector evaluate(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched,
                       const UnitConvention& u) {
  return witness_outputs(evolve(rho0, params, sched, u));
}

}  // namespace qnnw
