#pragma once

// Piecewise-constant qubit-network Hamiltonian and fixed-step RK4
// integration of drho/dt = -i[H, rho] (hbar = 1, time in ns).

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "qnnw/lincore.hpp"

namespace qnnw {

// Index of the unordered pair (a, b), a != b, in the order AB, AC, ..., DE.
std::size_t pair_index(int a, int b, int n_qubits);
inline std::size_t pair_count(int n_qubits) {
  return static_cast<std::size_t>(n_qubits * (n_qubits - 1) / 2);
}

// One time chunk's parameters, all in MHz.
struct ChunkParams {
  std::vector<double> k;     // tunneling, per qubit
  std::vector<double> eps;   // bias, per qubit
  std::vector<double> zeta;  // coupling, per unordered pair (see pair_index)

  static ChunkParams zeros(int n_qubits);
  int n_qubits() const { return static_cast<int>(k.size()); }
  std::size_t size() const { return k.size() + eps.size() + zeta.size(); }
  // Throws DimensionError unless sized for n_qubits with finite entries.
  void validate(int n_qubits) const;

  double& zeta_at(int a, int b) { return zeta[pair_index(a, b, n_qubits())]; }
  double zeta_at(int a, int b) const { return zeta[pair_index(a, b, n_qubits())]; }

  friend bool operator==(const ChunkParams&, const ChunkParams&) = default;
};

// The network weights: one ChunkParams per time chunk.
struct QnnParameters {
  int n_qubits = 0;
  std::vector<ChunkParams> chunks;

  static QnnParameters zeros(int n_qubits, int n_chunks);
  // Every K set to `tunneling`, everything else zero.
  static QnnParameters uniform_tunneling(int n_qubits, int n_chunks, double tunneling);

  int n_chunks() const { return static_cast<int>(chunks.size()); }
  std::size_t per_chunk() const { return 2 * static_cast<std::size_t>(n_qubits) + pair_count(n_qubits); }
  std::size_t size() const { return per_chunk() * chunks.size(); }
  void validate() const;

  // Flat layout per chunk: K_0..K_{n-1}, eps_0..eps_{n-1}, zeta pairs.
  std::vector<double> flatten() const;
  static QnnParameters unflatten(int n_qubits, int n_chunks, std::span<const double> values);

  // this += scale * other
  void axpy(double scale, const QnnParameters& other);

  friend bool operator==(const QnnParameters&, const QnnParameters&) = default;
};

// Gradients share the parameter layout.
using ParameterGradient = QnnParameters;

struct Schedule {
  double t_final = 300.0;  // ns
  int n_chunks = 4;
  double dt = 0.05;  // ns

  static Schedule standard() { return {}; }
  // Coarse schedule for fast tests.
  static Schedule coarse() { return {300.0, 4, 0.5}; }

  // Throws std::invalid_argument unless t_final/n_chunks is a whole
  // number of steps (within 1e-9).
  void validate() const;
  int steps_per_chunk() const;
  int total_steps() const { return steps_per_chunk() * n_chunks; }
};

struct UnitConvention {
  static constexpr double kAngular = 2.0 * std::numbers::pi * 1e-3;
  static constexpr double kLinear = 1e-3;

  // rad/ns per MHz.
  double angular_factor = kAngular;
  // When set, each unordered pair contributes 2*zeta (ordered double sum).
  bool ordered_pair_sum = false;

  static UnitConvention angular() { return {kAngular, false}; }
  static UnitConvention linear() { return {kLinear, false}; }

  double pair_weight() const { return ordered_pair_sum ? 2.0 : 1.0; }
};

// Dense Hamiltonian in rad/ns.
ComplexMatrix build_hamiltonian(const ChunkParams& p, int n_qubits, const UnitConvention& u);

// The chunk Hamiltonian in structured form: diagonal part plus one
// bit-flip amplitude per qubit. Applies L(x) = -i[H, x] in O(d^2 n).
class Liouvillian {
 public:
  Liouvillian(const ChunkParams& p, int n_qubits, const UnitConvention& u);

  std::size_t dim() const { return diag_.size(); }
  int n_qubits() const { return n_; }
  std::span<const double> diagonal() const { return diag_; }
  std::span<const double> flip_rates() const { return flip_; }

  // out = -i[H, x]; out must not alias x.
  void apply(std::span<const Complex> x, std::span<Complex> out) const;

 private:
  int n_;
  std::vector<double> diag_;
  std::vector<double> flip_;
};

// Stored forward solution: the state after every integrator step, plus the
// initial state (total_steps + 1 entries).
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t dim, std::size_t n_states);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return n_states_; }
  std::span<const Complex> state(std::size_t i) const;
  std::span<Complex> state(std::size_t i);
  ComplexMatrix matrix(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::size_t n_states_ = 0;
  std::vector<Complex> data_;
};

DensityMatrix evolve(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched,
                     const UnitConvention& u);

struct ForwardSolution {
  DensityMatrix final_state;
  Trajectory trajectory;
};

ForwardSolution evolve_with_trajectory(const DensityMatrix& rho0, const QnnParameters& params,
                                       const Schedule& sched, const UnitConvention& u);

// Reuses `trajectory`'s storage when it already has the right shape.
DensityMatrix evolve_into(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched,
                          const UnitConvention& u, Trajectory& trajectory);

// Gradient of J with respect to every parameter (per MHz), given the
// terminal sensitivity lambda_f = dJ/drho(t_f) (J depends on rho(t_f)
// through Re Tr(lambda_f^dagger rho)). Back-propagates exactly through
// the RK4 steps, which amounts to stepping the adjoint equation backward
// from t_f with the same step size.
ParameterGradient evolve_adjoint(const ComplexMatrix& lambda_f, const QnnParameters& params,
                                 const Schedule& sched, const UnitConvention& u,
                                 const Trajectory& trajectory);

}  // namespace qnnw
