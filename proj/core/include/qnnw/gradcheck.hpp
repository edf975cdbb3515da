#pragma once

// Adjoint-vs-finite-difference comparison on a random training pair.

#include <cstdint>
#include <random>
#include <vector>

#include "qnnw/training.hpp"

namespace qnnw {

struct GradCheckOptions {
  double fd_step = 1e-5;  // MHz
  double rel_tol = 1e-4;
  double abs_tol = 1e-9;
  // Use lambda_f = 0 (a constant cost) instead of the pair cost.
  bool zero_terminal = false;
};

struct GradCheckReport {
  std::vector<double> adjoint;
  std::vector<double> finite_difference;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  // Count of entries failing both the relative and the absolute bound.
  std::size_t failures = 0;

  bool passed() const { return failures == 0; }
};

// Random pure input, random targets with every output trained, random
// parameters of the magnitude seen in trained networks.
TrainingPair random_training_pair(int n_qubits, std::mt19937_64& rng);
QnnParameters random_parameters(int n_qubits, int n_chunks, std::mt19937_64& rng);

GradCheckReport compare_gradients(const TrainingPair& pair, const QnnParameters& params, const Schedule& sched,
                                  const UnitConvention& u, const GradCheckOptions& opts = {});

GradCheckReport gradient_check(int n_qubits, std::uint64_t seed, const Schedule& sched, const UnitConvention& u,
                               const GradCheckOptions& opts = {});

}  // namespace qnnw
