#pragma once

// Staged training sets, cost, adjoint gradients and gradient-descent
// training of the network parameters.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnnw/dynamics.hpp"
#include "qnnw/witness.hpp"

namespace qnnw {

struct TrainingPair {
  std::string name;
  DensityMatrix input;
  // Canonical output order. Outputs with trained[i] == false are reported
  // but excluded from the cost.
  std::vector<double> targets;
  std::vector<bool> trained;
};

using TrainingSet = std::vector<TrainingPair>;

int stage_qubits(int stage);
// Largest correlator order trained at `stage` (2 = pairwise only).
int stage_max_order(int stage);
TrainingSet build_stage_set(int stage);

// Pairwise set for an arbitrary register: the four pair states on every
// qubit pair, pairwise outputs trained.
TrainingSet pairwise_set(int n_qubits);

enum class UpdateMode { Sequential, Batch };

struct StageConfig {
  int stage = 1;
  int n_qubits = 2;
  int epochs = 5000;
  double learning_rate = 0.1;  // MHz per unit gradient; defaults() sets it per stage
  UpdateMode update_mode = UpdateMode::Sequential;
  // Called after each epoch with (epoch, rms); optional.
  std::function<void(int, double)> on_epoch;

  static StageConfig defaults(int stage);
  void validate() const;
};

struct TrainLog {
  double initial_rms = 0.0;
  std::vector<double> rms;  // after each epoch
  QnnParameters final_params;

  // "epoch,rms_error" lines, epochs counted from 1.
  std::string to_csv() const;
};

class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(const std::string& what, TrainLog log) : std::runtime_error(what), log_(std::move(log)) {}
  const TrainLog& log() const { return log_; }

 private:
  TrainLog log_;
};

double pair_cost(const WitnessVector& outputs, const TrainingPair& pair);
// Sum of (target - output)^2 over all entries (every output trained).
double pair_cost(const WitnessVector& outputs, const std::vector<double>& targets);

double rms_error(const TrainingSet& set, const QnnParameters& params, const Schedule& sched,
                 const UnitConvention& u);

struct PairGradient {
  double cost = 0.0;
  WitnessVector outputs;
  ParameterGradient gradient;
};

// dJ/drho(t_f) = sum over trained S of -4 (target_S - O_S) <M_S> M_S.
ComplexMatrix terminal_sensitivity(const std::vector<double>& expectations, const TrainingPair& pair);

PairGradient pair_gradient(const TrainingPair& pair, const QnnParameters& params, const Schedule& sched,
                           const UnitConvention& u);
// Same, reusing `scratch` for the forward trajectory.
PairGradient pair_gradient(const TrainingPair& pair, const QnnParameters& params, const Schedule& sched,
                           const UnitConvention& u, Trajectory& scratch);

struct TrainResult {
  QnnParameters params;
  TrainLog log;
};

// Throws TrainingDiverged when the epoch RMS exceeds 10x the initial RMS.
TrainResult train_stage(const QnnParameters& params0, const StageConfig& cfg, const Schedule& sched,
                        const UnitConvention& u);
TrainResult train_on_set(const QnnParameters& params0, const TrainingSet& set, const StageConfig& cfg,
                         const Schedule& sched, const UnitConvention& u);

// Stage-1 starting point: every K = 2.5 MHz, eps = zeta = 0.
QnnParameters stage1_initial_parameters(int n_chunks = 4);

// Grows an n-qubit parameter set to n + 1 qubits by copying the
// highest-index qubit's entries onto the new qubit.
QnnParameters bootstrap(const QnnParameters& params_n);

}  // namespace qnnw
