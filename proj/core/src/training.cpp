#include "qnnw/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qnnw/parallel.hpp"
#include "qnnw/states.hpp"

namespace qnnw {

int stage_qubits(int stage) {
  if (stage == 1) return 2;
  if (stage == 2 || stage == 3) return 3;
  if (stage >= 4 && stage <= 6) return 4;
  if (stage >= 7 && stage <= 10) return 5;
  throw std::invalid_argument("stage must be in 1..10");
}

int stage_max_order(int stage) {
  switch (stage) {
    case 1: case 2: case 4: case 7: return 2;
    case 3: case 5: case 8: return 3;
    case 6: case 9: return 4;
    case 10: return 5;
    default: throw std::invalid_argument("stage must be in 1..10");
  }
}

namespace {

TrainingPair make_pair(std::string name, const PureState& psi, QubitSubset target_subset, double target,
                       int max_order) {
  const int n = psi.n_qubits();
  const auto& subsets = canonical_subsets(n);
  TrainingPair p{std::move(name), DensityMatrix(psi), std::vector<double>(subsets.size(), 0.0),
                 std::vector<bool>(subsets.size(), false)};
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    p.trained[i] = subsets[i].size() <= max_order;
    if (subsets[i] == target_subset) p.targets[i] = target;
  }
  return p;
}

double pair_target(PairKind kind) {
  switch (kind) {
    case PairKind::Bell: return 1.0;
    case PairKind::P: return 0.44;
    default: return 0.0;
  }
}

void append_pairwise(TrainingSet& set, int n, int max_order) {
  for (const auto s : canonical_subsets(n)) {
    if (s.size() != 2) break;
    const auto q = s.qubits();
    for (const auto kind : kAllPairKinds)
      set.push_back(make_pair(std::string(to_string(kind)) + "_" + s.label(),
                              pair_training_state(kind, q[0], q[1], n), s, pair_target(kind), max_order));
  }
}

void append_ghz(TrainingSet& set, int n, int order, int max_order) {
  for (const auto s : canonical_subsets(n))
    if (s.size() == order) set.push_back(make_pair("GHZ_" + s.label(), ghz(s, n), s, 1.0, max_order));
}

}  // namespace

TrainingSet pairwise_set(int n_qubits) {
  TrainingSet set;
  append_pairwise(set, n_qubits, 2);
  return set;
}

TrainingSet build_stage_set(int stage) {
  const int n = stage_qubits(stage);
  const int max_order = stage_max_order(stage);
  TrainingSet set;
  append_pairwise(set, n, max_order);
  for (int order = 3; order <= max_order; ++order) append_ghz(set, n, order, max_order);
  return set;
}

namespace {

// Step size per stage, picked stage by stage on final training RMS
// (0.1 vs 0.03, dt 0.5). The 0.1 step overshoots on some larger sets.
constexpr double kStageLearningRate[10] = {0.1, 0.1, 0.1, 0.1, 0.1, 0.03, 0.1, 0.1, 0.03, 0.03};

}  // namespace

StageConfig StageConfig::defaults(int stage) {
  StageConfig cfg;
  cfg.stage = stage;
  cfg.n_qubits = stage_qubits(stage);
  cfg.epochs = stage <= 3 ? 5000 : 100;
  cfg.learning_rate = kStageLearningRate[stage - 1];
  return cfg;
}

void StageConfig::validate() const {
  if (stage_qubits(stage) != n_qubits) throw std::invalid_argument("stage and qubit count are inconsistent");
  if (epochs < 0) throw std::invalid_argument("negative epoch count");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw std::invalid_argument("learning rate must be positive");
}

std::string TrainLog::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "epoch,rms_error\n";
  for (std::size_t e = 0; e < rms.size(); ++e) os << e + 1 << ',' << rms[e] << '\n';
  return os.str();
}

double pair_cost(const WitnessVector& outputs, const TrainingPair& pair) {
  if (outputs.values.size() != pair.targets.size()) throw DimensionError("output and target lengths differ");
  double c = 0.0;
  for (std::size_t i = 0; i < pair.targets.size(); ++i)
    if (pair.trained[i]) c += std::pow(pair.targets[i] - outputs.values[i], 2);
  return c;
}

double pair_cost(const WitnessVector& outputs, const std::vector<double>& targets) {
  if (outputs.values.size() != targets.size()) throw DimensionError("output and target lengths differ");
  double c = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) c += std::pow(targets[i] - outputs.values[i], 2);
  return c;
}

double rms_error(const TrainingSet& set, const QnnParameters& params, const Schedule& sched,
                 const UnitConvention& u) {
  if (set.empty()) throw std::invalid_argument("rms_error of an empty training set");
  std::vector<double> costs(set.size());
  parallel_for(set.size(), [&](std::size_t i) {
    costs[i] = pair_cost(evaluate(set[i].input, params, sched, u), set[i]);
  });
  double total = 0.0;
  for (double c : costs) total += c;
  return std::sqrt(total / static_cast<double>(set.size()));
}

ComplexMatrix terminal_sensitivity(const std::vector<double>& expectations, const TrainingPair& pair) {
  const int n = pair.input.n_qubits();
  const auto& subsets = canonical_subsets(n);
  if (expectations.size() != subsets.size()) throw DimensionError("expectation count does not match register");
  std::vector<Complex> diag(pair.input.dim(), 0.0);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (!pair.trained[s]) continue;
    const double e = expectations[s];
    const double weight = -4.0 * (pair.targets[s] - e * e) * e;
    if (weight == 0.0) continue;
    const auto m = correlator_diagonal(subsets[s], n);
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += weight * m[i];
  }
  return ComplexMatrix::diagonal(diag);
}

PairGradient pair_gradient(const TrainingPair& pair, const QnnParameters& params, const Schedule& sched,
                           const UnitConvention& u, Trajectory& scratch) {
  const auto final_state = evolve_into(pair.input, params, sched, u, scratch);
  const auto e = correlator_expectations(final_state);
  PairGradient out;
  out.outputs = WitnessVector{final_state.n_qubits(), e};
  for (auto& v : out.outputs.values) v *= v;
  out.cost = pair_cost(out.outputs, pair);
  out.gradient = evolve_adjoint(terminal_sensitivity(e, pair), params, sched, u, scratch);
  return out;
}

PairGradient pair_gradient(const TrainingPair& pair, const QnnParameters& params, const Schedule& sched,
                           const UnitConvention& u) {
  Trajectory scratch;
  return pair_gradient(pair, params, sched, u, scratch);
}

TrainResult train_stage(const QnnParameters& params0, const StageConfig& cfg, const Schedule& sched,
                        const UnitConvention& u) {
  cfg.validate();
  return train_on_set(params0, build_stage_set(cfg.stage), cfg, sched, u);
}

namespace {

bool all_finite(const QnnParameters& p) {
  const auto flat = p.flatten();
  return std::all_of(flat.begin(), flat.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

TrainResult train_on_set(const QnnParameters& params0, const TrainingSet& set, const StageConfig& cfg,
                         const Schedule& sched, const UnitConvention& u) {
  if (cfg.epochs < 0 || !(cfg.learning_rate > 0.0)) throw std::invalid_argument("invalid stage configuration");
  if (set.empty()) throw std::invalid_argument("empty training set");
  if (params0.n_qubits != set.front().input.n_qubits())
    throw DimensionError("parameters and training set have different qubit counts");
  params0.validate();

  TrainResult res{params0, {}};
  res.log.initial_rms = rms_error(set, params0, sched, u);
  Trajectory scratch;
  std::vector<ParameterGradient> grads(cfg.update_mode == UpdateMode::Batch ? set.size() : 0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.update_mode == UpdateMode::Sequential) {
      for (const auto& pair : set) {
        const auto g = pair_gradient(pair, res.params, sched, u, scratch);
        res.params.axpy(-cfg.learning_rate, g.gradient);
        if (!all_finite(res.params)) break;
      }
    } else {
      parallel_for(set.size(), [&](std::size_t i) { grads[i] = pair_gradient(set[i], res.params, sched, u).gradient; });
      auto total = QnnParameters::zeros(res.params.n_qubits, res.params.n_chunks());
      for (const auto& g : grads) total.axpy(1.0, g);
      res.params.axpy(-cfg.learning_rate, total);
    }
    // an overflowing step counts as divergence rather than a parameter error
    const double rms = all_finite(res.params) ? rms_error(set, res.params, sched, u)
                                              : std::numeric_limits<double>::infinity();
    res.log.rms.push_back(rms);
    if (!std::isfinite(rms) || rms > 10.0 * res.log.initial_rms) {
      res.log.final_params = res.params;
      throw TrainingDiverged("training diverged at epoch " + std::to_string(epoch + 1), res.log);
    }
    if (cfg.on_epoch) cfg.on_epoch(epoch + 1, rms);
  }
  res.log.final_params = res.params;
  return res;
}

QnnParameters stage1_initial_parameters(int n_chunks) { return QnnParameters::uniform_tunneling(2, n_chunks, 2.5); }

QnnParameters bootstrap(const QnnParameters& params_n) {
  params_n.validate();
  const int n = params_n.n_qubits;
  QnnParameters out = QnnParameters::zeros(n + 1, params_n.n_chunks());
  for (std::size_t c = 0; c < params_n.chunks.size(); ++c) {
    const auto& src = params_n.chunks[c];
    auto& dst = out.chunks[c];
    for (int a = 0; a < n; ++a) {
      dst.k[a] = src.k[a];
      dst.eps[a] = src.eps[a];
      for (int b = a + 1; b < n; ++b) dst.zeta_at(a, b) = src.zeta_at(a, b);
    }
    dst.k[n] = src.k[n - 1];
    dst.eps[n] = src.eps[n - 1];
    for (int a = 0; a < n - 1; ++a) dst.zeta_at(a, n) = src.zeta_at(a, n - 1);
    if (n >= 2) dst.zeta_at(n - 1, n) = src.zeta_at(n - 2, n - 1);
  }
  return out;
}

}  // namespace qnnw
