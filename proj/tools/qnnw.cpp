// qnnw: evaluate, train and sweep the qubit-network entanglement witness.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "qnnw/gradcheck.hpp"
#include "qnnw/io.hpp"
#include "qnnw/oracle.hpp"
#include "qnnw/states.hpp"
#include "qnnw/sweep.hpp"
#include "qnnw/training.hpp"
#include "qnnw/witness.hpp"

namespace {

using namespace qnnw;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct ScheduleFlags {
  double t_final = 300.0;
  double dt = 0.05;
  int chunks = 0;  // 0: take from the parameter file
  std::string convention;
  bool ordered_pairs = false;

  void add_to(CLI::App& app) {
    app.add_option("--tfinal", t_final, "Total evolution time in ns")->capture_default_str();
    app.add_option("--dt", dt, "RK4 step in ns")->capture_default_str();
    app.add_option("--chunks", chunks, "Number of time chunks (default: from parameters, else 4)");
    app.add_option("--convention", convention, "MHz to rad/ns convention (default: from checkpoint, else angular)")
        ->check(CLI::IsMember({"angular", "linear"}));
    app.add_flag("--ordered-pairs", ordered_pairs, "Count each coupling twice (ordered double sum)");
  }

  Schedule schedule(const QnnParameters* params) const {
    Schedule s{t_final, chunks > 0 ? chunks : (params ? params->n_chunks() : 4), dt};
    s.validate();
    return s;
  }

  UnitConvention units(const std::optional<CheckpointMeta>& meta) const {
    UnitConvention u = meta ? meta->unit_convention() : UnitConvention::angular();
    if (convention == "angular") u.angular_factor = UnitConvention::kAngular;
    if (convention == "linear") u.angular_factor = UnitConvention::kLinear;
    if (ordered_pairs) u.ordered_pair_sum = true;
    return u;
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) std::cout << text;
  else write_text_file(out_path, text);
}

std::string witness_csv(const WitnessVector& w) {
  std::string header, values;
  char buf[32];
  const auto& subsets = canonical_subsets(w.n_qubits);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    header += (i ? "," : "") + output_label(subsets[i]);
    std::snprintf(buf, sizeof buf, "%.10g", w.values[i]);
    values += (i ? "," : "") + std::string(buf);
  }
  return header + "\n" + values + "\n";
}

int run_evaluate(const std::string& state_path, const std::string& params_path, const ScheduleFlags& flags,
                 const std::string& out) {
  const PureState psi = make_state(read_state_spec(state_path));
  const DensityMatrix rho(psi);
  ParameterFile pf;
  if (params_path.empty()) {
    pf.params = QnnParameters::zeros(rho.n_qubits(), flags.chunks > 0 ? flags.chunks : 4);
  } else {
    pf = read_parameter_file(params_path);
  }
  if (pf.params.n_qubits != rho.n_qubits())
    throw DimensionError("state has " + std::to_string(rho.n_qubits()) + " qubits but parameters have " +
                         std::to_string(pf.params.n_qubits));
  const auto w = evaluate(rho, pf.params, flags.schedule(&pf.params), flags.units(pf.meta));
  if (!out.empty()) {
    write_text_file(out, witness_csv(w));
    return 0;
  }
  const auto& subsets = canonical_subsets(w.n_qubits);
  for (std::size_t i = 0; i < subsets.size(); ++i) std::printf("%-8s %.6f\n", output_label(subsets[i]).c_str(), w.values[i]);
  return 0;
}

struct TrainFlags {
  int stage = 1;
  std::string params_path;
  std::string out = "checkpoint.params";
  std::string log_path;
  std::optional<int> epochs;
  std::optional<double> lr;
  std::string mode = "sequential";
  int progress = 0;
  std::optional<double> init_tunneling;
};

int run_train(const TrainFlags& tf, const ScheduleFlags& flags) {
  StageConfig cfg = StageConfig::defaults(tf.stage);
  if (tf.epochs) cfg.epochs = *tf.epochs;
  if (tf.lr) cfg.learning_rate = *tf.lr;
  cfg.update_mode = tf.mode == "batch" ? UpdateMode::Batch : UpdateMode::Sequential;
  if (tf.progress > 0)
    cfg.on_epoch = [every = tf.progress](int epoch, double rms) {
      if (epoch % every == 0) std::fprintf(stderr, "epoch %d rms %.6g\n", epoch, rms);
    };

  ParameterFile in;
  if (tf.params_path.empty()) {
    if (tf.stage != 1) throw std::invalid_argument("stages after 1 need --params with a trained checkpoint");
    in.params = stage1_initial_parameters(flags.chunks > 0 ? flags.chunks : 4);
    if (tf.init_tunneling) for (auto& c : in.params.chunks) std::fill(c.k.begin(), c.k.end(), *tf.init_tunneling);
  } else {
    in = read_parameter_file(tf.params_path);
  }
  QnnParameters start = in.params;
  if (start.n_qubits > cfg.n_qubits)
    throw DimensionError("checkpoint has more qubits than stage " + std::to_string(tf.stage) + " uses");
  while (start.n_qubits < cfg.n_qubits) start = bootstrap(start);

  const Schedule sched = flags.schedule(&start);
  const UnitConvention u = flags.units(in.meta);
  CheckpointMeta meta;
  meta.stage = tf.stage;
  meta.convention = u.angular_factor == UnitConvention::kAngular ? "angular"
                    : u.angular_factor == UnitConvention::kLinear ? "linear"
                                                                  : "custom";
  meta.angular_factor = u.angular_factor;
  meta.ordered_pair_sum = u.ordered_pair_sum;
  meta.schedule = sched;

  const std::string log_path = tf.log_path.empty() ? tf.out + ".log" : tf.log_path;
  try {
    const auto res = train_stage(start, cfg, sched, u);
    write_parameter_file(tf.out, {res.params, meta});
    write_text_file(log_path, res.log.to_csv());
    const double final_rms = res.log.rms.empty() ? res.log.initial_rms : res.log.rms.back();
    std::printf("stage %d: %zu pairs, %d epochs, initial RMS %.6g, final RMS %.6g\n", tf.stage,
                build_stage_set(tf.stage).size(), cfg.epochs, res.log.initial_rms, final_rms);
    return 0;
  } catch (const TrainingDiverged& e) {
    write_text_file(log_path, e.log().to_csv());
    std::cerr << "error: " << e.what() << " (log written to " << log_path << ")\n";
    return kExitNumerical;
  }
}

int run_sweep_cmd(const std::string& figure, const std::string& params_path, double grid_step,
                  const ScheduleFlags& flags, const std::string& out) {
  const auto pf = read_parameter_file(params_path);
  const auto table = run_sweep(figure, pf.params, flags.schedule(&pf.params), flags.units(pf.meta), {grid_step});
  emit(table.to_csv(), out);
  return 0;
}

int run_gradcheck(int n, std::uint64_t seed, bool zero_terminal, const ScheduleFlags& flags) {
  const Schedule sched = flags.schedule(nullptr);
  GradCheckOptions opts;
  opts.zero_terminal = zero_terminal;
  const auto rep = gradient_check(n, seed, sched, flags.units(std::nullopt), opts);
  std::printf("qubits %d, seed %llu, %zu parameters, dt %g ns\n", n, static_cast<unsigned long long>(seed),
              rep.adjoint.size(), sched.dt);
  std::printf("max |adjoint - fd|            %.3e\n", rep.max_abs_error);
  std::printf("max relative deviation        %.3e\n", rep.max_rel_error);
  double largest = 0.0;
  for (double g : rep.adjoint) largest = std::max(largest, std::abs(g));
  std::printf("max |adjoint gradient|        %.3e\n", largest);
  std::printf("entries outside tolerance     %zu\n", rep.failures);
  std::printf("%s\n", rep.passed() ? "PASS" : "FAIL");
  return rep.passed() ? 0 : kExitNumerical;
}

int run_oracle(const std::string& state_path) {
  const PureState psi = make_state(read_state_spec(state_path));
  const DensityMatrix rho(psi);
  if (rho.n_qubits() < 2) throw std::invalid_argument("oracle needs at least two qubits");
  const auto rep = tangle_report(rho, &psi);
  for (std::size_t i = 0; i < rep.pairs.size(); ++i)
    std::printf("tau_%-6s %.6f\n", rep.pairs[i].label().c_str(), rep.pairwise_tangle[i]);
  if (rep.residual_3tangle) std::printf("tau3     %.6f\n", *rep.residual_3tangle);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit-network entanglement witness: simulation, training and sweeps"};
  app.require_subcommand(1);

  ScheduleFlags flags;
  std::string state_path, params_path, out;

  auto* eval = app.add_subcommand("evaluate", "Print the network outputs for a state spec");
  eval->add_option("--state", state_path, "State spec file")->required()->check(CLI::ExistingFile);
  eval->add_option("--params", params_path, "Parameter file (default: all zero)")->check(CLI::ExistingFile);
  eval->add_option("--out", out, "Write CSV here instead of printing");
  flags.add_to(*eval);

  TrainFlags tf;
  auto* train = app.add_subcommand("train", "Run one training stage and write a checkpoint");
  train->add_option("--stage", tf.stage, "Training stage")->required()->check(CLI::Range(1, 10));
  train->add_option("--params", tf.params_path, "Starting checkpoint (bootstrapped when smaller)")
      ->check(CLI::ExistingFile);
  train->add_option("--epochs", tf.epochs, "Epoch count override");
  train->add_option("--lr", tf.lr, "Learning rate override (MHz per unit gradient)");
  train->add_option("--mode", tf.mode, "Update mode")->check(CLI::IsMember({"sequential", "batch"}))->capture_default_str();
  train->add_option("--out", tf.out, "Checkpoint to write")->capture_default_str();
  train->add_option("--progress", tf.progress, "Print RMS to stderr every N epochs");
  train->add_option("--log", tf.log_path, "Epoch log (default: <out>.log)");
  train->add_option("--init-k", tf.init_tunneling, "Stage-1 initial tunneling, MHz (default 2.5)");
  flags.add_to(*train);

  std::string figure;
  double grid_step = 0.05;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a figure's state family on a grid and write CSV");
  sweep->add_option("figure", figure, "Sweep name")->required()->check(
      CLI::IsMember({"wvsk", "fourw", "ghzbell", "wtangle", "wmix", "wsup"}));
  sweep->add_option("--params", params_path, "Parameter file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--grid-step", grid_step, "Grid spacing")->capture_default_str();
  sweep->add_option("--out", out, "CSV output (default: stdout)");
  flags.add_to(*sweep);

  int gc_qubits = 2;
  std::uint64_t seed = 1;
  bool zero_terminal = false;
  auto* gc = app.add_subcommand("gradcheck", "Compare adjoint gradients with central differences");
  gc->add_option("--qubits,-n", gc_qubits, "Register size")->check(CLI::Range(2, 5))->capture_default_str();
  gc->add_option("--seed", seed, "Random seed")->capture_default_str();
  gc->add_flag("--zero-terminal", zero_terminal, "Use a zero terminal sensitivity");
  ScheduleFlags gc_flags;
  gc_flags.dt = 0.5;
  gc_flags.add_to(*gc);

  auto* orc = app.add_subcommand("oracle", "Print analytic tangles for a pure state spec");
  orc->add_option("--state", state_path, "State spec file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return run_evaluate(state_path, params_path, flags, out);
    if (*train) return run_train(tf, flags);
    if (*sweep) return run_sweep_cmd(figure, params_path, grid_step, flags, out);
    if (*gc) return run_gradcheck(gc_qubits, seed, zero_terminal, gc_flags);
    if (*orc) return run_oracle(state_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
