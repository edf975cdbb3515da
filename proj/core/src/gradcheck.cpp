#include "qnnw/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "qnnw/states.hpp"

namespace qnnw {

TrainingPair random_training_pair(int n_qubits, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = output_count(n_qubits);
  TrainingPair p{"random", DensityMatrix(random_pure_state(n_qubits, rng)), std::vector<double>(m),
                 std::vector<bool>(m, true)};
  for (auto& t : p.targets) t = unit(rng);
  return p;
}

QnnParameters random_parameters(int n_qubits, int n_chunks, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> tunnel(1.0, 4.0), bias(-1.5, 1.5), coupling(-0.6, 0.6);
  auto p = QnnParameters::zeros(n_qubits, n_chunks);
  for (auto& c : p.chunks) {
    for (auto& x : c.k) x = tunnel(rng);
    for (auto& x : c.eps) x = bias(rng);
    for (auto& x : c.zeta) x = coupling(rng);
  }
  return p;
}

GradCheckReport compare_gradients(const TrainingPair& pair, const QnnParameters& params, const Schedule& sched,
                                  const UnitConvention& u, const GradCheckOptions& opts) {
  GradCheckReport rep;
  const auto flat = params.flatten();
  if (opts.zero_terminal) {
    const auto sol = evolve_with_trajectory(pair.input, params, sched, u);
    const ComplexMatrix zero(pair.input.dim());
    rep.adjoint = evolve_adjoint(zero, params, sched, u, sol.trajectory).flatten();
    // the cost is identically zero, so every difference quotient is too
    rep.finite_difference.assign(flat.size(), 0.0);
  } else {
    rep.adjoint = pair_gradient(pair, params, sched, u).gradient.flatten();
    rep.finite_difference.resize(flat.size());
    auto cost_at = [&](const std::vector<double>& v) {
      const auto p = QnnParameters::unflatten(params.n_qubits, params.n_chunks(), v);
      return pair_cost(evaluate(pair.input, p, sched, u), pair);
    };
    for (std::size_t i = 0; i < flat.size(); ++i) {
      auto plus = flat, minus = flat;
      plus[i] += opts.fd_step;
      minus[i] -= opts.fd_step;
      rep.finite_difference[i] = (cost_at(plus) - cost_at(minus)) / (2.0 * opts.fd_step);
    }
  }
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double a = rep.adjoint[i], f = rep.finite_difference[i];
    const double abs_err = std::abs(a - f);
    const double scale = std::max(std::abs(a), std::abs(f));
    const double rel_err = scale > 0.0 ? abs_err / scale : 0.0;
    rep.max_abs_error = std::max(rep.max_abs_error, abs_err);
    rep.max_rel_error = std::max(rep.max_rel_error, rel_err);
    if (rel_err >= opts.rel_tol && abs_err >= opts.abs_tol) ++rep.failures;
  }
  return rep;
}

GradCheckReport gradient_check(int n_qubits, std::uint64_t seed, const Schedule& sched, const UnitConvention& u,
                               const GradCheckOptions& opts) {
  std::mt19937_64 rng(seed);
  const auto pair = random_training_pair(n_qubits, rng);
  const auto params = random_parameters(n_qubits, sched.n_chunks, rng);
  return compare_gradients(pair, params, sched, u, opts);
}

}  // namespace qnnw
