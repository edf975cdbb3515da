#pragma once

// Figure sweeps: grids of input states evaluated by the network, with
// analytic tangles alongside where they exist.

#include <string>
#include <string_view>
#include <vector>

#include "qnnw/dynamics.hpp"

namespace qnnw {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
  std::string to_csv() const;
};

struct SweepOptions {
  double grid_step = 0.05;
};

// Values 0, step, 2 step, ... up to 1 inclusive.
std::vector<double> unit_grid(double step);

inline constexpr std::string_view kSweepNames[] = {"wvsk", "fourw", "ghzbell", "wtangle", "wmix", "wsup"};

// wvsk     k, ensemble size, mean/std of summed pairwise outputs over all
//          W_k (and flipped W_k) embeddings, oracle sum of pairwise tangles
// fourw    a|0001> + b|0010> + |0100> + |1000>: six pairwise outputs
// ghzbell  a|110> + b|111> + |000>: O_AB, O_ABC, tau_AB, tau3
// wtangle  |100> + b|010> + g|001>: O_AB, O_AC, O_ABC, tau_AB, tau_AC, tau3
// wmix     a GHZ + b W + (1-a-b) flipped W as a mixture, over the simplex
// wsup     the same combination as a superposition
// Register-sized states are padded with |0> up to params.n_qubits.
CsvTable run_sweep(std::string_view figure, const QnnParameters& params, const Schedule& sched,
                   const UnitConvention& u, const SweepOptions& opts = {});

}  // namespace qnnw
