#pragma once

// Analytic entanglement measures: Wootters concurrence, pairwise tangle
// and the Coffman-Kundu-Wootters residual 3-tangle.

#include <optional>
#include <vector>

#include "qnnw/lincore.hpp"

namespace qnnw {

// max(0, l1 - l2 - l3 - l4) over the descending square roots of the
// eigenvalues of rho (sy x sy) rho* (sy x sy). Conjugation in the
// computational basis.
double concurrence(const DensityMatrix& rho2);

// concurrence(partial_trace(state, {a, b}))^2
double pairwise_tangle(const DensityMatrix& state, int a, int b);

// tau_focus(rest) - sum of the focus qubit's two pairwise tangles, before
// clipping. tau_focus(rest) = 4 det(rho_focus).
double ckw_residual(const PureState& psi, int focus = 0);

// ckw_residual clipped to [0, 1]. Throws for non-3-qubit or
// non-normalized input.
double residual_3tangle(const PureState& psi);

struct TangleReport {
  std::vector<QubitSubset> pairs;       // canonical pair order
  std::vector<double> pairwise_tangle;  // one per pair
  std::optional<double> residual_3tangle;
};

// Residual 3-tangle only for pure three-qubit inputs.
TangleReport tangle_report(const DensityMatrix& state, const PureState* pure = nullptr);

}  // namespace qnnw
