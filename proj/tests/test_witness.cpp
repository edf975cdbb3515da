#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "qnnw/gradcheck.hpp"
#include "qnnw/states.hpp"
#include "qnnw/witness.hpp"

using namespace qnnw;

TEST(Subsets, CanonicalOrderAndCounts) {
  const auto& s3 = canonical_subsets(3);
  ASSERT_EQ(s3.size(), 4u);
  EXPECT_EQ(output_label(s3[0]), "O_AB");
  EXPECT_EQ(output_label(s3[1]), "O_AC");
  EXPECT_EQ(output_label(s3[2]), "O_BC");
  EXPECT_EQ(output_label(s3[3]), "O_ABC");
  EXPECT_EQ(output_count(2), 1u);
  EXPECT_EQ(output_count(5), 26u);
  EXPECT_EQ(output_index({0, 1, 2, 3, 4}, 5), 25u);
  EXPECT_THROW(output_index({0}, 3), std::invalid_argument);
}

TEST(Correlator, Diagonals) {
  EXPECT_EQ(correlator_diagonal({0, 1}, 2), (std::vector<double>{1, -1, -1, 1}));
  const auto ac = correlator_diagonal({0, 2}, 3);
  EXPECT_EQ(ac[0b000], 1.0);
  EXPECT_EQ(ac[0b001], -1.0);
  EXPECT_EQ(ac[0b010], 1.0);
  const auto all = correlator_diagonal(QubitSubset::all(5), 5);
  for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(all[i], std::popcount(i) % 2 ? -1.0 : 1.0);
}

TEST(Outputs, Examples) {
  const DensityMatrix zero(PureState({1.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(witness_outputs(zero).values, std::vector<double>{1.0});
  const DensityMatrix flat(PureState(pair_amplitudes(PairKind::Flat)));
  EXPECT_NEAR(witness_outputs(flat).values[0], 0.0, 1e-15);
  EXPECT_EQ(witness_outputs(DensityMatrix(ghz({0, 1, 2}, 3))).values.size(), 4u);
}

TEST(Outputs, SquaresNegativeExpectations) {
  const DensityMatrix anti(PureState({0.0, 1.0, 0.0, 0.0}));  // <ZZ> = -1
  EXPECT_EQ(correlator_expectations(anti)[0], -1.0);
  EXPECT_EQ(witness_outputs(anti).values[0], 1.0);
}

TEST(Evaluate, ZeroParametersKeepInput) {
  const DensityMatrix zero(PureState({1.0, 0.0, 0.0, 0.0}));
  const auto w = evaluate(zero, QnnParameters::zeros(2, 4), Schedule::coarse(), UnitConvention::angular());
  EXPECT_EQ(w.values[0], 1.0);
}

TEST(Evaluate, OutputsWithinUnitInterval) {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    const auto p = random_parameters(3, 4, rng);
    const auto w = evaluate(DensityMatrix(random_pure_state(3, rng)), p, Schedule::coarse(), UnitConvention::angular());
    for (double v : w.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(Evaluate, GlobalPhaseInvariant) {
  std::mt19937_64 rng(42);
  const auto p = random_parameters(3, 4, rng);
  const auto psi = random_pure_state(3, rng);
  std::vector<Complex> rotated(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& a : rotated) a *= std::polar(1.0, 0.83);
  const auto u = UnitConvention::angular();
  const auto a = evaluate(DensityMatrix(psi), p, Schedule::coarse(), u);
  const auto b = evaluate(DensityMatrix(PureState(rotated)), p, Schedule::coarse(), u);
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
}

namespace {

// Qubit q of the original register becomes qubit perm[q].
std::size_t permute_index(std::size_t i, const std::vector<int>& perm, int n) {
  std::size_t j = 0;
  for (int q = 0; q < n; ++q)
    if (i & qubit_bit(q, n)) j |= qubit_bit(perm[q], n);
  return j;
}

QubitSubset permute_subset(QubitSubset s, const std::vector<int>& perm) {
  std::uint32_t m = 0;
  for (int q : s.qubits()) m |= 1u << perm[q];
  return QubitSubset(m);
}

}  // namespace

TEST(Evaluate, PermutationCovariant) {
  std::mt19937_64 rng(43);
  const int n = 4;
  const std::vector<int> perm{2, 0, 3, 1};
  const auto p = random_parameters(n, 4, rng);
  auto pp = p;
  for (std::size_t c = 0; c < p.chunks.size(); ++c)
    for (int a = 0; a < n; ++a) {
      pp.chunks[c].k[perm[a]] = p.chunks[c].k[a];
      pp.chunks[c].eps[perm[a]] = p.chunks[c].eps[a];
      for (int b = a + 1; b < n; ++b)
        pp.chunks[c].zeta[pair_index(perm[a], perm[b], n)] = p.chunks[c].zeta[pair_index(a, b, n)];
    }
  const auto psi = random_pure_state(n, rng);
  std::vector<Complex> moved(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) moved[permute_index(i, perm, n)] = psi[i];
  const auto u = UnitConvention::angular();
  const auto w = evaluate(DensityMatrix(psi), p, Schedule::coarse(), u);
  const auto wp = evaluate(DensityMatrix(PureState(moved)), pp, Schedule::coarse(), u);
  for (auto s : canonical_subsets(n)) EXPECT_NEAR(w.at(s), wp.at(permute_subset(s, perm)), 1e-9) << s.label();
}
