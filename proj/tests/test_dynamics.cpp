#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnnw/dynamics.hpp"
#include "qnnw/gradcheck.hpp"
#include "qnnw/io.hpp"
#include "qnnw/training.hpp"
#include "qnnw/witness.hpp"
#include "support.hpp"

using namespace qnnw;

namespace {

const UnitConvention kUnit{1.0, false};

QnnParameters single_chunk(const ChunkParams& c, int n) { return {n, {c}}; }

QnnParameters published_5q() { return read_parameter_file(QNNW_DATA_DIR "/published_5q.params").params; }

}  // namespace

TEST(PairIndex, CanonicalOrder) {
  EXPECT_EQ(pair_index(0, 1, 5), 0u);
  EXPECT_EQ(pair_index(0, 4, 5), 3u);
  EXPECT_EQ(pair_index(1, 2, 5), 4u);
  EXPECT_EQ(pair_index(3, 4, 5), 9u);
  EXPECT_EQ(pair_index(2, 0, 3), pair_index(0, 2, 3));
  EXPECT_THROW(pair_index(1, 1, 3), std::out_of_range);
  EXPECT_EQ(pair_count(5), 10u);
}

TEST(Hamiltonian, SingleQubit) {
  ChunkParams c = ChunkParams::zeros(1);
  c.k[0] = 0.7;
  c.eps[0] = -0.3;
  const ComplexMatrix expected{{-0.3, 0.7}, {0.7, 0.3}};
  EXPECT_LT(max_abs_diff(build_hamiltonian(c, 1, kUnit), expected), 1e-15);
}

TEST(Hamiltonian, CouplingOnlyIsParity) {
  ChunkParams c = ChunkParams::zeros(2);
  c.zeta[0] = 0.4;
  const std::vector<Complex> d{0.4, -0.4, -0.4, 0.4};
  EXPECT_LT(max_abs_diff(build_hamiltonian(c, 2, kUnit), ComplexMatrix::diagonal(d)), 1e-15);
  EXPECT_LT(max_abs_diff(build_hamiltonian(c, 2, {1.0, true}), ComplexMatrix::diagonal(d) * Complex(2.0)), 1e-15);
}

TEST(Hamiltonian, PublishedGroundDiagonal) {
  const auto h = build_hamiltonian(published_5q().chunks[0], 5, kUnit);
  EXPECT_NEAR(h(0, 0).real(), 1.9967, 1e-12);
  const auto ha = build_hamiltonian(published_5q().chunks[0], 5, UnitConvention::angular());
  EXPECT_NEAR(ha(0, 0).real() / UnitConvention::kAngular, 1.9967, 1e-12);
}

TEST(Hamiltonian, BiasSignFollowsBitOrdering) {
  // eps on qubit A only: |0..> gets +eps, |1..> gets -eps, A being the MSB.
  ChunkParams c = ChunkParams::zeros(2);
  c.eps[0] = 1.0;
  const auto h = build_hamiltonian(c, 2, kUnit);
  EXPECT_DOUBLE_EQ(h(1, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(h(2, 2).real(), -1.0);
}

TEST(Liouvillian, MatchesDenseCommutator) {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 4; ++n) {
    const auto c = test::random_chunk(n, rng);
    const auto h = build_hamiltonian(c, n, UnitConvention::angular());
    const Liouvillian l(c, n, UnitConvention::angular());
    const auto x = test::random_matrix(std::size_t{1} << n, rng);
    ComplexMatrix out(x.dim());
    l.apply(x.data(), out.data());
    const auto expected = (h * x - x * h) * Complex(0, -1);
    EXPECT_LT(max_abs_diff(out, expected), 1e-14) << "n=" << n;
  }
}

TEST(Evolve, ZeroHamiltonianIsIdentity) {
  std::mt19937_64 rng(1);
  const auto rho = test::random_density(3, rng);
  const auto out = evolve(rho, QnnParameters::zeros(3, 4), Schedule::coarse(), UnitConvention::angular());
  EXPECT_EQ(out.matrix(), rho.matrix());
}

TEST(Evolve, RabiOscillation) {
  ChunkParams c = ChunkParams::zeros(1);
  c.k[0] = 2.5;
  const auto u = UnitConvention::angular();
  const double omega = u.angular_factor * 2.5;
  const DensityMatrix zero(PureState({1.0, 0.0}));
  for (double tf : {10.0, 55.0, 300.0}) {
    const Schedule s{tf, 1, 0.05};
    const auto out = evolve(zero, single_chunk(c, 1), s, u);
    EXPECT_NEAR(expectation(out, ComplexMatrix::pauli_z()), std::cos(2.0 * omega * tf), 1e-7) << tf;
  }
}

TEST(Evolve, MatchesMatrixExponential) {
  std::mt19937_64 rng(22);
  const auto u = UnitConvention::angular();
  for (int rep = 0; rep < 20; ++rep) {
    const auto c = test::random_chunk(2, rng);
    const auto rho = test::random_density(2, rng);
    const Schedule s{75.0, 1, 0.05};
    const auto out = evolve(rho, single_chunk(c, 2), s, u);
    const auto ref = test::exact_propagation(rho.matrix(), build_hamiltonian(c, 2, u), 75.0);
    EXPECT_LT(max_abs_diff(out.matrix(), ref), 1e-8);
  }
}

TEST(Evolve, PiecewiseChunksComposeExactly) {
  std::mt19937_64 rng(23);
  const auto u = UnitConvention::angular();
  QnnParameters p{2, {test::random_chunk(2, rng), test::random_chunk(2, rng)}};
  const auto rho = test::random_density(2, rng);
  const auto out = evolve(rho, p, {150.0, 2, 0.05}, u);
  auto ref = test::exact_propagation(rho.matrix(), build_hamiltonian(p.chunks[0], 2, u), 75.0);
  ref = test::exact_propagation(ref, build_hamiltonian(p.chunks[1], 2, u), 75.0);
  EXPECT_LT(max_abs_diff(out.matrix(), ref), 1e-8);
}

TEST(Evolve, ConservesTraceHermiticityPurity) {
  std::mt19937_64 rng(24);
  const auto p = published_5q();
  const auto psi = random_pure_state(5, rng);
  const auto sol = evolve_with_trajectory(DensityMatrix(psi), p, Schedule::coarse(), UnitConvention::angular());
  for (std::size_t i = 0; i < sol.trajectory.size(); i += 25) {
    const auto m = sol.trajectory.matrix(i);
    EXPECT_LT(std::abs(m.trace() - 1.0), 1e-9);
    EXPECT_LT(m.hermiticity_defect(), 1e-9);
  }
  // RK4 is not exactly unitary; at the coarse step purity drifts ~1e-8
  EXPECT_NEAR(sol.final_state.purity(), 1.0, 1e-7);
}

TEST(Evolve, HalvingStepChangesLittle) {
  std::mt19937_64 rng(25);
  const auto p = random_parameters(3, 4, rng);
  const DensityMatrix rho(random_pure_state(3, rng));
  const auto u = UnitConvention::angular();
  const auto a = evolve(rho, p, {300.0, 4, 0.05}, u);
  const auto b = evolve(rho, p, {300.0, 4, 0.025}, u);
  EXPECT_LT(max_abs_diff(a.matrix(), b.matrix()), 1e-8);
}

TEST(Evolve, LinearInInitialState) {
  std::mt19937_64 rng(26);
  const auto p = random_parameters(2, 4, rng);
  const auto u = UnitConvention::angular();
  const auto s = Schedule::coarse();
  const auto r1 = test::random_density(2, rng), r2 = test::random_density(2, rng);
  const double a = 0.3;
  const DensityMatrix mixed(r1.matrix() * Complex(a) + r2.matrix() * Complex(1 - a));
  const auto lhs = evolve(mixed, p, s, u).matrix();
  const auto rhs = evolve(r1, p, s, u).matrix() * Complex(a) + evolve(r2, p, s, u).matrix() * Complex(1 - a);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-9);
}

TEST(Evolve, RejectsShapeMismatch) {
  const DensityMatrix rho(PureState({1.0, 0.0, 0.0, 0.0}));
  EXPECT_THROW(evolve(rho, QnnParameters::zeros(3, 4), Schedule::coarse(), kUnit), DimensionError);
  EXPECT_THROW(evolve(rho, QnnParameters::zeros(2, 3), Schedule::coarse(), kUnit), DimensionError);
}

TEST(ScheduleTest, StepArithmetic) {
  EXPECT_EQ(Schedule::standard().total_steps(), 6000);
  EXPECT_EQ(Schedule::coarse().total_steps(), 600);
  EXPECT_EQ(Schedule::standard().steps_per_chunk(), 1500);
  EXPECT_THROW((Schedule{300.0, 4, 0.07}).validate(), std::invalid_argument);
  EXPECT_THROW((Schedule{300.0, 0, 0.05}).validate(), std::invalid_argument);
  EXPECT_THROW((Schedule{-1.0, 4, 0.05}).validate(), std::invalid_argument);
}

TEST(Trajectory, LengthAndEndpoints) {
  std::mt19937_64 rng(27);
  const auto p = random_parameters(1, 4, rng);
  const DensityMatrix rho(random_pure_state(1, rng));
  const auto u = UnitConvention::angular();
  const auto sol = evolve_with_trajectory(rho, p, Schedule::standard(), u);
  EXPECT_EQ(sol.trajectory.size(), 6001u);
  EXPECT_EQ(sol.trajectory.matrix(0), rho.matrix());
  EXPECT_EQ(sol.trajectory.matrix(6000), sol.final_state.matrix());
  EXPECT_EQ(evolve(rho, p, Schedule::standard(), u).matrix(), sol.final_state.matrix());
}

TEST(Trajectory, ZeroHamiltonianStoresInitialState) {
  std::mt19937_64 rng(28);
  const auto rho = test::random_density(2, rng);
  const auto sol = evolve_with_trajectory(rho, QnnParameters::zeros(2, 4), Schedule::coarse(), kUnit);
  for (std::size_t i = 0; i < sol.trajectory.size(); ++i) ASSERT_EQ(sol.trajectory.matrix(i), rho.matrix());
}

TEST(Adjoint, ZeroTerminalGivesZeroGradient) {
  std::mt19937_64 rng(29);
  const auto p = random_parameters(2, 4, rng);
  const auto sol = evolve_with_trajectory(DensityMatrix(random_pure_state(2, rng)), p, Schedule::coarse(),
                                          UnitConvention::angular());
  const auto g = evolve_adjoint(ComplexMatrix(4), p, Schedule::coarse(), UnitConvention::angular(), sol.trajectory);
  for (double x : g.flatten()) EXPECT_EQ(x, 0.0);
}

// Adjoint against central differences for every parameter class and chunk.
class AdjointFd : public ::testing::TestWithParam<std::tuple<int, std::uint64_t>> {};

TEST_P(AdjointFd, MatchesCentralDifferences) {
  const auto [n, seed] = GetParam();
  const auto rep = gradient_check(n, seed, Schedule::coarse(), UnitConvention::angular());
  EXPECT_TRUE(rep.passed()) << "max rel " << rep.max_rel_error << " max abs " << rep.max_abs_error;
  ASSERT_EQ(rep.adjoint.size(), (2 * n + pair_count(n)) * 4);
  // Every chunk and parameter class must carry signal, or the check is vacuous.
  const auto g = QnnParameters::unflatten(n, 4, rep.adjoint);
  for (const auto& c : g.chunks) {
    double kmax = 0, emax = 0, zmax = 0;
    for (double x : c.k) kmax = std::max(kmax, std::abs(x));
    for (double x : c.eps) emax = std::max(emax, std::abs(x));
    for (double x : c.zeta) zmax = std::max(zmax, std::abs(x));
    EXPECT_GT(kmax, 1e-6);
    EXPECT_GT(emax, 1e-6);
    EXPECT_GT(zmax, 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallRegisters, AdjointFd,
                         ::testing::Combine(::testing::Values(2, 3), ::testing::Values(1u, 2u, 3u)));

TEST(Adjoint, LinearConventionAndOrderedPairs) {
  GradCheckOptions o;
  EXPECT_TRUE(gradient_check(2, 9, Schedule::coarse(), UnitConvention::linear(), o).passed());
  EXPECT_TRUE(gradient_check(3, 9, Schedule::coarse(), {UnitConvention::kAngular, true}, o).passed());
}

TEST(Adjoint, CommutingLastChunkHasNoCouplingGradient) {
  // With K = 0 in the last chunk the evolution there is diagonal and commutes
  // with sigma_z sigma_z, so the AB output cannot depend on that chunk's zeta.
  std::mt19937_64 rng(30);
  auto p = random_parameters(2, 4, rng);
  std::fill(p.chunks[3].k.begin(), p.chunks[3].k.end(), 0.0);
  auto pair = random_training_pair(2, rng);
  const auto g = pair_gradient(pair, p, Schedule::coarse(), UnitConvention::angular());
  EXPECT_NEAR(g.gradient.chunks[3].zeta[0], 0.0, 1e-9);
  EXPECT_NEAR(g.gradient.chunks[3].eps[0], 0.0, 1e-9);
  // The same parameter in chunk 3 does matter.
  EXPECT_GT(std::abs(g.gradient.chunks[2].zeta[0]), 1e-6);
}
