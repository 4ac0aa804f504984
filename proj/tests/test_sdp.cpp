// Barrier solver for the guessing-probability program min{tr sigma :
// I (x) sigma >= rho}.  Oracles: pure states via squared Schmidt sums,
// diagonal embeddings via column maxima, and hand values for Bell, product,
// and maximally mixed inputs.  The dual certificate must stay feasible, so
// every reported gap is an honest bound.

#include <minentlab/entropy.hpp>
#include <minentlab/minent_sdp.hpp>
#include <minentlab/sampling.hpp>

#include "gtest/gtest.h"

#include <cmath>

using namespace minentlab;

TEST(SolveHmin, BellOracle) {
  const SdpSolution sol = solve_hmin(maximally_entangled(2));
  EXPECT_EQ(sol.status, SdpStatus::optimal);
  EXPECT_NEAR(sol.primal_value, 2.0, 1e-7);
  EXPECT_NEAR(sol.hmin(), -1.0, 1e-7);
  EXPECT_LE(std::abs(sol.gap), 1e-7);
  EXPECT_LE(sol.dual_value, sol.primal_value + 1e-12);  // feasible dual never exceeds primal
}

TEST(SolveHmin, MaximallyMixedOracle) {
  const DensityOperator rho = make_density(cmat::Identity(4, 4) / 4.0, {2, 2});
  const SdpSolution sol = solve_hmin(rho);
  EXPECT_EQ(sol.status, SdpStatus::optimal);
  EXPECT_NEAR(sol.primal_value, 0.5, 1e-7);
  EXPECT_NEAR(sol.hmin(), 1.0, 1e-6);
}

TEST(SolveHmin, ProductAndTiltedPureOracles) {
  cvec amps(4);
  amps << 1.0, 0.0, 0.0, 0.0;
  EXPECT_NEAR(solve_hmin(pure_state(amps, {2, 2})).primal_value, 1.0, 1e-6);
  amps << std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1);
  // (sqrt(0.9) + sqrt(0.1))^2 = 1 + 2 sqrt(0.09) = 1.6
  EXPECT_NEAR(solve_hmin(pure_state(amps, {2, 2})).primal_value, 1.6, 1e-6);
}

TEST(SolveHmin, SchmidtOracleOnRandomPureStates) {
  Rng rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    const Index dr = 2 + static_cast<Index>(rng.uniform_int(3));
    const Index db = 2 + static_cast<Index>(rng.uniform_int(3));
    const DensityOperator psi = random_pure_state(rng, {dr, db});
    const SdpSolution sol = solve_hmin(psi);
    ASSERT_EQ(sol.status, SdpStatus::optimal);
    EXPECT_LE(std::abs(sol.gap), 1e-7);
    EXPECT_NEAR(sol.primal_value, pure_state_hmin_oracle(psi), 1e-6);
  }
}

TEST(SolveHmin, ClassicalOracleOnDiagonalEmbeddings) {
  Rng rng(13, 0);
  for (int i = 0; i < 200; ++i) {
    const Index a = 2 + static_cast<Index>(rng.uniform_int(3));
    const Index b = 2 + static_cast<Index>(rng.uniform_int(3));
    const JointTable t = random_table(rng, a, b);
    const SdpSolution sol = solve_hmin(diagonal_embedding(t));
    ASSERT_EQ(sol.status, SdpStatus::optimal);
    EXPECT_NEAR(sol.primal_value, classical_hmin_success(t).success, 1e-6);
  }
}

TEST(SolveHmin, NoDecoderBeatsTheOptimum) {
  Rng rng(17, 0);
  const DensityOperator rho = random_mixed_state(rng, {3, 3});
  const double primal = solve_hmin(rho).primal_value;
  for (int i = 0; i < 50; ++i) {
    const Channel dec = random_channel(rng, 3, 3, 1 + static_cast<Index>(rng.uniform_int(3)));
    EXPECT_GE(primal + 1e-6, singlet_fraction_given_decoder(rho, dec));
  }
}

TEST(SolveHmin, MinEntropyBelowVonNeumann) {
  Rng rng(19, 0);
  for (int i = 0; i < 30; ++i) {
    const Index d = 2 + static_cast<Index>(rng.uniform_int(2));
    const DensityOperator rho = random_mixed_state(rng, {d, d});
    const double primal = solve_hmin(rho).primal_value;
    EXPECT_GE(primal, std::pow(2.0, -conditional_von_neumann(rho)) - 1e-9);
  }
}

TEST(SolveHmin, RejectsBadInput) {
  EXPECT_THROW(solve_hmin(maximally_entangled(2), 1e-10), InvalidInput);  // tol below floor
  DensityOperator tripartite;
  tripartite.mat = cmat::Identity(8, 8) / 8.0;
  tripartite.dims = {2, 2, 2};
  EXPECT_THROW(solve_hmin(tripartite), InvalidInput);
  DensityOperator big;
  big.mat = cmat::Identity(81, 81) / 81.0;
  big.dims = {9, 9};
  EXPECT_THROW(solve_hmin(big), InvalidInput);
  DensityOperator dented;
  dented.mat = cmat::Identity(4, 4) / 4.0;
  dented.mat(3, 3) = -0.05;
  dented.mat(0, 0) = 0.55;
  dented.dims = {2, 2};
  EXPECT_EQ(solve_hmin(dented).status, SdpStatus::infeasible_input);
}

TEST(DualChannel, BellDecoderIsIdentity) {
  const SdpSolution sol = solve_hmin(maximally_entangled(2));
  const Channel dec = channel_from_dual(sol, 2, 2);
  EXPECT_EQ(dec.in_dim, 2);
  EXPECT_EQ(dec.out_dim, 2);
  cmat basis01 = cmat::Zero(2, 2);
  basis01(0, 1) = 1.0;
  EXPECT_NEAR((minentlab::apply(dec, basis01) - basis01).cwiseAbs().maxCoeff(), 0.0, 1e-4);
  EXPECT_NEAR(singlet_fraction_given_decoder(maximally_entangled(2), dec), sol.dual_value, 1e-9);
}

TEST(DualChannel, SymmetricTableDecoderIsMap) {
  rmat p(2, 2);
  p << 0.375, 0.125, 0.125, 0.375;
  const JointTable t = make_table(p);
  const SdpSolution sol = solve_hmin(diagonal_embedding(t));
  const Channel dec = channel_from_dual(sol, 2, 2);
  // The extracted decoder guesses the column argmax: b -> a = b here.
  for (Index b = 0; b < 2; ++b) {
    cmat point = cmat::Zero(2, 2);
    point(b, b) = 1.0;
    const cmat out = minentlab::apply(dec, point);
    EXPECT_NEAR(out(b, b).real(), 1.0, 1e-2);
  }
  EXPECT_NEAR(singlet_fraction_given_decoder(diagonal_embedding(t), dec), sol.dual_value, 1e-9);
}

TEST(DualChannel, DecoderAchievesDualOnRandomStates) {
  Rng rng(23, 0);
  for (int i = 0; i < 25; ++i) {
    const Index d = 2 + static_cast<Index>(rng.uniform_int(2));
    const DensityOperator rho = random_mixed_state(rng, {d, d});
    const SdpSolution sol = solve_hmin(rho);
    ASSERT_EQ(sol.status, SdpStatus::optimal);
    const Channel dec = channel_from_dual(sol, d, d);
    EXPECT_NEAR(singlet_fraction_given_decoder(rho, dec), sol.dual_value, 1e-8);
    EXPECT_LE(sol.dual_value, sol.primal_value + 1e-12);
  }
}

TEST(DualChannel, RequiresConvergedSolution) {
  SdpSolution sol;
  sol.status = SdpStatus::max_iterations;
  EXPECT_THROW(channel_from_dual(sol, 2, 2), InvalidInput);
}

TEST(PureOracle, MatchesSquaredSchmidtSum) {
  EXPECT_NEAR(pure_state_hmin_oracle(maximally_entangled(3)), 3.0, 1e-12);
  cvec amps(4);
  amps << std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1);
  EXPECT_NEAR(pure_state_hmin_oracle(pure_state(amps, {2, 2})), 1.6, 1e-12);
}
