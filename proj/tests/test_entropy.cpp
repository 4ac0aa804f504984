// Shannon and von Neumann entropies, the classical guessing identity, and
// the diagonal embedding bridge.  Frozen constants: h2(0.25) and the 2x3
// table entropy were computed by hand from the defining sums.

#include <minentlab/entropy.hpp>
#include <minentlab/learning.hpp>
#include <minentlab/sampling.hpp>

#include "gtest/gtest.h"

#include <cmath>

using namespace minentlab;

namespace {

JointTable bsc_quarter() {
  rmat p(2, 2);
  p << 0.375, 0.125, 0.125, 0.375;
  return make_table(p);
}

}  // namespace

TEST(BinaryEntropy, HandValues) {
  EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-15);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_THROW(binary_entropy(-0.1), InvalidInput);
  EXPECT_THROW(binary_entropy(1.1), InvalidInput);
}

TEST(JointTableChecks, RejectsNonDistributions) {
  rmat neg(2, 2);
  neg << 0.6, 0.5, -0.1, 0.0;
  EXPECT_THROW(make_table(neg), InvalidInput);
  rmat off(2, 2);
  off << 0.3, 0.3, 0.3, 0.3;
  EXPECT_THROW(make_table(off), InvalidInput);
  EXPECT_THROW(make_table(rmat(0, 0)), InvalidInput);
}

TEST(ClassicalGuessing, SymmetricChannelOracle) {
  const JointTable t = bsc_quarter();
  EXPECT_NEAR(conditional_shannon(t), 0.8112781244591328, 1e-12);
  const HminResult r = classical_hmin_success(t);
  EXPECT_NEAR(r.success, 0.75, 1e-15);
  EXPECT_NEAR(r.hmin, 0.4150374992788438, 1e-12);
  const rvec mb = marginal_b(t);
  EXPECT_NEAR(mb(0), 0.5, 1e-15);
  EXPECT_NEAR(mb(1), 0.5, 1e-15);
}

TEST(ClassicalGuessing, AsymmetricHandTable) {
  rmat p(2, 3);
  p << 0.1, 0.2, 0.3, 0.05, 0.15, 0.2;
  const JointTable t = make_table(p);
  const HminResult r = classical_hmin_success(t);
  EXPECT_NEAR(r.success, 0.6, 1e-12);
  // H(A|B) = 0.15 h(2/3) + 0.35 h(4/7) + 0.5 h(0.6), summed by hand.
  EXPECT_NEAR(conditional_shannon(t), 0.9680495199474958, 1e-12);
  const rvec ma = marginal_a(t);
  EXPECT_NEAR(ma(0), 0.6, 1e-12);
  EXPECT_NEAR(ma(1), 0.4, 1e-12);
}

TEST(ClassicalGuessing, RandomTableInequalities) {
  Rng rng(99, 0);
  for (int i = 0; i < 1000; ++i) {
    const Index a = 2 + static_cast<Index>(rng.uniform_int(5));
    const Index b = 2 + static_cast<Index>(rng.uniform_int(5));
    const JointTable t = random_table(rng, a, b);
    const HminResult r = classical_hmin_success(t);
    const double h = conditional_shannon(t);
    EXPECT_LE(std::pow(2.0, -h), r.success + 1e-12);
    EXPECT_LE(r.success, 1.0 + 1e-12);
    EXPECT_LE(r.hmin, h + 1e-10);
    // Fano with the MAP success plugged in.
    const double err = 1.0 - r.success;
    const double cardinality = a > 1 ? std::log2(static_cast<double>(a - 1)) : 0.0;
    EXPECT_GE(binary_entropy(err) + err * cardinality, h - 1e-10);
  }
}

TEST(ClassicalGuessing, MapMatchesExhaustiveSearch) {
  Rng rng(123, 0);
  for (int i = 0; i < 200; ++i) {
    const Index a = 2 + static_cast<Index>(rng.uniform_int(3));
    const Index b = 2 + static_cast<Index>(rng.uniform_int(3));
    const JointTable t = random_table(rng, a, b);
    EXPECT_NEAR(classical_hmin_success(t).success, exhaustive_decoder_success(t), 1e-12);
  }
}

TEST(VonNeumann, PureAndMixedOracles) {
  EXPECT_NEAR(von_neumann(maximally_entangled(2)), 0.0, 1e-12);
  const DensityOperator mixed = make_density(cmat::Identity(4, 4) / 4.0, {2, 2});
  EXPECT_NEAR(von_neumann(mixed), 2.0, 1e-12);
  EXPECT_NEAR(conditional_von_neumann(mixed), 1.0, 1e-12);
  EXPECT_NEAR(conditional_von_neumann(maximally_entangled(2)), -1.0, 1e-12);
}

TEST(VonNeumann, UnitaryInvariance) {
  Rng rng(7, 0);
  for (int i = 0; i < 50; ++i) {
    const DensityOperator rho = random_mixed_state(rng, {4});
    const cmat u = random_unitary(rng, 4);
    const DensityOperator rotated = make_density(u * rho.mat * u.adjoint(), {4});
    EXPECT_NEAR(von_neumann(rotated), von_neumann(rho), 1e-9);
  }
}

TEST(DiagonalEmbedding, MatchesClassicalEntropies) {
  const JointTable t = bsc_quarter();
  const DensityOperator rho = diagonal_embedding(t);
  ASSERT_EQ(rho.dims.size(), 2u);
  EXPECT_EQ(rho.dims[0], 2);
  EXPECT_EQ(rho.dims[1], 2);
  EXPECT_NEAR(conditional_von_neumann(rho), conditional_shannon(t), 1e-9);
  Rng rng(55, 0);
  for (int i = 0; i < 100; ++i) {
    const Index a = 2 + static_cast<Index>(rng.uniform_int(4));
    const Index b = 2 + static_cast<Index>(rng.uniform_int(4));
    const JointTable p = random_table(rng, a, b);
    EXPECT_NEAR(conditional_von_neumann(diagonal_embedding(p)), conditional_shannon(p), 1e-9);
  }
}
