// Metric spaces, greedy packing/net construction, nearest-center decoding,
// covering partitions, and the validator.  Oracle values for the unit grid
// were derived by hand; the 101-point grid with radius 0.3 keeps centers at
// exactly representable coordinates, so comparisons are exact.

#include <minentlab/discretize.hpp>
#include <minentlab/rng.hpp>

#include "gtest/gtest.h"

#include <vector>

using namespace minentlab;

namespace {

MetricSpace unit_grid(int points = 101) {
  return make_grid_space({{0.0, 1.0}}, {points}, Metric::absolute_difference);
}

}  // namespace

TEST(MetricSpace, GridEnumeratesAllCoordinates) {
  const MetricSpace space = make_grid_space({{0.0, 1.0}, {-1.0, 1.0}}, {3, 5}, Metric::euclidean);
  EXPECT_EQ(space.points.size(), 15u);
  for (const Point& p : space.points) EXPECT_TRUE(within_bounds(space, p));
  const MetricSpace line = unit_grid();
  ASSERT_EQ(line.points.size(), 101u);
  EXPECT_DOUBLE_EQ(line.points[0][0], 0.0);
  EXPECT_DOUBLE_EQ(line.points[50][0], 0.5);
  EXPECT_DOUBLE_EQ(line.points[100][0], 1.0);
}

TEST(MetricSpace, GridRejectsBadArguments) {
  EXPECT_THROW(make_grid_space({{1.0, 0.0}}, {5}, Metric::euclidean), InvalidInput);
  EXPECT_THROW(make_grid_space({{0.0, 1.0}}, {0}, Metric::euclidean), InvalidInput);
  EXPECT_THROW(make_grid_space({{0.0, 1.0}, {0.0, 1.0}}, {5}, Metric::euclidean), InvalidInput);
  EXPECT_THROW(make_grid_space({}, {}, Metric::euclidean), InvalidInput);
}

TEST(MetricSpace, DistanceMatchesMetric) {
  const MetricSpace plane = make_grid_space({{0.0, 4.0}, {0.0, 4.0}}, {5, 5}, Metric::euclidean);
  EXPECT_DOUBLE_EQ(distance(plane, {0.0, 0.0}, {3.0, 4.0}), 5.0);
  const MetricSpace box =
      make_grid_space({{0.0, 4.0}, {0.0, 4.0}}, {5, 5}, Metric::absolute_difference);
  EXPECT_DOUBLE_EQ(distance(box, {0.0, 0.0}, {3.0, 4.0}), 4.0);
  // The one-dimensional euclidean shortcut keeps grid distances exact.
  const MetricSpace line = make_grid_space({{0.0, 1.0}}, {101}, Metric::euclidean);
  EXPECT_EQ(distance(line, {0.0}, {0.3}), 0.3);
  EXPECT_THROW(distance(plane, {0.0}, {1.0, 2.0}), InvalidInput);
}

TEST(Greedy, UnitGridRadiusPointThreeOracle) {
  const Discretization disc = greedy_packing_net(unit_grid(), 0.3);
  ASSERT_EQ(disc.size(), 4u);
  EXPECT_EQ(disc.center_ids, (std::vector<int>{0, 30, 60, 90}));
  EXPECT_DOUBLE_EQ(disc.center(0)[0], 0.0);
  EXPECT_DOUBLE_EQ(disc.center(1)[0], 0.3);
  EXPECT_DOUBLE_EQ(disc.center(2)[0], 0.6);
  EXPECT_DOUBLE_EQ(disc.center(3)[0], 0.9);
  EXPECT_EQ(disc.kind, DiscKind::both);
  EXPECT_TRUE(validate_discretization(disc).empty());
}

TEST(Greedy, RejectsBadRadius) {
  EXPECT_THROW(greedy_packing_net(unit_grid(), 0.0), InvalidInput);
  EXPECT_THROW(greedy_packing_net(unit_grid(), -0.1), InvalidInput);
}

TEST(Greedy, DeterministicForFixedInput) {
  const Discretization a = greedy_packing_net(unit_grid(), 0.17);
  const Discretization b = greedy_packing_net(unit_grid(), 0.17);
  EXPECT_EQ(a.center_ids, b.center_ids);
}

TEST(Nearest, DecodesAndBreaksTiesLow) {
  const Discretization disc = greedy_packing_net(unit_grid(), 0.3);
  EXPECT_EQ(nearest_index(disc, {0.88}), 3);
  EXPECT_EQ(nearest_index(disc, {0.01}), 0);
  // Every center decodes to itself.
  for (size_t w = 0; w < disc.size(); ++w)
    EXPECT_EQ(nearest_index(disc, disc.center(w)), static_cast<int>(w));
  // In doubles 0.45 sits a hair closer to 0.6 than to 0.3, so no tie there.
  EXPECT_EQ(nearest_index(disc, {0.45}), 2);
  // Exact ties need exactly representable midpoints; the lower index wins.
  const Discretization halves =
      greedy_packing_net(make_grid_space({{0.0, 1.0}}, {5}, Metric::absolute_difference), 0.5);
  ASSERT_EQ(halves.size(), 3u);  // centers 0.0, 0.5, 1.0
  EXPECT_EQ(nearest_index(halves, {0.25}), 0);
  EXPECT_EQ(nearest_index(halves, {0.75}), 1);
  EXPECT_THROW(nearest_index(disc, {1.5}), InvalidInput);
  EXPECT_THROW(nearest_index(disc, {0.5, 0.5}), InvalidInput);
}

TEST(CoveringPartition, AssignsNearestCenterEverywhere) {
  const Discretization disc = covering_partition(greedy_packing_net(unit_grid(), 0.3));
  ASSERT_EQ(disc.cell_of.size(), 101u);
  EXPECT_EQ(disc.cell_of[88], 3);
  EXPECT_EQ(disc.cell_of[0], 0);
  for (size_t i = 0; i < disc.space.points.size(); ++i) {
    const int w = disc.cell_of[i];
    const double dw = distance(disc.space, disc.space.points[i], disc.center(w));
    for (size_t u = 0; u < disc.size(); ++u)
      EXPECT_LE(dw, distance(disc.space, disc.space.points[i], disc.center(u)) + 1e-12);
  }
}

TEST(CoveringPartition, RequiresNet) {
  Discretization disc = greedy_packing_net(unit_grid(), 0.3);
  disc.kind = DiscKind::packing;
  EXPECT_THROW(covering_partition(disc), InvalidInput);
}

TEST(Validate, FlagsPackingAndCoverageViolations) {
  Discretization disc = greedy_packing_net(unit_grid(), 0.3);
  Discretization crowded = disc;
  crowded.center_ids.push_back(31);  // 0.31 is within 0.3 of the 0.3 center
  EXPECT_FALSE(validate_discretization(crowded).empty());
  Discretization sparse = disc;
  sparse.center_ids = {0};  // leaves the right end uncovered
  EXPECT_FALSE(validate_discretization(sparse).empty());
  Discretization empty = disc;
  empty.center_ids.clear();
  EXPECT_FALSE(validate_discretization(empty).empty());
}

TEST(Validate, GreedyOutputsPassOnRandomSpaces) {
  Rng rng(314, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int dims = 1 + static_cast<int>(rng.uniform_int(2));
    std::vector<std::array<double, 2>> bounds;
    std::vector<int> counts;
    for (int d = 0; d < dims; ++d) {
      const double lo = rng.uniform(-1.0, 1.0);
      bounds.push_back({lo, lo + rng.uniform(0.5, 2.0)});
      counts.push_back(dims == 1 ? 2 + static_cast<int>(rng.uniform_int(400))
                                 : 2 + static_cast<int>(rng.uniform_int(60)));
    }
    const Metric metric = rng.uniform() < 0.5 ? Metric::euclidean : Metric::absolute_difference;
    const MetricSpace space = make_grid_space(bounds, counts, metric);
    const double eps = rng.uniform(0.05, 0.5);
    const Discretization disc = covering_partition(greedy_packing_net(space, eps));
    const auto violations = validate_discretization(disc);
    EXPECT_TRUE(violations.empty()) << violations.front();
  }
}

TEST(Packing, CloseProbeDecodesToItsCenter) {
  // On a 2*eps-packing, landing within eps of a center identifies it.
  Rng rng(2718, 0);
  const double eps = 0.11;
  const MetricSpace space =
      make_grid_space({{0.0, 1.0}, {0.0, 1.0}}, {41, 41}, Metric::euclidean);
  const Discretization disc = greedy_packing_net(space, 2.0 * eps);
  int probes = 0;
  while (probes < 1000) {
    const size_t i = rng.uniform_int(space.points.size());
    const Point& candidate = space.points[i];
    int owner = -1;
    for (size_t w = 0; w < disc.size(); ++w) {
      if (distance(space, candidate, disc.center(w)) < eps) {
        owner = static_cast<int>(w);
        break;
      }
    }
    if (owner < 0) continue;
    EXPECT_EQ(nearest_index(disc, candidate), owner);
    ++probes;
  }
}
