#pragma once
// Epsilon-packings, epsilon-nets, and covering partitions of bounded metric
// spaces given by finite candidate point sets, plus the nearest-center index
// maps used by the estimation bounds.

#include <minentlab/quantum.hpp>  // InvalidInput

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace minentlab {

using Point = std::vector<double>;

enum class Metric { euclidean, absolute_difference };

struct MetricSpace {
  std::vector<Point> points;
  Metric metric = Metric::euclidean;
  std::vector<std::array<double, 2>> bounds;
};

inline double distance(const MetricSpace& space, const Point& a, const Point& b) {
  if (a.size() != b.size()) throw InvalidInput("distance: dimension mismatch");
  double acc = 0.0;
  switch (space.metric) {
    case Metric::euclidean:
      // One coordinate needs no square root; keeps grid distances exact.
      if (a.size() == 1) return std::abs(a[0] - b[0]);
      for (size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(acc);
    case Metric::absolute_difference:
      for (size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
      return acc;
  }
  throw InvalidInput("distance: unknown metric");
}

inline bool within_bounds(const MetricSpace& space, const Point& p) {
  if (p.size() != space.bounds.size()) return false;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] < space.bounds[i][0] || p[i] > space.bounds[i][1]) return false;
  return true;
}

// Uniform candidate grid over a box; counts gives points per coordinate.
inline MetricSpace make_grid_space(const std::vector<std::array<double, 2>>& bounds,
                                   const std::vector<int>& counts,
                                   Metric metric = Metric::euclidean) {
  if (bounds.empty() || bounds.size() != counts.size())
    throw InvalidInput("make_grid_space: bounds and counts must align");
  for (const auto& b : bounds)
    if (!(b[0] < b[1])) throw InvalidInput("make_grid_space: bounds must be ordered lo < hi");
  for (int c : counts)
    if (c < 1) throw InvalidInput("make_grid_space: counts must be positive");
  MetricSpace space;
  space.metric = metric;
  space.bounds = bounds;
  std::vector<int> idx(bounds.size(), 0);
  while (true) {
    Point p(bounds.size());
    for (size_t i = 0; i < bounds.size(); ++i) {
      const double lo = bounds[i][0], hi = bounds[i][1];
      // Pin both endpoints: rounding in lo + (hi - lo) * k / (n - 1) can land
      // one ulp past hi, and grid points must satisfy within_bounds.
      p[i] = idx[i] == 0              ? lo
             : idx[i] == counts[i] - 1 ? hi
                                       : lo + (hi - lo) * idx[i] / (counts[i] - 1);
    }
    space.points.push_back(std::move(p));
    size_t carry = bounds.size();
    while (carry > 0) {
      if (++idx[carry - 1] < counts[carry - 1]) break;
      idx[carry - 1] = 0;
      --carry;
    }
    if (carry == 0) break;
  }
  return space;
}

enum class DiscKind { packing, net, both };

struct Discretization {
  MetricSpace space;
  std::vector<int> center_ids;  // indices into space.points
  double epsilon = 0.0;
  DiscKind kind = DiscKind::both;
  std::vector<int> cell_of;  // per candidate point; empty until partitioned

  size_t size() const { return center_ids.size(); }
  const Point& center(size_t w) const { return space.points[center_ids[w]]; }
};

// Greedy maximal packing in candidate order.  The result is an ε-packing by
// construction and an ε-net because every rejected candidate was within ε of
// an accepted center.
inline Discretization greedy_packing_net(const MetricSpace& space, double epsilon) {
  if (space.points.empty()) throw InvalidInput("greedy_packing_net: empty candidate set");
  if (epsilon <= 0.0) throw InvalidInput("greedy_packing_net: epsilon must be positive");
  Discretization disc;
  disc.space = space;
  disc.epsilon = epsilon;
  disc.kind = DiscKind::both;
  for (size_t i = 0; i < space.points.size(); ++i) {
    bool far = true;
    for (int c : disc.center_ids)
      if (distance(space, space.points[i], space.points[c]) < epsilon) {
        far = false;
        break;
      }
    if (far) disc.center_ids.push_back(static_cast<int>(i));
  }
  return disc;
}

// Lowest center index among those at minimal distance.
inline int nearest_index(const Discretization& disc, const Point& p) {
  if (!within_bounds(disc.space, p)) throw InvalidInput("nearest_index: point outside bounds");
  if (disc.center_ids.empty()) throw InvalidInput("nearest_index: no centers");
  int best = 0;
  double best_d = distance(disc.space, p, disc.center(0));
  for (size_t w = 1; w < disc.size(); ++w) {
    const double d = distance(disc.space, p, disc.center(w));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(w);
    }
  }
  return best;
}

// Assigns every candidate point to its nearest center, ties to the lowest
// center index.
inline Discretization covering_partition(Discretization disc) {
  if (disc.kind == DiscKind::packing)
    throw InvalidInput("covering_partition: discretization is not a net");
  disc.cell_of.resize(disc.space.points.size());
  for (size_t i = 0; i < disc.space.points.size(); ++i)
    disc.cell_of[i] = nearest_index(disc, disc.space.points[i]);
  return disc;
}

// Empty report iff every invariant appropriate to disc.kind holds.
inline std::vector<std::string> validate_discretization(const Discretization& disc) {
  std::vector<std::string> violations;
  if (disc.center_ids.empty()) {
    violations.push_back("no centers");
    return violations;
  }
  const bool check_packing = disc.kind == DiscKind::packing || disc.kind == DiscKind::both;
  const bool check_net = disc.kind == DiscKind::net || disc.kind == DiscKind::both;
  if (check_packing) {
    for (size_t v = 0; v < disc.size(); ++v)
      for (size_t u = v + 1; u < disc.size(); ++u)
        if (distance(disc.space, disc.center(v), disc.center(u)) < disc.epsilon)
          violations.push_back("packing: centers " + std::to_string(v) + " and " +
                               std::to_string(u) + " closer than epsilon");
  }
  if (check_net) {
    for (size_t i = 0; i < disc.space.points.size(); ++i) {
      double best = distance(disc.space, disc.space.points[i], disc.center(0));
      for (size_t w = 1; w < disc.size(); ++w)
        best = std::min(best, distance(disc.space, disc.space.points[i], disc.center(w)));
      if (best > disc.epsilon)
        violations.push_back("net: candidate " + std::to_string(i) + " not covered");
    }
  }
  if (!disc.cell_of.empty()) {
    if (disc.cell_of.size() != disc.space.points.size())
      violations.push_back("cells: assignment does not cover all candidates");
    for (size_t i = 0; i < disc.cell_of.size() && i < disc.space.points.size(); ++i) {
      const int w = disc.cell_of[i];
      if (w < 0 || w >= static_cast<int>(disc.size())) {
        violations.push_back("cells: candidate " + std::to_string(i) + " has bad cell index");
        continue;
      }
      const double own = distance(disc.space, disc.space.points[i], disc.center(w));
      for (size_t u = 0; u < disc.size(); ++u)
        if (distance(disc.space, disc.space.points[i], disc.center(u)) < own - 1e-12)
          violations.push_back("cells: candidate " + std::to_string(i) +
                               " is closer to center " + std::to_string(u));
    }
  }
  return violations;
}

}  // namespace minentlab
