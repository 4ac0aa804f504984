#pragma once
// Unit of persisted output: one named inequality with both sides, slack,
// and provenance.  Slack is oriented so that nonnegative means the bound
// holds; equality-style checks store tolerance-minus-deviation so the same
// orientation applies.

#include <cstdint>
#include <string>

namespace minentlab {

inline constexpr double kReportTol = 1e-9;

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::string instance;
  std::uint64_t seed = 0;
  std::string config_hash;
};

// Bound report for lhs >= rhs; tol widens the pass margin when an iterative
// solver contributes to either side.
inline BoundReport make_report(std::string name, double lhs, double rhs, std::string instance,
                               double tol = kReportTol) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.pass = r.slack >= -tol;
  r.instance = std::move(instance);
  return r;
}

// Equality report for |lhs - rhs| <= tol, with slack = tol - |lhs - rhs|.
inline BoundReport make_equality_report(std::string name, double lhs, double rhs,
                                        std::string instance, double tol) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = tol - std::abs(lhs - rhs);
  r.pass = r.slack >= -kReportTol;
  r.instance = std::move(instance);
  return r;
}

}  // namespace minentlab
