#pragma once
// Both sides of every inequality the library certifies: Fano, the
// min-entropy guessing guarantee, the quantum Fano bound, the minimax and
// learning lower bounds, and the dephasing reduction that equates the
// optimal singlet fraction of a doubly dephased state with a classical
// guessing probability.

#include <minentlab/entropy.hpp>
#include <minentlab/minent_sdp.hpp>
#include <minentlab/quantum.hpp>
#include <minentlab/report.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace minentlab {

inline constexpr double kSdpCheckTol = 1e-6;

// Failure-probability bound: H(A|B) <= h2(s) + (1 - s) log2(|A| - 1) for the
// success s of any concrete estimator.
inline BoundReport fano_check(const JointTable& t, double success, std::string instance = "") {
  if (t.rows() == 1) {
    BoundReport r = make_report("fano", 0.0, 0.0, std::move(instance));
    return r;
  }
  const double s = std::clamp(success, 0.0, 1.0);
  const double lhs = binary_entropy(s) + (1.0 - s) * std::log2(static_cast<double>(t.rows() - 1));
  return make_report("fano", lhs, conditional_shannon(t), std::move(instance));
}

// Guessing guarantee: the optimal success probability is at least
// 2^(-H(A|B)).
inline BoundReport guarantee_check(const JointTable& t, std::string instance = "") {
  const double lhs = classical_hmin_success(t).success;
  const double rhs = std::exp2(-conditional_shannon(t));
  return make_report("guarantee", lhs, rhs, std::move(instance));
}

// Quantum Fano: H(RB) <= h2(p) + (1 - p) log2(d^2 - 1) with p the overlap
// of rho with the pure reference state psi.
inline BoundReport quantum_fano_check(const DensityOperator& psi, const DensityOperator& rho,
                                      Index d, std::string instance = "") {
  if (psi.dim() != d * d || rho.dim() != d * d)
    throw InvalidInput("quantum_fano_check: dimensions must equal d*d");
  if (d == 1) return make_report("quantum-fano", 0.0, 0.0, std::move(instance));
  const double p = std::clamp((psi.mat * rho.mat).trace().real(), 0.0, 1.0);
  const double lhs =
      binary_entropy(p) + (1.0 - p) * std::log2(static_cast<double>(d * d - 1));
  return make_report("quantum-fano", lhs, von_neumann(rho), std::move(instance));
}

// Same bound instantiated at the maximally entangled reference, where the
// overlap is the identity-decoder singlet fraction divided by d.
inline BoundReport quantum_fano_singlet_check(const DensityOperator& rho, Index d,
                                              std::string instance = "") {
  if (rho.dim() != d * d) throw InvalidInput("quantum_fano_singlet_check: dimension mismatch");
  if (d == 1) return make_report("quantum-fano-singlet", 0.0, 0.0, std::move(instance));
  const double q = singlet_fraction_given_decoder(rho, identity_channel(d));
  const double p = std::clamp(q / static_cast<double>(d), 0.0, 1.0);
  const double lhs =
      binary_entropy(p) + (1.0 - p) * std::log2(static_cast<double>(d * d - 1));
  return make_report("quantum-fano-singlet", lhs, von_neumann(rho), std::move(instance));
}

// Minimax lower bound loss_at_eps * (H(V|B) - 1) / log2(|V|), clamped at 0
// where it goes vacuous.
inline double minimax_bound(double hvb, Index cardinality, double loss_at_eps) {
  if (cardinality < 2) throw InvalidInput("minimax_bound: need at least two packing centers");
  const double v = loss_at_eps * (hvb - 1.0) / std::log2(static_cast<double>(cardinality));
  return std::max(v, 0.0);
}

// Log-score guarantee log2 s(eps) - H(W|B); may be negative.
inline double learning_guarantee_bound(double hwb, double score_at_eps) {
  if (score_at_eps <= 0.0) throw InvalidInput("learning_guarantee_bound: score must be positive");
  return std::log2(score_at_eps) - hwb;
}

// Extracts the computational-basis diagonal of a bipartite state as a joint
// table p(r, b) = <rb|rho|rb>.
inline JointTable diagonal_table(const DensityOperator& rho) {
  if (rho.dims.size() != 2) throw InvalidInput("diagonal_table: state must be bipartite");
  const Index dr = rho.dims[0], db = rho.dims[1];
  rmat p(dr, db);
  for (Index r = 0; r < dr; ++r)
    for (Index b = 0; b < db; ++b) p(r, b) = std::max(rho.mat(r * db + b, r * db + b).real(), 0.0);
  const double mass = p.sum();
  if (mass <= 0.0) throw InvalidInput("diagonal_table: zero diagonal mass");
  return make_table(p / mass);
}

// Dephasing both factors makes the optimal singlet fraction equal to the
// classical guessing probability of the diagonal table; checked as an
// equality up to SDP precision.
inline BoundReport dephasing_reduction_check(const DensityOperator& rho,
                                             std::string instance = "") {
  if (rho.dims.size() != 2) throw InvalidInput("dephasing_reduction_check: state must be bipartite");
  const JointTable table = diagonal_table(rho);
  DensityOperator dephased = apply_channel(dephase(rho.dims[0]), rho, 0);
  dephased = apply_channel(dephase(rho.dims[1]), dephased, 1);
  const SdpSolution sol = solve_hmin(dephased, 1e-8);
  const double lhs = sol.primal_value;
  const double rhs = classical_hmin_success(table).success;
  return make_equality_report("dephasing-reduction", lhs, rhs, std::move(instance), kSdpCheckTol);
}

}  // namespace minentlab
