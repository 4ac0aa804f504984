#pragma once
// Entropy functionals, all in bits: binary entropy, conditional Shannon
// entropy of finite joint tables, the closed-form classical conditional
// min-entropy, and von Neumann entropies of density operators.

#include <minentlab/quantum.hpp>

#include <cmath>
#include <utility>

namespace minentlab {

inline constexpr double kTableMassTol = 1e-12;

// Finite joint distribution p(a, b); rows index the target alphabet A,
// columns the observation alphabet B.
struct JointTable {
  rmat p;

  Index rows() const { return p.rows(); }
  Index cols() const { return p.cols(); }
};

inline JointTable make_table(rmat p) {
  if (p.rows() < 1 || p.cols() < 1) throw InvalidInput("make_table: empty table");
  if ((p.array() < -kTableMassTol).any()) throw InvalidInput("make_table: negative entry");
  if (std::abs(p.sum() - 1.0) > kTableMassTol) throw InvalidInput("make_table: total mass must be one");
  return JointTable{std::move(p)};
}

namespace detail {

inline double plog2p(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace detail

inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw InvalidInput("binary_entropy: argument outside [0, 1]");
  return -detail::plog2p(p) - detail::plog2p(1.0 - p);
}

inline rvec marginal_b(const JointTable& t) { return t.p.colwise().sum(); }
inline rvec marginal_a(const JointTable& t) { return t.p.rowwise().sum(); }

// H(A|B) = H(AB) - H(B).
inline double conditional_shannon(const JointTable& t) {
  double h_joint = 0.0;
  for (Index a = 0; a < t.rows(); ++a)
    for (Index b = 0; b < t.cols(); ++b) h_joint -= detail::plog2p(t.p(a, b));
  double h_b = 0.0;
  const rvec pb = marginal_b(t);
  for (Index b = 0; b < t.cols(); ++b) h_b -= detail::plog2p(pb(b));
  return h_joint - h_b;
}

struct HminResult {
  double success;
  double hmin;
};

// Optimal guessing probability sum_b max_a p(a, b) and the min-entropy it
// induces; equals the success of the exhaustive best decoder.
inline HminResult classical_hmin_success(const JointTable& t) {
  if (t.p.sum() <= 0.0) throw InvalidInput("classical_hmin_success: zero-mass table");
  double success = 0.0;
  for (Index b = 0; b < t.cols(); ++b) success += t.p.col(b).maxCoeff();
  return HminResult{success, -std::log2(success)};
}

inline double von_neumann(const DensityOperator& rho) {
  const EigResult e = hermitian_eig(rho.mat);
  if (e.values.minCoeff() < -kEigenClipTol)
    throw InvalidInput("von_neumann: operator is not positive semidefinite");
  double s = 0.0;
  for (Index i = 0; i < e.values.size(); ++i) s -= detail::plog2p(clip_eigenvalue(e.values(i)));
  return s;
}

// H(R|B) = S(RB) - S(B) on a bipartite operator; may be negative.
inline double conditional_von_neumann(const DensityOperator& rho) {
  if (rho.dims.size() != 2) throw InvalidInput("conditional_von_neumann: state must be bipartite");
  return von_neumann(rho) - von_neumann(partial_trace(rho, {1}));
}

// Diagonal embedding of a joint table as a classical-classical state, so
// quantum functionals can be compared against their classical counterparts.
inline DensityOperator diagonal_embedding(const JointTable& t) {
  const Index n = t.rows() * t.cols();
  cmat m = cmat::Zero(n, n);
  for (Index a = 0; a < t.rows(); ++a)
    for (Index b = 0; b < t.cols(); ++b)
      m(a * t.cols() + b, a * t.cols() + b) = std::max(t.p(a, b), 0.0);
  m /= m.trace();
  return make_density(std::move(m), {t.rows(), t.cols()});
}

}  // namespace minentlab
