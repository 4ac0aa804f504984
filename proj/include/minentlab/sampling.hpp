#pragma once
// Seeded random fixtures for the verification suites: joint tables, pure
// and mixed states, unitaries, and CPTP channels.  Everything is a pure
// function of the supplied stream, so suites stay reproducible under any
// dispatch order.

#include <minentlab/entropy.hpp>
#include <minentlab/quantum.hpp>
#include <minentlab/rng.hpp>

#include <vector>

namespace minentlab {

inline rmat random_table_matrix(Rng& rng, Index rows, Index cols) {
  rmat p(rows, cols);
  for (Index a = 0; a < rows; ++a)
    for (Index b = 0; b < cols; ++b) p(a, b) = rng.uniform();
  return p / p.sum();
}

inline JointTable random_table(Rng& rng, Index rows, Index cols) {
  return make_table(random_table_matrix(rng, rows, cols));
}

inline cmat random_complex_gaussian(Rng& rng, Index rows, Index cols) {
  cmat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = complex(rng.normal(), rng.normal());
  return m;
}

inline cvec random_pure_ket(Rng& rng, Index dim) {
  cvec v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = complex(rng.normal(), rng.normal());
  return v / v.norm();
}

inline DensityOperator random_pure_state(Rng& rng, std::vector<Index> dims) {
  const Index n = product_of(dims);  // read dims before the move below
  return pure_state(random_pure_ket(rng, n), std::move(dims));
}

// Full-rank mixed state from a Ginibre factor.
inline DensityOperator random_mixed_state(Rng& rng, std::vector<Index> dims) {
  const Index n = product_of(dims);
  const cmat g = random_complex_gaussian(rng, n, n);
  cmat m = g * g.adjoint();
  m /= m.trace();
  return make_density(std::move(m), std::move(dims));
}

inline cmat random_unitary(Rng& rng, Index dim) {
  const cmat g = random_complex_gaussian(rng, dim, dim);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so Q is Haar-distributed.
  for (Index i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

// CPTP map sampled as blocks of a Haar isometry into out (x) environment.
inline Channel random_channel(Rng& rng, Index in_dim, Index out_dim, Index kraus_count) {
  const Index rows = out_dim * kraus_count;
  if (rows < in_dim) throw InvalidInput("random_channel: environment too small for an isometry");
  const cmat g = random_complex_gaussian(rng, rows, in_dim);
  Eigen::HouseholderQR<cmat> qr(g);
  const cmat q = cmat(qr.householderQ()).leftCols(in_dim);
  std::vector<cmat> kraus;
  for (Index s = 0; s < kraus_count; ++s) kraus.push_back(q.middleRows(s * out_dim, out_dim));
  return make_channel(std::move(kraus));
}

}  // namespace minentlab
