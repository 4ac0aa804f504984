#pragma once
// Dense complex linear algebra for finite-dimensional quantum states and
// channels: density operators with tensor-factor bookkeeping, Kraus-form
// CPTP maps, Choi conversion, and the standard channel fixtures.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace minentlab {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;
using complex = std::complex<double>;
using Index = Eigen::Index;

class InvalidInput : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigenClipTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kChoiTol = 1e-8;

// Negative eigenvalues in [-1e-10, 0] are float noise; snap them to zero so
// logs and square roots stay defined.  Anything more negative is a real
// violation and is left alone for validation to reject.
inline double clip_eigenvalue(double x) {
  return (x < 0.0 && x >= -kEigenClipTol) ? 0.0 : x;
}

inline bool is_hermitian(const cmat& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

struct EigResult {
  rvec values;   // descending
  cmat vectors;  // unitary, column k pairs with values[k]
};

inline EigResult hermitian_eig(const cmat& m, double tol = kHermitianTol) {
  if (!is_hermitian(m, tol)) throw InvalidInput("hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<cmat> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  const Index n = m.rows();
  EigResult out;
  out.values = solver.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  return out;
}

inline double operator_norm(const cmat& m) {
  const EigResult e = hermitian_eig(m);
  return std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
}

inline double min_eigenvalue(const cmat& m) {
  return hermitian_eig(m).values.minCoeff();
}

// Trace-one positive semidefinite operator on a tensor product of
// computational factors; dims records the factor dimensions in order.
struct DensityOperator {
  cmat mat;
  std::vector<Index> dims;

  Index dim() const { return mat.rows(); }
};

inline Index product_of(const std::vector<Index>& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

inline DensityOperator make_density(cmat m, std::vector<Index> dims) {
  if (dims.empty()) throw InvalidInput("make_density: empty factor list");
  for (Index d : dims)
    if (d < 1) throw InvalidInput("make_density: factor dimensions must be positive");
  if (m.rows() != m.cols() || m.rows() != product_of(dims))
    throw InvalidInput("make_density: matrix shape does not match factor dimensions");
  if (!is_hermitian(m)) throw InvalidInput("make_density: matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kTraceTol || std::abs(m.trace().imag()) > kTraceTol)
    throw InvalidInput("make_density: trace must equal one");
  const double lo = Eigen::SelfAdjointEigenSolver<cmat>(m).eigenvalues().minCoeff();
  if (lo < -kEigenClipTol) throw InvalidInput("make_density: negative eigenvalue beyond tolerance");
  return DensityOperator{std::move(m), std::move(dims)};
}

inline DensityOperator pure_state(cvec amps, std::vector<Index> dims) {
  const double norm = amps.norm();
  if (norm <= 0.0) throw InvalidInput("pure_state: zero amplitude vector");
  amps /= norm;
  return make_density(amps * amps.adjoint(), std::move(dims));
}

// Reduced operator on the kept factors (0-based, strictly increasing).
inline DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  const int k = static_cast<int>(rho.dims.size());
  std::vector<bool> kept(k, false);
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= k) throw InvalidInput("partial_trace: factor index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw InvalidInput("partial_trace: keep list must be strictly increasing");
    kept[keep[i]] = true;
  }
  if (keep.empty()) throw InvalidInput("partial_trace: must keep at least one factor");

  std::vector<Index> out_dims;
  for (int f = 0; f < k; ++f)
    if (kept[f]) out_dims.push_back(rho.dims[f]);
  const Index out_dim = product_of(out_dims);
  cmat out = cmat::Zero(out_dim, out_dim);

  const Index n = rho.dim();
  std::vector<Index> ri(k), ci(k);
  for (Index r = 0; r < n; ++r) {
    Index rem = r;
    for (int f = k - 1; f >= 0; --f) { ri[f] = rem % rho.dims[f]; rem /= rho.dims[f]; }
    for (Index c = 0; c < n; ++c) {
      rem = c;
      for (int f = k - 1; f >= 0; --f) { ci[f] = rem % rho.dims[f]; rem /= rho.dims[f]; }
      bool env_match = true;
      for (int f = 0; f < k && env_match; ++f)
        if (!kept[f] && ri[f] != ci[f]) env_match = false;
      if (!env_match) continue;
      Index ro = 0, co = 0;
      for (int f = 0; f < k; ++f)
        if (kept[f]) { ro = ro * rho.dims[f] + ri[f]; co = co * rho.dims[f] + ci[f]; }
      out(ro, co) += rho.mat(r, c);
    }
  }
  return DensityOperator{std::move(out), std::move(out_dims)};
}

// Completely positive trace-preserving map in Kraus form.
struct Channel {
  std::vector<cmat> kraus;
  Index in_dim = 0;
  Index out_dim = 0;
};

inline Channel make_channel(std::vector<cmat> kraus, double tp_tol = kTraceTol) {
  if (kraus.empty()) throw InvalidInput("make_channel: empty Kraus list");
  const Index out = kraus[0].rows();
  const Index in = kraus[0].cols();
  cmat sum = cmat::Zero(in, in);
  for (const cmat& k : kraus) {
    if (k.rows() != out || k.cols() != in)
      throw InvalidInput("make_channel: inconsistent Kraus shapes");
    sum += k.adjoint() * k;
  }
  if ((sum - cmat::Identity(in, in)).cwiseAbs().maxCoeff() > tp_tol)
    throw InvalidInput("make_channel: Kraus operators do not satisfy the trace condition");
  return Channel{std::move(kraus), in, out};
}

inline cmat apply(const Channel& ch, const cmat& m) {
  if (m.rows() != ch.in_dim || m.cols() != ch.in_dim)
    throw InvalidInput("apply: operator dimension does not match channel input");
  cmat out = cmat::Zero(ch.out_dim, ch.out_dim);
  for (const cmat& k : ch.kraus) out += k * m * k.adjoint();
  return out;
}

// Applies the channel to one tensor factor, identity on the rest.
inline DensityOperator apply_channel(const Channel& ch, const DensityOperator& rho, int factor) {
  const int k = static_cast<int>(rho.dims.size());
  if (factor < 0 || factor >= k) throw InvalidInput("apply_channel: factor index out of range");
  if (rho.dims[factor] != ch.in_dim)
    throw InvalidInput("apply_channel: channel input dimension does not match factor");
  Index pre = 1, post = 1;
  for (int f = 0; f < factor; ++f) pre *= rho.dims[f];
  for (int f = factor + 1; f < k; ++f) post *= rho.dims[f];
  const cmat eye_pre = cmat::Identity(pre, pre);
  const cmat eye_post = cmat::Identity(post, post);

  std::vector<Index> out_dims = rho.dims;
  out_dims[factor] = ch.out_dim;
  cmat out = cmat::Zero(pre * ch.out_dim * post, pre * ch.out_dim * post);
  for (const cmat& kr : ch.kraus) {
    const cmat lifted = kron(kron(eye_pre, kr), eye_post);
    out += lifted * rho.mat * lifted.adjoint();
  }
  return DensityOperator{std::move(out), std::move(out_dims)};
}

// Choi matrix with input-major index ordering: J = sum_ij |i><j| (x) N(|i><j|).
inline cmat choi_matrix(const Channel& ch) {
  const Index di = ch.in_dim, dout = ch.out_dim;
  cmat j = cmat::Zero(di * dout, di * dout);
  for (const cmat& k : ch.kraus) {
    cvec v(di * dout);
    for (Index i = 0; i < di; ++i)
      for (Index a = 0; a < dout; ++a) v(i * dout + a) = k(a, i);
    j += v * v.adjoint();
  }
  return j;
}

inline Channel channel_from_choi(const cmat& j, Index in_dim, Index out_dim, double tol = kChoiTol) {
  if (j.rows() != in_dim * out_dim || j.cols() != in_dim * out_dim)
    throw InvalidInput("channel_from_choi: Choi matrix shape mismatch");
  if (!is_hermitian(j, tol)) throw InvalidInput("channel_from_choi: Choi matrix is not Hermitian");
  // Trace over the output factor must leave the input identity.
  cmat tr_out = cmat::Zero(in_dim, in_dim);
  for (Index i = 0; i < in_dim; ++i)
    for (Index ip = 0; ip < in_dim; ++ip) {
      complex s = 0.0;
      for (Index a = 0; a < out_dim; ++a) s += j(i * out_dim + a, ip * out_dim + a);
      tr_out(i, ip) = s;
    }
  if ((tr_out - cmat::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff() > tol)
    throw InvalidInput("channel_from_choi: output partial trace is not the identity");

  const EigResult e = hermitian_eig(j, tol);
  if (e.values.minCoeff() < -tol)
    throw InvalidInput("channel_from_choi: Choi matrix is not positive semidefinite");
  std::vector<cmat> kraus;
  for (Index s = 0; s < e.values.size(); ++s) {
    const double lam = std::max(e.values(s), 0.0);
    if (lam <= 1e-14) continue;
    cmat k(out_dim, in_dim);
    for (Index i = 0; i < in_dim; ++i)
      for (Index a = 0; a < out_dim; ++a) k(a, i) = std::sqrt(lam) * e.vectors(i * out_dim + a, s);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw InvalidInput("channel_from_choi: Choi matrix is numerically zero");
  // Polish away truncation drift so the Kraus set is trace-preserving to
  // machine precision.
  cmat s = cmat::Zero(in_dim, in_dim);
  for (const cmat& k : kraus) s += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<cmat> es(s);
  const cmat correction =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();
  for (cmat& k : kraus) k = k * correction;
  return make_channel(std::move(kraus));
}

inline Channel identity_channel(Index d) {
  return make_channel({cmat::Identity(d, d)});
}

// Pinching in the given orthonormal basis (columns of `basis`); default is
// the computational basis.
inline Channel dephase(Index d) {
  std::vector<cmat> kraus;
  for (Index i = 0; i < d; ++i) {
    cmat k = cmat::Zero(d, d);
    k(i, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return make_channel(std::move(kraus));
}

inline Channel dephase(Index d, const cmat& basis) {
  if (basis.rows() != d || basis.cols() != d)
    throw InvalidInput("dephase: basis shape mismatch");
  if ((basis.adjoint() * basis - cmat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw InvalidInput("dephase: basis columns are not orthonormal");
  std::vector<cmat> kraus;
  for (Index i = 0; i < d; ++i)
    kraus.push_back(basis.col(i) * basis.col(i).adjoint());
  return make_channel(std::move(kraus));
}

// rho -> (1 - lambda) rho + lambda I/d.
inline Channel depolarizing(Index d, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw InvalidInput("depolarizing: lambda outside [0, 1]");
  std::vector<cmat> kraus;
  kraus.push_back(std::sqrt(1.0 - lambda) * cmat::Identity(d, d));
  // Lambda part: measure-prepare over a full matrix-unit set gives I/d.
  const double w = std::sqrt(lambda / static_cast<double>(d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      cmat k = cmat::Zero(d, d);
      k(i, j) = w;
      kraus.push_back(std::move(k));
    }
  return make_channel(std::move(kraus));
}

// Measures in the computational basis and redistributes outcomes through the
// column-stochastic matrix t: rho -> sum_ij t(j, i) <i|rho|i> |j><j|.
inline Channel classical_stochastic(const rmat& t) {
  const Index out = t.rows(), in = t.cols();
  if (out < 1 || in < 1) throw InvalidInput("classical_stochastic: empty matrix");
  for (Index i = 0; i < in; ++i) {
    double col = 0.0;
    for (Index j = 0; j < out; ++j) {
      if (t(j, i) < -1e-12) throw InvalidInput("classical_stochastic: negative entry");
      col += t(j, i);
    }
    if (std::abs(col - 1.0) > 1e-9) throw InvalidInput("classical_stochastic: columns must sum to one");
  }
  std::vector<cmat> kraus;
  for (Index i = 0; i < in; ++i)
    for (Index j = 0; j < out; ++j) {
      if (t(j, i) <= 0.0) continue;
      cmat k = cmat::Zero(out, in);
      k(j, i) = std::sqrt(t(j, i));
      kraus.push_back(std::move(k));
    }
  return make_channel(std::move(kraus));
}

// Measures in the computational basis and prepares the maximally mixed state.
inline Channel measure_prepare(Index d) {
  return classical_stochastic(rmat::Constant(d, d, 1.0 / static_cast<double>(d)));
}

// a after b.
inline Channel compose(const Channel& a, const Channel& b) {
  if (b.out_dim != a.in_dim) throw InvalidInput("compose: dimension mismatch");
  std::vector<cmat> kraus;
  for (const cmat& ka : a.kraus)
    for (const cmat& kb : b.kraus) kraus.push_back(ka * kb);
  return make_channel(std::move(kraus));
}

inline cvec maximally_entangled_ket(Index d) {
  if (d < 1) throw InvalidInput("maximally_entangled_ket: dimension must be positive");
  cvec v = cvec::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) v(i * d + i) = amp;
  return v;
}

inline DensityOperator maximally_entangled(Index d) {
  return pure_state(maximally_entangled_ket(d), {d, d});
}

// Maximally entangled state over indicator blocks: cell_of assigns each
// computational basis element of a D-dimensional space to one of num_cells
// blocks, and the state pairs each block with its copy on the second factor.
inline cvec partition_entangled_ket(const std::vector<int>& cell_of, int num_cells) {
  const Index big = static_cast<Index>(cell_of.size());
  if (big < 1 || num_cells < 1) throw InvalidInput("partition_entangled_ket: empty input");
  std::vector<double> count(num_cells, 0.0);
  for (int c : cell_of) {
    if (c < 0 || c >= num_cells) throw InvalidInput("partition_entangled_ket: cell index out of range");
    count[c] += 1.0;
  }
  for (int w = 0; w < num_cells; ++w)
    if (count[w] == 0.0) throw InvalidInput("partition_entangled_ket: empty cell");
  cvec v = cvec::Zero(big * big);
  const double outer = 1.0 / std::sqrt(static_cast<double>(num_cells));
  for (Index i = 0; i < big; ++i)
    for (Index j = 0; j < big; ++j)
      if (cell_of[i] == cell_of[j]) v(i * big + j) = outer / count[cell_of[i]];
  return v;
}

inline DensityOperator partition_entangled(const std::vector<int>& cell_of, int num_cells) {
  const Index big = static_cast<Index>(cell_of.size());
  return pure_state(partition_entangled_ket(cell_of, num_cells), {big, big});
}

// Schmidt coefficients of a pure bipartite state: singular values of the
// reshaped amplitude matrix, descending.
inline rvec schmidt_coefficients(const DensityOperator& psi) {
  if (psi.dims.size() != 2) throw InvalidInput("schmidt_coefficients: state must be bipartite");
  const Eigen::SelfAdjointEigenSolver<cmat> eig(psi.mat);
  const Index n = psi.dim();
  if (eig.eigenvalues()(n - 1) < 1.0 - 1e-9)
    throw InvalidInput("schmidt_coefficients: state is not pure");
  const cvec amps = eig.eigenvectors().col(n - 1);
  const Index dr = psi.dims[0], db = psi.dims[1];
  cmat a(dr, db);
  for (Index r = 0; r < dr; ++r)
    for (Index b = 0; b < db; ++b) a(r, b) = amps(r * db + b);
  Eigen::JacobiSVD<cmat> svd(a);
  return svd.singularValues();
}

// Recovery overlap d <phi| (I (x) D)(rho) |phi> for a concrete decoder D
// acting on the second factor.  Values range over [0, d]; separable states
// stay at or below 1.
inline double singlet_fraction_given_decoder(const DensityOperator& rho, const Channel& dec) {
  if (rho.dims.size() != 2) throw InvalidInput("singlet_fraction_given_decoder: state must be bipartite");
  const Index dr = rho.dims[0];
  if (dec.in_dim != rho.dims[1] || dec.out_dim != dr)
    throw InvalidInput("singlet_fraction_given_decoder: decoder dimensions do not match state");
  const DensityOperator decoded = apply_channel(dec, rho, 1);
  const cvec phi = maximally_entangled_ket(dr);
  const complex overlap = phi.dot(decoded.mat * phi);
  return static_cast<double>(dr) * overlap.real();
}

// Named channel fixtures used across verification suites.
inline Channel standard_channel(const std::string& name, Index d, double param = 0.0) {
  if (name == "identity") return identity_channel(d);
  if (name == "depolarizing") return depolarizing(d, param);
  if (name == "dephasing") return dephase(d);
  if (name == "measure-prepare") return measure_prepare(d);
  throw InvalidInput("standard_channel: unknown channel name '" + name + "'");
}

}  // namespace minentlab
