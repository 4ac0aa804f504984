#pragma once
// Entanglement-fraction task at grid scale: partition and packing singlets,
// the band-entangled grid state built from epsilon-balls, diagonal block
// projectors onto same-cell pairs, channel embedding into a larger space,
// and the two theorem checks that compare the optimal recovery overlap
// against conditional-entropy bounds.

#include <minentlab/bounds.hpp>
#include <minentlab/discretize.hpp>
#include <minentlab/entropy.hpp>
#include <minentlab/minent_sdp.hpp>
#include <minentlab/quantum.hpp>
#include <minentlab/report.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace minentlab {

// Uniform decomposition of an interval into m cells; states carry one
// amplitude per cell in the unit-norm indicator basis.
struct Grid1D {
  double lo = 0.0;
  double hi = 1.0;
  int m = 0;

  double h() const { return (hi - lo) / m; }
  double midpoint(int i) const { return lo + (i + 0.5) * h(); }
};

inline Grid1D make_grid(double lo, double hi, int m) {
  if (m < 1 || hi <= lo) throw InvalidInput("make_grid: need hi > lo and at least one cell");
  return Grid1D{lo, hi, m};
}

// Bipartite grid state with one amplitude per cell pair (row-major); kept
// unnormalized with its norm recorded.
struct GridState {
  Grid1D grid;
  cvec amplitudes;
  double norm = 0.0;
};

enum class SingletMode { partition, packing };
enum class ProjectorKind { W2, V2 };

// Maximally entangled state over the abstract cell basis of the
// discretization: |W|^(-1/2) sum_w |w> (x) |w>.
inline DensityOperator partition_singlet(const Discretization& disc, SingletMode mode) {
  if (disc.center_ids.empty()) throw InvalidInput("partition_singlet: no centers");
  if (mode == SingletMode::partition && disc.kind == DiscKind::packing)
    throw InvalidInput("partition_singlet: discretization is not a net");
  if (mode == SingletMode::packing && disc.kind == DiscKind::net)
    throw InvalidInput("partition_singlet: discretization is not a packing");
  return maximally_entangled(static_cast<Index>(disc.size()));
}

// Band state |Phi_eps> = integral over pairs within eps of each other,
// discretized by the midpoint rule: amplitude h per cell pair whose
// midpoints lie within the ball radius.
inline GridState grid_phi_eps(const Grid1D& grid, double epsilon) {
  if (epsilon <= 0.0) throw InvalidInput("grid_phi_eps: epsilon must be positive");
  GridState state;
  state.grid = grid;
  state.amplitudes = cvec::Zero(static_cast<Index>(grid.m) * grid.m);
  const double h = grid.h();
  for (int i = 0; i < grid.m; ++i)
    for (int j = 0; j < grid.m; ++j)
      if (std::abs(grid.midpoint(i) - grid.midpoint(j)) <= epsilon)
        state.amplitudes(static_cast<Index>(i) * grid.m + j) = h;
  state.norm = state.amplitudes.norm();
  return state;
}

// Projector onto span{|r> (x) |alpha>: r, alpha in the same cell}.  The
// operator is diagonal in the grid product basis, so only the diagonal and
// the cell assignment are stored; dense() materializes it for small grids.
struct SubspaceProjector {
  ProjectorKind kind = ProjectorKind::W2;
  int m = 0;
  std::vector<int> cell_of_grid;  // grid cell -> center index

  bool keeps(int i, int j) const { return cell_of_grid[i] == cell_of_grid[j]; }

  cmat dense() const {
    const Index n = static_cast<Index>(m) * m;
    if (n > 4096) throw InvalidInput("SubspaceProjector::dense: grid too large to materialize");
    cmat p = cmat::Zero(n, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (keeps(i, j)) p(static_cast<Index>(i) * m + j, static_cast<Index>(i) * m + j) = 1.0;
    return p;
  }
};

inline SubspaceProjector build_projector(const Grid1D& grid, const Discretization& disc,
                                         ProjectorKind kind) {
  if (disc.center_ids.empty()) throw InvalidInput("build_projector: no centers");
  if (kind == ProjectorKind::W2 && disc.kind == DiscKind::packing)
    throw InvalidInput("build_projector: W2 projector needs a net");
  if (kind == ProjectorKind::V2 && disc.kind == DiscKind::net)
    throw InvalidInput("build_projector: V2 projector needs a packing");
  SubspaceProjector proj;
  proj.kind = kind;
  proj.m = grid.m;
  proj.cell_of_grid.resize(grid.m);
  std::vector<int> seen(disc.size(), 0);
  for (int i = 0; i < grid.m; ++i) {
    proj.cell_of_grid[i] = nearest_index(disc, Point{grid.midpoint(i)});
    seen[proj.cell_of_grid[i]] = 1;
  }
  for (size_t w = 0; w < disc.size(); ++w)
    if (!seen[w]) throw InvalidInput("build_projector: grid is coarser than the cells");
  return proj;
}

inline GridState apply(const SubspaceProjector& proj, const GridState& state) {
  if (state.grid.m != proj.m) throw InvalidInput("apply: projector and state grids differ");
  GridState out;
  out.grid = state.grid;
  out.amplitudes = cvec::Zero(state.amplitudes.size());
  for (int i = 0; i < proj.m; ++i)
    for (int j = 0; j < proj.m; ++j)
      if (proj.keeps(i, j))
        out.amplitudes(static_cast<Index>(i) * proj.m + j) =
            state.amplitudes(static_cast<Index>(i) * proj.m + j);
  out.norm = out.amplitudes.norm();
  return out;
}

// Grid embedding of the partition singlet: uniform over same-cell pairs,
// unit norm.
inline GridState grid_partition_singlet(const Grid1D& grid, const Discretization& disc) {
  const SubspaceProjector proj = build_projector(grid, disc, ProjectorKind::W2);
  GridState out;
  out.grid = grid;
  out.amplitudes = partition_entangled_ket(proj.cell_of_grid, static_cast<int>(disc.size()));
  out.norm = 1.0;
  return out;
}

// Norm distance between the normalized projected band state and the grid
// partition singlet.  The identity makes them proportional exactly when the
// ball radius covers every cell diameter; covering-partition cells of an
// eps-net have diameter at most 2*eps, so callers pass that radius.
inline double grid_identity_deviation(const Grid1D& grid, const Discretization& disc,
                                      double ball_radius) {
  const SubspaceProjector proj = build_projector(grid, disc, ProjectorKind::W2);
  const GridState projected = apply(proj, grid_phi_eps(grid, ball_radius));
  if (projected.norm <= 0.0) throw InvalidInput("grid_identity_deviation: projected state is zero");
  const GridState target = grid_partition_singlet(grid, disc);
  return (projected.amplitudes / projected.norm - target.amplitudes).norm();
}

// Extends a channel on a k-dimensional subspace to the full space: inputs
// supported on the subspace transform by the small channel, the orthogonal
// complement passes through untouched.
inline Channel embed_channel(const Channel& small, Index large_dim, const cmat& basis) {
  if (basis.rows() != large_dim || basis.cols() != small.in_dim)
    throw InvalidInput("embed_channel: basis shape mismatch");
  if (small.in_dim != small.out_dim)
    throw InvalidInput("embed_channel: only square channels embed");
  if (small.in_dim > large_dim) throw InvalidInput("embed_channel: subspace larger than space");
  if ((basis.adjoint() * basis - cmat::Identity(small.in_dim, small.in_dim)).cwiseAbs().maxCoeff() >
      1e-9)
    throw InvalidInput("embed_channel: basis columns are not orthonormal");
  std::vector<cmat> kraus;
  for (const cmat& k : small.kraus) kraus.push_back(basis * k * basis.adjoint());
  if (small.in_dim < large_dim)
    kraus.push_back(cmat::Identity(large_dim, large_dim) - basis * basis.adjoint());
  return make_channel(std::move(kraus));
}

// Recovery-vs-entropy bound at the partition-singlet witness:
// log2 of the optimal recovery overlap is at least -H(R|B) of the evolved
// state.
inline BoundReport verify_thm1(const Discretization& disc, const Channel& noise, double tol,
                               std::string instance = "") {
  const Index k = static_cast<Index>(disc.size());
  if (k > 8) throw InvalidInput("verify_thm1: partition size exceeds 8");
  if (noise.in_dim != k) throw InvalidInput("verify_thm1: channel dimension does not match cells");
  const DensityOperator phi = partition_singlet(disc, SingletMode::partition);
  const DensityOperator sigma = apply_channel(noise, phi, 1);
  const SdpSolution sol = solve_hmin(sigma, 1e-8);
  const double lhs = std::log2(sol.primal_value);
  const double rhs = -conditional_von_neumann(sigma);
  return make_report("recovery-vs-conditional-entropy", lhs, rhs, std::move(instance), tol);
}

// Error-probability bound at the packing-singlet witness: the residual
// error after the optimal decoder is at least (H(RB) - 1) / log2(|V|^2 - 1);
// the right side is reported unclamped and may be vacuous.
inline BoundReport verify_thm2(const Discretization& disc, const Channel& noise, double tol,
                               std::string instance = "") {
  const Index k = static_cast<Index>(disc.size());
  if (k < 2) throw InvalidInput("verify_thm2: need at least two packing centers");
  if (noise.in_dim != k) throw InvalidInput("verify_thm2: channel dimension does not match centers");
  const DensityOperator phi = partition_singlet(disc, SingletMode::packing);
  const DensityOperator rho = apply_channel(noise, phi, 1);
  const SdpSolution sol = solve_hmin(rho, 1e-8);
  const double lhs = 1.0 - sol.primal_value / static_cast<double>(k);
  const double rhs =
      (von_neumann(rho) - 1.0) / std::log2(static_cast<double>(k) * k - 1.0);
  return make_report("error-vs-joint-entropy", lhs, rhs, std::move(instance), tol);
}

// Best singlet fraction achievable against a rank-k maximally entangled
// target: (sum of the k largest Schmidt coefficients)^2 / k.
inline double singlet_overlap_qk(const DensityOperator& psi, Index k) {
  const rvec s = schmidt_coefficients(psi);
  if (k < 1 || k > s.size()) throw InvalidInput("singlet_overlap_qk: k outside [1, Schmidt rank]");
  const double sum = s.head(k).sum();
  return sum * sum / static_cast<double>(k);
}

}  // namespace minentlab
