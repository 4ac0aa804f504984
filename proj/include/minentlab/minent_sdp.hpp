#pragma once
// Conditional min-entropy semidefinite program.  Primal: minimize Tr(sigma)
// subject to I (x) sigma >= rho, whose optimum is 2^(-Hmin(R|B)).  Dual:
// maximize Tr(rho Y) over Y >= 0 with Tr_R(Y) = I_B; every feasible Y is the
// lift of a decoding channel, so the dual optimum is the best recovery
// overlap.  Solved by a log-det barrier on the primal with Newton centering
// and dual extraction from the final barrier Hessian point.

#include <minentlab/quantum.hpp>

#include <cmath>
#include <vector>

namespace minentlab {

enum class SdpStatus { optimal, max_iterations, infeasible_input };

struct SdpSolution {
  cmat sigma;  // primal variable on B
  cmat y;      // dual variable on R (x) B
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::infeasible_input;

  double hmin() const { return -std::log2(primal_value); }
};

namespace detail {

// I_dr (x) e on the dr*db-dimensional joint space.
inline cmat lift_second(const cmat& e, Index dr) {
  const Index db = e.rows();
  cmat out = cmat::Zero(dr * db, dr * db);
  for (Index r = 0; r < dr; ++r) out.block(r * db, r * db, db, db) = e;
  return out;
}

// Trace over the first factor of a matrix on R (x) B.
inline cmat ptrace_first(const cmat& m, Index dr, Index db) {
  cmat out = cmat::Zero(db, db);
  for (Index r = 0; r < dr; ++r) out += m.block(r * db, r * db, db, db);
  return out;
}

// Orthonormal real basis of Hermitian matrices on a db-dimensional space.
inline std::vector<cmat> hermitian_basis(Index db) {
  std::vector<cmat> basis;
  basis.reserve(db * db);
  for (Index i = 0; i < db; ++i) {
    cmat e = cmat::Zero(db, db);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < db; ++i)
    for (Index j = i + 1; j < db; ++j) {
      cmat e = cmat::Zero(db, db);
      e(i, j) = inv_sqrt2;
      e(j, i) = inv_sqrt2;
      basis.push_back(e);
      e(i, j) = complex(0.0, -inv_sqrt2);
      e(j, i) = complex(0.0, inv_sqrt2);
      basis.push_back(std::move(e));
    }
  return basis;
}

inline double herm_inner(const cmat& a, const cmat& b) {
  return (a.adjoint() * b).trace().real();
}

struct Slack {
  bool positive = false;
  cmat inverse;
  double logdet = 0.0;
};

inline Slack factor_slack(const cmat& m) {
  Slack s;
  Eigen::LLT<cmat> llt(m);
  if (llt.info() != Eigen::Success) return s;
  s.positive = true;
  const cmat l = llt.matrixL();
  double logdet = 0.0;
  for (Index i = 0; i < m.rows(); ++i) logdet += std::log(l(i, i).real());
  s.logdet = 2.0 * logdet;
  s.inverse = llt.solve(cmat::Identity(m.rows(), m.cols()));
  return s;
}

}  // namespace detail

// rho must be bipartite with d_R * d_B <= 64; tol >= 1e-9 bounds the duality
// gap certified at optimality.
inline SdpSolution solve_hmin(const DensityOperator& rho, double tol = 1e-8) {
  if (rho.dims.size() != 2) throw InvalidInput("solve_hmin: state must be bipartite");
  const Index dr = rho.dims[0], db = rho.dims[1];
  const Index n = dr * db;
  if (n > 64) throw InvalidInput("solve_hmin: joint dimension exceeds 64");
  if (tol < 1e-9) throw InvalidInput("solve_hmin: tolerance below 1e-9");

  SdpSolution sol;
  const Eigen::SelfAdjointEigenSolver<cmat> rho_eig(rho.mat);
  if (rho_eig.eigenvalues().minCoeff() < -kEigenClipTol) {
    sol.status = SdpStatus::infeasible_input;
    return sol;
  }
  const double rho_norm = std::max(rho_eig.eigenvalues().maxCoeff(), 0.0);

  const std::vector<cmat> basis = detail::hermitian_basis(db);
  const Index nb = static_cast<Index>(basis.size());
  const int max_iterations = 500;

  cmat sigma = (rho_norm + 1.0) * cmat::Identity(db, db);
  double mu = (rho_norm + 1.0) / static_cast<double>(dr);
  const double mu_final = tol / (4.0 * static_cast<double>(n));
  const double grad_target = 0.05 * tol;

  detail::Slack slack = detail::factor_slack(detail::lift_second(sigma, dr) - rho.mat);
  int iterations = 0;
  bool converged = true;

  while (true) {
    const bool last_round = mu <= mu_final;
    // Newton-center at the current barrier weight.
    for (int inner = 0; inner < 100; ++inner) {
      const cmat grad_mat = cmat::Identity(db, db) - mu * detail::ptrace_first(slack.inverse, dr, db);
      const double grad_norm = grad_mat.norm();
      rvec g(nb);
      for (Index k = 0; k < nb; ++k) g(k) = detail::herm_inner(basis[k], grad_mat);

      rmat hess(nb, nb);
      for (Index l = 0; l < nb; ++l) {
        const cmat x = slack.inverse * detail::lift_second(basis[l], dr) * slack.inverse;
        const cmat t = detail::ptrace_first(x, dr, db);
        for (Index k = 0; k < nb; ++k) hess(k, l) = mu * detail::herm_inner(basis[k], t);
      }
      hess = (hess + hess.transpose()) / 2.0;
      const rvec delta_coords = hess.ldlt().solve(-g);
      const double decrement2 = -g.dot(delta_coords);

      const bool centered = last_round ? (grad_norm <= grad_target || decrement2 / 2.0 <= 1e-18)
                                       : (decrement2 / 2.0 <= 0.01 * mu);
      if (centered) break;
      if (iterations >= max_iterations) {
        converged = false;
        break;
      }

      cmat delta = cmat::Zero(db, db);
      for (Index l = 0; l < nb; ++l) delta += delta_coords(l) * basis[l];

      const double f0 = sigma.trace().real() - mu * slack.logdet;
      double step = 1.0;
      detail::Slack trial;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        const cmat cand = sigma + step * delta;
        trial = detail::factor_slack(detail::lift_second(cand, dr) - rho.mat);
        if (trial.positive) {
          const double f1 = cand.trace().real() - mu * trial.logdet;
          if (f1 <= f0 - 0.25 * step * decrement2) {
            sigma = cand;
            slack = std::move(trial);
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      ++iterations;
      if (!accepted) break;  // step underflow: already as centered as float allows
    }
    if (!converged || last_round) break;
    mu = std::max(mu * 0.2, mu_final);
  }

  // Dual candidate from the barrier optimality condition.  Floating point
  // cannot center the last rounds exactly, so the raw candidate misses the
  // trace constraint by more than tol; routing it through the Choi shuffle
  // and the channel polish restores exact feasibility (PSD by congruence,
  // partial trace I by construction) and the certified gap stays genuine.
  cmat y = mu * slack.inverse;
  y = (y + y.adjoint()) / 2.0;
  try {
    cmat choi_raw(n, n);
    for (Index k = 0; k < db; ++k)
      for (Index a = 0; a < dr; ++a)
        for (Index l = 0; l < db; ++l)
          for (Index b = 0; b < dr; ++b)
            choi_raw(k * dr + a, l * dr + b) = y(b * db + l, a * db + k);
    const Channel dec = channel_from_choi(choi_raw, db, dr, 0.5);
    const cmat polished = choi_matrix(dec);
    for (Index k = 0; k < db; ++k)
      for (Index a = 0; a < dr; ++a)
        for (Index l = 0; l < db; ++l)
          for (Index b = 0; b < dr; ++b)
            y(b * db + l, a * db + k) = polished(k * dr + a, l * dr + b);
  } catch (const InvalidInput&) {
    // Candidate too far off to polish; fall back to a linear projection and
    // let the reported gap expose the infeasibility.
    const cmat residual = cmat::Identity(db, db) - detail::ptrace_first(y, dr, db);
    y += detail::lift_second(residual, dr) / static_cast<double>(dr);
  }

  sol.sigma = sigma;
  sol.y = (y + y.adjoint()) / 2.0;
  sol.primal_value = sigma.trace().real();
  sol.dual_value = (rho.mat * sol.y).trace().real();
  sol.gap = sol.primal_value - sol.dual_value;
  sol.iterations = iterations;
  sol.status = (converged && std::abs(sol.gap) <= tol) ? SdpStatus::optimal
                                                       : SdpStatus::max_iterations;
  return sol;
}

// Closed form for pure states: 2^(-Hmin) = (sum of Schmidt coefficients)^2.
inline double pure_state_hmin_oracle(const DensityOperator& psi) {
  const double s = schmidt_coefficients(psi).sum();
  return s * s;
}

// Reconstructs the decoding channel B -> A-hat whose lift is the optimal
// dual variable: block (i, j) of Y on the R factor holds D-adjoint of
// |i><j|, so the Choi matrix of D is an index reshuffle of Y.
inline Channel channel_from_dual(const SdpSolution& sol, Index dr, Index db) {
  if (sol.status != SdpStatus::optimal)
    throw InvalidInput("channel_from_dual: solution is not optimal");
  if (sol.y.rows() != dr * db) throw InvalidInput("channel_from_dual: dimension mismatch");
  cmat choi(db * dr, db * dr);
  for (Index k = 0; k < db; ++k)
    for (Index a = 0; a < dr; ++a)
      for (Index l = 0; l < db; ++l)
        for (Index b = 0; b < dr; ++b)
          choi(k * dr + a, l * dr + b) = sol.y(b * db + l, a * db + k);
  return channel_from_choi(choi, db, dr);
}

}  // namespace minentlab
