#pragma once
// Classical learning tasks over discretized parameter spaces: cell-constant
// observation models, MAP estimation with exhaustive cross-checks, Monte
// Carlo risk estimation, and the exact-learning query scenario with its
// classical table and coherent example states.

#include <minentlab/discretize.hpp>
#include <minentlab/entropy.hpp>
#include <minentlab/quantum.hpp>
#include <minentlab/rng.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace minentlab {

enum class LossKind { squared, absolute, zero_one };
enum class ScoreKind { indicator, c_minus_t };

// Observation model that is constant on the cells of a discretization, so
// every conditional entropy is an exact finite sum.
struct LearningTask {
  Discretization disc;
  rmat likelihood;  // |B| x |cells|, columns are conditional distributions
  rvec prior;       // over cells
  LossKind loss = LossKind::zero_one;
  ScoreKind score = ScoreKind::indicator;
  double epsilon = 0.0;
  double score_c = 1.0;

  Index cells() const { return likelihood.cols(); }
  Index observations() const { return likelihood.rows(); }
};

inline double loss_value(const LearningTask& task, double dist) {
  switch (task.loss) {
    case LossKind::squared: return dist * dist;
    case LossKind::absolute: return dist;
    case LossKind::zero_one: return dist >= task.epsilon ? 1.0 : 0.0;
  }
  throw InvalidInput("loss_value: unknown loss");
}

// Scores stay strictly positive so logarithms are defined; the floor only
// engages where the indicator or c-minus-t score would hit zero.
inline double score_value(const LearningTask& task, double dist) {
  switch (task.score) {
    case ScoreKind::indicator: return dist <= task.epsilon ? 1.0 : 1e-12;
    case ScoreKind::c_minus_t: return std::max(task.score_c - dist, 1e-12);
  }
  throw InvalidInput("score_value: unknown score");
}

inline LearningTask make_learning_task(Discretization disc, rmat likelihood, rvec prior,
                                       LossKind loss, ScoreKind score, double epsilon,
                                       double score_c = 1.0) {
  if (disc.center_ids.empty()) throw InvalidInput("make_learning_task: no centers");
  if (likelihood.cols() != static_cast<Index>(disc.size()))
    throw InvalidInput("make_learning_task: likelihood cells do not match discretization");
  if (likelihood.rows() < 1) throw InvalidInput("make_learning_task: empty observation alphabet");
  for (Index w = 0; w < likelihood.cols(); ++w) {
    if ((likelihood.col(w).array() < -1e-12).any())
      throw InvalidInput("make_learning_task: negative likelihood entry");
    if (std::abs(likelihood.col(w).sum() - 1.0) > 1e-9)
      throw InvalidInput("make_learning_task: likelihood column does not sum to one");
  }
  if (prior.size() != likelihood.cols())
    throw InvalidInput("make_learning_task: prior size does not match cells");
  if ((prior.array() < -1e-12).any() || std::abs(prior.sum() - 1.0) > 1e-9)
    throw InvalidInput("make_learning_task: prior is not a distribution");
  if (epsilon <= 0.0) throw InvalidInput("make_learning_task: epsilon must be positive");
  LearningTask task{std::move(disc), std::move(likelihood), std::move(prior),
                    loss, score, epsilon, score_c};
  // Probe monotonicity over a distance grid covering the space diameter.
  double diam = 0.0;
  for (const auto& b : task.disc.space.bounds) diam += (b[1] - b[0]) * (b[1] - b[0]);
  diam = std::max(std::sqrt(diam), epsilon) * 1.5;
  double prev_loss = loss_value(task, 0.0), prev_score = score_value(task, 0.0);
  for (int i = 1; i <= 32; ++i) {
    const double t = diam * i / 32.0;
    const double lv = loss_value(task, t), sv = score_value(task, t);
    if (lv < prev_loss - 1e-12) throw InvalidInput("make_learning_task: loss is not non-decreasing");
    if (sv > prev_score + 1e-12) throw InvalidInput("make_learning_task: score is not non-increasing");
    if (sv <= 0.0) throw InvalidInput("make_learning_task: score is not positive");
    prev_loss = lv;
    prev_score = sv;
  }
  return task;
}

// Joint law p(w, b) = prior(w) * p(b | w), rows indexed by cell.
inline JointTable induced_joint(const LearningTask& task, const Discretization& disc) {
  if (static_cast<Index>(disc.size()) != task.cells())
    throw InvalidInput("induced_joint: discretization cells do not match likelihood");
  rmat p(task.cells(), task.observations());
  for (Index w = 0; w < task.cells(); ++w)
    for (Index b = 0; b < task.observations(); ++b) p(w, b) = task.prior(w) * task.likelihood(b, w);
  return make_table(std::move(p));
}

struct MapDecoder {
  double success = 0.0;
  std::vector<int> decoder;  // observation index -> row index
};

// Argmax decoder per observation column, lowest index on ties; its success
// equals the column-maxima sum exactly.
inline MapDecoder map_decoder_success(const JointTable& t) {
  MapDecoder out;
  out.decoder.resize(t.cols());
  for (Index b = 0; b < t.cols(); ++b) {
    Index best = 0;
    for (Index a = 1; a < t.rows(); ++a)
      if (t.p(a, b) > t.p(best, b)) best = a;
    out.decoder[b] = static_cast<int>(best);
    out.success += t.p(best, b);
  }
  return out;
}

// Success of the best decoder found by enumerating every map from
// observations to rows; only valid when |A|^|B| stays enumerable.
inline double exhaustive_decoder_success(const JointTable& t, std::uint64_t limit = 4096) {
  const Index a = t.rows(), b = t.cols();
  double combos = std::pow(static_cast<double>(a), static_cast<double>(b));
  if (combos > static_cast<double>(limit))
    throw InvalidInput("exhaustive_decoder_success: decoder space too large");
  const std::uint64_t total = static_cast<std::uint64_t>(combos + 0.5);
  double best = 0.0;
  std::vector<Index> choice(b, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    double s = 0.0;
    std::uint64_t rem = it;
    for (Index col = 0; col < b; ++col) {
      choice[col] = static_cast<Index>(rem % a);
      rem /= a;
      s += t.p(choice[col], col);
    }
    best = std::max(best, s);
  }
  return best;
}

// Per-cell success of the MAP decoder, conditioned on the true cell; the
// best cell always does at least as well as the prior-weighted average.
inline double best_cell_success(const JointTable& t) {
  const MapDecoder dec = map_decoder_success(t);
  const rvec pa = marginal_a(t);
  double best = 0.0;
  for (Index w = 0; w < t.rows(); ++w) {
    if (pa(w) <= 0.0) continue;
    double hit = 0.0;
    for (Index b = 0; b < t.cols(); ++b)
      if (dec.decoder[b] == static_cast<int>(w)) hit += t.p(w, b);
    best = std::max(best, hit / pa(w));
  }
  return best;
}

using Estimator = std::function<Point(int observation)>;

struct RiskEstimate {
  double expected_loss = 0.0;
  double success_prob = 0.0;
  double half_width = 0.0;       // 95% normal-approximation interval for success
  double loss_half_width = 0.0;  // same interval for the loss mean
};

// Samples (cell, observation) pairs from prior x likelihood, scores the
// estimator against the cell center; deterministic given the seed.
inline RiskEstimate monte_carlo_risk(const LearningTask& task, const Estimator& estimator,
                                     int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("monte_carlo_risk: need at least one sample");
  Rng rng(seed, 0);
  double loss_sum = 0.0, loss_sq_sum = 0.0, success_sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    double u = rng.uniform();
    Index w = 0;
    for (; w < task.cells() - 1; ++w) {
      if (u < task.prior(w)) break;
      u -= task.prior(w);
    }
    double v = rng.uniform();
    Index b = 0;
    for (; b < task.observations() - 1; ++b) {
      if (v < task.likelihood(b, w)) break;
      v -= task.likelihood(b, w);
    }
    const Point alpha = task.disc.center(static_cast<size_t>(w));
    const Point estimate = estimator(static_cast<int>(b));
    const double dist = distance(task.disc.space, estimate, alpha);
    const double loss = loss_value(task, dist);
    loss_sum += loss;
    loss_sq_sum += loss * loss;
    if (dist <= task.epsilon) success_sum += 1.0;
  }
  RiskEstimate out;
  const double n = static_cast<double>(samples);
  out.expected_loss = loss_sum / n;
  out.success_prob = success_sum / n;
  out.half_width = 1.96 * std::sqrt(out.success_prob * (1.0 - out.success_prob) / n);
  const double var = std::max(loss_sq_sum / n - out.expected_loss * out.expected_loss, 0.0);
  out.loss_half_width = 1.96 * std::sqrt(var / n);
  return out;
}

// Worst-case-over-parameters expected loss of the best estimator that maps
// observations to centers, computed by full enumeration.
inline double exhaustive_minimax_risk(const LearningTask& task, std::uint64_t limit = 4096) {
  if (task.disc.cell_of.empty())
    throw InvalidInput("exhaustive_minimax_risk: discretization has no cell assignment");
  const Index k = task.cells(), nb = task.observations();
  double combos = std::pow(static_cast<double>(k), static_cast<double>(nb));
  if (combos > static_cast<double>(limit))
    throw InvalidInput("exhaustive_minimax_risk: estimator space too large");
  const std::uint64_t total = static_cast<std::uint64_t>(combos + 0.5);

  // Cache losses loss(d(center_c, alpha)) for every candidate alpha.
  const size_t npts = task.disc.space.points.size();
  std::vector<std::vector<double>> loss_cache(static_cast<size_t>(k),
                                              std::vector<double>(npts));
  for (Index c = 0; c < k; ++c)
    for (size_t i = 0; i < npts; ++i)
      loss_cache[static_cast<size_t>(c)][i] = loss_value(
          task, distance(task.disc.space, task.disc.center(static_cast<size_t>(c)),
                         task.disc.space.points[i]));

  double minimax = std::numeric_limits<double>::infinity();
  std::vector<Index> f(nb);
  for (std::uint64_t it = 0; it < total; ++it) {
    std::uint64_t rem = it;
    for (Index b = 0; b < nb; ++b) {
      f[b] = static_cast<Index>(rem % k);
      rem /= k;
    }
    double worst = 0.0;
    for (size_t i = 0; i < npts; ++i) {
      const Index w = static_cast<Index>(task.disc.cell_of[i]);
      double risk = 0.0;
      for (Index b = 0; b < nb; ++b)
        risk += task.likelihood(b, w) * loss_cache[static_cast<size_t>(f[b])][i];
      worst = std::max(worst, risk);
      if (worst >= minimax) break;
    }
    minimax = std::min(minimax, worst);
  }
  return minimax;
}

// Exact-learning query scenario: concepts are boolean functions on n-bit
// inputs; an observation is a length-m sequence of (input, label) pairs.
struct ExactLearningInstance {
  int concept_count = 0;
  int bits = 0;
  int queries = 0;
  rvec p_x;
  JointTable p_ab;
  std::vector<cvec> cq_states;  // one coherent example state per concept
};

inline ExactLearningInstance exact_learning_scenario(int bits,
                                                     const std::vector<std::vector<int>>& concepts,
                                                     int queries, const rvec& p_x) {
  if (bits < 1 || bits > 3) throw InvalidInput("exact_learning_scenario: bits must be in [1, 3]");
  if (concepts.empty() || concepts.size() > 16)
    throw InvalidInput("exact_learning_scenario: concept count must be in [1, 16]");
  if (queries < 1 || queries > 4)
    throw InvalidInput("exact_learning_scenario: queries must be in [1, 4]");
  const int nx = 1 << bits;
  if (p_x.size() != nx || (p_x.array() < -1e-12).any() || std::abs(p_x.sum() - 1.0) > 1e-9)
    throw InvalidInput("exact_learning_scenario: query distribution invalid");
  for (const auto& c : concepts) {
    if (static_cast<int>(c.size()) != nx)
      throw InvalidInput("exact_learning_scenario: concept table size mismatch");
    for (int y : c)
      if (y != 0 && y != 1) throw InvalidInput("exact_learning_scenario: labels must be bits");
  }

  const int nc = static_cast<int>(concepts.size());
  const int symbol = 2 * nx;  // one (input, label) pair
  Index cols = 1;
  for (int q = 0; q < queries; ++q) cols *= symbol;

  rmat p = rmat::Zero(nc, cols);
  std::vector<cvec> cq(static_cast<size_t>(nc), cvec::Zero(cols));
  const double pa = 1.0 / static_cast<double>(nc);
  std::vector<Index> sym(queries);
  for (Index col = 0; col < cols; ++col) {
    Index rem = col;
    for (int q = queries - 1; q >= 0; --q) {
      sym[q] = rem % symbol;
      rem /= symbol;
    }
    for (int a = 0; a < nc; ++a) {
      double amp = 1.0;
      for (int q = 0; q < queries && amp > 0.0; ++q) {
        const int x = static_cast<int>(sym[q] / 2);
        const int y = static_cast<int>(sym[q] % 2);
        amp = concepts[a][x] == y ? amp * std::sqrt(p_x(x)) : 0.0;
      }
      cq[a](col) = amp;
      p(a, col) = pa * amp * amp;
    }
  }
  ExactLearningInstance out;
  out.concept_count = nc;
  out.bits = bits;
  out.queries = queries;
  out.p_x = p_x;
  out.p_ab = make_table(std::move(p));
  out.cq_states = std::move(cq);
  return out;
}

}  // namespace minentlab
