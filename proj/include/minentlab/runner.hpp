#pragma once
// Suite orchestration: builds the canonical experiment family behind each
// CLI command, dispatches instances to a bounded worker pool, and
// serializes the resulting reports as JSONL or CSV with full-precision
// round trips.  Report order is instance order regardless of scheduling.

#include <minentlab/bounds.hpp>
#include <minentlab/config.hpp>
#include <minentlab/discretize.hpp>
#include <minentlab/entfrac.hpp>
#include <minentlab/entropy.hpp>
#include <minentlab/learning.hpp>
#include <minentlab/minent_sdp.hpp>
#include <minentlab/quantum.hpp>
#include <minentlab/report.hpp>
#include <minentlab/rng.hpp>
#include <minentlab/sampling.hpp>

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace minentlab {

// Hardware concurrency, capped by MINENTLAB_THREADS when set.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("MINENTLAB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap >= 1 && cap < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

// Runs job(0..n-1) on the pool; jobs must write to index-distinct slots.
// The first exception is rethrown after all workers stop.
template <typename F>
inline void parallel_for(size_t n, F&& job) {
  const size_t workers = std::min<size_t>(worker_count(), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::exception_ptr first;
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

// Collects per-instance report lists and flattens them in instance order.
template <typename F>
inline std::vector<BoundReport> run_indexed(size_t n, F&& job) {
  std::vector<std::vector<BoundReport>> slots(n);
  parallel_for(n, [&](size_t i) { slots[i] = job(i); });
  std::vector<BoundReport> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------- export

inline constexpr const char* kCsvHeader = "name,lhs,rhs,slack,pass,instance,seed,config_hash";

namespace detail {

// %.17g round-trips every finite double exactly through strtod.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace detail

inline Json report_to_json(const BoundReport& r) {
  Json j = Json::object();
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["pass"] = r.pass;
  j["instance"] = r.instance;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  return j;
}

inline BoundReport report_from_json(const Json& j) {
  BoundReport r;
  r.name = j.at("name").get<std::string>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.slack = j.at("slack").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.instance = j.at("instance").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_hash = j.at("config_hash").get<std::string>();
  return r;
}

inline void export_jsonl(const std::vector<BoundReport>& reports, std::ostream& out) {
  if (reports.empty()) throw InvalidInput("export_jsonl: no reports");
  for (const auto& r : reports) out << report_to_json(r).dump() << '\n';
}

inline void export_csv(const std::vector<BoundReport>& reports, std::ostream& out) {
  if (reports.empty()) throw InvalidInput("export_csv: no reports");
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    out << detail::csv_escape(r.name) << ',' << detail::format_double(r.lhs) << ','
        << detail::format_double(r.rhs) << ',' << detail::format_double(r.slack) << ','
        << (r.pass ? "true" : "false") << ',' << detail::csv_escape(r.instance) << ',' << r.seed
        << ',' << detail::csv_escape(r.config_hash) << '\n';
  }
}

inline std::vector<BoundReport> import_jsonl(std::istream& in) {
  std::vector<BoundReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(report_from_json(Json::parse(line)));
  }
  return out;
}

inline std::vector<BoundReport> import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("import_csv: empty stream");
  if (line != kCsvHeader) throw InvalidInput("import_csv: unexpected header");
  std::vector<BoundReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() != 8) throw InvalidInput("import_csv: wrong field count");
    BoundReport r;
    r.name = f[0];
    r.lhs = std::strtod(f[1].c_str(), nullptr);
    r.rhs = std::strtod(f[2].c_str(), nullptr);
    r.slack = std::strtod(f[3].c_str(), nullptr);
    r.pass = f[4] == "true";
    r.instance = f[5];
    r.seed = std::strtoull(f[6].c_str(), nullptr, 10);
    r.config_hash = f[7];
    out.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------- fixtures

// Symmetric binary joint table: correct label with probability 1 - q.
inline JointTable bsc_table(double q) {
  rmat p(2, 2);
  p << (1.0 - q) / 2.0, q / 2.0, q / 2.0, (1.0 - q) / 2.0;
  return make_table(std::move(p));
}

// k unit-interval cell midpoints with half-cell radius; greedy keeps every
// midpoint, so the result is simultaneously a packing, a net, and its own
// covering partition.
inline Discretization canonical_partition(int k) {
  if (k < 1) throw InvalidInput("canonical_partition: need at least one cell");
  MetricSpace space;
  space.metric = Metric::absolute_difference;
  space.bounds = {{0.0, 1.0}};
  for (int i = 0; i < k; ++i) space.points.push_back({(i + 0.5) / k});
  return covering_partition(greedy_packing_net(space, 0.5 / k));
}

// Greedy centers on a uniform [0, 1] candidate grid, partitioned.
inline Discretization unit_grid_disc(double radius, int points = 101) {
  const MetricSpace space = make_grid_space({{0.0, 1.0}}, {points}, Metric::absolute_difference);
  return covering_partition(greedy_packing_net(space, radius));
}

// Cell-constant observation model: identity signal mixed with uniform noise
// of weight kappa over `observations` outcomes.
inline LearningTask noisy_cell_task(const Discretization& disc, int observations, double kappa,
                                    double epsilon, LossKind loss, ScoreKind score) {
  const Index k = static_cast<Index>(disc.size());
  if (observations < static_cast<int>(k))
    throw InvalidInput("noisy_cell_task: need at least one observation per cell");
  rmat like = rmat::Constant(observations, k, kappa / observations);
  for (Index w = 0; w < k; ++w) like(w, w) += 1.0 - kappa;
  const rvec prior = rvec::Constant(k, 1.0 / static_cast<double>(k));
  return make_learning_task(disc, std::move(like), prior, loss, score, epsilon);
}

// "identity", "dephasing", "measure-prepare", "depolarizing[:lambda]",
// "random", or "family" (identity + five depolarizing weights + dephasing +
// twenty seeded random CPTP maps).
inline std::vector<std::pair<std::string, Channel>> channel_suite(const std::string& spec, Index k,
                                                                  std::uint64_t seed) {
  std::vector<std::pair<std::string, Channel>> out;
  auto add_random = [&](int count) {
    for (int i = 0; i < count; ++i) {
      Rng rng(seed, 7000u + 100u * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(i));
      char label[32];
      std::snprintf(label, sizeof(label), "random:%d", i);
      out.emplace_back(label, random_channel(rng, k, k, k));
    }
  };
  if (spec == "identity") {
    out.emplace_back("identity", identity_channel(k));
  } else if (spec == "dephasing") {
    out.emplace_back("dephasing", dephase(k));
  } else if (spec == "measure-prepare") {
    out.emplace_back("measure-prepare", measure_prepare(k));
  } else if (spec.rfind("depolarizing", 0) == 0) {
    double lam = 1.0;
    const size_t colon = spec.find(':');
    if (colon != std::string::npos) {
      try {
        lam = std::stod(spec.substr(colon + 1));
      } catch (const std::exception&) {
        throw InvalidInput("channel_suite: bad depolarizing parameter in '" + spec + "'");
      }
    }
    out.emplace_back(spec, depolarizing(k, lam));
  } else if (spec == "random") {
    add_random(1);
  } else if (spec == "family") {
    out.emplace_back("identity", identity_channel(k));
    for (double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      char label[32];
      std::snprintf(label, sizeof(label), "depolarizing:%.2f", lam);
      out.emplace_back(label, depolarizing(k, lam));
    }
    out.emplace_back("dephasing", dephase(k));
    add_random(20);
  } else {
    throw InvalidInput("channel_suite: unknown channel spec '" + spec + "'");
  }
  return out;
}

// Registered estimator names: "map-center" (MAP cell center per
// observation), "fixed:<w>" (constant center w), "posterior-mean"
// (posterior-weighted average of centers).
inline Estimator make_estimator(const std::string& name, const LearningTask& task) {
  const JointTable joint = induced_joint(task, task.disc);
  std::vector<Point> centers;
  for (size_t w = 0; w < task.disc.size(); ++w) centers.push_back(task.disc.center(w));
  if (name == "map-center") {
    const std::vector<int> dec = map_decoder_success(joint).decoder;
    return [dec, centers](int b) { return centers[dec[b]]; };
  }
  if (name.rfind("fixed:", 0) == 0) {
    int w = -1;
    try {
      w = std::stoi(name.substr(6));
    } catch (const std::exception&) {
      throw InvalidInput("make_estimator: bad fixed index in '" + name + "'");
    }
    if (w < 0 || w >= static_cast<int>(centers.size()))
      throw InvalidInput("make_estimator: fixed center index out of range");
    const Point c = centers[w];
    return [c](int) { return c; };
  }
  if (name == "posterior-mean") {
    const size_t dim = centers[0].size();
    std::vector<Point> means(joint.cols(), Point(dim, 0.0));
    for (Index b = 0; b < joint.cols(); ++b) {
      double mass = 0.0;
      for (Index w = 0; w < joint.rows(); ++w) mass += joint.p(w, b);
      for (Index w = 0; w < joint.rows(); ++w) {
        // Zero-probability observations fall back to the prior.
        const double weight = mass > 0.0 ? joint.p(w, b) / mass : task.prior(w);
        for (size_t c = 0; c < dim; ++c) means[b][c] += weight * centers[w][c];
      }
    }
    return [means](int b) { return means[b]; };
  }
  throw InvalidInput("make_estimator: unknown estimator '" + name + "'");
}

// ---------------------------------------------------------------- suites

namespace detail {

inline std::string state_label(const std::string& state, const DensityOperator& rho, size_t i) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "state=%s; d=%d; instance=%zu", state.c_str(),
                static_cast<int>(rho.dims[0]), i);
  return std::string(buf);
}

}  // namespace detail

inline std::vector<BoundReport> suite_discretize(const Json& params) {
  std::vector<std::array<double, 2>> bounds = {{0.0, 1.0}};
  if (params.contains("bounds")) {
    bounds.clear();
    for (const auto& b : params["bounds"]) bounds.push_back({b[0].get<double>(), b[1].get<double>()});
  }
  std::vector<int> counts(bounds.size(), 101);
  if (params.contains("counts")) {
    counts.clear();
    for (const auto& c : params["counts"]) counts.push_back(c.get<int>());
  }
  const double epsilon = params.value("epsilon", 0.3);
  const std::string metric_name = params.value("metric", "euclidean");
  Metric metric = Metric::euclidean;
  if (metric_name == "max") metric = Metric::absolute_difference;
  else if (metric_name != "euclidean")
    throw InvalidInput("discretize: unknown metric '" + metric_name + "'");

  const MetricSpace space = make_grid_space(bounds, counts, metric);
  const Discretization disc = covering_partition(greedy_packing_net(space, epsilon));

  char label[96];
  std::snprintf(label, sizeof(label), "epsilon=%g; centers=%zu; points=%zu", epsilon, disc.size(),
                disc.space.points.size());

  double min_pair = std::numeric_limits<double>::infinity();
  for (size_t v = 0; v < disc.size(); ++v)
    for (size_t u = v + 1; u < disc.size(); ++u)
      min_pair = std::min(min_pair, distance(space, disc.center(v), disc.center(u)));
  if (!std::isfinite(min_pair)) min_pair = epsilon;  // single center: vacuous packing

  double coverage = 0.0;
  for (const auto& p : space.points) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t w = 0; w < disc.size(); ++w) best = std::min(best, distance(space, p, disc.center(w)));
    coverage = std::max(coverage, best);
  }

  const std::vector<std::string> violations = validate_discretization(disc);

  std::vector<BoundReport> out;
  out.push_back(make_report("packing-min-distance", min_pair, epsilon, label));
  out.push_back(make_report("net-coverage", epsilon, coverage, label));
  out.push_back(
      make_report("discretization-valid", 0.0, static_cast<double>(violations.size()), label));
  return out;
}

inline std::vector<BoundReport> suite_minent(const Json& params, std::uint64_t seed) {
  const std::string state = params.value("state", "bell");
  const Index d = params.value("dim", 2);
  const bool randomized = state == "pure-random" || state == "mixed-random";
  const int count = params.value("count", randomized ? 20 : 1);
  const double q = params.value("q", 0.25);
  return run_indexed(static_cast<size_t>(count), [&](size_t i) {
    Rng rng(seed, i);
    DensityOperator rho;
    bool pure = false, classical = false;
    if (state == "bell") {
      rho = maximally_entangled(d);
      pure = true;
    } else if (state == "product") {
      cvec amps = cvec::Zero(d * d);
      amps(0) = 1.0;
      rho = pure_state(std::move(amps), {d, d});
      pure = true;
    } else if (state == "pure-random") {
      rho = random_pure_state(rng, {d, d});
      pure = true;
    } else if (state == "mixed-random") {
      rho = random_mixed_state(rng, {d, d});
    } else if (state == "bsc") {
      rho = diagonal_embedding(bsc_table(q));
      classical = true;
    } else {
      throw InvalidInput("minent: unknown state '" + state + "'");
    }
    const std::string label = detail::state_label(state, rho, i);
    const SdpSolution sol = solve_hmin(rho, 1e-8);
    std::vector<BoundReport> out;
    BoundReport duality =
        make_equality_report("minent-duality", sol.primal_value, sol.dual_value, label, 1e-7);
    duality.pass = duality.pass && sol.status == SdpStatus::optimal;
    out.push_back(std::move(duality));
    if (pure)
      out.push_back(make_equality_report("minent-schmidt-oracle", sol.primal_value,
                                         pure_state_hmin_oracle(rho), label, 1e-6));
    if (classical)
      out.push_back(make_equality_report("minent-classical-oracle", sol.primal_value,
                                         classical_hmin_success(bsc_table(q)).success, label, 1e-6));
    return out;
  });
}

inline std::vector<BoundReport> suite_singlet_fraction(const Json& params, std::uint64_t seed) {
  const std::string state = params.value("state", "bell");
  const Index d = params.value("dim", 2);
  const bool randomized = state == "pure-random" || state == "mixed-random";
  const int count = params.value("count", randomized ? 20 : 1);
  const double lambda = params.value("lambda", 0.5);
  return run_indexed(static_cast<size_t>(count), [&](size_t i) {
    Rng rng(seed, i);
    DensityOperator rho;
    if (state == "bell") {
      rho = maximally_entangled(d);
    } else if (state == "isotropic") {
      rho = apply_channel(depolarizing(d, lambda), maximally_entangled(d), 1);
    } else if (state == "pure-random") {
      rho = random_pure_state(rng, {d, d});
    } else if (state == "mixed-random") {
      rho = random_mixed_state(rng, {d, d});
    } else {
      throw InvalidInput("singlet-fraction: unknown state '" + state + "'");
    }
    const std::string label = detail::state_label(state, rho, i);
    const SdpSolution sol = solve_hmin(rho, 1e-8);
    const Channel dec = channel_from_dual(sol, d, d);
    const double achieved = singlet_fraction_given_decoder(rho, dec);
    std::vector<BoundReport> out;
    out.push_back(make_report("optimal-vs-decoder", sol.primal_value, achieved, label, 1e-6));
    out.push_back(make_equality_report("decoder-achieves-dual", achieved, sol.dual_value, label, 1e-6));
    return out;
  });
}

inline std::vector<BoundReport> suite_verify_classical(const Json& params, std::uint64_t seed) {
  const std::string suite = params.value("suite", "random-tables");
  if (suite != "random-tables")
    throw InvalidInput("verify-classical: unknown suite '" + suite + "'");
  const int n = params.value("n", 1000);
  return run_indexed(static_cast<size_t>(n), [&](size_t i) {
    Rng rng(seed, i);
    const Index a = 2 + static_cast<Index>(rng.uniform_int(5));
    const Index b = 2 + static_cast<Index>(rng.uniform_int(5));
    const JointTable t = random_table(rng, a, b);
    char label[64];
    std::snprintf(label, sizeof(label), "table=%zu; A=%d; B=%d", i, static_cast<int>(a),
                  static_cast<int>(b));
    const HminResult h = classical_hmin_success(t);
    std::vector<BoundReport> out;
    out.push_back(fano_check(t, h.success, label));
    out.push_back(guarantee_check(t, label));
    out.push_back(make_report("hmin-le-h", conditional_shannon(t), h.hmin, label));
    return out;
  });
}

inline std::vector<BoundReport> suite_verify_qfano(const Json& params, std::uint64_t seed) {
  const int n = params.value("n", 1000);
  return run_indexed(static_cast<size_t>(n), [&](size_t i) {
    Rng rng(seed, i);
    const Index d = 2 + static_cast<Index>(rng.uniform_int(2));
    const DensityOperator psi = random_pure_state(rng, {d, d});
    const DensityOperator rho = random_mixed_state(rng, {d, d});
    char label[64];
    std::snprintf(label, sizeof(label), "pair=%zu; d=%d", i, static_cast<int>(d));
    std::vector<BoundReport> out;
    out.push_back(quantum_fano_check(psi, rho, d, label));
    out.push_back(quantum_fano_singlet_check(rho, d, label));
    return out;
  });
}

inline std::vector<BoundReport> suite_verify_dephasing(const Json& params, std::uint64_t seed) {
  const int n = params.value("n", 100);
  return run_indexed(static_cast<size_t>(n), [&](size_t i) {
    Rng rng(seed, i);
    const Index d = 2 + static_cast<Index>(rng.uniform_int(2));
    const DensityOperator rho = random_mixed_state(rng, {d, d});
    char label[64];
    std::snprintf(label, sizeof(label), "state=%zu; d=%d", i, static_cast<int>(d));
    return std::vector<BoundReport>{dephasing_reduction_check(rho, label)};
  });
}

struct NoisySpec {
  double radius;        // greedy packing/net radius on the candidate grid
  double epsilon;       // loss/score threshold
  int observations;
  double kappa;         // uniform-noise weight in the likelihood
};

inline std::vector<NoisySpec> packed_task_specs(const Json& params) {
  if (params.contains("kappa")) return {{0.26, 0.13, 6, params["kappa"].get<double>()}};
  return {{0.26, 0.13, 6, 0.0}, {0.26, 0.13, 6, 0.3}, {0.26, 0.13, 6, 1.0}, {0.6, 0.3, 4, 0.4}};
}

inline std::vector<BoundReport> suite_verify_prop2(const Json& params) {
  const std::vector<NoisySpec> specs = packed_task_specs(params);
  const int points = params.value("points", 101);
  return run_indexed(specs.size(), [&](size_t i) {
    const NoisySpec s = specs[i];
    const LearningTask task = noisy_cell_task(unit_grid_disc(s.radius, points), s.observations,
                                              s.kappa, s.epsilon, LossKind::zero_one,
                                              ScoreKind::indicator);
    const double hvb = conditional_shannon(induced_joint(task, task.disc));
    char label[96];
    std::snprintf(label, sizeof(label), "kappa=%g; V=%d; B=%d; eps=%g", s.kappa,
                  static_cast<int>(task.cells()), s.observations, s.epsilon);
    const double lhs = exhaustive_minimax_risk(task);
    const double rhs = minimax_bound(hvb, task.cells(), loss_value(task, s.epsilon));
    return std::vector<BoundReport>{make_report("minimax-vs-entropy-bound", lhs, rhs, label)};
  });
}

inline std::vector<BoundReport> suite_verify_prop3(const Json& params) {
  std::vector<double> kappas = {0.0, 0.3, 1.0};
  if (params.contains("kappa")) kappas = {params["kappa"].get<double>()};
  const int points = params.value("points", 101);
  return run_indexed(kappas.size(), [&](size_t i) {
    const double kappa = kappas[i];
    const LearningTask task = noisy_cell_task(unit_grid_disc(0.26, points), 6, kappa, 0.26,
                                              LossKind::zero_one, ScoreKind::indicator);
    const JointTable joint = induced_joint(task, task.disc);
    const double hwb = conditional_shannon(joint);
    char label[96];
    std::snprintf(label, sizeof(label), "kappa=%g; W=%d; B=%d; eps=%g", kappa,
                  static_cast<int>(task.cells()), 6, task.epsilon);
    std::vector<BoundReport> out;
    out.push_back(make_report("bestcell-vs-score-bound", std::log2(best_cell_success(joint)),
                              learning_guarantee_bound(hwb, score_value(task, task.epsilon)),
                              label));
    out.push_back(make_report("map-vs-entropy-bound", map_decoder_success(joint).success,
                              std::exp2(-hwb), label));
    return out;
  });
}

inline std::vector<BoundReport> suite_verify_thm1(const Json& params, std::uint64_t seed,
                                                  double tol) {
  std::vector<int> sizes = {2, 3, 4};
  if (params.contains("partition-size")) sizes = {params["partition-size"].get<int>()};
  const std::string chspec = params.value("channel", "family");
  std::vector<std::pair<int, std::pair<std::string, Channel>>> jobs;
  for (int k : sizes)
    for (auto& named : channel_suite(chspec, k, seed)) jobs.emplace_back(k, std::move(named));
  return run_indexed(jobs.size(), [&](size_t i) {
    const int k = jobs[i].first;
    char label[96];
    std::snprintf(label, sizeof(label), "channel=%s; cells=%d", jobs[i].second.first.c_str(), k);
    return std::vector<BoundReport>{
        verify_thm1(canonical_partition(k), jobs[i].second.second, tol, label)};
  });
}

inline std::vector<BoundReport> suite_verify_thm2(const Json& params, std::uint64_t seed,
                                                  double tol) {
  std::vector<int> sizes = {2, 3, 4};
  if (params.contains("packing-size")) sizes = {params["packing-size"].get<int>()};
  const std::string chspec = params.value("channel", "family");
  std::vector<std::pair<int, std::pair<std::string, Channel>>> jobs;
  for (int k : sizes)
    for (auto& named : channel_suite(chspec, k, seed)) jobs.emplace_back(k, std::move(named));
  return run_indexed(jobs.size(), [&](size_t i) {
    const int k = jobs[i].first;
    char label[96];
    std::snprintf(label, sizeof(label), "channel=%s; centers=%d", jobs[i].second.first.c_str(), k);
    return std::vector<BoundReport>{
        verify_thm2(canonical_partition(k), jobs[i].second.second, tol, label)};
  });
}

inline std::vector<BoundReport> suite_simulate(const Json& params, std::uint64_t seed) {
  const int samples = params.value("samples", 20000);
  const std::string est_name = params.value("estimator", "map-center");
  const std::vector<NoisySpec> specs = packed_task_specs(params);
  const int points = params.value("points", 101);
  return run_indexed(specs.size(), [&](size_t i) {
    const NoisySpec s = specs[i];
    const LearningTask task = noisy_cell_task(unit_grid_disc(s.radius, points), s.observations,
                                              s.kappa, s.epsilon, LossKind::zero_one,
                                              ScoreKind::indicator);
    const JointTable joint = induced_joint(task, task.disc);
    const double hvb = conditional_shannon(joint);
    const Estimator est = make_estimator(est_name, task);
    const RiskEstimate risk = monte_carlo_risk(task, est, samples, seed + 1000003ULL * i);
    char label[128];
    std::snprintf(label, sizeof(label), "kappa=%g; V=%d; estimator=%s; samples=%d", s.kappa,
                  static_cast<int>(task.cells()), est_name.c_str(), samples);
    std::vector<BoundReport> out;
    // Sampling noise wideness: two half-widths on top of the analytic slack.
    out.push_back(make_report("simulated-risk-vs-minimax-bound", risk.expected_loss,
                              minimax_bound(hvb, task.cells(), loss_value(task, s.epsilon)), label,
                              2.0 * risk.loss_half_width + 1e-9));
    if (est_name == "map-center") {
      out.push_back(make_report("simulated-success-vs-guarantee", risk.success_prob,
                                std::exp2(-hvb), label, 2.0 * risk.half_width + 1e-9));
      out.push_back(make_equality_report("simulated-vs-exact-success", risk.success_prob,
                                         map_decoder_success(joint).success, label,
                                         2.0 * risk.half_width + 1e-9));
    }
    return out;
  });
}

inline std::vector<BoundReport> suite_exact_learning(const Json& params) {
  const int bits = params.value("bits", 2);
  const int queries = params.value("queries", 1);
  const int nx = 1 << bits;
  std::vector<std::vector<int>> concepts;
  if (params.contains("concepts")) {
    for (const auto& c : params["concepts"]) concepts.push_back(c.get<std::vector<int>>());
  } else {
    // Two concepts differing on exactly one input.
    concepts.assign(2, std::vector<int>(nx, 0));
    concepts[1][nx - 1] = 1;
  }
  rvec p_x = rvec::Constant(nx, 1.0 / nx);
  if (params.contains("px")) {
    const std::vector<double> px = params["px"].get<std::vector<double>>();
    p_x = Eigen::Map<const rvec>(px.data(), static_cast<Index>(px.size()));
  }
  const ExactLearningInstance inst = exact_learning_scenario(bits, concepts, queries, p_x);
  const HminResult h = classical_hmin_success(inst.p_ab);
  const double hab = conditional_shannon(inst.p_ab);
  char label[96];
  std::snprintf(label, sizeof(label), "concepts=%d; bits=%d; queries=%d", inst.concept_count, bits,
                queries);

  // Dephasing the coherent example states must reproduce the classical table.
  double cq_success = 0.0;
  const Index cols = inst.p_ab.cols();
  for (Index col = 0; col < cols; ++col) {
    double best = 0.0;
    for (int a = 0; a < inst.concept_count; ++a) {
      const double pr = std::norm(inst.cq_states[a](col)) / inst.concept_count;
      best = std::max(best, pr);
    }
    cq_success += best;
  }

  std::vector<BoundReport> out;
  out.push_back(make_report("exact-learning-guarantee", h.success, std::exp2(-hab), label));
  out.push_back(make_report("exact-learning-hmin-le-h", hab, h.hmin, label));
  out.push_back(make_equality_report("exact-learning-cq-dephasing", cq_success, h.success, label,
                                     1e-12));
  out.push_back(fano_check(inst.p_ab, h.success, label));
  return out;
}

// ------------------------------------------------------------------ run

struct RunResult {
  std::vector<BoundReport> reports;
  int exit_code = 0;
};

// Dispatches a validated config to its suite and stamps seed + config hash
// onto every report.  Throws InvalidInput on a config that fails validation
// here (callers normally validate first for full diagnostics).
inline RunResult run(const Json& config) {
  const std::vector<std::string> diagnostics = validate_config_json(config);
  if (!diagnostics.empty()) throw InvalidInput("run: invalid config: " + diagnostics.front());
  const std::string command = config["command"].get<std::string>();
  const std::uint64_t seed = config.value("seed", std::uint64_t{0});
  const double sdp_tol = config.value("tol", 1e-6);
  const Json params = config.value("params", Json::object());

  RunResult result;
  if (command == "discretize") result.reports = suite_discretize(params);
  else if (command == "minent") result.reports = suite_minent(params, seed);
  else if (command == "singlet-fraction") result.reports = suite_singlet_fraction(params, seed);
  else if (command == "verify-classical") result.reports = suite_verify_classical(params, seed);
  else if (command == "verify-qfano") result.reports = suite_verify_qfano(params, seed);
  else if (command == "verify-prop2") result.reports = suite_verify_prop2(params);
  else if (command == "verify-prop3") result.reports = suite_verify_prop3(params);
  else if (command == "verify-dephasing") result.reports = suite_verify_dephasing(params, seed);
  else if (command == "verify-thm1") result.reports = suite_verify_thm1(params, seed, sdp_tol);
  else if (command == "verify-thm2") result.reports = suite_verify_thm2(params, seed, sdp_tol);
  else if (command == "simulate") result.reports = suite_simulate(params, seed);
  else if (command == "exact-learning") result.reports = suite_exact_learning(params);
  else throw InvalidInput("run: unknown command '" + command + "'");

  const std::string hash = config_hash(config);
  for (BoundReport& r : result.reports) {
    r.seed = seed;
    r.config_hash = hash;
  }
  for (const BoundReport& r : result.reports)
    if (!r.pass) result.exit_code = 1;
  return result;
}

}  // namespace minentlab
