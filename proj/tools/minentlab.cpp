// Command-line front end: builds a config document from a subcommand plus
// flags (flags override --config file contents), validates it, runs the
// suite, and writes the report stream as JSONL or CSV.
//
// Exit codes: 0 all reports pass, 1 at least one report fails, 2 config or
// runtime error.

#include <minentlab/runner.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using minentlab::Json;

struct CliState {
  std::string config_path;
  std::string out_path;
  Json top = Json::object();        // seed / tol / format overrides
  Json overrides = Json::object();  // params overrides
  std::vector<std::pair<std::string, CLI::App*>> commands;
};

void add_common(CLI::App* cmd, CliState& st) {
  cmd->add_option("--config", st.config_path, "JSON config file; flags override its fields");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&st](const std::uint64_t& v) { st.top["seed"] = v; },
      "seed for randomized suites");
  cmd->add_option_function<double>(
      "--tol", [&st](const double& v) { st.top["tol"] = v; },
      "pass tolerance for solver-backed checks (>= 1e-9)");
  cmd->add_option("--out", st.out_path, "report file path (default: stdout)");
  cmd->add_option_function<std::string>(
      "--format", [&st](const std::string& v) { st.top["format"] = v; }, "jsonl or csv");
}

void param_str(CLI::App* cmd, CliState& st, const char* flag, const char* key, const char* help) {
  cmd->add_option_function<std::string>(
      flag, [&st, key](const std::string& v) { st.overrides[key] = v; }, help);
}

void param_int(CLI::App* cmd, CliState& st, const char* flag, const char* key, const char* help) {
  cmd->add_option_function<long long>(
      flag, [&st, key](const long long& v) { st.overrides[key] = v; }, help);
}

void param_double(CLI::App* cmd, CliState& st, const char* flag, const char* key,
                  const char* help) {
  cmd->add_option_function<double>(
      flag, [&st, key](const double& v) { st.overrides[key] = v; }, help);
}

int fail_config(const std::vector<std::string>& diagnostics) {
  for (const std::string& d : diagnostics) std::cerr << "config error: " << d << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification suites for guessing, learning, and entanglement-fraction bounds"};
  app.require_subcommand(1);
  CliState st;

  auto leaf = [&](CLI::App* parent, const char* name, const char* canonical, const char* help) {
    CLI::App* cmd = parent->add_subcommand(name, help);
    add_common(cmd, st);
    st.commands.emplace_back(canonical, cmd);
    return cmd;
  };

  CLI::App* disc = leaf(&app, "discretize", "discretize",
                        "greedy packing/net construction with validity reports");
  param_double(disc, st, "--epsilon", "epsilon", "packing/net radius");
  param_str(disc, st, "--metric", "metric", "euclidean or max");

  CLI::App* minent = leaf(&app, "minent", "minent",
                          "conditional min-entropy program with duality and oracle checks");
  param_str(minent, st, "--state", "state", "bell, product, pure-random, mixed-random, or bsc");
  param_int(minent, st, "--dim", "dim", "local dimension");
  param_int(minent, st, "--count", "count", "number of instances");
  param_double(minent, st, "--q", "q", "flip probability for the bsc state");

  CLI::App* sf = leaf(&app, "singlet-fraction", "singlet-fraction",
                      "optimal singlet fraction and extracted-decoder consistency");
  param_str(sf, st, "--state", "state", "bell, isotropic, pure-random, or mixed-random");
  param_int(sf, st, "--dim", "dim", "local dimension");
  param_int(sf, st, "--count", "count", "number of instances");
  param_double(sf, st, "--lambda", "lambda", "depolarizing weight for the isotropic state");

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->require_subcommand(1);

  CLI::App* vc = leaf(verify, "classical", "verify-classical",
                      "failure-probability and guessing bounds on random joint tables");
  param_str(vc, st, "--suite", "suite", "table family (random-tables)");
  param_int(vc, st, "--n", "n", "number of tables");

  CLI::App* vq = leaf(verify, "qfano", "verify-qfano",
                      "joint-entropy bound on random state/reference pairs");
  param_int(vq, st, "--n", "n", "number of pairs");

  CLI::App* vp2 = leaf(verify, "prop2", "verify-prop2",
                       "exhaustive minimax risk against the entropy lower bound");
  param_double(vp2, st, "--kappa", "kappa", "uniform-noise weight");
  param_int(vp2, st, "--points", "points", "candidate grid size");

  CLI::App* vp3 = leaf(verify, "prop3", "verify-prop3",
                       "best-cell success against the score/entropy bound");
  param_double(vp3, st, "--kappa", "kappa", "uniform-noise weight");
  param_int(vp3, st, "--points", "points", "candidate grid size");

  CLI::App* vd = leaf(verify, "dephasing", "verify-dephasing",
                      "doubly dephased states reduce to diagonal-table guessing");
  param_int(vd, st, "--n", "n", "number of states");

  CLI::App* v1 = leaf(verify, "thm1", "verify-thm1",
                      "recovery value versus conditional entropy on partition singlets");
  param_int(v1, st, "--partition-size", "partition-size", "number of cells (<= 8)");
  param_str(v1, st, "--channel", "channel",
            "identity, dephasing, measure-prepare, depolarizing[:lambda], random, or family");

  CLI::App* v2 = leaf(verify, "thm2", "verify-thm2",
                      "decoding error versus joint entropy on packing singlets");
  param_int(v2, st, "--packing-size", "packing-size", "number of centers (>= 2)");
  param_str(v2, st, "--channel", "channel",
            "identity, dephasing, measure-prepare, depolarizing[:lambda], random, or family");

  CLI::App* sim = leaf(&app, "simulate", "simulate",
                       "seeded Monte Carlo risk against exact values and bounds");
  param_int(sim, st, "--samples", "samples", "sample count per instance");
  param_str(sim, st, "--estimator", "estimator", "map-center, fixed:<w>, or posterior-mean");
  param_double(sim, st, "--kappa", "kappa", "uniform-noise weight");

  CLI::App* el = leaf(&app, "exact-learning", "exact-learning",
                      "boolean concept identification from sampled queries");
  param_int(el, st, "--bits", "bits", "input bits (<= 3)");
  param_int(el, st, "--queries", "queries", "queries per observation (<= 4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (const auto& [name, cmd] : st.commands)
    if (cmd->parsed()) command = name;

  Json config = Json::object();
  if (!st.config_path.empty()) {
    try {
      config = minentlab::load_config(st.config_path);
    } catch (const Json::parse_error&) {
      return fail_config({"$: file is not valid JSON"});
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    }
    if (!config.is_object()) return fail_config({"$: config must be a JSON object"});
  }
  if (!config.contains("schema")) config["schema"] = 1;
  config["command"] = command;  // the subcommand always decides the suite
  for (const auto& [key, value] : st.top.items()) config[key] = value;
  if (!st.overrides.empty()) {
    if (!config.contains("params") || !config["params"].is_object())
      config["params"] = Json::object();
    for (const auto& [key, value] : st.overrides.items()) config["params"][key] = value;
  }

  const std::vector<std::string> diagnostics = minentlab::validate_config_json(config);
  if (!diagnostics.empty()) return fail_config(diagnostics);

  try {
    const minentlab::RunResult result = minentlab::run(config);

    std::ostringstream body;
    if (config.value("format", "jsonl") == "csv")
      minentlab::export_csv(result.reports, body);
    else
      minentlab::export_jsonl(result.reports, body);

    std::string out = st.out_path;
    if (out.empty() && config.contains("out") && config["out"].is_string())
      out = config["out"].get<std::string>();
    if (out.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream file(out, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open '" << out << "' for writing\n";
        return 2;
      }
      file << body.str();
      if (!file) {
        std::cerr << "error: failed while writing '" << out << "'\n";
        return 2;
      }
    }

    size_t failed = 0;
    for (const auto& r : result.reports)
      if (!r.pass) ++failed;
    std::cerr << result.reports.size() << " reports, " << failed << " failed\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
