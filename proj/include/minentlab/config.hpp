#pragma once
// Experiment configuration: versioned JSON schema, validation with
// field-path diagnostics, and the canonical hash recorded in every report.

#include <minentlab/quantum.hpp>  // InvalidInput

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace minentlab {

using Json = nlohmann::ordered_json;

inline const std::set<std::string>& known_commands() {
  static const std::set<std::string> commands = {
      "discretize",     "minent",        "singlet-fraction", "verify-classical",
      "verify-qfano",   "verify-prop2",  "verify-prop3",     "verify-dephasing",
      "verify-thm1",    "verify-thm2",   "simulate",         "exact-learning"};
  return commands;
}

namespace detail {

// Type-safe field access for documents that have not been validated yet;
// the validator must diagnose malformed input, never throw on it.
inline std::string str_or(const Json& j, const char* key, const std::string& fallback) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string()) return fallback;
  return j[key].get<std::string>();
}

inline bool needs_seed(const Json& config) {
  const std::string command = str_or(config, "command", "");
  if (command == "verify-classical" || command == "verify-qfano" ||
      command == "verify-dephasing" || command == "simulate")
    return true;
  const Json params = config.is_object() ? config.value("params", Json::object()) : Json::object();
  if (command == "minent" || command == "singlet-fraction") {
    const std::string state = str_or(params, "state", "bell");
    return state == "pure-random" || state == "mixed-random";
  }
  if (command == "verify-thm1" || command == "verify-thm2")
    return str_or(params, "channel", "identity") == "random";
  return false;
}

inline void check_positive_number(const Json& params, const std::string& key,
                                  const std::string& path, std::vector<std::string>& out) {
  if (!params.contains(key)) return;
  if (!params[key].is_number() || params[key].get<double>() <= 0.0)
    out.push_back(path + "." + key + ": must be a positive number");
}

inline void check_positive_integer(const Json& params, const std::string& key,
                                   const std::string& path, std::vector<std::string>& out) {
  if (!params.contains(key)) return;
  if (!params[key].is_number_integer() || params[key].get<long long>() < 1)
    out.push_back(path + "." + key + ": must be a positive integer");
}

}  // namespace detail

// Empty result iff the document is schema-valid; diagnostics name the
// offending field.
inline std::vector<std::string> validate_config_json(const Json& config) {
  std::vector<std::string> out;
  if (!config.is_object()) {
    out.push_back("$: config must be a JSON object");
    return out;
  }
  if (!config.contains("schema"))
    out.push_back("schema: missing (expected 1)");
  else if (!config["schema"].is_number_integer() || config["schema"].get<int>() != 1)
    out.push_back("schema: unsupported version (expected 1)");

  if (!config.contains("command") || !config["command"].is_string())
    out.push_back("command: missing or not a string");
  else if (!known_commands().count(config["command"].get<std::string>()))
    out.push_back("command: unknown command '" + config["command"].get<std::string>() + "'");

  if (config.contains("seed")) {
    const Json& s = config["seed"];
    if (!(s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0)))
      out.push_back("seed: must be a nonnegative integer");
  }
  if (config.contains("tol")) {
    if (!config["tol"].is_number() || config["tol"].get<double>() < 1e-9)
      out.push_back("tol: must be a number >= 1e-9");
  }
  if (config.contains("format")) {
    const std::string f = config["format"].is_string() ? config["format"].get<std::string>() : "";
    if (f != "jsonl" && f != "csv") out.push_back("format: must be 'jsonl' or 'csv'");
  }
  if (config.contains("params") && !config["params"].is_object())
    out.push_back("params: must be an object");

  if (detail::needs_seed(config) && !config.contains("seed"))
    out.push_back("seed: required for randomized suites");

  Json params = config.value("params", Json::object());
  if (!params.is_object()) params = Json::object();  // already diagnosed above
  detail::check_positive_number(params, "epsilon", "params", out);
  detail::check_positive_number(params, "q", "params", out);
  detail::check_positive_integer(params, "n", "params", out);
  detail::check_positive_integer(params, "count", "params", out);
  detail::check_positive_integer(params, "samples", "params", out);
  detail::check_positive_integer(params, "dim", "params", out);
  detail::check_positive_integer(params, "partition-size", "params", out);
  detail::check_positive_integer(params, "packing-size", "params", out);
  detail::check_positive_integer(params, "bits", "params", out);
  detail::check_positive_integer(params, "queries", "params", out);
  if (params.contains("lambda")) {
    if (!params["lambda"].is_number() || params["lambda"].get<double>() < 0.0 ||
        params["lambda"].get<double>() > 1.0)
      out.push_back("params.lambda: must be a number in [0, 1]");
  }
  if (params.contains("bounds")) {
    if (!params["bounds"].is_array() || params["bounds"].empty())
      out.push_back("params.bounds: must be a non-empty array of [lo, hi] pairs");
    else
      for (const auto& b : params["bounds"])
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number() ||
            b[0].get<double>() >= b[1].get<double>()) {
          out.push_back("params.bounds: entries must be [lo, hi] with lo < hi");
          break;
        }
  }
  if (params.contains("counts")) {
    if (!params["counts"].is_array() || params["counts"].empty())
      out.push_back("params.counts: must be a non-empty array of positive integers");
    else
      for (const auto& c : params["counts"])
        if (!c.is_number_integer() || c.get<long long>() < 1) {
          out.push_back("params.counts: entries must be positive integers");
          break;
        }
  }
  if (params.contains("concepts")) {
    if (!params["concepts"].is_array() || params["concepts"].empty())
      out.push_back("params.concepts: must be a non-empty array of label tables");
    else
      for (const auto& c : params["concepts"])
        if (!c.is_array() || c.empty()) {
          out.push_back("params.concepts: each concept must be a non-empty label array");
          break;
        }
  }
  return out;
}

// Reads and validates a config file; throws on I/O failure, reports parse
// and schema problems as diagnostics.
inline std::vector<std::string> validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("validate_config: cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json config = Json::parse(buffer.str(), nullptr, false);
  if (config.is_discarded()) return {"$: file is not valid JSON"};
  return validate_config_json(config);
}

inline Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Json::parse(buffer.str());
}

// FNV-1a over the semantic fields; excludes output routing so the hash
// identifies the experiment, not the destination.
inline std::string config_hash(const Json& config) {
  Json semantic = Json::object();
  for (const std::string& key : {"schema", "command", "seed", "tol", "params"})
    if (config.contains(key)) semantic[key] = config[key];
  const std::string dump = semantic.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace minentlab
