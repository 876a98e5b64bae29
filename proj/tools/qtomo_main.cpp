// qtomo command-line driver. Every run is described by one JSON config;
// flags only override seed, count and paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtomo/qtomo.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct CliError {
  std::string kind;
  std::string message;
};

[[noreturn]] void config_error(const std::string& message) { throw CliError{"config_error", message}; }

void check(int status) {
  if (status == QTOMO_OK) return;
  const std::string kind = (status == QTOMO_ERR_IO) ? "file_error" : qtomo_status_name(status);
  throw CliError{kind, qtomo_last_error()};
}

struct RunConfig {
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> count;
  std::optional<fs::path> state_path, records_path, output_path;
  std::optional<json> target;
  int convention = QTOMO_CONVENTION_Y;
  std::optional<int> two_j;
  double grid_min = -6.0, grid_max = 6.0;
  std::size_t grid_points = 241;
};

template <typename T>
T field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError{"file_error", "cannot open config '" + path.string() + "'"};
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    config_error("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) config_error("config must be a JSON object");

  static const std::vector<std::string> known{"mode",        "seed",   "count",      "state_path", "records_path",
                                              "output_path", "target", "convention", "two_j",      "kernel_grid"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      config_error("unknown config field '" + item.key() + "'");
    }
  }

  // Paths in a config resolve against the config's directory.
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  auto path_field = [&](const char* key) -> std::optional<fs::path> {
    if (!doc.contains(key)) return std::nullopt;
    const fs::path p(field<std::string>(doc, key));
    return p.is_absolute() ? p : base / p;
  };

  RunConfig cfg;
  if (doc.contains("mode")) cfg.mode = field<std::string>(doc, "mode");
  if (doc.contains("seed")) cfg.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("count")) cfg.count = field<std::uint64_t>(doc, "count");
  cfg.state_path = path_field("state_path");
  cfg.records_path = path_field("records_path");
  cfg.output_path = path_field("output_path");
  if (doc.contains("target")) cfg.target = doc.at("target");
  if (doc.contains("convention")) {
    const auto c = field<std::string>(doc, "convention");
    if (c == "Y") {
      cfg.convention = QTOMO_CONVENTION_Y;
    } else if (c == "X") {
      cfg.convention = QTOMO_CONVENTION_X;
    } else {
      config_error("convention must be \"Y\" or \"X\"");
    }
  }
  if (doc.contains("two_j")) cfg.two_j = field<int>(doc, "two_j");
  if (doc.contains("kernel_grid")) {
    const json& g = doc.at("kernel_grid");
    if (!g.is_object()) config_error("kernel_grid must be an object {min, max, points}");
    if (g.contains("min")) cfg.grid_min = field<double>(g, "min");
    if (g.contains("max")) cfg.grid_max = field<double>(g, "max");
    if (g.contains("points")) cfg.grid_points = field<std::size_t>(g, "points");
  }
  return cfg;
}

unsigned worker_count() {
  const char* env = std::getenv("QTOMO_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) config_error("QTOMO_WORKERS must be an integer in [1, 1024]");
  return static_cast<unsigned>(v);
}

template <typename T>
const T& require(const std::optional<T>& value, const char* name, const std::string& mode) {
  if (!value) config_error(mode + " requires '" + name + "'");
  return *value;
}

struct StateHandle {
  qtomo_state_t h = nullptr;
  ~StateHandle() { qtomo_state_free(h); }
};
struct RecordsHandle {
  qtomo_records_t h = nullptr;
  ~RecordsHandle() { qtomo_records_free(h); }
};
struct TargetHandle {
  qtomo_target_t h = nullptr;
  TargetHandle() = default;
  TargetHandle(TargetHandle&& other) noexcept : h(std::exchange(other.h, nullptr)) {}
  TargetHandle(const TargetHandle&) = delete;
  TargetHandle& operator=(const TargetHandle&) = delete;
  ~TargetHandle() { qtomo_target_free(h); }
};

void write_text(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{"file_error", "cannot write '" + path->string() + "'"};
  out << text;
  if (!out) throw CliError{"file_error", "write failure on '" + path->string() + "'"};
}

int run_simulate(const RunConfig& cfg, int expected_kind) {
  const auto& state_path = require(cfg.state_path, "state_path", cfg.mode);
  const auto& records_path = require(cfg.records_path, "records_path", cfg.mode);
  const auto seed = require(cfg.seed, "seed", cfg.mode);
  const auto count = require(cfg.count, "count", cfg.mode);
  if (count < 1) config_error("count must be >= 1");

  StateHandle state;
  check(qtomo_state_load(state_path.c_str(), &state.h));
  int kind = 0;
  check(qtomo_state_kind(state.h, &kind));
  if (kind != expected_kind) {
    config_error(cfg.mode + ": state file '" + state_path.string() + "' holds a " +
                 (kind == QTOMO_KIND_HOMODYNE ? "Fock (n_max)" : "spin (two_j)") + " state");
  }
  RecordsHandle records;
  check(qtomo_simulate(state.h, count, seed, worker_count(), &records.h));
  check(qtomo_records_save(records.h, records_path.c_str(), cfg.convention));
  return 0;
}

TargetHandle load_target(const RunConfig& cfg) {
  TargetHandle target;
  const std::string text = require(cfg.target, "target", cfg.mode).dump();
  const int status = qtomo_target_from_json(text.c_str(), &target.h);
  if (status != QTOMO_OK) config_error(std::string("target: ") + qtomo_last_error());
  return target;
}

// two_j from the config, else from the state file.
int resolve_two_j(const RunConfig& cfg) {
  if (cfg.two_j) return *cfg.two_j;
  if (cfg.state_path) {
    StateHandle state;
    check(qtomo_state_load(cfg.state_path->c_str(), &state.h));
    int kind = 0, label = 0;
    check(qtomo_state_kind(state.h, &kind));
    check(qtomo_state_size_label(state.h, &label));
    if (kind == QTOMO_KIND_SPIN) return label;
  }
  config_error(cfg.mode + " with a spin target requires 'two_j' or a spin 'state_path'");
}

int run_reconstruct(const RunConfig& cfg) {
  const auto& records_path = require(cfg.records_path, "records_path", cfg.mode);
  TargetHandle target = load_target(cfg);
  int kind = 0;
  check(qtomo_target_kind(target.h, &kind));
  const int two_j = kind == QTOMO_KIND_SPIN ? resolve_two_j(cfg) : 0;

  RecordsHandle records;
  check(qtomo_records_load(records_path.c_str(), &records.h));
  qtomo_estimate_t est{};
  check(qtomo_reconstruct(records.h, target.h, two_j, worker_count(), &est));
  std::size_t needed = 0;
  check(qtomo_estimate_to_json(target.h, &est, nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(qtomo_estimate_to_json(target.h, &est, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  write_text(cfg.output_path, text);
  return 0;
}

int run_kernel_export(const RunConfig& cfg) {
  const auto& output_path = require(cfg.output_path, "output_path", cfg.mode);
  TargetHandle target = load_target(cfg);
  int kind = 0;
  check(qtomo_target_kind(target.h, &kind));
  const int two_j = kind == QTOMO_KIND_SPIN ? resolve_two_j(cfg) : 0;
  const int status =
      qtomo_kernel_export(target.h, two_j, cfg.grid_min, cfg.grid_max, cfg.grid_points, output_path.c_str());
  if (status == QTOMO_ERR_INVALID_ARGUMENT) config_error(qtomo_last_error());
  check(status);
  return 0;
}

int run_validate(const RunConfig& cfg) {
  int all_passed = 0;
  std::size_t needed = 0;
  check(qtomo_validate(nullptr, nullptr, 0, &needed, &all_passed));
  std::string report(needed, '\0');
  check(qtomo_validate(cfg.output_path ? cfg.output_path->c_str() : nullptr, report.data(), report.size(), &needed,
                       &all_passed));
  report.resize(needed - 1);
  std::cout << report;
  if (!all_passed) {
    json failed = json::array();
    std::istringstream lines(report);
    for (std::string line; std::getline(lines, line);) {
      if (line.size() >= 4 && line.compare(line.size() - 4, 4, "FAIL") == 0) failed.push_back(line.substr(0, line.find(':')));
    }
    std::cerr << json{{"error", "validation_failed"}, {"failed", failed}}.dump() << "\n";
    return kExitValidation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-theoretical quantum tomography: simulate, reconstruct, export kernels, validate."};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed, count;
  std::optional<std::string> state, records, output;
  const std::vector<std::pair<std::string, std::string>> modes{
      {"simulate-homodyne", "sample (phi, y) quadrature records from a Fock-basis state"},
      {"simulate-spin", "sample (axis, two_m) spin records from a spin state"},
      {"reconstruct", "average the target's estimator over a record file"},
      {"kernel-export", "tabulate the target's estimator on a grid as CSV"},
      {"validate", "run the oracle suites and print a pass/fail report"}};
  for (const auto& [mode, help] : modes) {
    auto* sub = app.add_subcommand(mode, help);
    sub->add_option("-c,--config", config_path, "run config (JSON)");
    sub->add_option("--seed", seed, "override seed");
    sub->add_option("--count", count, "override count");
    sub->add_option("--state", state, "override state_path");
    sub->add_option("--records", records, "override records_path");
    sub->add_option("--output", output, "override output_path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "config_error"}, {"message", e.what()}}.dump() << "\n";
    return kExitConfig;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else if (mode != "validate") {
      config_error(mode + " requires --config");
    }
    if (!cfg.mode.empty() && cfg.mode != mode) {
      config_error("config mode '" + cfg.mode + "' does not match subcommand '" + mode + "'");
    }
    cfg.mode = mode;
    if (seed) cfg.seed = seed;
    if (count) cfg.count = count;
    if (state) cfg.state_path = fs::path(*state);
    if (records) cfg.records_path = fs::path(*records);
    if (output) cfg.output_path = fs::path(*output);

    if (mode == "simulate-homodyne") return run_simulate(cfg, QTOMO_KIND_HOMODYNE);
    if (mode == "simulate-spin") return run_simulate(cfg, QTOMO_KIND_SPIN);
    if (mode == "reconstruct") return run_reconstruct(cfg);
    if (mode == "kernel-export") return run_kernel_export(cfg);
    return run_validate(cfg);
  } catch (const CliError& e) {
    std::cerr << json{{"error", e.kind}, {"mode", mode}, {"message", e.message}}.dump() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal_error"}, {"mode", mode}, {"message", e.what()}}.dump() << "\n";
    return kExitConfig;
  }
}
