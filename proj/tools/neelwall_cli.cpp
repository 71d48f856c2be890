// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// neelwall <renorm|minimize|core|sweep|diff|validate> --config FILE --out DIR
//          [--threads N] [--seed U64]
//
// The configuration is a flat YAML map with dotted keys. Every run writes its
// result files and manifest.json (resolved configuration, hashes, status) to
// the output directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "neelwall/neelwall.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_Digest(data.data(), data.size(), md, &n, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON with doubles at 17 significant digits, non-finite values as null.
void write_json(const json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ',';
      first = false;
      out += json(it.key()).dump() + ':';
      write_json(it.value(), out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ',';
      write_json(j[i], out);
    }
    out += ']';
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    out += std::isfinite(v) ? fmt17(v) : "null";
  } else {
    out += j.dump();
  }
}

// Flat dotted-key configuration. Values are YAML scalars or flat sequences.
class Config {
public:
  void load(const std::string& text) {
    const YAML::Node root = YAML::Load(text);
    if (root.IsNull()) return;
    if (!root.IsMap()) throw UsageError("configuration must be a map of dotted keys");
    for (const auto& kv : root) {
      const std::string key = kv.first.as<std::string>();
      if (!known(key)) throw UsageError("unknown configuration key " + key);
      if (kv.second.IsMap()) throw UsageError("nested value for " + key + "; use dotted keys");
      nodes_[key] = kv.second;
    }
  }

  double number(const std::string& key, double fallback) {
    const double v = has(key) ? get<double>(key) : fallback;
    resolved_[key] = v;
    return v;
  }
  long integer(const std::string& key, long fallback) {
    const long v = has(key) ? get<long>(key) : fallback;
    resolved_[key] = v;
    return v;
  }
  bool flag(const std::string& key, bool fallback) {
    const bool v = has(key) ? get<bool>(key) : fallback;
    resolved_[key] = v;
    return v;
  }
  std::string text(const std::string& key, const std::string& fallback) {
    const std::string v = has(key) ? get<std::string>(key) : fallback;
    resolved_[key] = v;
    return v;
  }
  template <class T>
  std::vector<T> list(const std::string& key, const std::vector<T>& fallback) {
    std::vector<T> v = fallback;
    if (has(key)) {
      const YAML::Node& n = nodes_.at(key);
      if (!n.IsSequence()) throw UsageError(key + " must be a list");
      v = get<std::vector<T>>(key);
    }
    resolved_[key] = v;
    return v;
  }
  std::optional<double> optionalNumber(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key, 0);
  }
  template <class T>
  std::optional<std::vector<T>> optionalList(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return list<T>(key, {});
  }
  bool has(const std::string& key) const { return nodes_.count(key) > 0; }
  const json& resolved() const { return resolved_; }

private:
  template <class T>
  T get(const std::string& key) const {
    try {
      return nodes_.at(key).as<T>();
    } catch (const YAML::Exception&) {
      throw UsageError("bad value for " + key);
    }
  }
  static bool known(const std::string& k) {
    static const std::vector<std::string> keys = {
        "walls.alpha",     "walls.positions",     "walls.signs",       "walls.branches",
        "compare.positions", "compare.signs",     "compare.branches",  "model",
        "epsilon",         "ladder.epsilons",     "grid.nodes_per_core", "grid.growth",
        "grid.h_max",      "grid.h_edge",         "grid.refine",       "grid.size",
        "solver.grad_tol", "solver.max_iterations", "core.gamma",      "core.alpha",
        "core.sign",       "core.dt",             "core.rmin_factor",  "core.angles",
        "core.flipped",    "core.e_plus",         "core.e_minus",      "renorm.samples",
        "validate.traces", "validate.pohozaev"};
    return std::find(keys.begin(), keys.end(), k) != keys.end();
  }
  std::map<std::string, YAML::Node> nodes_;
  json resolved_ = json::object();
};

struct Owned {
  nw_config* config = nullptr;
  nw_config* other = nullptr;
  nw_result* result = nullptr;
  ~Owned() {
    nw_config_free(config);
    nw_config_free(other);
    nw_result_free(result);
  }
};

nw_config* make_config(Config& c, const std::string& prefix, double alpha,
                       const std::vector<double>& defaultPositions, const std::vector<int>& defaultSigns) {
  const auto positions = c.list<double>(prefix + ".positions", defaultPositions);
  const auto signs = c.list<int>(prefix + ".signs", defaultSigns);
  const auto branches = c.optionalList<long>(prefix + ".branches");
  if (positions.size() != signs.size()) throw UsageError(prefix + ".positions and .signs differ in length");
  nw_config* out = nullptr;
  if (nw_config_create(alpha, positions.data(), signs.data(), positions.size(),
                       branches ? branches->data() : nullptr, &out) != NW_OK)
    throw UsageError(std::string("invalid ") + prefix + ": " + nw_last_error());
  return out;
}

nw_grid_options grid_options(Config& c) {
  nw_grid_options g;
  nw_grid_options_default(&g);
  g.nodes_per_core = c.number("grid.nodes_per_core", g.nodes_per_core);
  g.growth = c.number("grid.growth", g.growth);
  g.h_max = c.number("grid.h_max", g.h_max);
  g.h_edge = c.number("grid.h_edge", g.h_edge);
  g.refine = c.number("grid.refine", g.refine);
  g.uniform_cells = std::size_t(c.integer("grid.size", long(g.uniform_cells)));
  g.grad_tol = c.number("solver.grad_tol", g.grad_tol);
  g.max_iterations = int(c.integer("solver.max_iterations", g.max_iterations));
  return g;
}

nw_model model_of(Config& c) {
  const std::string m = c.text("model", "full");
  if (m == "full") return NW_MODEL_FULL;
  if (m == "linear") return NW_MODEL_LINEAR;
  throw UsageError("model must be full or linear");
}

std::vector<double> ladder_of(Config& c) {
  return c.list<double>("ladder.epsilons", {1e-2, 3e-3, 1e-3, 3e-4, 1e-4});
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_validation(const std::string& jsonText) {
  const json j = json::parse(jsonText);
  std::printf("%-26s %-24s %-24s %-24s %s\n", "check", "value", "error", "tolerance", "result");
  for (const auto& r : j["rows"]) {
    std::printf("%-26s %-24s %-24s %-24s %s\n", r["name"].get<std::string>().c_str(),
                fmt17(r["value"].get<double>()).c_str(), fmt17(r["error"].get<double>()).c_str(),
                fmt17(r["tolerance"].get<double>()).c_str(), r["pass"].get<bool>() ? "PASS" : "FAIL");
  }
  std::printf("%-26s %-24s %-24s %-24s %s\n", "interaction_signs", "", "", "",
              j["interaction_signs_passed"].get<bool>() ? "PASS" : "FAIL");
}

int run(const std::string& command, const std::string& configPath, const fs::path& outDir,
        unsigned threads, std::uint64_t seed, const std::string& commandLine) {
  Config c;
  json inputs = json::array();
  if (!configPath.empty()) {
    const std::string text = read_file(configPath);
    c.load(text);
    inputs.push_back({{"path", configPath}, {"sha256", sha256(text)}});
  }
  std::error_code ec;
  fs::create_directories(outDir, ec);
  if (ec || !fs::is_directory(outDir)) throw UsageError("cannot create output directory " + outDir.string());

  Owned own;
  nw_status status = NW_OK;
  const double alpha = c.number("walls.alpha", 1.5707963267948966);
  const auto withWalls = [&] { own.config = make_config(c, "walls", alpha, {0.0}, {1}); };

  if (command == "renorm") {
    withWalls();
    const auto ep = c.optionalNumber("core.e_plus"), em = c.optionalNumber("core.e_minus");
    const long samples = c.integer("renorm.samples", 201);
    if (samples < 0) throw UsageError("renorm.samples must be nonnegative");
    status = nw_renorm(own.config, ep ? &*ep : nullptr, em ? &*em : nullptr, std::size_t(samples), &own.result);
  } else if (command == "minimize") {
    withWalls();
    const nw_model m = model_of(c);
    const nw_grid_options g = grid_options(c);
    status = nw_minimize(own.config, c.number("epsilon", 1e-3), m, &g, &own.result);
  } else if (command == "core") {
    double gamma;
    if (c.has("core.gamma")) {
      gamma = c.number("core.gamma", 1);
    } else {
      const double a = c.number("core.alpha", alpha);
      const long sign = c.integer("core.sign", 1);
      if (sign != 1 && sign != -1) throw UsageError("core.sign must be +1 or -1");
      gamma = nw_core_gamma(a, int(sign));
      c.number("core.gamma", gamma);
    }
    nw_core_options o;
    nw_core_options_default(&o);
    o.dt = c.number("core.dt", o.dt);
    o.rmin_factor = c.number("core.rmin_factor", o.rmin_factor);
    o.angles = int(c.integer("core.angles", o.angles));
    const bool flipped = c.flag("core.flipped", false);
    const auto ladder = ladder_of(c);
    status = nw_core(gamma, ladder.data(), ladder.size(), &o, flipped, threads, &own.result);
  } else if (command == "sweep") {
    withWalls();
    const nw_model m = model_of(c);
    const nw_grid_options g = grid_options(c);
    const auto ladder = ladder_of(c);
    const auto ep = c.optionalNumber("core.e_plus"), em = c.optionalNumber("core.e_minus");
    status = nw_sweep(own.config, ladder.data(), ladder.size(), m, &g, ep ? &*ep : nullptr,
                      em ? &*em : nullptr, threads, &own.result);
  } else if (command == "diff") {
    withWalls();
    const auto signs = c.list<int>("walls.signs", {1});
    if (!c.has("compare.positions")) throw UsageError("diff needs compare.positions");
    own.other = make_config(c, "compare", alpha, {}, signs);
    const nw_model m = model_of(c);
    const nw_grid_options g = grid_options(c);
    const auto ladder = ladder_of(c);
    status = nw_diff(own.config, own.other, ladder.data(), ladder.size(), m, &g, threads, &own.result);
  } else if (command == "validate") {
    const long traces = c.integer("validate.traces", 20);
    if (traces < 0) throw UsageError("validate.traces must be nonnegative");
    status = nw_validate(seed, std::size_t(traces), c.flag("validate.pohozaev", true), &own.result);
  } else {
    throw UsageError("unknown subcommand " + command);
  }
  const std::string error = status == NW_OK ? "" : nw_last_error();

  // all files are written here, after the computation, by this thread
  json outputs = json::array();
  auto emit = [&](const std::string& name, const std::string& data) {
    std::ofstream f(outDir / name, std::ios::binary);
    f << data;
    if (!f) throw std::runtime_error("cannot write " + (outDir / name).string());
    outputs.push_back({{"file", name}, {"sha256", sha256(data)}});
  };
  if (own.result) {
    emit(command + ".json", nw_result_json(own.result));
    for (std::size_t i = 0; i < nw_result_table_count(own.result); ++i)
      emit(std::string(nw_result_table_name(own.result, i)) + ".csv", nw_result_table_csv(own.result, i));
  }
  const bool passed = status == NW_OK && own.result && nw_result_passed(own.result);

  json manifest = {{"command", command},
                   {"command_line", commandLine},
                   {"config", c.resolved()},
                   {"threads", threads},
                   {"seed", seed},
                   {"version", nw_version()},
                   {"timestamp", timestamp()},
                   {"inputs", inputs},
                   {"outputs", outputs},
                   {"status", passed ? "OK" : "FAILED"}};
  if (!error.empty()) manifest["error"] = error;
  std::string manifestText;
  write_json(manifest, manifestText);
  std::ofstream(outDir / "manifest.json") << manifestText << '\n';

  if (command == "validate" && own.result) print_validation(nw_result_json(own.result));
  if (!error.empty()) std::cerr << "error: " << error << '\n';
  if (status != NW_OK) return 2;
  if (!passed) {
    std::cerr << command << ": checks failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neel wall energies: closed forms, minimization and epsilon ladders"};
  app.set_version_flag("--version", nw_version());
  std::string configPath, outDir = ".";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"renorm", "closed-form renormalized energy and limit profiles"},
      {"minimize", "minimize the wall energy at one epsilon"},
      {"core", "core functional along an epsilon ladder"},
      {"sweep", "ladder sweep with extrapolation of Q"},
      {"diff", "difference experiment between two configurations"},
      {"validate", "closed-form identity suite"}};
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", configPath, "flat YAML configuration with dotted keys")->check(CLI::ExistingFile);
    s->add_option("--out", outDir, "output directory");
    s->add_option("--threads", threads, "worker threads for ladders, 0 for all cores");
    s->add_option("--seed", seed, "seed of the random test traces");
  }
  CLI11_PARSE(app, argc, argv);

  std::string commandLine;
  for (int i = 0; i < argc; ++i) commandLine += (i ? " " : "") + std::string(argv[i]);
  try {
    return run(app.get_subcommands().front()->get_name(), configPath, outDir, threads, seed, commandLine);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
