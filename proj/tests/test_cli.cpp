// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <openssl/evp.h>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "neelwall_cli_test";

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

std::string sha256(const std::string& s) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned n = 0;
  EVP_Digest(s.data(), s.size(), md, &n, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string r;
  for (unsigned i = 0; i < n; ++i) {
    r += hex[md[i] >> 4];
    r += hex[md[i] & 15];
  }
  return r;
}

fs::path fresh(const std::string& name) {
  const fs::path d = kRoot / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.yaml";
  std::ofstream(p) << text;
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(NEELWALL_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("renorm writes results and a manifest with hashes") {
  const fs::path d = fresh("renorm");
  const std::string cfg = std::string(NEELWALL_CONFIGS) + "/pair_opposite.yaml";
  REQUIRE(run("renorm --config " + cfg + " --out " + d.string(), d / "log") == 0);
  const auto r = nlohmann::json::parse(slurp(d / "renorm.json"));
  CHECK(std::abs(r["W"].get<double>() - std::numbers::pi * std::log(4.0 / 3.0)) < 1e-12);
  const auto m = manifest(d);
  CHECK(m["command"] == "renorm");
  CHECK(m["status"] == "OK");
  CHECK(m["inputs"][0]["sha256"] == sha256(slurp(cfg)));
  CHECK(m["config"]["walls.signs"] == nlohmann::json::array({1, -1}));
  for (const auto& o : m["outputs"]) CHECK(o["sha256"] == sha256(slurp(d / o["file"].get<std::string>())));
  CHECK(slurp(d / "renorm.csv").rfind("x1,mu_star,u_star_trace\n", 0) == 0);
}

TEST_CASE("minimize output is reproducible byte for byte") {
  const fs::path a = fresh("min_a"), b = fresh("min_b");
  const fs::path cfg = write_config(a, "walls.positions: [-0.2, 0.3]\nwalls.signs: [1, -1]\nepsilon: 1.0e-2\n");
  REQUIRE(run("minimize --config " + cfg.string() + " --out " + a.string(), a / "log") == 0);
  REQUIRE(run("minimize --config " + cfg.string() + " --out " + b.string(), b / "log") == 0);
  CHECK(slurp(a / "profile.csv") == slurp(b / "profile.csv"));
  CHECK(slurp(a / "minimize.json") == slurp(b / "minimize.json"));
  CHECK(slurp(a / "profile.csv").rfind("x1,phi,m1,m2,g\n", 0) == 0);
}

TEST_CASE("usage errors") {
  const fs::path d = fresh("usage");
  CHECK(run("nonsense", d / "log") != 0);
  CHECK(run("", d / "log") != 0);
  const fs::path bad = write_config(d, "walls.positions: [0.0]\nwalls.signs: [1]\nwalls.colour: red\n");
  CHECK(run("renorm --config " + bad.string() + " --out " + d.string(), d / "log") == 64);
  CHECK(slurp(d / "log").find("walls.colour") != std::string::npos);
  const fs::path nested = write_config(d, "walls:\n  positions: [0.0]\n");
  CHECK(run("renorm --config " + nested.string() + " --out " + d.string(), d / "log") == 64);
  CHECK(run("renorm --config " + (d / "missing.yaml").string(), d / "log") != 0);
}

TEST_CASE("invalid walls are reported as usage errors") {
  const fs::path d = fresh("walls");
  const fs::path cfg = write_config(d, "walls.positions: [0.5, -0.5]\nwalls.signs: [1, 1]\n");
  CHECK(run("renorm --config " + cfg.string() + " --out " + d.string(), d / "log") == 64);
  CHECK(slurp(d / "log").find("increasing") != std::string::npos);
}

TEST_CASE("validate passes and prints one line per check") {
  const fs::path d = fresh("validate");
  const fs::path cfg = write_config(d, "validate.traces: 3\nvalidate.pohozaev: false\n");
  REQUIRE(run("validate --config " + cfg.string() + " --out " + d.string(), d / "log") == 0);
  const std::string log = slurp(d / "log");
  CHECK(log.find("mobius_invariance") != std::string::npos);
  CHECK(log.find("interaction_signs") != std::string::npos);
  CHECK(log.find("FAIL") == std::string::npos);
  CHECK(manifest(d)["status"] == "OK");
  CHECK(fs::exists(d / "validate.csv"));
  CHECK(fs::exists(d / "interaction.csv"));
}

TEST_CASE("a failing run still writes a manifest") {
  const fs::path d = fresh("failing");
  const fs::path cfg = write_config(
      d, "walls.positions: [-0.1, 0.1]\nwalls.signs: [1, -1]\ngrid.size: 4\n"
         "ladder.epsilons: [1.0e-2, 5.0e-3, 2.0e-3]\n");
  CHECK(run("sweep --config " + cfg.string() + " --out " + d.string() + " --threads 1", d / "log") == 2);
  const auto m = manifest(d);
  CHECK(m["status"] == "FAILED");
  CHECK(m["error"].get<std::string>().find("same node") != std::string::npos);
  CHECK(m["threads"] == 1);
  CHECK(fs::exists(d / "sweep.json"));
}
