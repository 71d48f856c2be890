// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "neelwall/neelwall.h"

namespace {

constexpr double pi = std::numbers::pi;

nw_config* make(double alpha, std::initializer_list<double> a, std::initializer_list<int> d) {
  nw_config* c = nullptr;
  REQUIRE(nw_config_create(alpha, std::data(a), std::data(d), a.size(), nullptr, &c) == NW_OK);
  return c;
}

std::string table(const nw_result* r, const char* name) {
  for (size_t i = 0; i < nw_result_table_count(r); ++i)
    if (std::strcmp(nw_result_table_name(r, i), name) == 0) return nw_result_table_csv(r, i);
  return {};
}

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::strlen(nw_version()) > 0);
  nw_grid_options g;
  nw_grid_options_default(&g);
  CHECK(g.nodes_per_core == 8);
  CHECK(g.uniform_cells == 0);
  CHECK(g.grad_tol == 1e-10);
  nw_core_options c;
  nw_core_options_default(&c);
  CHECK(c.dt > 0);
  nw_grid_options_default(nullptr);
}

TEST_CASE("argument and domain errors") {
  nw_config* c = nullptr;
  const double a[] = {0.5, -0.5};
  const int d[] = {1, 1};
  CHECK(nw_config_create(pi / 2, a, d, 2, nullptr, nullptr) == NW_ERR_ARGUMENT);
  CHECK(nw_config_create(pi / 2, nullptr, d, 2, nullptr, &c) == NW_ERR_ARGUMENT);
  CHECK(nw_config_create(pi / 2, a, d, 2, nullptr, &c) == NW_ERR_DOMAIN);
  CHECK(std::string(nw_last_error()).find("increasing") != std::string::npos);
  CHECK(c == nullptr);
  const double b[] = {0.1};
  const int bad[] = {2};
  CHECK(nw_config_create(pi / 2, b, bad, 1, nullptr, &c) == NW_ERR_DOMAIN);
  CHECK(nw_config_create(0, b, d, 1, nullptr, &c) == NW_ERR_DOMAIN);
  CHECK(nw_renorm(nullptr, nullptr, nullptr, 10, nullptr) == NW_ERR_ARGUMENT);
  CHECK(nw_result_number(nullptr, "W", nullptr) == NW_ERR_ARGUMENT);

  nw_config* one = make(pi / 2, {0.0}, {1});
  nw_result* r = nullptr;
  CHECK(nw_minimize(one, 0.7, NW_MODEL_FULL, nullptr, &r) == NW_ERR_DOMAIN);
  CHECK(r == nullptr);
  nw_config_free(one);
  nw_config_free(nullptr);
  nw_result_free(nullptr);
}

TEST_CASE("renormalized energy through the C interface") {
  nw_config* c = make(pi / 2, {-0.5, 0.5}, {1, -1});
  nw_result* r = nullptr;
  REQUIRE(nw_renorm(c, nullptr, nullptr, 50, &r) == NW_OK);
  double W = 0;
  REQUIRE(nw_result_number(r, "W", &W) == NW_OK);
  CHECK(std::abs(W - pi * std::log(4.0 / 3.0)) < 1e-12);
  CHECK(nw_result_number(r, "missing", &W) == NW_ERR_ARGUMENT);
  CHECK(nw_result_number(r, "config", &W) == NW_ERR_ARGUMENT);
  const auto j = nlohmann::json::parse(nw_result_json(r));
  CHECK(j.contains("W1"));
  CHECK(!j.contains("WW"));
  CHECK(j["config"]["signs"] == nlohmann::json::array({1, -1}));
  const std::string csv = table(r, "renorm");
  CHECK(csv.rfind("x1,mu_star,u_star_trace\n", 0) == 0);
  CHECK(nw_result_table_name(r, 99) == nullptr);
  nw_result_free(r);

  const double ep = -0.3, em = -0.2;
  REQUIRE(nw_renorm(c, &ep, &em, 10, &r) == NW_OK);
  double WW = 0;
  REQUIRE(nw_result_number(r, "WW", &WW) == NW_OK);
  CHECK(WW == doctest::Approx(W - 0.5).epsilon(1e-14));
  nw_result_free(r);
  nw_config_free(c);
}

TEST_CASE("numbers are printed with 17 significant digits") {
  nw_config* c = make(1.0, {0.1}, {-1});
  nw_result* r = nullptr;
  REQUIRE(nw_renorm(c, nullptr, nullptr, 5, &r) == NW_OK);
  const std::string text = nw_result_json(r);
  double W = 0;
  REQUIRE(nw_result_number(r, "W", &W) == NW_OK);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", W);
  CHECK(text.find(buf) != std::string::npos);
  // the parsed value round-trips exactly
  CHECK(nlohmann::json::parse(text)["W"].get<double>() == W);
  nw_result_free(r);
  nw_config_free(c);
}

TEST_CASE("minimize and core through the C interface") {
  nw_config* c = make(pi / 2, {0.0}, {1});
  nw_result* r = nullptr;
  REQUIRE(nw_minimize(c, 1e-2, NW_MODEL_FULL, nullptr, &r) == NW_OK);
  CHECK(nw_result_passed(r) == 1);
  CHECK(table(r, "profile").rfind("x1,phi,m1,m2,g\n", 0) == 0);
  const auto j = nlohmann::json::parse(nw_result_json(r));
  CHECK(j["energy"]["total"].get<double>() > 0);
  nw_result_free(r);
  nw_config_free(c);

  const double ladder[] = {1e-3, 1e-4, 1e-5};
  REQUIRE(nw_core(1.0, ladder, 3, nullptr, 0, 1, &r) == NW_OK);
  double e = 0;
  REQUIRE(nw_result_number(r, "e_gamma", &e) == NW_OK);
  CHECK(std::isfinite(e));
  CHECK(table(r, "core").rfind("epsilon,delta,infE,f\n", 0) == 0);
  nw_result_free(r);
}

TEST_CASE("difference requires a shared class") {
  nw_config* a = make(pi / 2, {0.0}, {1});
  nw_config* b = make(pi / 2, {0.2}, {-1});
  nw_result* r = nullptr;
  const double ladder[] = {1e-2, 5e-3, 2e-3};
  CHECK(nw_diff(a, b, ladder, 3, NW_MODEL_FULL, nullptr, 1, &r) == NW_ERR_DOMAIN);
  CHECK(std::string(nw_last_error()).find("share") != std::string::npos);
  nw_config_free(b);
  b = make(pi / 2, {0.2}, {1});
  REQUIRE(nw_diff(a, b, ladder, 3, NW_MODEL_FULL, nullptr, 2, &r) == NW_OK);
  double target = 0;
  REQUIRE(nw_result_number(r, "target_closed_form", &target) == NW_OK);
  CHECK(target < 0);
  CHECK(!table(r, "diff").empty());
  CHECK(!table(r, "sweep_a").empty());
  nw_result_free(r);
  nw_config_free(a);
  nw_config_free(b);
}

TEST_CASE("sweep failure keeps the result") {
  nw_config* c = make(pi / 2, {-0.1, 0.1}, {1, -1});
  nw_grid_options g;
  nw_grid_options_default(&g);
  g.uniform_cells = 4;
  nw_result* r = nullptr;
  const double ladder[] = {1e-2, 5e-3, 2e-3};
  CHECK(nw_sweep(c, ladder, 3, NW_MODEL_FULL, &g, nullptr, nullptr, 1, &r) == NW_ERR_SOLVER);
  REQUIRE(r != nullptr);
  CHECK(nw_result_passed(r) == 0);
  const auto j = nlohmann::json::parse(nw_result_json(r));
  CHECK(j["extrapolated"].is_null());
  nw_result_free(r);
  nw_config_free(c);
}
