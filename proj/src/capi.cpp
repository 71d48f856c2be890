// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/neelwall.h"

#include <cmath>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "neelwall/asymptotics.hpp"
#include "neelwall/closedform.hpp"
#include "neelwall/corelab.hpp"
#include "neelwall/domain.hpp"
#include "neelwall/format.hpp"
#include "neelwall/minimizer.hpp"
#include "neelwall/validate.hpp"

using json = nlohmann::ordered_json;
using namespace neelwall;

struct nw_config {
  WallConfig config;
};

struct nw_result {
  json summary;
  std::string text;
  std::vector<std::pair<std::string, std::string>> tables;
  bool passed = false;
};

namespace {

thread_local std::string lastError;

#ifndef NEELWALL_VERSION
#define NEELWALL_VERSION "0.0.0"
#endif

// nlohmann prints the shortest round-trip form; outputs are fixed at 17
// significant digits instead. Non-finite numbers become null.
void write(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt17(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

nw_status fail(nw_status s, const std::string& message) {
  lastError = message;
  return s;
}

template <class F>
nw_status guarded(F&& f) {
  try {
    lastError.clear();
    return f();
  } catch (const DomainError& e) {
    return fail(NW_ERR_DOMAIN, e.what());
  } catch (const SolverError& e) {
    return fail(NW_ERR_SOLVER, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(NW_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(NW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NW_ERR_INTERNAL, "unknown exception");
  }
}

nw_result* finish(json summary, std::vector<std::pair<std::string, std::string>> tables, bool passed) {
  auto* r = new nw_result;
  r->summary = std::move(summary);
  write(r->summary, r->text);
  r->text += '\n';
  r->tables = std::move(tables);
  r->passed = passed;
  return r;
}

std::vector<double> ladder_of(const double* ladder, std::size_t count) {
  if (!ladder || count == 0) return default_ladder();
  return {ladder, ladder + count};
}

MinimizeOptions minimize_options(const nw_grid_options* g) {
  MinimizeOptions o;
  if (!g) return o;
  o.grid.nodesPerCore = g->nodes_per_core;
  o.grid.growth = g->growth;
  o.grid.hMax = g->h_max;
  o.grid.hEdge = g->h_edge;
  o.grid.refine = g->refine;
  o.grid.uniformCells = g->uniform_cells;
  o.descent.gradTol = g->grad_tol;
  o.descent.maxQuasiNewton = g->max_iterations;
  return o;
}

Model model_of(nw_model m) {
  if (m == NW_MODEL_FULL) return Model::Full;
  if (m == NW_MODEL_LINEAR) return Model::Linear;
  throw std::invalid_argument("unknown model");
}

json config_json(const WallConfig& c) {
  json j;
  j["alpha"] = c.alpha();
  j["positions"] = c.positions();
  j["signs"] = c.signs();
  if (c.branches()) j["branches"] = *c.branches();
  j["gammas"] = c.gammas();
  j["Gamma"] = c.Gamma();
  j["rho"] = c.rho();
  return j;
}

json fit_json(const LadderFit& f) {
  return {{"headline", f.headline}, {"slope", f.slope},       {"best", f.best},
          {"best_terms", f.bestTerms}, {"uncertainty", f.uncertainty}, {"residuals", f.residuals}};
}

json breakdown_json(const EnergyBreakdown& b) {
  json j = {{"exchange", b.exchange},
            {"magnetostatic", b.magnetostatic},
            {"total", b.total},
            {"el_residual", b.elResidualNorm},
            {"el_residual_l2", b.elResidualL2}};
  json p = json::array();
  for (const auto& r : b.pohozaev)
    p.push_back({{"wall", r.wall}, {"radius", r.radius}, {"lhs", r.lhs}, {"rhs", r.rhs},
                 {"residual", r.residual}, {"relative", r.relative}});
  j["pohozaev"] = p;
  json c = json::array();
  for (const auto& r : b.coreBounds)
    c.push_back({{"wall", r.wall}, {"radius", r.radius}, {"exchange_core", r.exchangeCore},
                 {"exchange_bound", r.exchangeBound}, {"sin_core", r.sinCore},
                 {"sin_bound", r.sinBound}, {"holds", r.holds}});
  j["core_bounds"] = c;
  return j;
}

json grid_json(const MinimizeOptions& o) {
  return {{"nodes_per_core", o.grid.nodesPerCore}, {"growth", o.grid.growth},
          {"h_max", o.grid.hMax},                  {"h_edge", o.grid.hEdge},
          {"refine", o.grid.refine},               {"uniform_cells", o.grid.uniformCells},
          {"grad_tol", o.descent.gradTol},         {"max_iterations", o.descent.maxQuasiNewton}};
}

json sweep_json(const SweepResult& S) {
  json rows = json::array();
  for (const auto& r : S.rows) {
    if (!r.done) continue;
    json row = {{"epsilon", r.epsilon}, {"delta", r.delta},   {"L", r.L},
                {"E", r.E},             {"Q", r.Q},           {"leading", r.leading},
                {"upper_bound", r.upperBound}, {"iterations", r.iterations},
                {"converged", r.converged},    {"outside_regime", r.outsideRegime},
                {"el_residual", r.elResidual}, {"core_bounds_hold", r.coreBoundsHold}};
    rows.push_back(row);
  }
  json j = {{"config", config_json(S.config)}, {"model", model_name(S.model)},
            {"complete", S.complete}, {"rows", rows}};
  if (S.complete) j["fit"] = fit_json(S.fit);
  if (!S.failure.empty()) j["failure"] = S.failure;
  return j;
}

bool all_converged(const SweepResult& S) {
  for (const auto& r : S.rows)
    if (!r.done || !r.converged) return false;
  return true;
}

}  // namespace

extern "C" {

const char* nw_version(void) { return NEELWALL_VERSION; }
const char* nw_last_error(void) { return lastError.c_str(); }

void nw_grid_options_default(nw_grid_options* g) {
  if (!g) return;
  const MinimizeOptions o;
  g->nodes_per_core = o.grid.nodesPerCore;
  g->growth = o.grid.growth;
  g->h_max = o.grid.hMax;
  g->h_edge = o.grid.hEdge;
  g->refine = o.grid.refine;
  g->uniform_cells = o.grid.uniformCells;
  g->grad_tol = o.descent.gradTol;
  g->max_iterations = o.descent.maxQuasiNewton;
}

void nw_core_options_default(nw_core_options* c) {
  if (!c) return;
  const CoreGridOptions o;
  c->dt = o.dt;
  c->rmin_factor = o.rMinFactor;
  c->angles = o.angles;
}

nw_status nw_config_create(double alpha, const double* positions, const int* signs, size_t count,
                           const long* branches, nw_config** out) {
  return guarded([&] {
    if (!out || (count && (!positions || !signs))) return fail(NW_ERR_ARGUMENT, "null argument");
    std::optional<std::vector<long>> b;
    if (branches) b = std::vector<long>(branches, branches + count);
    *out = new nw_config{WallConfig::create(alpha, {positions, positions + count},
                                            {signs, signs + count}, b)};
    return NW_OK;
  });
}

void nw_config_free(nw_config* c) { delete c; }

double nw_core_gamma(double alpha, int sign) { return core_gamma(alpha, sign); }

nw_status nw_renorm(const nw_config* c, const double* ePlus, const double* eMinus, size_t samples,
                    nw_result** out) {
  return guarded([&] {
    if (!c || !out) return fail(NW_ERR_ARGUMENT, "null argument");
    const WallConfig& cfg = c->config;
    std::optional<double> ep, em;
    if (ePlus) ep = *ePlus;
    if (eMinus) em = *eMinus;
    const RenormalizedEnergy R = renormalized_W(cfg, ep, em);
    json j = {{"W1", R.W1}, {"W2", R.W2}, {"W", R.W},
              {"per_wall", R.perWallBoundary}, {"per_pair", R.perPair}};
    if (R.WW) {
      j["core_energies"] = *R.coreEnergies;
      j["WW"] = *R.WW;
    }
    j["config"] = config_json(cfg);

    // midpoints of a uniform partition; wall points are singular for mu*
    const TailProfile mu = tail_star(cfg);
    const LimitStrayField u = limit_field_star(cfg);
    std::string csv = "x1,mu_star,u_star_trace\n";
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = -1 + (double(i) + 0.5) * 2 / double(samples);
      bool atWall = false;
      for (double a : cfg.positions()) atWall |= x == a;
      if (atWall) continue;
      csv += fmt17(x) + ',' + fmt17(mu.value(x)) + ',' + fmt17(u.value(x, 0)) + '\n';
    }
    *out = finish(std::move(j), {{"renorm", csv}}, std::isfinite(R.W));
    return NW_OK;
  });
}

nw_status nw_minimize(const nw_config* c, double epsilon, nw_model model, const nw_grid_options* g,
                      nw_result** out) {
  return guarded([&] {
    if (!c || !out) return fail(NW_ERR_ARGUMENT, "null argument");
    if (!(epsilon > 0 && epsilon < 0.5)) return fail(NW_ERR_DOMAIN, "epsilon must lie in (0, 1/2)");
    const MinimizeOptions o = minimize_options(g);
    const MinimizeReport R = minimize(c->config, Scales::fromEpsilon(epsilon), model_of(model), o);
    json j = {{"config", config_json(R.config)},
              {"model", model_name(R.model)},
              {"epsilon", R.scales.epsilon},
              {"delta", R.scales.delta},
              {"log_inv_delta", R.scales.logInvDelta},
              {"multiples", R.multiples},
              {"endpoint", R.endpoint},
              {"candidate_energies", R.candidateEnergies},
              {"iterations", R.iterations},
              {"gradient_norm", R.gradientNorm},
              {"converged", R.converged},
              {"outside_regime", R.outsideRegime},
              {"energy", breakdown_json(R.energy)},
              {"options", grid_json(o)}};
    *out = finish(std::move(j), {{"profile", R.profileCsv()}}, R.converged);
    return NW_OK;
  });
}

nw_status nw_core(double gamma, const double* ladder, size_t count, const nw_core_options* g,
                  int flipped, unsigned threads, nw_result** out) {
  return guarded([&] {
    if (!out) return fail(NW_ERR_ARGUMENT, "null argument");
    CoreGridOptions o;
    if (g) {
      o.dt = g->dt;
      o.rMinFactor = g->rmin_factor;
      o.angles = g->angles;
    }
    const CoreLadderResult C =
        extract_core_energy(gamma, ladder_of(ladder, count), o, core_descent_defaults(), flipped != 0, threads);
    std::string csv = "epsilon,delta,infE,f\n";
    json rows = json::array();
    bool converged = true;
    for (const auto& r : C.rows) {
      csv += fmt17(r.epsilon) + ',' + fmt17(r.delta) + ',' + fmt17(r.infE) + ',' + fmt17(r.f) + '\n';
      converged &= r.converged;
      rows.push_back({{"epsilon", r.epsilon},
                      {"L", r.L},
                      {"infE", r.infE},
                      {"f", r.f},
                      {"upper_bound", r.upperBound},
                      {"converged", r.converged},
                      {"dtn_energy_gap", r.diagnostics.relativeGap},
                      {"arc_flux", r.diagnostics.arcFlux},
                      {"profile_error", r.diagnostics.profileError},
                      {"field_error", r.diagnostics.fieldError},
                      {"mu_min", r.diagnostics.muMin},
                      {"mu_max", r.diagnostics.muMax}});
    }
    json j = {{"e_gamma", C.eGamma},
              {"uncertainty", C.uncertainty},
              {"gamma", C.gamma},
              {"slope", C.slope},
              {"two_term_sensitivity", C.twoTermSensitivity},
              {"reliable", C.reliable},
              {"flipped", flipped != 0},
              {"grid", {{"dt", o.dt}, {"rmin_factor", o.rMinFactor}, {"angles", o.angles}}},
              {"rows", rows}};
    *out = finish(std::move(j), {{"core", csv}}, converged);
    return converged ? NW_OK : fail(NW_ERR_SOLVER, "a core minimization did not converge");
  });
}

nw_status nw_sweep(const nw_config* c, const double* ladder, size_t count, nw_model model,
                   const nw_grid_options* g, const double* ePlus, const double* eMinus,
                   unsigned threads, nw_result** out) {
  return guarded([&] {
    if (!c || !out) return fail(NW_ERR_ARGUMENT, "null argument");
    SweepOptions o;
    o.minimize = minimize_options(g);
    o.threads = threads;
    const SweepResult S = sweep(c->config, ladder_of(ladder, count), model_of(model), o);
    // Q tends to sum e(d_n) + W; without core energies only W is known and
    // the comparison is not made.
    std::optional<double> ep, em;
    if (ePlus) ep = *ePlus;
    if (eMinus) em = *eMinus;
    const RenormalizedEnergy R = renormalized_W(S.config, ep, em);
    json j;
    const bool ok = S.complete && all_converged(S);
    j["extrapolated"] = S.complete ? json(S.fit.headline) : json(nullptr);
    j["uncertainty"] = S.complete ? json(S.fit.uncertainty) : json(nullptr);
    j["target_closed_form"] = R.WW ? *R.WW : R.W;
    j["core_energies_included"] = R.WW.has_value();
    bool pass = ok;
    if (ok && R.WW) pass = std::abs(S.fit.headline - *R.WW) <= S.fit.uncertainty;
    j["pass"] = pass;
    j["sweep"] = sweep_json(S);
    j["options"] = grid_json(o.minimize);
    *out = finish(std::move(j), {{"sweep", S.csv()}}, pass);
    if (!S.complete) return fail(NW_ERR_SOLVER, "sweep failed: " + S.failure);
    if (!ok) return fail(NW_ERR_SOLVER, "a ladder minimization did not converge");
    return NW_OK;
  });
}

nw_status nw_diff(const nw_config* a, const nw_config* b, const double* ladder, size_t count,
                  nw_model model, const nw_grid_options* g, unsigned threads, nw_result** out) {
  return guarded([&] {
    if (!a || !b || !out) return fail(NW_ERR_ARGUMENT, "null argument");
    SweepOptions o;
    o.minimize = minimize_options(g);
    o.threads = threads;
    const DifferenceResult D =
        difference_experiment(a->config, b->config, ladder_of(ladder, count), model_of(model), o);
    const bool ok = D.complete && all_converged(D.a) && all_converged(D.b);
    const bool pass = ok && D.withinTolerance && D.covered;
    json j;
    j["extrapolated"] = D.complete ? json(D.fit.headline) : json(nullptr);
    j["uncertainty"] = D.complete ? json(D.fit.uncertainty) : json(nullptr);
    j["target_closed_form"] = D.target;
    j["pass"] = pass;
    j["relative_error"] = D.relativeError;
    j["within_tolerance"] = D.withinTolerance;
    j["covered"] = D.covered;
    if (D.complete) j["fit"] = fit_json(D.fit);
    j["a"] = sweep_json(D.a);
    j["b"] = sweep_json(D.b);
    j["options"] = grid_json(o.minimize);
    std::vector<std::pair<std::string, std::string>> tables;
    if (D.complete) tables.push_back({"diff", D.csv()});
    tables.push_back({"sweep_a", D.a.csv()});
    tables.push_back({"sweep_b", D.b.csv()});
    *out = finish(std::move(j), std::move(tables), pass);
    if (!D.complete) return fail(NW_ERR_SOLVER, "sweep failed: " + D.a.failure + D.b.failure);
    if (!ok) return fail(NW_ERR_SOLVER, "a ladder minimization did not converge");
    return NW_OK;
  });
}

nw_status nw_validate(uint64_t seed, size_t traces, int pohozaev, nw_result** out) {
  return guarded([&] {
    if (!out) return fail(NW_ERR_ARGUMENT, "null argument");
    ValidationOptions o;
    o.seed = seed;
    o.traces = traces;
    o.pohozaev = pohozaev != 0;
    const ValidationReport V = validation_suite(o);
    const InteractionReport I = interaction_sign_report(kPi / 2, {0.1, 0.3, 0.5, 0.7, 0.9});
    json rows = json::array();
    for (const auto& r : V.rows)
      rows.push_back({{"name", r.name}, {"value", r.value}, {"reference", r.reference},
                      {"error", r.error}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    const bool pass = V.passed() && I.ok();
    json j = {{"passed", pass},
              {"seed", seed},
              {"traces", traces},
              {"pohozaev", pohozaev != 0},
              {"identities_passed", V.passed()},
              {"interaction_signs_passed", I.ok()},
              {"rows", rows}};
    *out = finish(std::move(j), {{"validate", V.csv()}, {"interaction", I.csv()}}, pass);
    return NW_OK;
  });
}

const char* nw_result_json(const nw_result* r) { return r ? r->text.c_str() : ""; }
int nw_result_passed(const nw_result* r) { return r && r->passed ? 1 : 0; }
size_t nw_result_table_count(const nw_result* r) { return r ? r->tables.size() : 0; }

const char* nw_result_table_name(const nw_result* r, size_t i) {
  return r && i < r->tables.size() ? r->tables[i].first.c_str() : nullptr;
}

const char* nw_result_table_csv(const nw_result* r, size_t i) {
  return r && i < r->tables.size() ? r->tables[i].second.c_str() : nullptr;
}

nw_status nw_result_number(const nw_result* r, const char* key, double* value) {
  if (!r || !key || !value) return fail(NW_ERR_ARGUMENT, "null argument");
  const auto it = r->summary.find(key);
  if (it == r->summary.end() || !it->is_number())
    return fail(NW_ERR_ARGUMENT, std::string("no numeric field ") + key);
  *value = it->get<double>();
  return NW_OK;
}

void nw_result_free(nw_result* r) { delete r; }

}  // extern "C"
