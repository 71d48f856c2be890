// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion with the measured numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "neelwall/asymptotics.hpp"
#include "neelwall/closedform.hpp"
#include "neelwall/corelab.hpp"
#include "neelwall/minimizer.hpp"
#include "neelwall/strayfield.hpp"
#include "neelwall/validate.hpp"
#include "oracles/oracles.hpp"

using namespace neelwall;

namespace {

const std::vector<double> kLadderA = {1e-4, 1e-6, 1e-8, 1e-10, 1e-12};

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    pass &= ok;
    if (!ok) detail += " [failed: " + what + "]";
  }
  void note(const char* fmt, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, v);
    detail += buf;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// full-model ladder rows gathered for the diagnostics criterion
std::vector<SweepRow> g_fullRows;

void collect(const SweepResult& s) {
  if (s.model == Model::Full) g_fullRows.insert(g_fullRows.end(), s.rows.begin(), s.rows.end());
}

Outcome closed_form_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  double worstCross = 0;
  for (double b : {-0.8, -0.4, 0.0, 0.4, 0.8})
    for (double c : {-0.7, -0.25, 0.1, 0.5, 0.9}) worstCross = std::max(worstCross, rel(cross_energy(b, c), oracle::cross_energy_area(b, c)));
  o.note(" cross_energy max rel %.2e;", worstCross);
  o.require(worstCross <= 1e-2, "cross energy within 1%");
  double worstW1 = 0;
  for (const auto& cfg : {WallConfig::create(kPi / 2, {0.2}, {1}), WallConfig::create(kPi / 2, {-0.3, 0.3}, {1, 1}),
                          WallConfig::create(kPi / 3, {-0.5, 0.0, 0.4}, {1, -1, 1})}) {
    const double r = cfg.rho();
    worstW1 = std::max(worstW1, rel(estar_quadrature(cfg, {r / 2, r / 4, r / 8, r / 16}).estimate, renormalized_W(cfg).W1));
  }
  o.note(" E* vs W1 max rel %.2e;", worstW1);
  o.require(worstW1 <= 1e-2, "E* reproduces W1 within 1%");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  double worstM = 0;
  for (int k = 0; k < 1000; ++k) {
    const double b = u(rng), c = u(rng), e = u(rng);
    worstM = std::max(worstM, std::abs(mobius_metric(mobius_transform(e, b).real(), mobius_transform(e, c).real()) -
                                       mobius_metric(b, c)));
  }
  o.note(" Moebius invariance %.2e;", worstM);
  o.require(worstM <= 1e-12, "Moebius invariance to 1e-12");
  const double t = seconds_since(t0);
  o.note(" %.1f s", t);
  o.require(t < 60, "runtime below one minute");
  return o;
}

Outcome half_norm_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  double worst = 0;
  for (const auto& tr : random_smooth_traces(1, 20)) {
    auto g = [&](double x) { return tr.value(x); };
    auto dg = [&](double x) { return tr.derivative(x); };
    const double s = magnetostatic_energy(ExtendedTrace::fromFunction(g, 8, std::size_t(1) << 14));
    const double q = oracle::gagliardo_energy(g, dg), e = oracle::extension_energy(dg);
    worst = std::max(worst, std::max({s, q, e}) / std::min({s, q, e}) - 1);
  }
  o.note(" three-way max spread %.2e;", worst);
  o.require(worst <= 5e-3, "spread within 0.5%");
  const double gauss =
      magnetostatic_energy(ExtendedTrace::fromFunction([](double x) { return std::exp(-8 * x * x); }, 8,
                                                       std::size_t(1) << 14, false));
  o.note(" Gaussian error %.2e;", std::abs(gauss - 0.5));
  o.require(std::abs(gauss - 0.5) <= 1e-4, "Gaussian value 1/2 to 1e-4");
  const double t = seconds_since(t0);
  o.note(" %.1f s", t);
  o.require(t < 60, "runtime below one minute");
  return o;
}

Outcome h1_decay() {
  Outcome o;
  const std::vector<double> radii = {0.2, 0.1, 0.05, 0.025};
  for (double b : {0.0, 0.5}) {
    std::vector<double> dev;
    for (double r : radii) dev.push_back(std::abs(h1_outside_ball(b, r) - kPi * std::log((2 - 2 * b * b) / r)));
    double worst = 0;
    for (std::size_t k = 1; k < dev.size(); ++k) worst = std::max(worst, dev[k] / dev[k - 1] / (radii[k] / radii[k - 1]));
    o.note(b == 0 ? " b=0 worst ratio/linear %.3f;" : " b=0.5 worst ratio/linear %.3f;", worst);
    o.require(worst <= 1, "deviation decreases at least linearly");
  }
  const double spot = rel(h1_outside_ball(0.5, 0.05), oracle::h1_outside_ball_green(0.5, 0.05));
  o.note(" oracle spot check rel %.2e", spot);
  o.require(spot <= 1e-6, "Green oracle agreement");
  return o;
}

Outcome energy_bracket() {
  Outcome o;
  const auto c = WallConfig::create(kPi / 2, {0.0}, {1});
  SweepOptions so;
  so.diagnostics = true;
  const SweepResult S = sweep(c, default_ladder(), Model::Full, so);
  collect(S);
  o.require(S.complete, "sweep complete");
  if (!S.complete) return o;
  const double lead = kPi * c.Gamma() / 2;
  std::vector<double> C;
  bool below = true, monotone = true, deficitPositive = true, deficitSlows = true;
  for (std::size_t i = 0; i < S.rows.size(); ++i) {
    const auto& r = S.rows[i];
    below &= r.E <= r.upperBound;
    monotone &= r.leading < lead && (i == 0 || r.leading > S.rows[i - 1].leading);
    C.push_back((lead - r.leading) * r.L);
    const double d = r.diagnostics->strayDeficit;
    deficitPositive &= d > 0;
    if (i >= 2) {
      const double d1 = S.rows[i - 1].diagnostics->strayDeficit, d0 = S.rows[i - 2].diagnostics->strayDeficit;
      deficitSlows &= d - d1 < d1 - d0;
    }
  }
  const double cmin = *std::min_element(C.begin(), C.end()), cmax = *std::max_element(C.begin(), C.end());
  o.note(" L*E %.4f", S.rows.front().leading);
  o.note(" -> %.4f (limit pi*Gamma/2);", S.rows.back().leading);
  o.note(" (pi*Gamma/2 - L*E)*L in [%.3f,", cmin);
  o.note(" %.3f];", cmax);
  o.note(" stray deficit %.3f", S.rows.front().diagnostics->strayDeficit);
  o.note(" -> %.3f", S.rows.back().diagnostics->strayDeficit);
  o.require(below, "E below the construction bound");
  o.require(monotone, "L*E increases towards pi*Gamma/2");
  o.require(cmin > 0 && cmax <= 1.5 * cmin, "residual O(1/L) with a stable constant");
  o.require(deficitPositive && deficitSlows, "stray deficit positive with shrinking increments");
  return o;
}

Outcome renormalized_differences() {
  Outcome o;
  struct Case {
    const char* name;
    WallConfig a, b;
  };
  const std::vector<Case> cases = {
      {"N=1 a=0 vs 0.5", WallConfig::create(kPi / 2, {0.0}, {1}), WallConfig::create(kPi / 2, {0.5}, {1})},
      {"same sign s=0.6 vs 0.3", WallConfig::create(kPi / 2, {-0.3, 0.3}, {1, 1}),
       WallConfig::create(kPi / 2, {-0.15, 0.15}, {1, 1})},
      {"opposite sign s=0.6 vs 0.3", WallConfig::create(kPi / 2, {-0.3, 0.3}, {1, -1}),
       WallConfig::create(kPi / 2, {-0.15, 0.15}, {1, -1})}};
  for (const auto& k : cases) {
    const DifferenceResult D = difference_experiment(k.a, k.b, kLadderA, Model::Full);
    collect(D.a);
    collect(D.b);
    o.require(D.complete, std::string(k.name) + " complete");
    if (!D.complete) continue;
    o.detail += std::string(" ") + k.name + ":";
    o.note(" dQ %.4f", D.fit.headline);
    o.note(" target %.4f", D.target);
    o.note(" u %.4f", D.fit.uncertainty);
    o.note(" rel %.3f;", D.relativeError);
    o.require(D.withinTolerance, std::string(k.name) + " within 10%");
    o.require(D.covered, std::string(k.name) + " discrepancy covered by uncertainty");
  }
  return o;
}

Outcome sign_structure() {
  Outcome o;
  const InteractionReport R =
      interaction_sign_report(kPi / 2, {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95});
  o.note(" alpha=pi/2: %.0f rows;", double(R.rows.size()));
  o.require(R.sameSignOk, "same-sign pairs repel");
  o.require(R.oppositeSignOk, "opposite-sign pairs attract");
  o.require(R.boundaryOk, "W grows towards +1");
  double previous = -INFINITY;
  bool left = true;
  for (double a : {-0.5, -0.9, -0.99, -0.999, -0.9999}) {
    const double w = renormalized_W(WallConfig::create(kPi / 2, {a}, {1})).W;
    left &= w > previous;
    previous = w;
  }
  o.require(left && previous > 5, "W grows towards -1");
  // the pair interaction carries the sign law at other angles
  bool pairs = true;
  for (double alpha : {kPi / 4, 3 * kPi / 4})
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (int d2 : {1, -1}) {
        auto P = [&](double t) {
          const auto W = renormalized_W(WallConfig::create(alpha, {-t / 2, t / 2}, {1, d2}));
          return W.perPair[0][1] + W.perPair[1][0];
        };
        const double h = 1e-6, dP = (P(s + h) - P(s - h)) / (2 * h);
        pairs &= d2 == 1 ? dP > 0 : dP < 0;
      }
  o.detail += " pair part at alpha=pi/4, 3pi/4 checked";
  o.require(pairs, "pair-part signs at alpha = pi/4, 3pi/4");
  return o;
}

Outcome core_module() {
  Outcome o;
  const CoreLadderResult R = extract_core_energy(1.0, kLadderA);
  bool converged = true, below = true, profile = true;
  double mean = 0;
  for (const auto& r : R.rows) mean += r.f / double(R.rows.size());
  double spread = 0;
  for (std::size_t i = 0; i < R.rows.size(); ++i) {
    const auto& r = R.rows[i];
    converged &= r.converged;
    below &= r.infE <= r.upperBound;
    spread = std::max(spread, std::abs(r.f - mean) / std::abs(mean));
    if (i > 0) profile &= r.diagnostics.profileError < R.rows[i - 1].diagnostics.profileError;
  }
  o.note(" e_1 %.5f", R.eGamma);
  o.note(" +- %.5f;", R.uncertainty);
  o.note(" f spread %.3f;", spread);
  o.note(" profile error %.4f", R.rows.front().diagnostics.profileError);
  o.note(" -> %.4f;", R.rows.back().diagnostics.profileError);
  o.require(converged, "all core minimizations converged");
  o.require(below, "inf E below the construction bound");
  o.require(spread <= 0.2, "fitted constant stable within 20%");
  o.require(profile, "profile error decreases");
  std::vector<double> longer = kLadderA;
  longer.push_back(5e-13);
  const CoreLadderResult T = extract_core_energy(1.0, longer);
  const double shift = std::abs(T.eGamma - R.eGamma);
  o.note(" shift with eps=5e-13 added %.5f", shift);
  o.require(shift <= R.uncertainty, "extrapolation stable under an extra ladder point");
  return o;
}

Outcome linear_consistency() {
  Outcome o;
  const LinearShiftResult R =
      linear_shift({WallConfig::create(kPi / 2, {0.0}, {1}), WallConfig::create(kPi / 2, {0.3}, {1}),
                    WallConfig::create(kPi / 2, {0.5}, {1})},
                   kLadderA);
  for (const auto& s : R.full) collect(s);
  o.note(" shifts %.4f", R.shifts[0]);
  o.note(" %.4f", R.shifts[1]);
  o.note(" %.4f;", R.shifts[2]);
  o.note(" spread %.4f;", R.spread);
  double worst = 0;
  for (std::size_t i = 0; i < R.pairs.size(); ++i)
    worst = std::max(worst, std::abs(R.fullDifference[i] - R.linearDifference[i]) / R.combinedUncertainty[i]);
  o.note(" max |dQ - dQlin| / combined uncertainty %.3f", worst);
  o.require(R.shiftConstant, "shift configuration independent within 10%");
  o.require(R.differencesAgree, "differences agree within combined uncertainties");
  return o;
}

Outcome diagnostics() {
  Outcome o;
  double worstEl = 0;
  bool converged = true, bounds = true;
  for (const auto& r : g_fullRows) {
    worstEl = std::max(worstEl, r.elResidual);
    converged &= r.converged;
    bounds &= r.coreBoundsHold;
  }
  o.note(" %.0f full-model runs;", double(g_fullRows.size()));
  o.note(" max EL residual %.2e;", worstEl);
  o.require(!g_fullRows.empty() && converged, "all runs converged");
  o.require(worstEl <= 1e-6, "EL residual within 1e-6");
  o.require(bounds, "core bounds hold on every run");

  ValidationOptions vo;
  vo.traces = 0;
  const ValidationReport V = validation_suite(vo);
  for (const auto& row : V.rows)
    if (row.name == "pohozaev_order") {
      o.note(" Pohozaev order %.2f;", row.value);
      o.require(row.pass, "Pohozaev residual of order h");
    }

  const auto cfg = WallConfig::create(1.2, {-0.4, 0.3}, {1, -1});
  const MinimizeReport m = minimize(cfg, Scales::fromEpsilon(1e-3), Model::Full);
  const PhaseProblem p = wall_problem(m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  double worstFd = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> phi = m.phase.values, d(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
      phi[i] += 0.2 * u(rng);
      d[i] = u(rng);
    }
    const auto g = p.gradient(phi);
    double an = 0;
    auto a = phi, b = phi;
    const double t = 1e-6;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      an += g[i] * d[i];
      a[i] += t * d[i];
      b[i] -= t * d[i];
    }
    worstFd = std::max(worstFd, std::abs((p.energy(a) - p.energy(b)) / (2 * t) - an) / std::abs(an));
  }
  o.note(" gradient vs FD %.2e", worstFd);
  o.require(worstFd <= 1e-6, "gradient matches finite differences");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // the diagnostics criterion reuses the runs of criteria 4, 5 and 9
  const std::vector<Criterion> order = {
      {1, "closed-form identities", closed_form_identities},
      {2, "H^1/2 three-way equivalence", half_norm_equivalence},
      {3, "H^1 deviation decay", h1_decay},
      {4, "energy bracket for minimizers", energy_bracket},
      {5, "renormalized-energy differences", renormalized_differences},
      {6, "sign structure of W", sign_structure},
      {7, "core module", core_module},
      {9, "linear-model consistency", linear_consistency},
      {8, "diagnostics", diagnostics}};
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& c : order) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += std::string(" [exception: ") + e.what() + "]";
    }
    char head[160];
    std::snprintf(head, sizeof head, "criterion %d %-34s %s (%.1f s)", c.id, c.name, o.pass ? "PASS" : "FAIL",
                  seconds_since(t0));
    lines.emplace_back(c.id, std::string(head) + o.detail);
    std::fprintf(stderr, "%s\n", lines.back().second.c_str());
    all &= o.pass;
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) std::printf("%s\n", l.second.c_str());
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
