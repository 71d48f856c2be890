// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "neelwall/closedform.hpp"
#include "neelwall/domain.hpp"
#include "neelwall/format.hpp"
#include "neelwall/minimizer.hpp"
#include "neelwall/quadrature.hpp"
#include "neelwall/strayfield.hpp"

namespace neelwall {

double SmoothTrace::value(double x) const {
  if (!(std::abs(x) < 1)) return 0;
  const double w = 1 - x * x;
  double p = 0;
  for (std::size_t k = c.size(); k-- > 0;) p = p * x + c[k];
  return w * w * w * p;
}

double SmoothTrace::derivative(double x) const {
  if (!(std::abs(x) < 1)) return 0;
  const double w = 1 - x * x;
  double p = 0, dp = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[k];
  }
  return -6 * x * w * w * p + w * w * w * dp;
}

std::vector<SmoothTrace> random_smooth_traces(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<SmoothTrace> t(count);
  for (auto& s : t)
    for (double& c : s.c) c = u(rng);
  return t;
}

double gagliardo_energy(const std::function<double(double)>& g,
                        const std::function<double(double)>& gPrime) {
  const GaussRule& R = GaussRule::get(16);
  std::vector<double> x, w;
  const int panels = 16;
  for (int p = 0; p < panels; ++p) {
    const double a = -1 + 2.0 * p / panels, h = 2.0 / panels;
    for (std::size_t k = 0; k < R.x.size(); ++k) {
      x.push_back(a + 0.5 * h * (1 + R.x[k]));
      w.push_back(0.5 * h * R.w[k]);
    }
  }
  std::vector<double> gx, dx;
  for (double t : x) {
    gx.push_back(g(t));
    dx.push_back(gPrime(t));
  }
  double inner = 0, outside = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double q = i == j ? dx[i] : (gx[i] - gx[j]) / (x[i] - x[j]);
      inner += w[i] * w[j] * q * q;
    }
    outside += w[i] * 2 * gx[i] * gx[i] * (1 / (1 - x[i]) + 1 / (1 + x[i]));
  }
  return (inner + outside) / (4 * kPi);
}

bool ValidationReport::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

std::string ValidationReport::csv() const {
  std::ostringstream o;
  o << "name,value,reference,error,tolerance,pass\n";
  for (const auto& r : rows)
    o << r.name << ',' << fmt17(r.value) << ',' << fmt17(r.reference) << ',' << fmt17(r.error) << ','
      << fmt17(r.tolerance) << ',' << (r.pass ? 1 : 0) << '\n';
  return o.str();
}

namespace {

void add(ValidationReport& R, std::string name, double value, double reference, double error,
         double tolerance) {
  R.rows.push_back({std::move(name), value, reference, error, tolerance, error <= tolerance});
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

ValidationReport validation_suite(const ValidationOptions& o) {
  ValidationReport R;

  // Moebius invariance of rho
  {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-0.99, 0.99);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const double b = u(rng), c = u(rng), t = u(rng);
      const double pb = mobius_transform(t, b).real(), pc = mobius_transform(t, c).real();
      worst = std::max(worst, std::abs(mobius_metric(pb, pc) - mobius_metric(b, c)));
    }
    add(R, "mobius_invariance", worst, 0, worst, 1e-12);
  }

  // cross energy against area quadrature
  for (double b : {-0.8, -0.4, 0.0, 0.4, 0.8})
    for (double c : {-0.7, -0.25, 0.1, 0.5, 0.9}) {
      const double q = cross_energy_quadrature(b, c), e = cross_energy(b, c);
      add(R, "cross_energy[" + label(b) + ";" + label(c) + "]", q, e, relative(q, e), 1e-2);
    }

  // W1 by area quadrature of |grad u*|^2
  for (const auto& cfg : {WallConfig::create(kPi / 2, {0.2}, {1}),
                          WallConfig::create(kPi / 2, {-0.3, 0.3}, {1, 1}),
                          WallConfig::create(kPi / 3, {-0.5, 0.0, 0.4}, {1, -1, 1})}) {
    const double r = cfg.rho();
    const double q = estar_quadrature(cfg, {r / 2, r / 4, r / 8, r / 16}).estimate;
    const double w = renormalized_W(cfg).W1;
    add(R, "estar_W1[N=" + std::to_string(cfg.size()) + "]", q, w, relative(q, w), 1e-2);
  }

  // decay of the H^1 deviation: each halving of r at least halves it
  for (double b : {0.0, 0.5}) {
    double worst = 0, previous = 0;
    const std::vector<double> radii = {0.2, 0.1, 0.05, 0.025};
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double dev = std::abs(h1_outside_ball(b, radii[k]) - kPi * std::log((2 - 2 * b * b) / radii[k]));
      if (k > 0) worst = std::max(worst, dev / previous / (radii[k] / radii[k - 1]));
      previous = dev;
    }
    add(R, "h1_decay_ratio[" + label(b) + "]", worst, 1, worst, 1);
  }

  // H^1/2: spectral, Gagliardo and the exact P1 form
  {
    const auto grid = Grid::uniform(1000);
    const TraceOperator P1(grid);
    const auto traces = random_smooth_traces(o.seed, o.traces);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const auto& t = traces[i];
      auto g = [&](double x) { return t.value(x); };
      auto dg = [&](double x) { return t.derivative(x); };
      const double s = magnetostatic_energy(ExtendedTrace::fromFunction(g, 8, std::size_t(1) << 14));
      const double gg = gagliardo_energy(g, dg);
      std::vector<double> nodal;
      for (double x : grid->nodes()) nodal.push_back(g(x));
      const double p = P1.energy(nodal);
      const double spread = std::max({s, gg, p}) / std::min({s, gg, p}) - 1;
      add(R, "half_norm_three_way[" + std::to_string(i) + "]", s, gg, spread, 5e-3);
    }
    auto gauss = [](double x) { return std::exp(-8 * x * x); };
    const double e = magnetostatic_energy(ExtendedTrace::fromFunction(gauss, 8, std::size_t(1) << 14, false));
    add(R, "half_norm_gaussian", e, 0.5, std::abs(e - 0.5), 1e-4);
  }

  // Pohozaev residual under refinement: observed order at least one
  if (o.pohozaev) {
    const WallConfig cfg = WallConfig::create(kPi / 2, {0.0}, {1});
    std::vector<double> res;
    for (double refine : {1.0, 0.5, 0.25}) {
      MinimizeOptions mo;
      mo.grid.refine = refine;
      const MinimizeReport m = minimize(cfg, Scales::fromEpsilon(1e-3), Model::Full, mo);
      double worst = 0;
      for (const auto& row : m.energy.pohozaev) worst = std::max(worst, std::abs(row.relative));
      res.push_back(worst);
    }
    double order = INFINITY;
    for (std::size_t k = 1; k < res.size(); ++k) order = std::min(order, std::log2(res[k - 1] / res[k]));
    add(R, "pohozaev_order", order, 1, std::max(0.0, 1 - order), 0);
  }
  return R;
}

}  // namespace neelwall
