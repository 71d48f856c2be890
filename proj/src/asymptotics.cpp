// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neelwall/closedform.hpp"
#include "neelwall/extrapolate.hpp"
#include "neelwall/format.hpp"
#include "neelwall/parallel.hpp"

namespace neelwall {

LadderFit fit_ladder(const std::vector<double>& L, const std::vector<double>& y) {
  if (L.size() < 3) throw DomainError("a ladder fit needs at least three points");
  LadderFit F;
  const InverseFit one = fit_inverse_powers(L, y, 1);
  F.headline = one.limit();
  F.slope = one.coefficients[1];
  F.residuals = one.residuals;
  const double dropped =
      fit_inverse_powers({L.begin() + 1, L.end()}, {y.begin() + 1, y.end()}, 1).limit();
  F.bestTerms = std::clamp(int(L.size()) - 2, 1, 3);
  F.best = fit_inverse_powers(L, y, F.bestTerms).limit();
  const double previous = F.bestTerms > 1 ? fit_inverse_powers(L, y, F.bestTerms - 1).limit() : F.best;
  F.uncertainty = std::max(std::abs(F.headline - dropped),
                           std::abs(F.headline - F.best) + std::abs(F.best - previous));
  return F;
}

double ladder_variable(Model model, const Scales& s) {
  return model == Model::Full ? s.logInvDelta : std::log(1 / s.epsilon);
}

std::vector<double> default_ladder() { return {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}; }

std::string SweepResult::csv() const {
  std::ostringstream o;
  o << "epsilon,delta,E,Q\n";
  for (const auto& r : rows)
    if (r.done) o << fmt17(r.epsilon) << ',' << fmt17(r.delta) << ',' << fmt17(r.E) << ',' << fmt17(r.Q) << '\n';
  return o.str();
}

namespace {

std::vector<double> sorted_ladder(std::vector<double> ladder) {
  std::sort(ladder.begin(), ladder.end(), std::greater<>());
  if (ladder.size() < 3 || std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end())
    throw DomainError("a ladder needs at least three distinct epsilons");
  for (double e : ladder)
    if (!(e > 0 && e < 0.5)) throw DomainError("ladder epsilons must lie in (0, 1/2)");
  return ladder;
}

void require_same_class(const WallConfig& a, const WallConfig& b) {
  if (a.alpha() != b.alpha() || a.signs() != b.signs())
    throw DomainError("configurations must share alpha and the wall signs d");
}

}  // namespace

SweepResult sweep(const WallConfig& config, std::vector<double> ladder, Model model,
                  const SweepOptions& options) {
  ladder = sorted_ladder(std::move(ladder));
  SweepResult S{config};
  S.model = model;
  S.rows.resize(ladder.size());
  try {
    parallel_for(ladder.size(), options.threads, [&](std::size_t i) {
      const Scales s = Scales::fromEpsilon(ladder[i]);
      const MinimizeReport R = minimize(config, s, model, options.minimize);
      SweepRow& row = S.rows[i];
      row.epsilon = s.epsilon;
      row.delta = s.delta;
      row.L = ladder_variable(model, s);
      row.E = R.energy.total;
      row.Q = row.L * row.L * row.E - kPi / 2 * config.Gamma() * row.L;
      row.leading = row.L * row.E;
      if (model == Model::Full) row.upperBound = construction_bound(R.config, s, R.config.rho());
      row.iterations = R.iterations;
      row.converged = R.converged;
      row.outsideRegime = R.outsideRegime;
      row.elResidual = R.energy.elResidualNorm;
      row.coreBoundsHold = std::all_of(R.energy.coreBounds.begin(), R.energy.coreBounds.end(),
                                       [](const CoreBoundRow& c) { return c.holds; });
      if (options.diagnostics) row.diagnostics = ladder_diagnostics(R);
      row.done = true;
    });
  } catch (const std::exception& e) {
    S.failure = e.what();
  }
  S.complete = std::all_of(S.rows.begin(), S.rows.end(), [](const SweepRow& r) { return r.done; });
  if (S.complete) {
    std::vector<double> L, Q;
    for (const auto& r : S.rows) {
      L.push_back(r.L);
      Q.push_back(r.Q);
    }
    S.fit = fit_ladder(L, Q);
  }
  return S;
}

std::string DifferenceResult::csv() const {
  std::ostringstream o;
  o << "epsilon,delta,Q_A,Q_B,dQ\n";
  for (std::size_t i = 0; i < dQ.size(); ++i)
    o << fmt17(a.rows[i].epsilon) << ',' << fmt17(a.rows[i].delta) << ',' << fmt17(a.rows[i].Q) << ','
      << fmt17(b.rows[i].Q) << ',' << fmt17(dQ[i]) << '\n';
  return o.str();
}

DifferenceResult difference_experiment(const WallConfig& A, const WallConfig& B,
                                       const std::vector<double>& ladder, Model model,
                                       const SweepOptions& options) {
  require_same_class(A, B);
  const std::vector<double> lad = sorted_ladder(ladder);
  DifferenceResult D{sweep(A, lad, model, options), sweep(B, lad, model, options)};
  D.target = renormalized_W(A).W - renormalized_W(B).W;
  D.complete = D.a.complete && D.b.complete;
  if (!D.complete) return D;
  for (std::size_t i = 0; i < lad.size(); ++i) {
    D.L.push_back(D.a.rows[i].L);
    D.dQ.push_back(D.a.rows[i].Q - D.b.rows[i].Q);
  }
  D.fit = fit_ladder(D.L, D.dQ);
  D.discrepancy = std::abs(D.fit.headline - D.target);
  D.relativeError = D.target != 0 ? D.discrepancy / std::abs(D.target) : D.discrepancy;
  D.withinTolerance = D.relativeError <= 0.1;
  D.covered = D.discrepancy <= D.fit.uncertainty;
  return D;
}

std::string InteractionReport::csv() const {
  std::ostringstream o;
  o << "kind,parameter,W,derivative,ok\n";
  for (const auto& r : rows)
    o << r.kind << ',' << fmt17(r.parameter) << ',' << fmt17(r.W) << ',' << fmt17(r.derivative) << ','
      << (r.ok ? 1 : 0) << '\n';
  return o.str();
}

InteractionReport interaction_sign_report(double alpha, const std::vector<double>& separations,
                                          const std::vector<double>& boundaryPositions) {
  InteractionReport R;
  R.alpha = alpha;
  auto pairW = [&](double s, int d2) {
    return renormalized_W(WallConfig::create(alpha, {-s / 2, s / 2}, {1, d2})).W;
  };
  auto wallW = [&](double a) { return renormalized_W(WallConfig::create(alpha, {a}, {1})).W; };
  R.sameSignOk = R.oppositeSignOk = !separations.empty();
  for (double s : separations) {
    if (!(s > 0 && s < 1)) throw DomainError("pair separations must lie in (0, 1)");
    const double h = 1e-5 * std::min(s, 1 - s);
    for (int d2 : {1, -1}) {
      SignRow r;
      r.kind = d2 == 1 ? "same" : "opposite";
      r.parameter = s;
      r.W = pairW(s, d2);
      r.derivative = (pairW(s + h, d2) - pairW(s - h, d2)) / (2 * h);
      r.ok = d2 == 1 ? r.derivative > 0 : r.derivative < 0;
      (d2 == 1 ? R.sameSignOk : R.oppositeSignOk) &= r.ok;
      R.rows.push_back(r);
    }
  }
  std::vector<double> pos = boundaryPositions;
  std::sort(pos.begin(), pos.end());
  R.boundaryOk = !pos.empty();
  double previous = -INFINITY;
  for (double a : pos) {
    if (!(a >= 0 && a < 1)) throw DomainError("boundary positions must lie in [0, 1)");
    const double h = 1e-3 * (1 - a);
    SignRow r;
    r.kind = "boundary";
    r.parameter = a;
    r.W = wallW(a);
    r.derivative = (wallW(a + h) - wallW(a - h)) / (2 * h);
    r.ok = r.derivative > 0 && r.W > previous;
    previous = r.W;
    R.boundaryOk &= r.ok;
    R.rows.push_back(r);
  }
  return R;
}

LinearShiftResult linear_shift(const std::vector<WallConfig>& configs,
                               const std::vector<double>& ladder, const SweepOptions& options) {
  if (configs.size() < 2) throw DomainError("the shift comparison needs at least two configurations");
  for (const auto& c : configs) require_same_class(configs.front(), c);
  LinearShiftResult R;
  for (const auto& c : configs) {
    R.full.push_back(sweep(c, ladder, Model::Full, options));
    R.linear.push_back(sweep(c, ladder, Model::Linear, options));
    if (!R.full.back().complete || !R.linear.back().complete)
      throw SolverError("sweep failed: " + R.full.back().failure + R.linear.back().failure);
    R.shifts.push_back(R.linear.back().fit.headline - R.full.back().fit.headline);
    R.shiftUncertainty.push_back(R.linear.back().fit.uncertainty + R.full.back().fit.uncertainty);
  }
  for (double s : R.shifts) R.meanShift += s / double(R.shifts.size());
  for (double s : R.shifts) R.spread = std::max(R.spread, std::abs(s - R.meanShift) / std::abs(R.meanShift));
  R.shiftConstant = R.spread <= 0.1;

  auto diff = [](const SweepResult& a, const SweepResult& b) {
    std::vector<double> L, d;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      L.push_back(a.rows[i].L);
      d.push_back(a.rows[i].Q - b.rows[i].Q);
    }
    return fit_ladder(L, d);
  };
  R.differencesAgree = true;
  for (std::size_t i = 0; i < configs.size(); ++i)
    for (std::size_t j = i + 1; j < configs.size(); ++j) {
      const LadderFit f = diff(R.full[i], R.full[j]), l = diff(R.linear[i], R.linear[j]);
      R.pairs.emplace_back(i, j);
      R.fullDifference.push_back(f.headline);
      R.linearDifference.push_back(l.headline);
      R.combinedUncertainty.push_back(f.uncertainty + l.uncertainty);
      R.differencesAgree &= std::abs(f.headline - l.headline) <= f.uncertainty + l.uncertainty;
    }
  return R;
}

}  // namespace neelwall
