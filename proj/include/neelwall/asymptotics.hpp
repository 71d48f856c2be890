// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Epsilon-ladder experiments: sweeps of minimal energies, extrapolation of
// the rescaled energy Q = L^2 E - (pi/2) Gamma L to its limit, differences
// between configurations, and the sign structure of the closed-form W.
// L = log(1/delta) for the full model, log(1/eps) for the linear one.

#ifndef NEELWALL_ASYMPTOTICS_HPP
#define NEELWALL_ASYMPTOTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "neelwall/domain.hpp"
#include "neelwall/minimizer.hpp"

namespace neelwall {

// One-term fit y = W + c/L as the headline value. The uncertainty is the
// larger of the change when the largest epsilon is dropped and the distance
// to the highest-order fit (up to three terms, two points of slack) plus
// that fit's own last-term change.
struct LadderFit {
  double headline = 0;
  double slope = 0;
  double best = 0;      // highest-order fit
  int bestTerms = 1;
  double uncertainty = 0;
  std::vector<double> residuals;  // of the one-term fit
};

LadderFit fit_ladder(const std::vector<double>& L, const std::vector<double>& y);

double ladder_variable(Model model, const Scales& scales);

struct SweepRow {
  double epsilon = 0, delta = 0, L = 0;
  double E = 0, Q = 0;
  double leading = 0;      // L E, tends to pi Gamma / 2
  double upperBound = 0;   // construction bound with R = rho (full model)
  int iterations = 0;
  bool converged = false;
  bool outsideRegime = false;
  double elResidual = 0;        // relative sup norm (full model)
  bool coreBoundsHold = false;  // every core bound row holds (full model)
  bool done = false;
  std::optional<LadderDiagnostics> diagnostics;
};

struct SweepResult {
  WallConfig config;
  Model model = Model::Full;
  std::vector<SweepRow> rows;  // decreasing epsilon
  LadderFit fit;
  bool complete = false;
  std::string failure;  // first error when incomplete
  std::string csv() const;  // epsilon,delta,E,Q
};

struct SweepOptions {
  MinimizeOptions minimize;
  bool diagnostics = false;  // stray-field ladder diagnostics per point
  unsigned threads = 0;
};

std::vector<double> default_ladder();

// A failing minimization does not throw: the finished rows are kept and
// complete is false.
SweepResult sweep(const WallConfig& config, std::vector<double> ladder, Model model,
                  const SweepOptions& options = {});

struct DifferenceResult {
  SweepResult a, b;
  std::vector<double> L, dQ;
  LadderFit fit;
  double target = 0;  // closed-form W(a_A, d) - W(a_B, d)
  double discrepancy = 0;
  double relativeError = 0;
  bool withinTolerance = false;  // relative error <= 10%
  bool covered = false;          // discrepancy <= uncertainty
  bool complete = false;
  std::string csv() const;       // epsilon,delta,Q_A,Q_B,dQ
};

// Throws DomainError unless both configurations share alpha and d.
DifferenceResult difference_experiment(const WallConfig& a, const WallConfig& b,
                                       const std::vector<double>& ladder, Model model,
                                       const SweepOptions& options = {});

struct SignRow {
  std::string kind;  // same, opposite or boundary
  double parameter = 0;   // separation, or wall position for boundary rows
  double W = 0;
  double derivative = 0;  // dW/dparameter, central difference
  bool ok = false;
};

struct InteractionReport {
  double alpha = 0;
  std::vector<SignRow> rows;
  bool sameSignOk = false, oppositeSignOk = false, boundaryOk = false;
  bool ok() const { return sameSignOk && oppositeSignOk && boundaryOk; }
  std::string csv() const;  // kind,parameter,W,derivative,ok
};

// Pairs sit at -s/2, s/2. Boundary rows move a single wall towards +1.
InteractionReport interaction_sign_report(double alpha, const std::vector<double>& separations,
                                          const std::vector<double>& boundaryPositions = {
                                              0.5, 0.8, 0.9, 0.99, 0.999});

struct LinearShiftResult {
  std::vector<SweepResult> full, linear;
  std::vector<double> shifts;  // linear headline minus full headline
  std::vector<double> shiftUncertainty;
  double meanShift = 0;
  double spread = 0;           // max |shift - mean| / |mean|
  bool shiftConstant = false;  // spread <= 10%
  // config pairs (i, j), i < j
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> fullDifference, linearDifference, combinedUncertainty;
  bool differencesAgree = false;
};

// All configurations must share alpha and d.
LinearShiftResult linear_shift(const std::vector<WallConfig>& configs,
                               const std::vector<double>& ladder,
                               const SweepOptions& options = {});

}  // namespace neelwall

#endif
