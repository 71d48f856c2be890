// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Minimization of the wall energy E_eps (phase form) and of the linear model
// over profiles with prescribed walls, plus diagnostics on the results.

#ifndef NEELWALL_MINIMIZER_HPP
#define NEELWALL_MINIMIZER_HPP

#include <memory>
#include <string>
#include <vector>

#include "neelwall/descent.hpp"
#include "neelwall/domain.hpp"
#include "neelwall/strayfield.hpp"

namespace neelwall {

enum class Model { Full, Linear };

const char* model_name(Model m);
Model parse_model(const std::string& s);

struct GridOptions {
  // Graded grid: spacing core/nodesPerCore at the walls (core = delta for the
  // full model, epsilon for the linear one), growing linearly with slope
  // growth up to hMax, and hEdge at +-1.
  double nodesPerCore = 8;
  double growth = 0.08;
  double hMax = 1e-2;
  double hEdge = 1e-3;
  // Multiplies all spacings (refinement studies).
  double refine = 1;
  // If nonzero: uniform grid with this many cells, walls snapped to nodes.
  std::size_t uniformCells = 0;
};

struct MinimizeOptions {
  GridOptions grid;
  DescentOptions descent;
  bool allEndpoints = true;  // try both endpoint candidates
};

std::shared_ptr<const Grid> wall_grid(const WallConfig& config, const Scales& scales, Model model,
                                      const GridOptions& options);

// (eps/2) int (phi')^2 of the piecewise linear phase.
double exchange_energy(const PhaseField& phase, double epsilon);

struct PohozaevRow {
  std::size_t wall = 0;
  double radius = 0;
  double lhs = 0;       // eps int_{a-r}^{a+r} (phi')^2
  double rhs = 0;       // boundary terms
  double residual = 0;  // lhs - rhs
  double relative = 0;  // residual / lhs
};

struct CoreBoundRow {
  std::size_t wall = 0;
  double radius = 0;         // R_n used in the estimate
  double exchangeCore = 0;   // (eps/2) int_{a-delta}^{a+delta} (phi')^2
  double exchangeBound = 0;  // E / log(R_n/delta)
  double sinCore = 0;        // int_{a-delta}^{a+delta} sin^2 phi
  double sinBound = 0;       // 4 delta log(1/eps) E / log(R_n/delta)
  bool holds = false;
};

struct ElResidual {
  std::vector<double> x, residual;   // interior free nodes
  double sup = 0, l2 = 0;
  double scale = 0;                  // sup |eps phi''|
  double relative = 0;               // sup / scale
};

struct EnergyBreakdown {
  double exchange = 0;
  double magnetostatic = 0;
  double total = 0;
  double elResidualNorm = 0;  // relative sup norm
  double elResidualL2 = 0;
  std::vector<PohozaevRow> pohozaev;
  std::vector<CoreBoundRow> coreBounds;
};

struct MinimizeReport {
  WallConfig config;  // walls at grid nodes
  Scales scales;
  Model model = Model::Full;
  std::vector<long> multiples;  // phi(a_n) = k_n pi
  double endpoint = 0;          // phi(1)
  std::vector<double> candidateEnergies;
  int iterations = 0;
  double gradientNorm = 0;
  bool converged = false;
  bool outsideRegime = false;  // delta > rho(a)/4
  EnergyBreakdown energy;
  PhaseField phase;
  std::vector<double> m1;
  std::shared_ptr<const TraceOperator> op;

  std::vector<double> g() const;
  // Columns x1, phi, m1, m2, g.
  std::string profileCsv() const;
};

// Explicit test profile with logarithmic bumps of width delta and radius R.
PhaseField construction_profile(const WallConfig& config, const Scales& scales, double R,
                                std::shared_ptr<const Grid> grid);
// int t^2 / ((t^2+1)^2 log(t^2+1)) dt over the real line.
double construction_constant();
// Energy bound satisfied by construction_profile.
double construction_bound(const WallConfig& config, const Scales& scales, double R);

// Lifts m1 to a phase with the pinned values k_n pi and phi(1) = endpoint,
// arccos-based on each segment between pinned nodes.
std::vector<double> lift_segments(const WallConfig& config, const Grid& grid,
                                  const std::vector<std::size_t>& wallNodes,
                                  const std::vector<long>& multiples, double endpoint,
                                  const std::vector<double>& m1);

MinimizeReport minimize(const WallConfig& config, const Scales& scales, Model model,
                        const MinimizeOptions& options = {});

PhaseProblem wall_problem(const MinimizeReport& report);

ElResidual el_residual(const PhaseField& phase, const Scales& scales, const TraceOperator& op,
                       double alpha);

std::vector<PohozaevRow> pohozaev_check(const PhaseField& phase, const Scales& scales,
                                        const WallConfig& config, std::size_t wall,
                                        const std::vector<double>& radii);

std::vector<CoreBoundRow> core_bounds(const PhaseField& phase, const Scales& scales,
                                      const WallConfig& config, double energy);

// Quantities whose scaling along an epsilon ladder is predicted by the theory.
struct LadderDiagnostics {
  double exchangeRescaled = 0;           // eps int (phi')^2 * L^2
  std::vector<double> sinCoreRescaled;   // int_{core} sin^2 phi * L / delta
  double strayOutsideCores = 0;          // int over Omega_delta of |grad U|^2
  double strayDeficit = 0;               // (pi Gamma - L * strayOutsideCores) * L
  double tailError = 0;                  // sup |(m1 - cos a) L - mu*| away from walls
  double potentialError = 0;             // sup |L U - u*| on sample points
};

// L = log(1/delta). Tail and potential errors are taken at distance >= r from
// the walls (r = rho(a)/2 if zero).
LadderDiagnostics ladder_diagnostics(const MinimizeReport& report, double r = 0);

}  // namespace neelwall

#endif
