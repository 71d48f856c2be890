// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// The core functional on the unit half disk,
//   E(mu) = eps/2 int (mu')^2/(1-mu^2) + 1/2 int_{B_1^+} |grad v|^2,
// v harmonic with v = mu on the diameter and v = 1 - gamma on the arc.
// The half disk is discretized in log-polar coordinates (t = log r, theta),
// where the Dirichlet integral keeps its Cartesian form.

#ifndef NEELWALL_CORELAB_HPP
#define NEELWALL_CORELAB_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "neelwall/descent.hpp"
#include "neelwall/domain.hpp"

namespace neelwall {

struct CoreGridOptions {
  double dt = 0.05;          // radial step in log r
  double rMinFactor = 0.01;  // r_min = rMinFactor * delta
  int angles = 0;            // angular cells, 0: about pi/dt
};

class CoreProblem {
public:
  // flipped: phase runs from -beta to +beta instead of +beta to -beta.
  CoreProblem(double gamma, const Scales& scales, const CoreGridOptions& options = {},
              bool flipped = false);

  double gamma() const { return gamma_; }
  const Scales& scales() const { return scales_; }
  bool flipped() const { return flipped_; }
  // Diameter nodes -1 = -r_J < ... < -r_0 < 0 < r_0 < ... < r_J = 1.
  const std::vector<double>& diameter() const { return x_; }
  std::size_t centre() const { return J_ + 1; }
  const std::vector<double>& radii() const { return r_; }
  std::size_t angularCells() const { return K_; }
  double dt() const { return dt_; }
  double dtheta() const { return dth_; }

  // Schur complement over all diameter nodes, zero rows at +-1;
  // int |grad w|^2 = vt^T S vt for vt = mu - (1 - gamma).
  const Eigen::MatrixXd& dtn() const { return S_; }
  double dtnAsymmetry() const { return asym_; }  // before symmetrization, relative

  // Harmonic extension of diameter data vt, indexed [j][k] with j radial.
  std::vector<std::vector<double>> extend(const std::vector<double>& vt) const;
  // Gradient integral of a nodal field: Q1 on the log-polar cells, P1 on the
  // fan of triangles joining the innermost ring to the centre.
  double fieldEnergy(const std::vector<std::vector<double>>& v, double centreValue) const;

private:
  std::size_t polar(std::size_t j, std::size_t k) const { return j * (K_ + 1) + k; }
  std::size_t diameterIndex(std::size_t j, std::size_t k) const;

  double gamma_;
  Scales scales_;
  bool flipped_;
  std::size_t J_ = 0, K_ = 0;
  double dt_ = 0, dth_ = 0;
  std::vector<double> r_, x_;
  std::vector<long> interiorOf_;  // polar node -> interior unknown or -1
  std::vector<std::size_t> boundaryPolar_, boundaryDiam_;
  Eigen::SparseMatrix<double> Kib_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
  Eigen::MatrixXd S_;
  double asym_ = 0;
};

// int_{B_1^+} |grad v|^2 for diameter data mu (mu(0) = 1, mu(+-1) = 1 - gamma).
double halfdisk_dirichlet_energy(const CoreProblem& problem, const std::vector<double>& mu);

// The radial test profile mu = 1 - gamma log((x^2+delta^2)/delta^2)/log((1+delta^2)/delta^2).
std::vector<double> core_construction_mu(const CoreProblem& problem);
// Energy bound of the radial test profile.
double core_upper_bound(double gamma, const Scales& scales);

struct CoreMinimum {
  std::vector<double> psi, mu;
  double energy = 0, exchange = 0, dirichlet = 0;
  int iterations = 0;
  double gradientNorm = 0;
  bool converged = false;
};

// The core problem is stiff at small epsilon; Newton from the first step.
inline DescentOptions core_descent_defaults() {
  DescentOptions o;
  o.newtonSwitch = 1;
  return o;
}

CoreMinimum minimize_core(const CoreProblem& problem,
                          const DescentOptions& options = core_descent_defaults());

struct CoreDiagnostics {
  double dtnEnergy = 0, directEnergy = 0, relativeGap = 0;
  double arcFlux = 0;       // int over the arc of |grad u|^2
  double profileError = 0;  // sup over 0.1 < |x| < 0.9 of |(mu-1+gamma)L - gamma log(1/|x|)|
  double fieldError = 0;    // L^2 error of L u vs gamma(theta - pi/2) on 0.1 < r < 0.9
  double muMin = 0, muMax = 0;
};

CoreDiagnostics core_diagnostics(const CoreProblem& problem, const CoreMinimum& minimum);

struct CoreLadderRow {
  double epsilon = 0, delta = 0, L = 0;
  double infE = 0;
  double f = 0;           // L^2 infE - pi gamma^2 L / 2
  double upperBound = 0;  // core_upper_bound
  CoreDiagnostics diagnostics;
  bool converged = false;
};

struct CoreLadderResult {
  double gamma = 0;
  std::vector<CoreLadderRow> rows;  // decreasing epsilon
  double eGamma = 0;                // one-term fit f = e + c1/L
  double slope = 0;                 // c1
  double uncertainty = 0;           // change when the largest epsilon is dropped
  double twoTermSensitivity = 0;    // limit of the two-term fit minus eGamma
  std::vector<double> fitResiduals;
  // False when f is not monotone along the ladder: the one-term model
  // cannot describe such data.
  bool reliable = true;
};

CoreLadderResult extract_core_energy(double gamma, std::vector<double> ladder,
                                     const CoreGridOptions& grid = {},
                                     const DescentOptions& descent = core_descent_defaults(),
                                     bool flipped = false,
                                     unsigned threads = 0);

// e(+1) = e_{1-cos alpha}, e(-1) = e_{1+cos alpha}
inline double core_gamma(double alpha, int sign) { return sign == 1 ? 1 - std::cos(alpha) : 1 + std::cos(alpha); }

}  // namespace neelwall

#endif
