// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Minimization of phase energies
//   f(phi) = eps/2 sum_c (phi_{c+1}-phi_c)^2/h_c + 1/2 g^T A g,  g = cos(phi) - c0,
// over the free nodes of a 1D grid. Used for the full wall model and for the
// core functional, where A is a Dirichlet-to-Neumann form.

#ifndef NEELWALL_DESCENT_HPP
#define NEELWALL_DESCENT_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace neelwall {

struct PhaseProblem {
  std::vector<double> nodes;
  double epsilon = 0;
  const Eigen::MatrixXd* A = nullptr;  // symmetric, over all nodes
  double c0 = 0;
  std::vector<bool> fixed;

  double exchange(const std::vector<double>& phi) const;
  double magnetostatic(const std::vector<double>& phi) const;
  double energy(const std::vector<double>& phi) const;
  // Full nodal gradient; fixed entries included (not zeroed).
  std::vector<double> gradient(const std::vector<double>& phi) const;
  // Gradient of the exchange part alone, eps K phi.
  std::vector<double> exchangeGradient(const std::vector<double>& phi) const;
  Eigen::MatrixXd hessian(const std::vector<double>& phi) const;
};

struct DescentOptions {
  double gradTol = 1e-10;   // relative to the energy
  int maxQuasiNewton = 3000;
  int memory = 20;
  int maxNewton = 60;
  bool newtonPolish = true;
  double newtonSwitch = 1e-5;  // gradient reduction that starts the Newton stage
};

struct DescentResult {
  std::vector<double> phi;
  double energy = 0;
  double gradientNorm = 0;  // sup over free nodes
  int iterations = 0;       // accepted steps of all stages
  int quasiNewtonSteps = 0;
  int gradientSteps = 0;
  int newtonSteps = 0;
  bool converged = false;
  std::string message;
};

// Every accepted step decreases f. Throws SolverError when no step along a
// descent direction decreases f before convergence (iterate in the message).
DescentResult minimize_phase(const PhaseProblem& problem, std::vector<double> phi0,
                             const DescentOptions& options = {});

}  // namespace neelwall

#endif
