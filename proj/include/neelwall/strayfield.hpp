// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Magnetostatic energy 1/2 |g|^2_{H^1/2} of the zero-extended trace
// g = m1 - cos(alpha), its first variation |D|g and the stray potential U.

#ifndef NEELWALL_STRAYFIELD_HPP
#define NEELWALL_STRAYFIELD_HPP

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "neelwall/closedform.hpp"
#include "neelwall/domain.hpp"

namespace neelwall {

// Samples on the periodic box [-L, L), x_j = -L + j h, h = 2L/n.
struct ExtendedTrace {
  double L = 8;
  std::vector<double> x;
  std::vector<double> g;

  double h() const { return 2 * L / double(g.size()); }
  // g is sampled inside [-1,1] and set to zero outside.
  static ExtendedTrace fromFunction(const std::function<double(double)>& g, double L,
                                    std::size_t n, bool clipToInterval = true);
  // Piecewise linear interpolation of nodal values on a grid over [-1,1].
  static ExtendedTrace fromProfile(const Grid& grid, const std::vector<double>& g, double L,
                                   std::size_t n);
};

// |D| on the padded box with frequencies xi_k = pi k / L. Energies include an
// end correction for the kink of |xi| at the origin, so that the periodic
// sum approximates the whole-line integral for data with nonzero mean.
class SpectralOperator {
public:
  SpectralOperator(double L, std::size_t n);
  ~SpectralOperator();
  SpectralOperator(const SpectralOperator&) = delete;
  SpectralOperator& operator=(const SpectralOperator&) = delete;

  double L() const { return L_; }
  std::size_t size() const { return n_; }
  const std::vector<double>& frequencies() const { return xi_; }

  // Pure multiplier |xi_k| (periodic operator).
  std::vector<double> applyPeriodic(const std::vector<double>& g) const;
  // Variational derivative of energy(), per unit length.
  std::vector<double> apply(const ExtendedTrace& t) const;
  double energy(const ExtendedTrace& t) const;

private:
  void check(const ExtendedTrace& t) const;
  double L_;
  std::size_t n_;
  std::vector<double> xi_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

double magnetostatic_energy(const ExtendedTrace& trace);
std::vector<double> magnetostatic_gradient(const ExtendedTrace& trace);

// Exact quadratic form of |D| for continuous piecewise linear traces on a
// grid over [-1,1] vanishing at +-1: E = 1/2 g^T A g.
class TraceOperator {
public:
  explicit TraceOperator(std::shared_ptr<const Grid> grid);

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> gridPtr() const { return grid_; }
  // Dense over all nodes; rows and columns of the two end nodes are zero.
  const Eigen::MatrixXd& matrix() const { return A_; }
  double energy(const std::vector<double>& g) const;
  std::vector<double> apply(const std::vector<double>& g) const;
  // Nodal |D|g: (A g)_i / mass_i.
  std::vector<double> halfLaplacian(const std::vector<double>& g) const;

private:
  std::shared_ptr<const Grid> grid_;
  Eigen::MatrixXd A_;
};

// The harmonic potential with d2 U = -g' on (-1,1) x {0}, zero Neumann data
// elsewhere on the axis and U -> 0 at infinity, for a piecewise linear g.
class StrayPotential {
public:
  StrayPotential(std::shared_ptr<const Grid> grid, std::vector<double> g);
  double value(double x1, double x2) const;
  Vec2 gradient(double x1, double x2) const;

private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> g_, slope_;
};

std::vector<double> stray_potential(std::shared_ptr<const Grid> grid, const std::vector<double>& g,
                                    const std::vector<Vec2>& points);

// int of |grad U|^2 over the half disk of radius r centred at (c,0).
double stray_energy_in_half_disk(const StrayPotential& U, double c, double r);

}  // namespace neelwall

#endif
