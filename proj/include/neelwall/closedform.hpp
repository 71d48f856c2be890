// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Limiting objects: the conformal-map solution u, its Moebius translates u_b,
// superpositions u* and mu*, and the renormalized energies.

#ifndef NEELWALL_CLOSEDFORM_HPP
#define NEELWALL_CLOSEDFORM_HPP

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "neelwall/domain.hpp"

namespace neelwall {

using Vec2 = std::array<double, 2>;

// w in the half strip {Re w > 0, 0 < Im w < pi} with -1/cosh(w) = x1 + i x2.
std::complex<double> invert_F(double x1, double x2);

double base_solution_u(double x1, double x2);
Vec2 base_solution_grad(double x1, double x2);
double u_b(double b, double x1, double x2);
Vec2 u_b_grad(double b, double x1, double x2);

double tail_mu(double x1);
double tail_mu_b(double b, double x1);

class LimitStrayField {
public:
  explicit LimitStrayField(WallConfig config);
  double value(double x1, double x2) const;
  Vec2 gradient(double x1, double x2) const;
  // sigma_0..sigma_N, the trace on (a_n, a_{n+1})
  const std::vector<double>& plateaus() const { return sigma_; }
  // omega_n = sum_{k != n} gamma_k u_{a_k}(a_n)
  double omega(std::size_t n) const;
  const WallConfig& config() const { return config_; }

private:
  WallConfig config_;
  std::vector<double> sigma_;
};

class TailProfile {
public:
  explicit TailProfile(WallConfig config);
  double value(double x1) const;
  double derivative(double x1) const;
  const std::vector<double>& lambdas() const { return lambda_; }

private:
  WallConfig config_;
  std::vector<double> lambda_;
};

LimitStrayField limit_field_star(const WallConfig& config);
TailProfile tail_star(const WallConfig& config);

struct RenormalizedEnergy {
  double W1 = 0, W2 = 0, W = 0;
  // -(pi/2) gamma_n^2 log(2 - 2 a_n^2)
  std::vector<double> perWallBoundary;
  // -(pi/2) gamma_k gamma_n log((1+sqrt(1-rho^2))/rho), zero diagonal;
  // W = sum(perWallBoundary) + sum(perPair)
  std::vector<std::vector<double>> perPair;
  std::optional<double> coreEnergies;
  std::optional<double> WW;  // sum e(d_n) + W when core energies are known
};

// ePlus/eMinus: core energies e(+1), e(-1) if available.
RenormalizedEnergy renormalized_W(const WallConfig& config,
                                  std::optional<double> ePlus = std::nullopt,
                                  std::optional<double> eMinus = std::nullopt);

double cross_energy(double b, double c);
// The same integral by area quadrature.
double cross_energy_quadrature(double b, double c);

struct EstarResult {
  double estimate = 0;               // extrapolated to r = 0
  std::vector<double> radii;
  std::vector<double> values;        // 1/2 (int_{Omega_r} |grad u*|^2 - pi Gamma log 1/r)
  double extrapolationChange = 0;    // |estimate - value at smallest r|
};

EstarResult estar_quadrature(const WallConfig& config, const std::vector<double>& radii);

// int over the half plane minus B_r(b) of |grad u_b|^2 by area quadrature.
double h1_outside_ball(double b, double r);

}  // namespace neelwall

#endif
