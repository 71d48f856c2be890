// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Composite Gauss-Legendre rules and an area quadrature over the upper half
// plane with singular points on the axis.

#ifndef NEELWALL_QUADRATURE_HPP
#define NEELWALL_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace neelwall {

// n-point Gauss-Legendre nodes/weights on [-1,1], n in {4, 8, 16, 32}.
struct GaussRule {
  std::vector<double> x, w;
  static const GaussRule& get(int n);
};

// Sum of n-point Gauss rules over consecutive panels given by edges.
double composite_gauss(const std::function<double(double)>& f,
                       const std::vector<double>& edges, int n = 16);

// Edges a, a+w, a+3w, ... capped at b (geometric doubling away from a).
std::vector<double> geometric_edges(double a, double b, double firstWidth);

struct AxisPoint {
  double x = 0;
  // Excluded half disk radius. Zero means the integrand has an integrable
  // point singularity there (at worst ~1/rho).
  double inner = 0;
};

struct HalfPlaneOptions {
  int order = 16;
  int angularPanels = 2;
  double logPanel = 0.35;  // max panel width in log(rho) around excluded disks
  int levels = 14;         // geometric levels towards integrable singularities
};

// Integral of f over {x2 > 0} minus the excluded half disks.
double integrate_half_plane(const std::function<double(double, double)>& f,
                            std::vector<AxisPoint> points,
                            const HalfPlaneOptions& options = {});

}  // namespace neelwall

#endif
