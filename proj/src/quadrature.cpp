// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "neelwall/domain.hpp"

namespace neelwall {

namespace {

// Newton iteration on the three-term Legendre recurrence.
GaussRule make_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2 / ((1 - x * x) * dp * dp);
    r.x[i] = x;
    r.x[n - 1 - i] = -x;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const GaussRule& GaussRule::get(int n) {
  static const GaussRule r4 = make_rule(4), r8 = make_rule(8), r16 = make_rule(16),
                         r32 = make_rule(32);
  switch (n) {
    case 4: return r4;
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    default: throw std::invalid_argument("unsupported Gauss order");
  }
}

double composite_gauss(const std::function<double(double)>& f,
                       const std::vector<double>& edges, int n) {
  const GaussRule& g = GaussRule::get(n);
  double s = 0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    if (h == 0) continue;
    double t = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) t += g.w[i] * f(c + h * g.x[i]);
    s += h * t;
  }
  return s;
}

std::vector<double> geometric_edges(double a, double b, double w) {
  std::vector<double> e = {a};
  if (!(b > a)) return {a, b};
  w = std::min(w, b - a);
  double x = a;
  while (x + w < b - 0.25 * w) {
    x += w;
    e.push_back(x);
    w *= 2;
  }
  e.push_back(b);
  return e;
}

namespace {

std::vector<double> uniform_edges(double a, double b, int panels) {
  std::vector<double> e(panels + 1);
  for (int i = 0; i <= panels; ++i) e[i] = a + (b - a) * double(i) / panels;
  return e;
}

}  // namespace

double integrate_half_plane(const std::function<double(double, double)>& f,
                            std::vector<AxisPoint> pts, const HalfPlaneOptions& o) {
  std::sort(pts.begin(), pts.end(), [](auto& p, auto& q) { return p.x < q.x; });
  const std::size_t P = pts.size();
  if (P == 0) throw DomainError("half-plane quadrature needs an axis point");
  // Half disk radii: neighbours share the gap, an excluded disk may take up
  // to 80% of it when its neighbour is an integrable point.
  std::vector<double> s(P, 0.5);
  for (std::size_t j = 0; j + 1 < P; ++j) {
    const double D = pts[j + 1].x - pts[j].x;
    if (!(D > 0)) throw DomainError("coincident singular points");
    double left = 0.5 * D;
    const bool a = pts[j].inner > 0, b = pts[j + 1].inner > 0;
    if (a && !b) left = std::max(0.5 * D, std::min(0.8 * D, 1.25 * pts[j].inner));
    if (b && !a) left = D - std::max(0.5 * D, std::min(0.8 * D, 1.25 * pts[j + 1].inner));
    s[j] = std::min(s[j], left);
    s[j + 1] = std::min(s[j + 1], D - left);
  }
  for (std::size_t j = 0; j < P; ++j)
    if (!(pts[j].inner < s[j])) throw DomainError("exclusion radius exceeds point spacing");
  double R0 = 1.0;
  for (std::size_t j = 0; j < P; ++j) R0 = std::max(R0, std::abs(pts[j].x) + s[j]);
  R0 += 1.0;
  double smin = 0.5;
  for (double v : s) smin = std::min(smin, v);

  const auto ang = uniform_edges(0, kPi, o.angularPanels);
  double total = 0;

  // polar half disks around the singular points
  for (std::size_t j = 0; j < P; ++j) {
    const double c = pts[j].x;
    auto ring = [&](double rho) {
      return composite_gauss([&](double th) { return f(c + rho * std::cos(th), rho * std::sin(th)); },
                             ang, o.order);
    };
    if (pts[j].inner > 0) {
      const double l0 = std::log(pts[j].inner), l1 = std::log(s[j]);
      const int panels = std::max(2, int(std::ceil((l1 - l0) / o.logPanel)));
      total += composite_gauss(
          [&](double eta) {
            const double rho = std::exp(eta);
            return ring(rho) * rho * rho;
          },
          uniform_edges(l0, l1, panels), o.order);
    } else {
      // rho = s t^2 removes half-integer powers of rho
      std::vector<double> e = {0.0};
      for (int k = o.levels; k >= 0; --k) e.push_back(std::ldexp(1.0, -k));
      total += composite_gauss(
          [&](double t) {
            const double rho = s[j] * t * t;
            if (rho == 0) return 0.0;
            return ring(rho) * rho * 2 * s[j] * t;
          },
          e, o.order);
    }
  }

  // outside the half disk of radius R0: t = R0/r
  total += composite_gauss(
      [&](double t) {
        if (t == 0) return 0.0;
        const double r = R0 / t;
        return composite_gauss([&](double th) { return f(r * std::cos(th), r * std::sin(th)); },
                               uniform_edges(0, kPi, 2 * o.angularPanels), o.order) *
               R0 * R0 / (t * t * t);
      },
      uniform_edges(0, 1, 4), o.order);

  // remaining part of the half disk of radius R0, by vertical lines
  auto column = [&](double x1, double lo) {
    const double hi = std::sqrt(std::max(0.0, R0 * R0 - x1 * x1));
    if (!(hi > lo)) return 0.0;
    return composite_gauss([&](double x2) { return f(x1, x2); },
                           geometric_edges(lo, hi, 0.25 * smin), o.order);
  };
  // end caps x1 = -+R0 cos(tau)
  const double left = pts.front().x - s.front();
  const double right = pts.back().x + s.back();
  for (int side : {-1, 1}) {
    const double xe = side < 0 ? left : right;
    const double tau1 = std::acos(std::clamp(side * xe / R0, -1.0, 1.0));
    // outer boundary x1 = side * R0 * cos(tau), tau in [0, tau1]
    total += composite_gauss(
        [&](double tau) {
          const double x1 = side * R0 * std::cos(tau);
          return column(x1, 0.0) * R0 * std::sin(tau);
        },
        uniform_edges(0, tau1, 4), o.order);
  }
  for (std::size_t j = 0; j < P; ++j) {
    const double c = pts[j].x;
    // above the half disk, x1 = c - s cos(tau)
    total += composite_gauss(
        [&](double tau) {
          const double x1 = c - s[j] * std::cos(tau);
          return column(x1, s[j] * std::sin(tau)) * s[j] * std::sin(tau);
        },
        uniform_edges(0, kPi, 4), o.order);
    if (j + 1 < P) {
      const double a = c + s[j], b = pts[j + 1].x - s[j + 1];
      if (b > a)
        total += composite_gauss([&](double x1) { return column(x1, 0.0); },
                                 uniform_edges(a, b, 4), o.order);
    }
  }
  return total;
}

}  // namespace neelwall
