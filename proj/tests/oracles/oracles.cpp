// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <tuple>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "neelwall/closedform.hpp"

namespace oracle {

namespace {

constexpr double pi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

double adapt(const Fn& f, double a, double b, double tol = 1e-10, unsigned depth = 15) {
  return GK::integrate(f, a, b, depth, tol);
}

// acosh(1/|t|) with t the Moebius image of y
double mu_b(double b, double y) {
  const double t = std::abs((y - b) / (1 - b * y));
  return std::log((1 + std::sqrt(std::max(0.0, 1 - t * t))) / t);
}

// int_{-1}^{1} mu_b(y) k(y) dy, split at the log singularity and the peak
double tail_integral(double b, double x1, const Fn& k) {
  std::vector<double> cuts{-1, b, 1};
  if (x1 > -1 && x1 < 1 && x1 != b) cuts.insert(x1 < b ? cuts.begin() + 1 : cuts.begin() + 2, x1);
  double s = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    s += adapt([&](double y) { return y == b ? 0.0 : mu_b(b, y) * k(y); }, cuts[i], cuts[i + 1], 1e-11, 20);
  return s;
}

double u_poisson(double b, double x1, double x2) {
  return -tail_integral(b, x1, [&](double y) {
           const double z1 = x1 - y;
           return z1 / (z1 * z1 + x2 * x2);
         }) / pi;
}

}  // namespace

double gagliardo_energy(const Fn& g, const Fn& gPrime) {
  const double inner = adapt(
      [&](double x) {
        auto q = [&](double y) {
          if (y == x) return gPrime(x) * gPrime(x);
          const double d = (g(x) - g(y)) / (x - y);
          return d * d;
        };
        return adapt(q, -1, x, 1e-11) + adapt(q, x, 1, 1e-11);
      },
      -1, 1);
  const double outside = adapt(
      [&](double x) {
        const double v = g(x);
        return 2 * v * v * (1 / (1 - x) + 1 / (1 + x));
      },
      -1, 1);
  return (inner + outside) / (4 * pi);
}

double extension_energy(const Fn& gPrime) {
  using cplx = std::complex<double>;
  using Rule = boost::math::quadrature::gauss<double, 30>;
  // Phi'(z) = (1/(pi i)) int g'(y)/(y-z) dy with the singular part removed
  auto dPhi = [&](double x1, double x2) {
    const cplx z(x1, x2);
    const double s = gPrime(std::clamp(x1, -1.0, 1.0));
    cplx acc = 0;
    for (int panel = 0; panel < 8; ++panel) {
      const double a = -1 + 0.25 * panel, c = a + 0.25;
      const auto& nodes = Rule::abscissa();
      const auto& weights = Rule::weights();
      for (std::size_t k = 0; k < nodes.size(); ++k)
        for (int sg : {-1, 1}) {
          const double y = 0.5 * (a + c) + sg * 0.5 * (c - a) * nodes[k];
          acc += 0.5 * (c - a) * weights[k] * (gPrime(y) - s) / (cplx(y) - z);
        }
    }
    acc += s * (std::log(cplx(1) - z) - std::log(cplx(-1) - z));
    return acc / (pi * cplx(0, 1));
  };
  // tensor Gauss rules in polar coordinates; r in (2, inf) through r = 2/s
  auto rule = [](double a, double c, int panels, const std::function<void(double, double)>& f) {
    const auto& nodes = Rule::abscissa();
    const auto& weights = Rule::weights();
    const double w = (c - a) / panels;
    for (int p = 0; p < panels; ++p)
      for (std::size_t k = 0; k < nodes.size(); ++k)
        for (int sg : {-1, 1}) f(a + w * (p + 0.5 + 0.5 * sg * nodes[k]), 0.5 * w * weights[k]);
  };
  double total = 0;
  rule(0, pi, 8, [&](double th, double wt) {
    for (auto [a, c, n] : {std::tuple{0.0, 0.9, 4}, {0.9, 1.0, 4}, {1.0, 1.1, 4}, {1.1, 2.0, 4}})
      rule(a, c, n, [&](double r, double wr) {
        total += wt * wr * r * std::norm(dPhi(r * std::cos(th), r * std::sin(th)));
      });
    rule(0, 1, 4, [&](double s, double ws) {
      const double r = 2 / s;
      total += wt * ws * r * (2 / (s * s)) * std::norm(dPhi(r * std::cos(th), r * std::sin(th)));
    });
  });
  return 0.5 * total;
}

std::array<double, 2> poisson_gradient(double b, double x1, double x2) {
  const double g1 = tail_integral(b, x1, [&](double y) {
    const double z1 = x1 - y, q = z1 * z1 + x2 * x2;
    return (x2 * x2 - z1 * z1) / (q * q);
  });
  const double g2 = tail_integral(b, x1, [&](double y) {
    const double z1 = x1 - y, q = z1 * z1 + x2 * x2;
    return -2 * z1 * x2 / (q * q);
  });
  return {-g1 / pi, -g2 / pi};
}

double h1_outside_ball_green(double b, double r) {
  // The Neumann representation vanishes at infinity; on (-1, b) it equals
  // pi/2 - c, on (b, 1) -pi/2 - c.
  const double x1 = 0.5 * (b - 1), h = 1e-9;
  const double c = pi / 2 - u_poisson(b, x1, h);
  const double axis = (pi / 2 - c) * mu_b(b, b - r) + (pi / 2 + c) * mu_b(b, b + r);
  // outward normal of the domain on the semicircle is -e_r
  const double flux = adapt(
      [&](double th) {
        const double x1 = b + r * std::cos(th), x2 = r * std::sin(th);
        if (x2 == 0) return 0.0;
        const auto g = poisson_gradient(b, x1, x2);
        return u_poisson(b, x1, x2) * (g[0] * std::cos(th) + g[1] * std::sin(th)) * r;
      },
      0, pi, 1e-9, 12);
  return axis - flux;
}

double cross_energy_area(double b, double c) {
  auto f = [&](double x1, double x2) {
    const auto gb = neelwall::u_b_grad(b, x1, x2), gc = neelwall::u_b_grad(c, x1, x2);
    return gb[0] * gc[0] + gb[1] * gc[1];
  };
  // polar coordinates around b; the singularities at c and +-1 sit on rays
  auto radial = [&](double th) {
    auto g = [&](double r) {
      if (r == 0) return 0.0;
      const double x2 = r * std::sin(th);
      if (x2 <= 0) return 0.0;
      return f(b + r * std::cos(th), x2) * r;
    };
    std::vector<double> cuts{0};
    for (double p : {std::abs(c - b), 1 - b, 1 + b})
      if (p > 0) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(2 * cuts.back() + 2);
    double s = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += adapt(g, cuts[i], cuts[i + 1], 1e-9, 12);
    return s + adapt(g, cuts.back(), std::numeric_limits<double>::infinity(), 1e-9, 12);
  };
  return adapt(radial, 0, pi, 1e-8, 12);
}

}  // namespace oracle
