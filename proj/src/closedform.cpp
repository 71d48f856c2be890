// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/closedform.hpp"

#include <cmath>
#include <limits>

#include "neelwall/format.hpp"
#include "neelwall/quadrature.hpp"

namespace neelwall {

using cplx = std::complex<double>;

namespace {

// The map for u_b is singular at (b, 0) and (+-1, 0).
void check_point(double x1, double x2, double b = 0) {
  if (!(x2 >= 0) || !std::isfinite(x1) || !std::isfinite(x2))
    throw DomainError("point outside the closed upper half plane");
  if (x2 == 0 && (x1 == b || std::abs(x1) == 1))
    throw DomainError("evaluation on a slit point (" + fmt17(x1) + ", 0)");
}

// f = i pi/2 - F^{-1}, f' = d_2 u + i d_1 u
cplx fprime_from_w(cplx w) {
  const cplx c = std::cosh(w);
  return -c * c / std::sinh(w);
}

}  // namespace

cplx invert_F(double x1, double x2) {
  check_point(x1, x2);
  if (x2 == 0) {
    if (std::abs(x1) > 1) return {0.0, std::acos(-1.0 / x1)};
    if (x1 < 0) return {std::acosh(-1.0 / x1), 0.0};
    return {std::acosh(1.0 / x1), kPi};
  }
  const cplx z(x1, x2);
  cplx w = std::acosh(-1.0 / z);
  if (w.real() < 0) w = -w;
  // Newton on z cosh(w) + 1 = 0; rounding in cosh sets a floor ~ eps |z|
  auto resid = [&](cplx v) { return z * std::cosh(v) + 1.0; };
  const double floor = 64 * std::numeric_limits<double>::epsilon() * std::abs(z);
  double res = std::abs(resid(w));
  for (int it = 0; it < 4 && res > floor; ++it) {
    const cplx wn = w - resid(w) / (z * std::sinh(w));
    const double rn = std::abs(resid(wn));
    if (!(rn < res)) break;
    w = wn;
    res = rn;
  }
  if (!(res <= 1e-12 + floor))
    throw SolverError("inversion of F did not converge at (" + fmt17(x1) + ", " + fmt17(x2) + ")");
  return w;
}

double base_solution_u(double x1, double x2) {
  if (x2 == 0 && std::abs(x1) < 1 && x1 != 0) return x1 < 0 ? kPi / 2 : -kPi / 2;
  return kPi / 2 - invert_F(x1, x2).imag();
}

Vec2 base_solution_grad(double x1, double x2) {
  const cplx fp = fprime_from_w(invert_F(x1, x2));
  return {fp.imag(), fp.real()};
}

namespace {

cplx pull_back(double b, double x1, double x2) {
  if (!(std::abs(b) < 1)) throw DomainError("translate center outside (-1,1)");
  const cplx z(x1, x2);
  cplx zeta = (z - b) / (1.0 - b * z);
  if (x2 == 0) zeta = {zeta.real(), 0.0};
  return zeta;
}

}  // namespace

double u_b(double b, double x1, double x2) {
  if (x2 == 0 && x1 == b) throw DomainError("evaluation at the wall point");
  check_point(x1, x2, b);
  const cplx zeta = pull_back(b, x1, x2);
  return base_solution_u(zeta.real(), std::max(0.0, zeta.imag()));
}

Vec2 u_b_grad(double b, double x1, double x2) {
  if (x2 == 0 && x1 == b) throw DomainError("evaluation at the wall point");
  check_point(x1, x2, b);
  const cplx z(x1, x2);
  const cplx zeta = pull_back(b, x1, x2);
  const cplx d = 1.0 - b * z;
  const cplx fp = fprime_from_w(invert_F(zeta.real(), std::max(0.0, zeta.imag()))) *
                  (1 - b * b) / (d * d);
  return {fp.imag(), fp.real()};
}

double tail_mu(double x1) {
  if (x1 == 0 || !(std::abs(x1) <= 1)) throw DomainError("tail profile needs 0 < |x1| <= 1");
  return std::log1p(std::sqrt(1 - x1 * x1)) - std::log(std::abs(x1));
}

double tail_mu_b(double b, double x1) {
  if (!(std::abs(b) < 1)) throw DomainError("translate center outside (-1,1)");
  if (x1 == b) throw DomainError("tail profile singular at its center");
  return tail_mu((x1 - b) / (1 - b * x1));
}

namespace {

double tail_mu_b_derivative(double b, double x1) {
  const double d = 1 - b * x1;
  const double y = (x1 - b) / d;
  return -1.0 / (y * std::sqrt(std::max(0.0, 1 - y * y))) * (1 - b * b) / (d * d);
}

}  // namespace

LimitStrayField::LimitStrayField(WallConfig config) : config_(std::move(config)) {
  const auto& g = config_.gammas();
  const std::size_t N = g.size();
  for (std::size_t j = 0; j <= N; ++j) {
    double s = 0;
    for (std::size_t k = 0; k < N; ++k) s += k >= j ? g[k] : -g[k];
    sigma_.push_back(0.5 * kPi * s);
  }
}

double LimitStrayField::value(double x1, double x2) const {
  double s = 0;
  for (std::size_t n = 0; n < config_.size(); ++n)
    s += config_.gammas()[n] * u_b(config_.positions()[n], x1, x2);
  return s;
}

Vec2 LimitStrayField::gradient(double x1, double x2) const {
  Vec2 s{0, 0};
  for (std::size_t n = 0; n < config_.size(); ++n) {
    const Vec2 g = u_b_grad(config_.positions()[n], x1, x2);
    s[0] += config_.gammas()[n] * g[0];
    s[1] += config_.gammas()[n] * g[1];
  }
  return s;
}

double LimitStrayField::omega(std::size_t n) const {
  double s = 0;
  const auto& a = config_.positions();
  for (std::size_t k = 0; k < config_.size(); ++k)
    if (k != n) s += config_.gammas()[k] * u_b(a[k], a[n], 0);
  return s;
}

TailProfile::TailProfile(WallConfig config) : config_(std::move(config)) {
  const auto& a = config_.positions();
  const auto& g = config_.gammas();
  for (std::size_t n = 0; n < a.size(); ++n) {
    double l = g[n] * std::log(2 - 2 * a[n] * a[n]);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (k != n) l += g[k] * tail_mu_b(a[k], a[n]);
    lambda_.push_back(l);
  }
}

double TailProfile::value(double x1) const {
  double s = 0;
  for (std::size_t n = 0; n < config_.size(); ++n)
    s += config_.gammas()[n] * tail_mu_b(config_.positions()[n], x1);
  return s;
}

double TailProfile::derivative(double x1) const {
  double s = 0;
  for (std::size_t n = 0; n < config_.size(); ++n)
    s += config_.gammas()[n] * tail_mu_b_derivative(config_.positions()[n], x1);
  return s;
}

LimitStrayField limit_field_star(const WallConfig& config) { return LimitStrayField(config); }
TailProfile tail_star(const WallConfig& config) { return TailProfile(config); }

double cross_energy(double b, double c) {
  if (b == c) throw DomainError("cross energy is infinite for coincident walls");
  const double r = mobius_metric(b, c);
  return kPi * std::log((1 + std::sqrt(1 - r * r)) / r);
}

RenormalizedEnergy renormalized_W(const WallConfig& config, std::optional<double> ePlus,
                                  std::optional<double> eMinus) {
  const auto& a = config.positions();
  const auto& g = config.gammas();
  const std::size_t N = a.size();
  RenormalizedEnergy R;
  R.perPair.assign(N, std::vector<double>(N, 0.0));
  double W = 0;
  for (std::size_t n = 0; n < N; ++n) {
    const double t = -0.5 * kPi * g[n] * g[n] * std::log(2 - 2 * a[n] * a[n]);
    R.perWallBoundary.push_back(t);
    W += t;
  }
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t k = 0; k < N; ++k)
      if (k != n) {
        const double t = -0.5 * g[k] * g[n] * cross_energy(a[k], a[n]);
        R.perPair[k][n] = t;
        W += t;
      }
  R.W = W;
  R.W1 = -W;
  R.W2 = 2 * W;
  if (ePlus && eMinus) {
    double e = 0;
    for (int d : config.signs()) e += d == 1 ? *ePlus : *eMinus;
    R.coreEnergies = e;
    R.WW = e + W;
  }
  return R;
}

namespace {

std::vector<AxisPoint> singular_points(const std::vector<double>& walls, double r) {
  std::vector<AxisPoint> p = {{-1.0, 0.0}, {1.0, 0.0}};
  for (double a : walls) p.push_back({a, r});
  return p;
}

}  // namespace

double h1_outside_ball(double b, double r) {
  return integrate_half_plane(
      [&](double x1, double x2) {
        const Vec2 g = u_b_grad(b, x1, x2);
        return g[0] * g[0] + g[1] * g[1];
      },
      singular_points({b}, r));
}

double cross_energy_quadrature(double b, double c) {
  if (b == c) throw DomainError("cross energy is infinite for coincident walls");
  auto points = singular_points({}, 0);
  points.push_back({b, 0});
  points.push_back({c, 0});
  return integrate_half_plane(
      [&](double x1, double x2) {
        const Vec2 gb = u_b_grad(b, x1, x2), gc = u_b_grad(c, x1, x2);
        return gb[0] * gc[0] + gb[1] * gc[1];
      },
      points);
}

EstarResult estar_quadrature(const WallConfig& config, const std::vector<double>& radii) {
  if (radii.size() < 2) throw DomainError("estar quadrature needs at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0 && radii[i] <= config.rho()))
      throw DomainError("cutoff radius must lie in (0, rho(a)]");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw DomainError("radii must decrease");
  }
  const LimitStrayField u(config);
  EstarResult R;
  R.radii = radii;
  for (double r : radii) {
    const double I = integrate_half_plane(
        [&](double x1, double x2) {
          const Vec2 g = u.gradient(x1, x2);
          return g[0] * g[0] + g[1] * g[1];
        },
        singular_points(config.positions(), r));
    R.values.push_back(0.5 * (I - kPi * config.Gamma() * std::log(1 / r)));
  }
  // linear in r through the two smallest radii
  const std::size_t k = radii.size() - 1;
  const double r1 = radii[k - 1], r2 = radii[k], v1 = R.values[k - 1], v2 = R.values[k];
  R.estimate = v2 - r2 * (v1 - v2) / (r1 - r2);
  R.extrapolationChange = std::abs(R.estimate - v2);
  return R;
}

}  // namespace neelwall
