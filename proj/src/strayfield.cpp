// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/strayfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

#include "neelwall/quadrature.hpp"

namespace neelwall {

// ---------------------------------------------------------------------------
// Padded spectral operator

ExtendedTrace ExtendedTrace::fromFunction(const std::function<double(double)>& g, double L,
                                          std::size_t n, bool clip) {
  if (!(L >= 1) || n < 8 || n % 2) throw DomainError("invalid padded grid");
  ExtendedTrace t;
  t.L = L;
  const double h = 2 * L / double(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = -L + h * double(j);
    t.x.push_back(x);
    const double v = (!clip || std::abs(x) < 1) ? g(x) : 0.0;
    if (!std::isfinite(v)) throw DomainError("non-finite trace value");
    t.g.push_back(v);
  }
  return t;
}

ExtendedTrace ExtendedTrace::fromProfile(const Grid& grid, const std::vector<double>& g,
                                         double L, std::size_t n) {
  if (g.size() != grid.size()) throw DomainError("trace and grid differ in size");
  const auto& xs = grid.nodes();
  return fromFunction(
      [&](double x) {
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t c = std::min<std::size_t>(std::size_t(it - xs.begin()), xs.size() - 1);
        c = c == 0 ? 0 : c - 1;
        const double t = (x - xs[c]) / (xs[c + 1] - xs[c]);
        return (1 - t) * g[c] + t * g[c + 1];
      },
      L, n, true);
}

struct SpectralOperator::Plans {
  fftw_plan forward = nullptr, backward = nullptr;
};

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SpectralOperator::SpectralOperator(double L, std::size_t n)
    : L_(L), n_(n), plans_(std::make_unique<Plans>()) {
  if (!(L >= 1) || n < 8 || n % 2) throw DomainError("invalid padded grid");
  for (std::size_t k = 0; k <= n / 2; ++k) xi_.push_back(kPi * double(k) / L);
  std::lock_guard<std::mutex> lock(planner_mutex());
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  plans_->forward = fftw_plan_dft_r2c_1d(int(n), in, out, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r_1d(int(n), out, in, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
}

SpectralOperator::~SpectralOperator() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->backward);
}

void SpectralOperator::check(const ExtendedTrace& t) const {
  if (t.g.size() != n_ || std::abs(t.L - L_) > 1e-14 * L_)
    throw DomainError("trace does not match the operator grid");
  for (double v : t.g)
    if (!std::isfinite(v)) throw DomainError("non-finite trace value");
}

std::vector<double> SpectralOperator::applyPeriodic(const std::vector<double>& g) const {
  if (g.size() != n_) throw DomainError("trace does not match the operator grid");
  double* in = fftw_alloc_real(n_);
  fftw_complex* out = fftw_alloc_complex(n_ / 2 + 1);
  std::copy(g.begin(), g.end(), in);
  fftw_execute_dft_r2c(plans_->forward, in, out);
  for (std::size_t k = 0; k <= n_ / 2; ++k) {
    out[k][0] *= xi_[k] / double(n_);
    out[k][1] *= xi_[k] / double(n_);
  }
  fftw_execute_dft_c2r(plans_->backward, out, in);
  std::vector<double> r(in, in + n_);
  fftw_free(in);
  fftw_free(out);
  return r;
}

namespace {

// Euler-Maclaurin terms at xi = 0 of sum_k |xi_k| F(xi_k) dxi with
// F = |g^|^2: the integral exceeds the sum by d^2 F(0)/6 - d^4 F''(0)/120.
struct Moments {
  double M0 = 0, M1 = 0, M2 = 0;
};

Moments moments(const ExtendedTrace& t) {
  Moments m;
  const double h = t.h();
  for (std::size_t j = 0; j < t.g.size(); ++j) {
    m.M0 += h * t.g[j];
    m.M1 += h * t.x[j] * t.g[j];
    m.M2 += h * t.x[j] * t.x[j] * t.g[j];
  }
  return m;
}

}  // namespace

std::vector<double> SpectralOperator::apply(const ExtendedTrace& t) const {
  check(t);
  std::vector<double> r = applyPeriodic(t.g);
  const Moments m = moments(t);
  const double d = kPi / L_, d2 = d * d, d4 = d2 * d2;
  for (std::size_t j = 0; j < n_; ++j) {
    const double x = t.x[j];
    r[j] += (d2 / 3 * m.M0 - d4 / 120 * (4 * m.M1 * x - 2 * m.M2 - 2 * m.M0 * x * x)) /
            (4 * kPi);
  }
  return r;
}

double SpectralOperator::energy(const ExtendedTrace& t) const {
  check(t);
  const std::vector<double> Dg = applyPeriodic(t.g);
  double e = 0;
  for (std::size_t j = 0; j < n_; ++j) e += t.g[j] * Dg[j];
  e *= 0.5 * t.h();
  const Moments m = moments(t);
  const double d = kPi / L_, d2 = d * d, d4 = d2 * d2;
  const double F0 = m.M0 * m.M0, F2 = 2 * m.M1 * m.M1 - 2 * m.M0 * m.M2;
  return e + (d2 / 6 * F0 - d4 / 120 * F2) / (4 * kPi);
}

namespace {
// operators are cached per grid; planning is serialized inside
const SpectralOperator& cached_operator(double L, std::size_t n) {
  static std::mutex m;
  static std::map<std::pair<double, std::size_t>, std::unique_ptr<SpectralOperator>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& p = cache[{L, n}];
  if (!p) p = std::make_unique<SpectralOperator>(L, n);
  return *p;
}
}  // namespace

double magnetostatic_energy(const ExtendedTrace& t) {
  return cached_operator(t.L, t.g.size()).energy(t);
}

std::vector<double> magnetostatic_gradient(const ExtendedTrace& t) {
  return cached_operator(t.L, t.g.size()).apply(t);
}

// ---------------------------------------------------------------------------
// Piecewise linear Galerkin form

namespace {

// Q'' = log|t|
double Qlog(double t) { return t == 0 ? 0.0 : t * t * (0.5 * std::log(std::abs(t)) - 0.75); }

}  // namespace

TraceOperator::TraceOperator(std::shared_ptr<const Grid> grid) : grid_(std::move(grid)) {
  const auto& x = grid_->nodes();
  const std::size_t M = x.size() - 1;  // cells
  // B(a,b) = mean of log|s - t| over cell a x cell b
  Eigen::MatrixXd B(M, M);
  const GaussRule& g4 = GaussRule::get(4);
  const GaussRule& g8 = GaussRule::get(8);
  for (std::size_t a = 0; a < M; ++a) {
    const double ha = x[a + 1] - x[a];
    for (std::size_t b = a; b < M; ++b) {
      const double hb = x[b + 1] - x[b];
      const double gap = b > a ? x[b] - x[a + 1] : 0.0;
      const double hm = std::max(ha, hb);
      double v;
      if (gap < hm) {
        const double c = Qlog(x[a + 1] - x[b]) - Qlog(x[a] - x[b]) - Qlog(x[a + 1] - x[b + 1]) +
                         Qlog(x[a] - x[b + 1]);
        v = c / (ha * hb);
      } else {
        const GaussRule& r = gap >= 8 * hm ? g4 : g8;
        const double ca = 0.5 * (x[a] + x[a + 1]), cb = 0.5 * (x[b] + x[b + 1]);
        double s = 0;
        for (std::size_t i = 0; i < r.x.size(); ++i)
          for (std::size_t j = 0; j < r.x.size(); ++j)
            s += r.w[i] * r.w[j] * std::log((cb + 0.5 * hb * r.x[j]) - (ca + 0.5 * ha * r.x[i]));
        v = 0.25 * s;
      }
      B(a, b) = v;
      B(b, a) = v;
    }
  }
  const std::size_t n = x.size();
  A_ = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (std::size_t j = i; j + 1 < n; ++j) {
      const double v =
          -(B(i - 1, j - 1) - B(i - 1, j) - B(i, j - 1) + B(i, j)) / kPi;
      A_(i, j) = v;
      A_(j, i) = v;
    }
}

double TraceOperator::energy(const std::vector<double>& g) const {
  const Eigen::Map<const Eigen::VectorXd> v(g.data(), Eigen::Index(g.size()));
  return 0.5 * v.dot(A_ * v);
}

std::vector<double> TraceOperator::apply(const std::vector<double>& g) const {
  const Eigen::Map<const Eigen::VectorXd> v(g.data(), Eigen::Index(g.size()));
  const Eigen::VectorXd r = A_ * v;
  return std::vector<double>(r.data(), r.data() + r.size());
}

std::vector<double> TraceOperator::halfLaplacian(const std::vector<double>& g) const {
  std::vector<double> r = apply(g);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] /= grid_->mass(i);
  return r;
}

// ---------------------------------------------------------------------------
// Conjugate potential of a piecewise linear trace

StrayPotential::StrayPotential(std::shared_ptr<const Grid> grid, std::vector<double> g)
    : grid_(std::move(grid)), g_(std::move(g)) {
  if (g_.size() != grid_->size()) throw DomainError("trace and grid differ in size");
  if (g_.front() != 0 || g_.back() != 0)
    throw DomainError("trace must vanish at the interval ends");
  for (std::size_t c = 0; c + 1 < g_.size(); ++c) slope_.push_back((g_[c + 1] - g_[c]) / grid_->cell(c));
}

namespace {
inline double jump(const std::vector<double>& s, std::size_t i) {
  const double right = i < s.size() ? s[i] : 0.0;
  const double left = i > 0 ? s[i - 1] : 0.0;
  return right - left;
}
}  // namespace

double StrayPotential::value(double x1, double x2) const {
  if (x2 < 0) throw DomainError("stray potential evaluated below the axis");
  double u = 0;
  const auto& y = grid_->nodes();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = x1 - y[i];
    double G;
    if (x2 > 0)
      G = s * std::log(s * s + x2 * x2) - 2 * s + 2 * x2 * std::atan(s / x2);
    else
      G = s == 0 ? 0.0 : 2 * s * std::log(std::abs(s)) - 2 * s;
    u += jump(slope_, i) * G;
  }
  return -u / (2 * kPi);
}

Vec2 StrayPotential::gradient(double x1, double x2) const {
  if (x2 < 0) throw DomainError("stray potential evaluated below the axis");
  double d1 = 0, d2 = 0;
  const auto& y = grid_->nodes();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = x1 - y[i];
    const double J = jump(slope_, i);
    d1 -= J * std::log(s * s + x2 * x2);
    d2 += J * (x2 > 0 ? std::atan(s / x2) : (s == 0 ? 0.0 : std::copysign(kPi / 2, s)));
  }
  return {d1 / (2 * kPi), -d2 / kPi};
}

std::vector<double> stray_potential(std::shared_ptr<const Grid> grid, const std::vector<double>& g,
                                    const std::vector<Vec2>& points) {
  const StrayPotential U(std::move(grid), g);
  std::vector<double> r;
  for (const auto& p : points) r.push_back(U.value(p[0], p[1]));
  return r;
}

double stray_energy_in_half_disk(const StrayPotential& U, double c, double r) {
  std::vector<double> th = {0.0};
  for (int k = 12; k >= 1; --k) th.push_back(0.5 * kPi * std::ldexp(1.0, -k));
  for (int k = 1; k <= 12; ++k) th.push_back(kPi - 0.5 * kPi * std::ldexp(1.0, -k));
  th.push_back(kPi);
  std::sort(th.begin(), th.end());
  std::vector<double> rad = {0.0};
  for (int k = 24; k >= 0; --k) rad.push_back(r * std::ldexp(1.0, -k));
  return composite_gauss(
      [&](double rho) {
        return rho * composite_gauss(
                         [&](double t) {
                           const Vec2 g = U.gradient(c + rho * std::cos(t), rho * std::sin(t));
                           return g[0] * g[0] + g[1] * g[1];
                         },
                         th, 8);
      },
      rad, 8);
}

}  // namespace neelwall
