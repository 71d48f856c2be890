// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "neelwall/strayfield.hpp"
#include "neelwall/validate.hpp"
#include "oracles/oracles.hpp"

using namespace neelwall;

namespace {

double bump(double x) {
  const double w = 1 - x * x;
  return w * w * (1 + 0.3 * x);
}

}  // namespace

TEST_CASE("extended traces vanish outside the interval") {
  const auto t = ExtendedTrace::fromFunction([](double) { return 2.0; }, 8, 1024);
  for (std::size_t j = 0; j < t.g.size(); ++j)
    CHECK(t.g[j] == (std::abs(t.x[j]) < 1 ? 2.0 : 0.0));
  CHECK_THROWS_AS(ExtendedTrace::fromFunction(bump, 0.5, 1024), DomainError);
}

TEST_CASE("zero trace has zero energy, gradient and potential") {
  const auto t = ExtendedTrace::fromFunction([](double) { return 0.0; }, 8, 4096);
  CHECK(magnetostatic_energy(t) == 0);
  for (double v : magnetostatic_gradient(t)) CHECK(v == 0);
  const auto grid = Grid::uniform(50);
  for (double v : stray_potential(grid, std::vector<double>(grid->size(), 0.0), {{0.1, 0.2}, {3, 1}}))
    CHECK(v == 0);
}

TEST_CASE("Gaussian closed form and padded-grid convergence") {
  auto gauss = [](double x) { return std::exp(-x * x); };
  std::vector<double> e;
  for (std::size_t n : {std::size_t(1) << 12, std::size_t(1) << 14, std::size_t(1) << 16})
    e.push_back(magnetostatic_energy(ExtendedTrace::fromFunction(gauss, 8, n, false)));
  for (double v : e) CHECK(std::abs(v - 0.5) < 1e-4);
  // compactly supported trace: successive refinements converge
  std::vector<double> b;
  for (std::size_t n : {std::size_t(1) << 12, std::size_t(1) << 14, std::size_t(1) << 16})
    b.push_back(magnetostatic_energy(ExtendedTrace::fromFunction(bump, 8, n)));
  CHECK(std::abs(b[2] - b[1]) < std::abs(b[1] - b[0]));
  CHECK(std::abs(b[2] - b[1]) < 1e-4 * b[2]);
}

TEST_CASE("spectral, Gagliardo and extension energies agree on smooth traces") {
  const auto traces = random_smooth_traces(21, 3);
  for (const auto& t : traces) {
    auto g = [&](double x) { return t.value(x); };
    auto dg = [&](double x) { return t.derivative(x); };
    const double s = magnetostatic_energy(ExtendedTrace::fromFunction(g, 8, std::size_t(1) << 14));
    CHECK(s == doctest::Approx(oracle::gagliardo_energy(g, dg)).epsilon(5e-3));
    CHECK(s == doctest::Approx(oracle::extension_energy(dg)).epsilon(5e-3));
  }
}

TEST_CASE("energy is quadratic in the trace") {
  const auto t = ExtendedTrace::fromFunction(bump, 8, 4096);
  auto t3 = t;
  for (double& v : t3.g) v *= 3;
  CHECK(magnetostatic_energy(t3) == doctest::Approx(9 * magnetostatic_energy(t)).epsilon(1e-13));
}

TEST_CASE("directional derivative against central differences") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto t = ExtendedTrace::fromFunction(bump, 8, 4096);
  const auto grad = magnetostatic_gradient(t);
  for (int k = 0; k < 5; ++k) {
    const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
    const auto d = ExtendedTrace::fromFunction(
        [&](double x) { return (1 - x * x) * (c1 + c2 * x + c3 * std::sin(5 * x)); }, 8, 4096);
    const double step = 1e-5;
    auto plus = t, minus = t;
    for (std::size_t j = 0; j < t.g.size(); ++j) {
      plus.g[j] += step * d.g[j];
      minus.g[j] -= step * d.g[j];
    }
    const double fd = (magnetostatic_energy(plus) - magnetostatic_energy(minus)) / (2 * step);
    double an = 0;
    for (std::size_t j = 0; j < t.g.size(); ++j) an += t.h() * grad[j] * d.g[j];
    CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an));
  }
}

TEST_CASE("Fourier modes are eigenfunctions of the periodic operator") {
  const double L = 8;
  const std::size_t n = 1024;
  const SpectralOperator S(L, n);
  for (int m : {1, 7, 40}) {
    const double k = kPi * m / L;
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = std::cos(k * (-L + 2 * L * double(j) / double(n)));
    const auto r = S.applyPeriodic(g);
    for (std::size_t j = 0; j < n; j += 37) CHECK(r[j] == doctest::Approx(k * g[j]).epsilon(1e-10));
  }
}

TEST_CASE("multiplier is even, zero at the origin, self-adjoint and nonnegative") {
  const SpectralOperator S(8, 512);
  const auto& xi = S.frequencies();
  CHECK(xi[0] == 0);
  for (std::size_t k = 1; k < xi.size(); ++k) CHECK(xi[k] > 0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> f(512), g(512);
  for (auto& v : f) v = u(rng);
  for (auto& v : g) v = u(rng);
  const auto Af = S.applyPeriodic(f), Ag = S.applyPeriodic(g);
  double fAg = 0, gAf = 0, fAf = 0;
  for (std::size_t j = 0; j < 512; ++j) {
    fAg += f[j] * Ag[j];
    gAf += g[j] * Af[j];
    fAf += f[j] * Af[j];
  }
  CHECK(fAg == doctest::Approx(gAf).epsilon(1e-12));
  CHECK(fAf >= 0);
}

TEST_CASE("piecewise linear form matches the spectral energy") {
  const auto grid = Grid::uniform(400);
  std::vector<double> g;
  for (double x : grid->nodes()) g.push_back(bump(x));
  const TraceOperator A(grid);
  const auto& M = A.matrix();
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * M.cwiseAbs().maxCoeff());
  const double s = magnetostatic_energy(ExtendedTrace::fromProfile(*grid, g, 8, std::size_t(1) << 16));
  CHECK(A.energy(g) == doctest::Approx(s).epsilon(1e-4));
}

TEST_CASE("stray potential: axis data, |D| g and far field") {
  const auto grid = Grid::uniform(400);
  std::vector<double> g;
  for (double x : grid->nodes()) g.push_back(bump(x));
  const StrayPotential U(grid, g);
  // d2 U = -g' on the axis
  const double x = 0.3, gp = -4 * x * (1 - x * x) * (1 + 0.3 * x) + 0.3 * (1 - x * x) * (1 - x * x);
  CHECK(U.gradient(x, 1e-9)[1] == doctest::Approx(-gp).epsilon(1e-3));
  // -d1 U on the axis is |D| g; at a cell midpoint, away from the slope jumps
  const TraceOperator A(grid);
  const double xm = 0.3025;
  auto g0 = [](double y) { return std::abs(y) < 1 ? bump(y) : 0.0; };
  auto sym = [&](double t) { return (2 * g0(xm) - g0(xm + t) - g0(xm - t)) / (t * t); };
  // (1/pi) int (g(x)-g(y))/(x-y)^2 with the part of g outside [-1, 1] in closed form
  const double far = 1 + std::abs(xm);
  double pv = 0;
  const int M = 200000;
  for (int i = 0; i < M; ++i) {
    const double t = far * (i + 0.5) / M;
    pv += sym(t) * far / M;
  }
  pv = (pv + 2 * bump(xm) / far) / kPi;
  CHECK(-U.gradient(xm, 0)[0] == doctest::Approx(pv).epsilon(5e-3));
  CHECK(A.halfLaplacian(g)[grid->nearest(0.3)] == doctest::Approx(pv).epsilon(1e-2));
  // far field decays like 1/r with a cos(theta) profile
  const double u10 = U.value(10, 0), u20 = U.value(20, 0);
  CHECK(u20 / u10 == doctest::Approx(0.5).epsilon(2e-2));
  CHECK(U.value(-10, 0) == doctest::Approx(-u10).epsilon(2e-2));
  CHECK(std::abs(U.value(0, 10)) < 1e-2 * std::abs(u10));
  // half-disk energy approaches the full Dirichlet energy 2E
  CHECK(stray_energy_in_half_disk(U, 0, 30) == doctest::Approx(2 * A.energy(g)).epsilon(2e-2));
}
