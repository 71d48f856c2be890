// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/corelab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neelwall/extrapolate.hpp"
#include "neelwall/minimizer.hpp"
#include "neelwall/parallel.hpp"

namespace neelwall {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

}  // namespace

std::size_t CoreProblem::diameterIndex(std::size_t j, std::size_t k) const {
  return k == 0 ? J_ + 2 + j : J_ - j;
}

CoreProblem::CoreProblem(double gamma, const Scales& scales, const CoreGridOptions& options,
                         bool flipped)
    : gamma_(gamma), scales_(scales), flipped_(flipped) {
  if (!(gamma > 0 && gamma < 2)) throw DomainError("gamma must lie in (0, 2)");
  if (!(scales.delta > 0 && scales.delta < 1)) throw DomainError("delta must lie in (0, 1)");
  if (!(options.dt > 0) || !(options.rMinFactor > 0 && options.rMinFactor <= 1))
    throw DomainError("invalid core grid options");

  const double tMin = std::log(options.rMinFactor * scales.delta);
  J_ = std::size_t(std::ceil(-tMin / options.dt));
  J_ = std::max<std::size_t>(J_, 4);
  dt_ = -tMin / double(J_);
  K_ = options.angles > 0 ? std::size_t(options.angles)
                          : std::max<std::size_t>(8, std::size_t(std::lround(std::numbers::pi / dt_)));
  dth_ = std::numbers::pi / double(K_);
  r_.resize(J_ + 1);
  for (std::size_t j = 0; j <= J_; ++j) r_[j] = std::exp(tMin + double(j) * dt_);
  r_[J_] = 1;

  const std::size_t nd = 2 * J_ + 3;
  x_.assign(nd, 0.0);
  for (std::size_t j = 0; j <= J_; ++j) {
    x_[J_ - j] = -r_[j];
    x_[J_ + 2 + j] = r_[j];
  }

  // node kinds: interior unknowns, diameter data, arc (zero)
  const std::size_t np = (J_ + 1) * (K_ + 1);
  interiorOf_.assign(np, -1);
  long ni = 0;
  for (std::size_t j = 0; j < J_; ++j)
    for (std::size_t k = 1; k < K_; ++k) interiorOf_[polar(j, k)] = ni++;
  auto diam = [&](std::size_t j, std::size_t k) -> long {
    return (j < J_ && (k == 0 || k == K_)) ? long(diameterIndex(j, k)) : -1;
  };

  Triplets tII, tIB;
  Eigen::MatrixXd Kbb = Eigen::MatrixXd::Zero(Eigen::Index(nd), Eigen::Index(nd));
  // an end is (interior index, diameter index), at most one of them >= 0
  using End = std::pair<long, long>;
  auto end = [&](std::size_t j, std::size_t k) { return End{interiorOf_[polar(j, k)], diam(j, k)}; };
  auto edge = [&](End a, End b, double w) {
    const auto [ia, da] = a;
    const auto [ib, db] = b;
    if (ia >= 0) tII.emplace_back(ia, ia, w);
    if (ib >= 0) tII.emplace_back(ib, ib, w);
    if (da >= 0) Kbb(da, da) += w;
    if (db >= 0) Kbb(db, db) += w;
    if (ia >= 0 && ib >= 0) {
      tII.emplace_back(ia, ib, -w);
      tII.emplace_back(ib, ia, -w);
    }
    if (ia >= 0 && db >= 0) tIB.emplace_back(ia, db, -w);
    if (ib >= 0 && da >= 0) tIB.emplace_back(ib, da, -w);
    if (da >= 0 && db >= 0) {
      Kbb(da, db) -= w;
      Kbb(db, da) -= w;
    }
  };
  const double wt = dth_ / dt_, wth = dt_ / dth_;
  for (std::size_t j = 0; j < J_; ++j)
    for (std::size_t k = 0; k <= K_; ++k)
      edge(end(j, k), end(j + 1, k), (k == 0 || k == K_) ? wt / 2 : wt);
  for (std::size_t j = 0; j < J_; ++j)
    for (std::size_t k = 0; k < K_; ++k) edge(end(j, k), end(j, k + 1), j == 0 ? wth / 2 : wth);
  // P1 fan on r < r_0, cotangent weights
  const End centre{-1, long(J_ + 1)};
  for (std::size_t k = 0; k < K_; ++k) {
    edge(end(0, k), end(0, k + 1), 0.5 / std::tan(dth_));
    edge(centre, end(0, k), 0.5 * std::tan(dth_ / 2));
    edge(centre, end(0, k + 1), 0.5 * std::tan(dth_ / 2));
  }

  Eigen::SparseMatrix<double> Kii(ni, ni);
  Kii.setFromTriplets(tII.begin(), tII.end());
  Kib_.resize(ni, Eigen::Index(nd));
  Kib_.setFromTriplets(tIB.begin(), tIB.end());
  llt_.compute(Kii);
  if (llt_.info() != Eigen::Success) throw SolverError("half-disk Laplacian is not positive definite");

  // S = Kbb - Kib^T Kii^{-1} Kib, solved in column blocks
  S_ = Kbb;
  const Eigen::Index block = 64;
  for (Eigen::Index c0 = 0; c0 < Eigen::Index(nd); c0 += block) {
    const Eigen::Index nc = std::min(block, Eigen::Index(nd) - c0);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd(Kib_.middleCols(c0, nc));
    if (rhs.cwiseAbs().maxCoeff() == 0) continue;
    const Eigen::MatrixXd X = llt_.solve(rhs);
    S_.middleCols(c0, nc) -= Kib_.transpose() * X;
  }
  const double scale = S_.cwiseAbs().maxCoeff();
  asym_ = (S_ - S_.transpose()).cwiseAbs().maxCoeff() / scale;
  S_ = 0.5 * (S_ + S_.transpose()).eval();
}

std::vector<std::vector<double>> CoreProblem::extend(const std::vector<double>& vt) const {
  if (vt.size() != x_.size()) throw DomainError("diameter data has the wrong size");
  const Eigen::Map<const Eigen::VectorXd> b(vt.data(), Eigen::Index(vt.size()));
  const Eigen::VectorXd vi = llt_.solve(-(Kib_ * b));
  std::vector<std::vector<double>> v(J_ + 1, std::vector<double>(K_ + 1, 0.0));
  for (std::size_t j = 0; j < J_; ++j)
    for (std::size_t k = 0; k <= K_; ++k) {
      const long i = interiorOf_[polar(j, k)];
      v[j][k] = i >= 0 ? vi[i] : vt[diameterIndex(j, k)];
    }
  return v;
}

double CoreProblem::fieldEnergy(const std::vector<std::vector<double>>& v,
                                double centreValue) const {
  const double wt = dth_ / dt_, wth = dt_ / dth_;
  double e = 0;
  for (std::size_t j = 0; j < J_; ++j)
    for (std::size_t k = 0; k < K_; ++k) {
      const double a = v[j][k], b = v[j + 1][k], c = v[j][k + 1], d = v[j + 1][k + 1];
      const double p = b - a, q = d - c, s = c - a, u = d - b;
      e += wt * (p * p + p * q + q * q) / 3 + wth * (s * s + s * u + u * u) / 3;
    }
  for (std::size_t k = 0; k < K_; ++k) {
    const double a = v[0][k] - centreValue, b = v[0][k + 1] - centreValue, c = b - a;
    e += 0.5 * (c * c / std::tan(dth_) + std::tan(dth_ / 2) * (a * a + b * b));
  }
  return e;
}

namespace {

std::vector<double> shifted(const CoreProblem& p, const std::vector<double>& mu) {
  std::vector<double> vt(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) vt[i] = mu[i] - (1 - p.gamma());
  return vt;
}

double quad_form(const Eigen::MatrixXd& S, const std::vector<double>& v) {
  const Eigen::Map<const Eigen::VectorXd> x(v.data(), Eigen::Index(v.size()));
  return x.dot(S * x);
}

}  // namespace

double halfdisk_dirichlet_energy(const CoreProblem& problem, const std::vector<double>& mu) {
  if (mu.size() != problem.diameter().size()) throw DomainError("diameter data has the wrong size");
  return quad_form(problem.dtn(), shifted(problem, mu));
}

std::vector<double> core_construction_mu(const CoreProblem& problem) {
  const double d2 = problem.scales().delta * problem.scales().delta;
  const double den = std::log1p(1 / d2);
  std::vector<double> mu;
  for (double x : problem.diameter()) mu.push_back(1 - problem.gamma() * std::log1p(x * x / d2) / den);
  return mu;
}

double core_upper_bound(double gamma, const Scales& s) {
  const double l = 0.5 * std::log1p(1 / (s.delta * s.delta));
  return std::numbers::pi * gamma * gamma / (2 * l) +
         gamma * gamma * construction_constant() /
             (gamma * (2 - gamma) * std::log(1 / s.epsilon) * l);
}

namespace {

PhaseProblem core_phase_problem(const CoreProblem& p) {
  PhaseProblem q;
  q.nodes = p.diameter();
  q.epsilon = p.scales().epsilon;
  q.A = &p.dtn();
  q.c0 = 1 - p.gamma();
  q.fixed.assign(q.nodes.size(), false);
  q.fixed.front() = q.fixed.back() = true;
  q.fixed[p.centre()] = true;
  return q;
}

}  // namespace

CoreMinimum minimize_core(const CoreProblem& problem, const DescentOptions& options) {
  const PhaseProblem q = core_phase_problem(problem);
  const std::vector<double> mu0 = core_construction_mu(problem);
  const double sgn = problem.flipped() ? -1 : 1;
  std::vector<double> psi0(mu0.size());
  for (std::size_t i = 0; i < mu0.size(); ++i) {
    const double a = std::acos(std::clamp(mu0[i], -1.0, 1.0));
    psi0[i] = i < problem.centre() ? sgn * a : (i == problem.centre() ? 0.0 : -sgn * a);
  }
  psi0.front() = sgn * std::acos(1 - problem.gamma());
  psi0.back() = -psi0.front();

  const DescentResult r = minimize_phase(q, psi0, options);
  CoreMinimum m;
  m.psi = r.phi;
  for (double v : m.psi) m.mu.push_back(std::cos(v));
  m.energy = r.energy;
  m.exchange = q.exchange(m.psi);
  m.dirichlet = 2 * q.magnetostatic(m.psi);
  m.iterations = r.iterations;
  m.gradientNorm = r.gradientNorm;
  m.converged = r.converged;
  return m;
}

CoreDiagnostics core_diagnostics(const CoreProblem& p, const CoreMinimum& m) {
  CoreDiagnostics d;
  const std::vector<double> vt = shifted(p, m.mu);
  d.dtnEnergy = quad_form(p.dtn(), vt);
  const auto v = p.extend(vt);
  d.directEnergy = p.fieldEnergy(v, vt[p.centre()]);
  d.relativeGap = std::abs(d.directEnergy - d.dtnEnergy) / std::max(d.dtnEnergy, 1e-300);
  d.muMin = *std::min_element(m.mu.begin(), m.mu.end());
  d.muMax = *std::max_element(m.mu.begin(), m.mu.end());

  const std::size_t J = p.radii().size() - 1, K = p.angularCells();
  const double dt = p.dt(), dth = p.dtheta(), L = p.scales().logInvDelta, g = p.gamma();
  auto trap = [&](std::size_t k) { return (k == 0 || k == K) ? 0.5 : 1.0; };
  auto vt_t = [&](std::size_t j, std::size_t k) {
    if (j == 0) return (-3 * v[0][k] + 4 * v[1][k] - v[2][k]) / (2 * dt);
    if (j == J) return (3 * v[J][k] - 4 * v[J - 1][k] + v[J - 2][k]) / (2 * dt);
    return (v[j + 1][k] - v[j - 1][k]) / (2 * dt);
  };

  for (std::size_t k = 0; k <= K; ++k) d.arcFlux += trap(k) * dth * std::pow(vt_t(J, k), 2);

  // conjugate potential: u_t = v_theta, u_theta = -v_t
  std::vector<double> u0(J + 1, 0.0);
  auto vth0 = [&](std::size_t j) { return (-3 * v[j][0] + 4 * v[j][1] - v[j][2]) / (2 * dth); };
  for (std::size_t j = 1; j <= J; ++j) u0[j] = u0[j - 1] + 0.5 * dt * (vth0(j - 1) + vth0(j));
  std::vector<std::vector<double>> u(J + 1, std::vector<double>(K + 1, 0.0));
  for (std::size_t j = 0; j <= J; ++j) {
    u[j][0] = u0[j];
    for (std::size_t k = 1; k <= K; ++k)
      u[j][k] = u[j][k - 1] - 0.5 * dth * (vt_t(j, k - 1) + vt_t(j, k));
  }
  double sw = 0, su = 0;
  for (std::size_t j = 0; j <= J; ++j) {
    if (p.radii()[j] < 0.5) continue;
    const double wj = (j == J ? 0.5 : 1.0) * p.radii()[j] * p.radii()[j];
    for (std::size_t k = 0; k <= K; ++k) {
      sw += wj * trap(k);
      su += wj * trap(k) * u[j][k];
    }
  }
  const double c = su / sw;
  double err = 0;
  for (std::size_t j = 0; j <= J; ++j) {
    const double r = p.radii()[j];
    if (r <= 0.1 || r >= 0.9) continue;
    for (std::size_t k = 0; k <= K; ++k) {
      const double e = L * (u[j][k] - c) - g * (double(k) * dth - std::numbers::pi / 2);
      err += trap(k) * r * r * dt * dth * e * e;
    }
  }
  d.fieldError = std::sqrt(err);

  for (std::size_t i = 0; i < m.mu.size(); ++i) {
    const double ax = std::abs(p.diameter()[i]);
    if (ax <= 0.1 || ax >= 0.9) continue;
    d.profileError = std::max(d.profileError, std::abs((m.mu[i] - 1 + g) * L - g * std::log(1 / ax)));
  }
  return d;
}

CoreLadderResult extract_core_energy(double gamma, std::vector<double> ladder,
                                     const CoreGridOptions& grid, const DescentOptions& descent,
                                     bool flipped, unsigned threads) {
  std::sort(ladder.begin(), ladder.end(), std::greater<>());
  if (ladder.size() < 3 || std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end())
    throw DomainError("core ladder needs at least three distinct epsilons");
  CoreLadderResult R;
  R.gamma = gamma;
  R.rows.resize(ladder.size());

  parallel_for(ladder.size(), threads, [&](std::size_t i) {
    const Scales s = Scales::fromEpsilon(ladder[i]);
    const CoreProblem p(gamma, s, grid, flipped);
    const CoreMinimum m = minimize_core(p, descent);
    CoreLadderRow& row = R.rows[i];
    row.epsilon = s.epsilon;
    row.delta = s.delta;
    row.L = s.logInvDelta;
    row.infE = m.energy;
    row.f = row.L * row.L * m.energy - std::numbers::pi * gamma * gamma * row.L / 2;
    row.upperBound = core_upper_bound(gamma, s);
    row.diagnostics = core_diagnostics(p, m);
    row.converged = m.converged;
  });

  std::vector<double> L, f;
  for (const auto& row : R.rows) {
    L.push_back(row.L);
    f.push_back(row.f);
  }
  const InverseFit one = fit_inverse_powers(L, f, 1);
  R.eGamma = one.limit();
  R.slope = one.coefficients[1];
  R.fitResiduals = one.residuals;
  const InverseFit dropped = fit_inverse_powers({L.begin() + 1, L.end()}, {f.begin() + 1, f.end()}, 1);
  R.uncertainty = std::abs(dropped.limit() - R.eGamma);
  if (L.size() >= 4) R.twoTermSensitivity = fit_inverse_powers(L, f, 2).limit() - R.eGamma;
  bool up = true, down = true;
  for (std::size_t i = 1; i < f.size(); ++i) {
    up = up && f[i] >= f[i - 1];
    down = down && f[i] <= f[i - 1];
  }
  R.reliable = up || down;
  return R;
}

}  // namespace neelwall
