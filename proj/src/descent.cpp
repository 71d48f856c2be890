// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/descent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "neelwall/domain.hpp"
#include "neelwall/format.hpp"

namespace neelwall {

namespace {

Eigen::VectorXd trace_of(const PhaseProblem& p, const std::vector<double>& phi) {
  Eigen::VectorXd g(Eigen::Index(phi.size()));
  for (std::size_t i = 0; i < phi.size(); ++i) g[Eigen::Index(i)] = std::cos(phi[i]) - p.c0;
  return g;
}

double sup_free(const std::vector<double>& v, const std::vector<bool>& fixed) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!fixed[i]) s = std::max(s, std::abs(v[i]));
  return s;
}

}  // namespace

double PhaseProblem::exchange(const std::vector<double>& phi) const {
  double e = 0;
  for (std::size_t c = 0; c + 1 < phi.size(); ++c) {
    const double d = phi[c + 1] - phi[c];
    e += d * d / (nodes[c + 1] - nodes[c]);
  }
  return 0.5 * epsilon * e;
}

double PhaseProblem::magnetostatic(const std::vector<double>& phi) const {
  const Eigen::VectorXd g = trace_of(*this, phi);
  return 0.5 * g.dot(*A * g);
}

double PhaseProblem::energy(const std::vector<double>& phi) const {
  return exchange(phi) + magnetostatic(phi);
}

std::vector<double> PhaseProblem::exchangeGradient(const std::vector<double>& phi) const {
  const std::size_t n = phi.size();
  std::vector<double> r(n, 0.0);
  for (std::size_t c = 0; c + 1 < n; ++c) {
    const double q = epsilon * (phi[c + 1] - phi[c]) / (nodes[c + 1] - nodes[c]);
    r[c] -= q;
    r[c + 1] += q;
  }
  return r;
}

std::vector<double> PhaseProblem::gradient(const std::vector<double>& phi) const {
  std::vector<double> r = exchangeGradient(phi);
  const Eigen::VectorXd Ag = *A * trace_of(*this, phi);
  for (std::size_t i = 0; i < phi.size(); ++i) r[i] -= std::sin(phi[i]) * Ag[Eigen::Index(i)];
  return r;
}

Eigen::MatrixXd PhaseProblem::hessian(const std::vector<double>& phi) const {
  const Eigen::Index n = Eigen::Index(phi.size());
  Eigen::VectorXd s(n), c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s[i] = std::sin(phi[std::size_t(i)]);
    c[i] = std::cos(phi[std::size_t(i)]);
  }
  const Eigen::VectorXd Ag = *A * trace_of(*this, phi);
  Eigen::MatrixXd H = s.asDiagonal() * (*A) * s.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) H(i, i) -= c[i] * Ag[i];
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double w = epsilon / (nodes[std::size_t(k + 1)] - nodes[std::size_t(k)]);
    H(k, k) += w;
    H(k + 1, k + 1) += w;
    H(k, k + 1) -= w;
    H(k + 1, k) -= w;
  }
  return H;
}

namespace {

struct State {
  std::vector<double> phi, grad;
  double f = 0;
};

class Driver {
public:
  Driver(const PhaseProblem& p, const DescentOptions& o) : p_(p), o_(o) {
    for (std::size_t i = 0; i < p.fixed.size(); ++i)
      if (!p.fixed[i]) free_.push_back(i);
  }

  State eval(std::vector<double> phi) const {
    State s;
    s.f = p_.energy(phi);
    s.grad = p_.gradient(phi);
    s.phi = std::move(phi);
    return s;
  }

  double tol(const State& s) const { return o_.gradTol * std::max(std::abs(s.f), 1e-300); }
  double gnorm(const State& s) const { return sup_free(s.grad, p_.fixed); }

  Eigen::VectorXd freeGrad(const State& s) const {
    Eigen::VectorXd g(Eigen::Index(free_.size()));
    for (std::size_t k = 0; k < free_.size(); ++k) g[Eigen::Index(k)] = s.grad[free_[k]];
    return g;
  }

  std::vector<double> moved(const State& s, const Eigen::VectorXd& d, double t) const {
    std::vector<double> phi = s.phi;
    for (std::size_t k = 0; k < free_.size(); ++k) phi[free_[k]] += t * d[Eigen::Index(k)];
    return phi;
  }

  // Armijo backtracking; an energy within rounding of f is accepted only if
  // the gradient shrinks, so the recorded energies never increase beyond it.
  bool lineSearch(State& s, const Eigen::VectorXd& d, double t0) const {
    const double slope = freeGrad(s).dot(d);
    if (!(slope < 0)) return false;
    const double noise = 8 * std::numeric_limits<double>::epsilon() * std::abs(s.f);
    double t = t0;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
      State n = eval(moved(s, d, t));
      if (!std::isfinite(n.f)) continue;
      if (n.f <= s.f + 1e-4 * t * slope || (n.f <= s.f + noise && gnorm(n) < gnorm(s))) {
        s = std::move(n);
        return true;
      }
    }
    return false;
  }

  const std::vector<std::size_t>& freeIdx() const { return free_; }

private:
  const PhaseProblem& p_;
  const DescentOptions& o_;
  std::vector<std::size_t> free_;
};

std::string dump(const State& s) {
  std::string r = "energy " + fmt17(s.f) + ", phi = [";
  for (std::size_t i = 0; i < s.phi.size(); ++i) r += (i ? ", " : "") + fmt17(s.phi[i]);
  return r + "]";
}

}  // namespace

DescentResult minimize_phase(const PhaseProblem& p, std::vector<double> phi0,
                             const DescentOptions& o) {
  if (!p.A || p.nodes.size() != phi0.size() || p.fixed.size() != phi0.size() ||
      std::size_t(p.A->rows()) != phi0.size())
    throw DomainError("phase problem dimensions disagree");
  Driver D(p, o);
  State s = D.eval(std::move(phi0));
  DescentResult R;
  auto finish = [&](bool ok, std::string msg) {
    R.phi = s.phi;
    R.energy = s.f;
    R.gradientNorm = D.gnorm(s);
    R.iterations = R.quasiNewtonSteps + R.gradientSteps + R.newtonSteps;
    R.converged = ok;
    R.message = std::move(msg);
    return R;
  };
  if (D.freeIdx().empty() || D.gnorm(s) <= D.tol(s)) return finish(true, "converged");

  // limited-memory BFGS, hands over to Newton once the gradient is small
  const double g0 = D.gnorm(s);
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> mem;
  double bbStep = 1e-3;
  for (int it = 0; it < o.maxQuasiNewton; ++it) {
    const double gn = D.gnorm(s);
    if (gn <= D.tol(s)) return finish(true, "converged");
    if (o.newtonPolish && gn <= o.newtonSwitch * g0) break;
    const Eigen::VectorXd g = D.freeGrad(s);
    Eigen::VectorXd q = g;
    std::vector<double> alpha(mem.size());
    for (std::size_t k = mem.size(); k-- > 0;) {
      const auto& [sv, yv] = mem[k];
      alpha[k] = sv.dot(q) / yv.dot(sv);
      q -= alpha[k] * yv;
    }
    if (!mem.empty()) q *= mem.back().first.dot(mem.back().second) / mem.back().second.squaredNorm();
    else q *= bbStep;
    for (std::size_t k = 0; k < mem.size(); ++k) {
      const auto& [sv, yv] = mem[k];
      q += sv * (alpha[k] - yv.dot(q) / yv.dot(sv));
    }
    const Eigen::VectorXd d = -q;
    const std::vector<double> old = s.phi;
    const Eigen::VectorXd gOld = g;
    bool ok = D.lineSearch(s, d, 1.0);
    if (ok) {
      ++R.quasiNewtonSteps;
    } else {
      // Barzilai-Borwein damped gradient step
      mem.clear();
      ok = D.lineSearch(s, -g, bbStep);
      if (!ok) break;
      ++R.gradientSteps;
    }
    Eigen::VectorXd sv(Eigen::Index(D.freeIdx().size()));
    for (std::size_t k = 0; k < D.freeIdx().size(); ++k)
      sv[Eigen::Index(k)] = s.phi[D.freeIdx()[k]] - old[D.freeIdx()[k]];
    const Eigen::VectorXd yv = D.freeGrad(s) - gOld;
    const double sy = sv.dot(yv);
    if (sy > 1e-14 * sv.norm() * yv.norm()) {
      bbStep = sy / yv.squaredNorm();
      mem.emplace_back(sv, yv);
      if (int(mem.size()) > o.memory) mem.pop_front();
    }
  }

  if (D.gnorm(s) <= D.tol(s)) return finish(true, "converged");
  if (!o.newtonPolish) {
    if (R.quasiNewtonSteps + R.gradientSteps >= o.maxQuasiNewton)
      return finish(false, "iteration limit");
    throw SolverError("line search failed to decrease the energy; " + dump(s));
  }

  // Newton with a Levenberg shift on the free block
  const auto& fr = D.freeIdx();
  const Eigen::Index nf = Eigen::Index(fr.size());
  for (int it = 0; it < o.maxNewton; ++it) {
    if (D.gnorm(s) <= D.tol(s)) return finish(true, "converged");
    const Eigen::MatrixXd H = p.hessian(s.phi);
    Eigen::MatrixXd Hf(nf, nf);
    for (Eigen::Index a = 0; a < nf; ++a)
      for (Eigen::Index b = 0; b < nf; ++b) Hf(a, b) = H(Eigen::Index(fr[a]), Eigen::Index(fr[b]));
    const Eigen::VectorXd g = D.freeGrad(s);
    const double scale = Hf.diagonal().cwiseAbs().maxCoeff();
    bool ok = false;
    for (double shift = 0; shift < 1e3 * scale; shift = shift == 0 ? 1e-10 * scale : 10 * shift) {
      Eigen::LLT<Eigen::MatrixXd> llt(Hf + shift * Eigen::MatrixXd::Identity(nf, nf));
      if (llt.info() != Eigen::Success) continue;
      const Eigen::VectorXd d = -llt.solve(g);
      if (D.lineSearch(s, d, 1.0)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      if (D.gnorm(s) <= 1e3 * D.tol(s))
        return finish(false, "stalled at rounding level");
      throw SolverError("Newton step failed to decrease the energy; " + dump(s));
    }
    ++R.newtonSteps;
  }
  const bool ok = D.gnorm(s) <= D.tol(s);
  return finish(ok, ok ? "converged" : "iteration limit");
}

}  // namespace neelwall
