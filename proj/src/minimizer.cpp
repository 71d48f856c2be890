// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>


#include "neelwall/closedform.hpp"
#include "neelwall/format.hpp"
#include "neelwall/quadrature.hpp"

namespace neelwall {

const char* model_name(Model m) { return m == Model::Full ? "full" : "linear"; }

Model parse_model(const std::string& s) {
  if (s == "full") return Model::Full;
  if (s == "linear") return Model::Linear;
  throw DomainError("unknown model '" + s + "' (expected full or linear)");
}

std::shared_ptr<const Grid> wall_grid(const WallConfig& config, const Scales& scales, Model model,
                                      const GridOptions& o) {
  if (o.uniformCells) return Grid::uniform(o.uniformCells);
  if (!(o.nodesPerCore > 0) || !(o.refine > 0)) throw DomainError("invalid grid options");
  const double core = model == Model::Full ? scales.delta : scales.epsilon;
  Grid::Grading g;
  g.hMin = std::min(core / o.nodesPerCore, o.hMax) * o.refine;
  g.hEdge = std::max(g.hMin, o.hEdge * o.refine);
  g.growth = o.growth;
  g.hMax = std::max(g.hEdge, o.hMax * o.refine);
  return Grid::graded(config.positions(), g);
}

double exchange_energy(const PhaseField& phase, double epsilon) {
  const auto& x = phase.grid->nodes();
  double e = 0;
  for (std::size_t c = 0; c + 1 < x.size(); ++c) {
    const double d = phase.values[c + 1] - phase.values[c];
    e += d * d / (x[c + 1] - x[c]);
  }
  return 0.5 * epsilon * e;
}

std::vector<double> MinimizeReport::g() const {
  std::vector<double> r;
  for (double v : m1) r.push_back(v - std::cos(config.alpha()));
  r.front() = 0;
  r.back() = 0;
  return r;
}

std::string MinimizeReport::profileCsv() const {
  std::ostringstream os;
  os << "x1,phi,m1,m2,g\n";
  const auto gg = g();
  for (std::size_t i = 0; i < m1.size(); ++i)
    os << fmt17(phase.grid->x(i)) << ',' << fmt17(phase.values[i]) << ',' << fmt17(m1[i]) << ','
       << fmt17(std::sin(phase.values[i])) << ',' << fmt17(gg[i]) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Test profile and lifting

std::vector<double> lift_segments(const WallConfig& config, const Grid& grid,
                                  const std::vector<std::size_t>& wallNodes,
                                  const std::vector<long>& k, double endpoint,
                                  const std::vector<double>& m1) {
  std::vector<std::pair<std::size_t, double>> pins = {{0, config.alpha()}};
  for (std::size_t n = 0; n < wallNodes.size(); ++n) pins.push_back({wallNodes[n], double(k[n]) * kPi});
  pins.push_back({grid.size() - 1, endpoint});
  std::vector<double> phi(grid.size());
  long j = 0;
  for (std::size_t s = 0; s + 1 < pins.size(); ++s) {
    const auto [ia, pa] = pins[s];
    const auto [ib, pb] = pins[s + 1];
    if (std::abs(pb - pa) > kPi + 1e-12) {
      // more than half a turn between pins: no arccos branch reaches, interpolate
      for (std::size_t i = ia; i <= ib; ++i)
        phi[i] = pa + (pb - pa) * (grid.x(i) - grid.x(ia)) / (grid.x(ib) - grid.x(ia));
      j = long(std::floor(pb / kPi));
      continue;
    }
    if (pa != pb || s == 0) j = long(std::floor(std::min(pa, pb) / kPi + 1e-12));
    const double base = double(j) * kPi;
    const bool even = (j % 2 + 2) % 2 == 0;
    for (std::size_t i = ia; i <= ib; ++i) {
      const double c = std::clamp(m1[i], -1.0, 1.0);
      phi[i] = base + (even ? std::acos(c) : std::acos(-c));
    }
    phi[ia] = pa;
    phi[ib] = pb;
  }
  return phi;
}

PhaseField construction_profile(const WallConfig& config, const Scales& scales, double R,
                                std::shared_ptr<const Grid> grid) {
  if (!(R > 0 && R <= config.rho() * (1 + 1e-12)))
    throw DomainError("construction radius must lie in (0, rho(a)]");
  const double d2 = scales.delta * scales.delta;
  const double den = std::log(d2) - std::log(R * R + d2);
  const auto& a = config.positions();
  std::vector<double> m1;
  for (double x : grid->nodes()) {
    double v = std::cos(config.alpha());
    for (std::size_t n = 0; n < a.size(); ++n) {
      const double t = x - a[n];
      if (std::abs(t) < R)
        v += config.gammas()[n] * (std::log(t * t + d2) - std::log(R * R + d2)) / den;
    }
    m1.push_back(v);
  }
  const auto [snapped, idx] = snap_to_grid(config, *grid);
  for (std::size_t n = 0; n < idx.size(); ++n) m1[idx[n]] = double(config.signs()[n]);
  const auto k = pinned_multiples(config);
  PhaseField p;
  p.grid = grid;
  p.pinned = idx;
  p.values = lift_segments(config, *grid, idx, k, endpoint_candidates(config, k).front(), m1);
  return p;
}

double construction_constant() {
  static const double K = [] {
    // t = cot(phi) maps the half line to (0, pi/2); the integrand
    // cos^2 / (-2 log sin) vanishes like 1/log at phi = 0, so the panels
    // shrink geometrically there.
    auto f = [](double phi) {
      const double c = std::cos(phi), s = std::sin(phi);
      if (phi > kPi / 2 - 1e-6) return 1.0;
      return c * c / (c > s ? -2 * std::log(s) : -std::log1p(-c * c));
    };
    const double half = composite_gauss(f, geometric_edges(0, kPi / 2, 1e-30), 32);
    return 2 * half;
  }();
  return K;
}

double construction_bound(const WallConfig& config, const Scales& scales, double R) {
  const double s = std::sin(config.alpha());
  const double l = 0.5 * std::log1p(R * R / (scales.delta * scales.delta));
  return config.Gamma() / (2 * l) *
         (kPi + 2 * construction_constant() / (s * s * std::log(1 / scales.epsilon)));
}

// ---------------------------------------------------------------------------
// Minimization

namespace {

Eigen::MatrixXd stiffness(const Grid& grid) {
  const Eigen::Index n = Eigen::Index(grid.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index c = 0; c + 1 < n; ++c) {
    const double w = 1 / grid.cell(std::size_t(c));
    K(c, c) += w;
    K(c + 1, c + 1) += w;
    K(c, c + 1) -= w;
    K(c + 1, c) -= w;
  }
  return K;
}

std::vector<bool> fixed_mask(std::size_t n, const std::vector<std::size_t>& walls) {
  std::vector<bool> f(n, false);
  f.front() = f.back() = true;
  for (auto i : walls) f[i] = true;
  return f;
}

void linear_solve(MinimizeReport& R) {
  const Grid& grid = *R.phase.grid;
  const double eps = R.scales.epsilon;
  const double ca = std::cos(R.config.alpha());
  const Eigen::MatrixXd K = stiffness(grid);
  const Eigen::MatrixXd M = eps * K + R.op->matrix();
  const auto fixed = fixed_mask(grid.size(), R.phase.pinned);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(Eigen::Index(grid.size()));
  for (std::size_t n = 0; n < R.phase.pinned.size(); ++n)
    g[Eigen::Index(R.phase.pinned[n])] = R.config.gammas()[n];
  std::vector<Eigen::Index> fr;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!fixed[i]) fr.push_back(Eigen::Index(i));
  const Eigen::Index nf = Eigen::Index(fr.size());
  Eigen::MatrixXd Mff(nf, nf);
  Eigen::VectorXd rhs(nf);
  const Eigen::VectorXd Mg = M * g;
  for (Eigen::Index a = 0; a < nf; ++a) {
    rhs[a] = -Mg[fr[a]];
    for (Eigen::Index b = 0; b < nf; ++b) Mff(a, b) = M(fr[a], fr[b]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(Mff);
  if (llt.info() != Eigen::Success) throw SolverError("linear model system is not positive definite");
  const Eigen::VectorXd gf = llt.solve(rhs);
  for (Eigen::Index a = 0; a < nf; ++a) g[fr[a]] = gf[a];
  R.m1.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) R.m1[i] = ca + g[Eigen::Index(i)];
  for (std::size_t n = 0; n < R.phase.pinned.size(); ++n)
    R.m1[R.phase.pinned[n]] = double(R.config.signs()[n]);
  R.m1.front() = R.m1.back() = ca;
  R.energy.exchange = 0.5 * eps * g.dot(K * g);
  R.energy.magnetostatic = 0.5 * g.dot(R.op->matrix() * g);
  R.energy.total = R.energy.exchange + R.energy.magnetostatic;
  // equation residual on free nodes
  const Eigen::VectorXd r = M * g, ex = eps * K * g;
  double sup = 0, scale = 0, l2 = 0;
  for (Eigen::Index i : fr) {
    const double m = grid.mass(std::size_t(i));
    sup = std::max(sup, std::abs(r[i]) / m);
    scale = std::max(scale, std::abs(ex[i]) / m);
    l2 += r[i] * r[i] / m;
  }
  R.gradientNorm = 0;
  for (Eigen::Index i : fr) R.gradientNorm = std::max(R.gradientNorm, std::abs(r[i]));
  R.energy.elResidualNorm = scale > 0 ? sup / scale : sup;
  R.energy.elResidualL2 = std::sqrt(l2);
  R.converged = true;
  R.endpoint = endpoint_candidates(R.config, R.multiples).front();
  R.candidateEnergies = {R.energy.total};
  R.phase.values =
      lift_segments(R.config, grid, R.phase.pinned, R.multiples, R.endpoint, R.m1);
}

}  // namespace

PhaseProblem wall_problem(const MinimizeReport& R) {
  PhaseProblem p;
  p.nodes = R.phase.grid->nodes();
  p.epsilon = R.scales.epsilon;
  p.A = &R.op->matrix();
  p.c0 = std::cos(R.config.alpha());
  p.fixed = fixed_mask(p.nodes.size(), R.phase.pinned);
  return p;
}

MinimizeReport minimize(const WallConfig& config, const Scales& scales, Model model,
                        const MinimizeOptions& o) {
  auto grid = wall_grid(config, scales, model, o.grid);
  auto [snapped, idx] = snap_to_grid(config, *grid);
  MinimizeReport R{snapped};
  R.scales = scales;
  R.model = model;
  R.outsideRegime = scales.delta > snapped.rho() / 4;
  R.op = std::make_shared<const TraceOperator>(grid);
  R.multiples = pinned_multiples(snapped);
  R.phase.grid = grid;
  R.phase.pinned = idx;
  if (model == Model::Linear) {
    linear_solve(R);
    return R;
  }

  const PhaseField init = construction_profile(snapped, scales, snapped.rho(), grid);
  std::vector<double> m1init;
  for (double v : init.values) m1init.push_back(std::cos(v));
  auto cands = endpoint_candidates(snapped, R.multiples);
  if (!o.allEndpoints) cands.resize(1);
  const PhaseProblem prob = wall_problem(R);
  bool have = false;
  DescentResult best;
  for (double e : cands) {
    const auto phi0 = lift_segments(snapped, *grid, idx, R.multiples, e, m1init);
    DescentResult d = minimize_phase(prob, phi0, o.descent);
    R.candidateEnergies.push_back(d.energy);
    R.iterations += d.iterations;
    if (!have || d.energy < best.energy * (1 - 1e-12)) {
      best = std::move(d);
      R.endpoint = e;
      have = true;
    }
  }
  R.phase.values = best.phi;
  R.gradientNorm = best.gradientNorm;
  R.converged = best.converged;
  for (double v : best.phi) R.m1.push_back(std::cos(v));
  R.energy.exchange = prob.exchange(best.phi);
  R.energy.magnetostatic = prob.magnetostatic(best.phi);
  R.energy.total = R.energy.exchange + R.energy.magnetostatic;
  const ElResidual el = el_residual(R.phase, scales, *R.op, snapped.alpha());
  R.energy.elResidualNorm = el.relative;
  R.energy.elResidualL2 = el.l2;
  for (std::size_t n = 0; n < snapped.size(); ++n) {
    const double r0 = snapped.rho();
    auto rows = pohozaev_check(R.phase, scales, snapped, n, {r0 / 2, r0 / 4});
    R.energy.pohozaev.insert(R.energy.pohozaev.end(), rows.begin(), rows.end());
  }
  R.energy.coreBounds = core_bounds(R.phase, scales, snapped, R.energy.total);
  return R;
}

// ---------------------------------------------------------------------------
// Diagnostics

ElResidual el_residual(const PhaseField& phase, const Scales& scales, const TraceOperator& op,
                       double alpha) {
  PhaseProblem p;
  p.nodes = phase.grid->nodes();
  p.epsilon = scales.epsilon;
  p.A = &op.matrix();
  p.c0 = std::cos(alpha);
  p.fixed = fixed_mask(p.nodes.size(), phase.pinned);
  const auto grad = p.gradient(phase.values);
  const auto ex = p.exchangeGradient(phase.values);
  ElResidual r;
  double l2 = 0;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (p.fixed[i]) continue;
    const double m = phase.grid->mass(i);
    const double v = -grad[i] / m;
    r.x.push_back(p.nodes[i]);
    r.residual.push_back(v);
    r.sup = std::max(r.sup, std::abs(v));
    r.scale = std::max(r.scale, std::abs(ex[i]) / m);
    l2 += v * v * m;
  }
  r.l2 = std::sqrt(l2);
  r.relative = r.scale > 0 ? r.sup / r.scale : r.sup;
  return r;
}

namespace {

// int_lo^hi of (phi')^2 and of sin^2 phi for piecewise linear phi
std::pair<double, double> window_integrals(const PhaseField& phase, double lo, double hi) {
  const auto& x = phase.grid->nodes();
  const auto& v = phase.values;
  const GaussRule& G = GaussRule::get(8);
  double d2 = 0, s2 = 0;
  for (std::size_t c = 0; c + 1 < x.size(); ++c) {
    const double a = std::max(lo, x[c]), b = std::min(hi, x[c + 1]);
    if (!(b > a)) continue;
    const double slope = (v[c + 1] - v[c]) / (x[c + 1] - x[c]);
    d2 += slope * slope * (b - a);
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t q = 0; q < G.x.size(); ++q) {
      const double t = m + h * G.x[q];
      const double s = std::sin(v[c] + slope * (t - x[c]));
      s2 += h * G.w[q] * s * s;
    }
  }
  return {d2, s2};
}

double slope_at(const PhaseField& phase, double t, bool fromLeft) {
  const auto& x = phase.grid->nodes();
  auto it = std::lower_bound(x.begin(), x.end(), t);
  std::size_t i = std::size_t(it - x.begin());
  // cell c with x_c < t <= x_{c+1} (left) or x_c <= t < x_{c+1} (right)
  std::size_t c;
  if (fromLeft) c = i == 0 ? 0 : i - 1;
  else c = (i < x.size() && x[i] == t) ? i : i - 1;
  c = std::min(c, x.size() - 2);
  return (phase.values[c + 1] - phase.values[c]) / (x[c + 1] - x[c]);
}

std::vector<double> cos_minus(const PhaseField& phase, double alpha) {
  std::vector<double> g;
  for (double v : phase.values) g.push_back(std::cos(v) - std::cos(alpha));
  g.front() = g.back() = 0;
  return g;
}

}  // namespace

std::vector<PohozaevRow> pohozaev_check(const PhaseField& phase, const Scales& scales,
                                        const WallConfig& config, std::size_t wall,
                                        const std::vector<double>& radii) {
  if (wall >= config.size()) throw DomainError("wall index out of range");
  const StrayPotential U(phase.grid, cos_minus(phase, config.alpha()));
  const double a = config.positions()[wall];
  const double eps = scales.epsilon;
  std::vector<double> th = {0.0, kPi};
  for (int k = 1; k <= 20; ++k) {
    th.push_back(0.5 * kPi * std::ldexp(1.0, -k));
    th.push_back(kPi - 0.5 * kPi * std::ldexp(1.0, -k));
  }
  th.push_back(0.5 * kPi);
  std::sort(th.begin(), th.end());
  std::vector<PohozaevRow> rows;
  for (double r : radii) {
    if (!(r > 0 && r <= config.rho() * (1 + 1e-12)))
      throw DomainError("Pohozaev radius must lie in (0, rho(a)]");
    PohozaevRow row;
    row.wall = wall;
    row.radius = r;
    row.lhs = eps * window_integrals(phase, a - r, a + r).first;
    const double sp = slope_at(phase, a + r, true), sm = slope_at(phase, a - r, false);
    const double ring = composite_gauss(
        [&](double t) {
          const double c = std::cos(t), s = std::sin(t);
          const Vec2 g = U.gradient(a + r * c, r * s);
          const double dr = g[0] * c + g[1] * s;
          return g[0] * g[0] + g[1] * g[1] - 2 * dr * dr;
        },
        th, 8);
    row.rhs = r * eps * (sp * sp + sm * sm) + r * r * ring;
    row.residual = row.lhs - row.rhs;
    row.relative = row.lhs > 0 ? row.residual / row.lhs : row.residual;
    rows.push_back(row);
  }
  return rows;
}

std::vector<CoreBoundRow> core_bounds(const PhaseField& phase, const Scales& scales,
                                      const WallConfig& config, double energy) {
  const auto& a = config.positions();
  const double d = scales.delta;
  std::vector<CoreBoundRow> rows;
  for (std::size_t n = 0; n < a.size(); ++n) {
    CoreBoundRow row;
    row.wall = n;
    double R = std::min({1.0, a[n] + 1, 1 - a[n]});
    if (n > 0) R = std::min(R, a[n] - a[n - 1]);
    if (n + 1 < a.size()) R = std::min(R, a[n + 1] - a[n]);
    row.radius = R;
    const auto [d2, s2] = window_integrals(phase, a[n] - d, a[n] + d);
    row.exchangeCore = 0.5 * scales.epsilon * d2;
    row.sinCore = s2;
    if (R > d) {
      const double l = std::log(R / d);
      row.exchangeBound = energy / l;
      row.sinBound = 4 * d * std::log(1 / scales.epsilon) * energy / l;
    } else {
      row.exchangeBound = row.sinBound = std::numeric_limits<double>::infinity();
    }
    row.holds = row.exchangeCore <= row.exchangeBound && row.sinCore <= row.sinBound;
    rows.push_back(row);
  }
  return rows;
}

LadderDiagnostics ladder_diagnostics(const MinimizeReport& R, double r) {
  const WallConfig& cfg = R.config;
  if (r == 0) r = cfg.rho() / 2;
  const double L = R.scales.logInvDelta, d = R.scales.delta;
  LadderDiagnostics D;
  D.exchangeRescaled = 2 * R.energy.exchange * L * L;
  const auto g = R.g();
  const StrayPotential U(R.phase.grid, g);
  double inner = 0;
  for (std::size_t n = 0; n < cfg.size(); ++n) {
    const double a = cfg.positions()[n];
    if (R.model == Model::Full)
      D.sinCoreRescaled.push_back(window_integrals(R.phase, a - d, a + d).second * L / d);
    if (d < cfg.rho()) inner += stray_energy_in_half_disk(U, a, d);
  }
  D.strayOutsideCores = 2 * R.energy.magnetostatic - inner;
  D.strayDeficit = (kPi * cfg.Gamma() - L * D.strayOutsideCores) * L;

  const TailProfile mu(cfg);
  const LimitStrayField ustar(cfg);
  auto far = [&](double x1, double x2) {
    for (double a : cfg.positions())
      if (std::hypot(x1 - a, x2) < r) return false;
    return true;
  };
  const auto& x = R.phase.grid->nodes();
  for (std::size_t i = 1; i + 1 < x.size(); ++i)
    if (far(x[i], 0)) D.tailError = std::max(D.tailError, std::abs(g[i] * L - mu.value(x[i])));
  for (int i = -15; i <= 15; ++i)
    for (double x2 : {0.05, 0.1, 0.2, 0.4, 0.8}) {
      const double x1 = 0.1 * i;
      if (!far(x1, x2)) continue;
      D.potentialError = std::max(D.potentialError, std::abs(L * U.value(x1, x2) - ustar.value(x1, x2)));
    }
  return D;
}

}  // namespace neelwall
