// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neelwall/format.hpp"

namespace neelwall {

Scales Scales::fromEpsilon(double epsilon) {
  if (!(epsilon > 0 && epsilon <= 0.5))
    throw DomainError("epsilon must lie in (0, 1/2], got " + fmt17(epsilon));
  Scales s;
  s.epsilon = epsilon;
  s.delta = epsilon * std::log(1.0 / epsilon);
  s.logInvDelta = std::log(1.0 / s.delta);
  return s;
}

double separation_radius(const std::vector<double>& a) {
  if (a.empty()) return 1.0;
  double m = std::min(2 * a.front() + 2, 2 - 2 * a.back());
  for (std::size_t n = 1; n < a.size(); ++n) m = std::min(m, a[n] - a[n - 1]);
  return 0.5 * m;
}

WallConfig WallConfig::create(double alpha, std::vector<double> positions,
                              std::vector<int> signs,
                              std::optional<std::vector<long>> branches) {
  if (!(alpha > 0 && alpha < kPi))
    throw DomainError("alpha must lie in (0, pi), got " + fmt17(alpha));
  if (positions.empty()) throw DomainError("at least one wall is required");
  if (positions.size() != signs.size())
    throw DomainError("positions and signs differ in length");
  if (branches && branches->size() != positions.size())
    throw DomainError("branches and positions differ in length");
  for (std::size_t n = 0; n < positions.size(); ++n) {
    if (!std::isfinite(positions[n]) || positions[n] <= -1 || positions[n] >= 1)
      throw DomainError("wall position outside (-1,1): " + fmt17(positions[n]));
    if (n > 0 && !(positions[n] > positions[n - 1]))
      throw DomainError("wall positions must be strictly increasing");
    if (signs[n] != 1 && signs[n] != -1) throw DomainError("wall signs must be +1 or -1");
  }
  WallConfig c;
  c.alpha_ = alpha;
  c.positions_ = std::move(positions);
  c.signs_ = std::move(signs);
  c.branches_ = std::move(branches);
  const double ca = std::cos(alpha);
  for (int d : c.signs_) {
    c.gammas_.push_back(d - ca);
    c.Gamma_ += (d - ca) * (d - ca);
  }
  c.rho_ = separation_radius(c.positions_);
  return c;
}

WallConfig WallConfig::withPositions(std::vector<double> positions) const {
  return create(alpha_, std::move(positions), signs_, branches_);
}

std::string WallConfig::serialize() const {
  std::ostringstream os;
  os << "alpha = " << fmt17(alpha_) << "\n";
  os << "positions = " << join17(positions_) << "\n";
  os << "signs = ";
  for (std::size_t i = 0; i < signs_.size(); ++i) os << (i ? ", " : "") << signs_[i];
  os << "\n";
  if (branches_) {
    os << "branches = ";
    for (std::size_t i = 0; i < branches_->size(); ++i) os << (i ? ", " : "") << (*branches_)[i];
    os << "\n";
  }
  return os.str();
}

double mobius_metric(double b, double c) {
  if (!(std::abs(b) < 1 && std::abs(c) < 1))
    throw DomainError("mobius_metric needs points in (-1,1)");
  return std::abs(b - c) / (1 - b * c);
}

std::complex<double> mobius_transform(double b, std::complex<double> z) {
  if (!(std::abs(b) < 1)) throw DomainError("mobius_transform needs |b| < 1");
  return (z + b) / (1.0 + b * z);
}

// ---------------------------------------------------------------------------
// Grids

std::shared_ptr<const Grid> Grid::uniform(std::size_t cells) {
  if (cells < 2) throw DomainError("uniform grid needs at least two cells");
  std::vector<double> x(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) x[i] = -1.0 + 2.0 * double(i) / double(cells);
  x.back() = 1.0;
  return std::shared_ptr<const Grid>(new Grid(std::move(x)));
}

std::shared_ptr<const Grid> Grid::fromNodes(std::vector<double> nodes) {
  if (nodes.size() < 3 || nodes.front() != -1.0 || nodes.back() != 1.0)
    throw DomainError("grid nodes must start at -1 and end at 1");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("grid nodes must increase");
  return std::shared_ptr<const Grid>(new Grid(std::move(nodes)));
}

namespace {

// Spacing h(x) = min(hMax, hA + k(x-A), hB + k(B-x)) on [A,B] and its
// reciprocal integral S(x), both piecewise elementary.
struct Ramp {
  double A, B, hA, hB, k, hMax;

  double h(double x) const {
    return std::min({hMax, hA + k * (x - A), hB + k * (B - x)});
  }
  double piece(double l, double r) const {
    const double m = 0.5 * (l + r);
    const double left = hA + k * (m - A), right = hB + k * (B - m);
    if (hMax <= left && hMax <= right) return (r - l) / hMax;
    if (left <= right) return std::log((hA + k * (r - A)) / (hA + k * (l - A))) / k;
    return std::log((hB + k * (B - l)) / (hB + k * (B - r))) / k;
  }
  double S(double x) const {
    std::vector<double> br = {A, x};
    for (double p : {A + (hMax - hA) / k, B - (hMax - hB) / k,
                     (hB - hA + k * (A + B)) / (2 * k)})
      if (p > A && p < x) br.push_back(p);
    std::sort(br.begin(), br.end());
    double s = 0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      if (br[i + 1] > br[i]) s += piece(br[i], br[i + 1]);
    return s;
  }
};

}  // namespace

std::shared_ptr<const Grid> Grid::graded(const std::vector<double>& anchors,
                                         const Grading& g) {
  if (!(g.hMin > 0 && g.hEdge > 0 && g.growth > 0 && g.hMax >= std::max(g.hMin, g.hEdge)))
    throw DomainError("invalid grid grading");
  std::vector<double> a = {-1.0};
  for (double p : anchors) a.push_back(p);
  a.push_back(1.0);
  std::vector<double> x = {-1.0};
  for (std::size_t s = 0; s + 1 < a.size(); ++s) {
    Ramp r{a[s], a[s + 1], s == 0 ? g.hEdge : g.hMin,
           s + 2 == a.size() ? g.hEdge : g.hMin, g.growth, g.hMax};
    r.hA = std::min(r.hA, r.hMax);
    r.hB = std::min(r.hB, r.hMax);
    const double total = r.S(r.B);
    const auto cells = std::max<std::size_t>(2, std::size_t(std::ceil(total)));
    for (std::size_t j = 1; j < cells; ++j) {
      const double target = total * double(j) / double(cells);
      double lo = r.A, hi = r.B;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (r.S(mid) < target ? lo : hi) = mid;
      }
      x.push_back(0.5 * (lo + hi));
    }
    x.push_back(r.B);
  }
  return fromNodes(std::move(x));
}

double Grid::minSpacing() const {
  double m = 2;
  for (std::size_t c = 0; c + 1 < x_.size(); ++c) m = std::min(m, cell(c));
  return m;
}

double Grid::maxSpacing() const {
  double m = 0;
  for (std::size_t c = 0; c + 1 < x_.size(); ++c) m = std::max(m, cell(c));
  return m;
}

double Grid::mass(std::size_t i) const {
  double m = 0;
  if (i > 0) m += 0.5 * cell(i - 1);
  if (i + 1 < x_.size()) m += 0.5 * cell(i);
  return m;
}

std::size_t Grid::nearest(double x) const {
  auto it = std::lower_bound(x_.begin(), x_.end(), x);
  if (it == x_.end()) return x_.size() - 1;
  std::size_t i = std::size_t(it - x_.begin());
  if (i > 0 && std::abs(x_[i - 1] - x) <= std::abs(x_[i] - x)) --i;
  return i;
}

std::vector<double> PhaseField::m1() const {
  std::vector<double> r(values.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::cos(values[i]);
  return r;
}

std::vector<double> PhaseField::m2() const {
  std::vector<double> r(values.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::sin(values[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Branches

std::vector<long> pinned_multiples(const WallConfig& config) {
  const auto& d = config.signs();
  std::vector<long> k(d.size());
  if (config.branches()) {
    for (std::size_t n = 0; n < d.size(); ++n)
      k[n] = 2 * (*config.branches())[n] + (d[n] == -1 ? 1 : 0);
    return k;
  }
  // Nearest admissible value to the previous one; ties continue the direction
  // of the last transition.
  const double alpha = config.alpha();
  k[0] = d[0] == 1 ? 0 : 1;
  double dir = (k[0] * kPi - alpha) < 0 ? -1 : 1;
  for (std::size_t n = 1; n < d.size(); ++n) {
    if (d[n] == d[n - 1]) {
      k[n] = k[n - 1];
    } else {
      k[n] = k[n - 1] + (dir < 0 ? -1 : 1);
    }
    if (k[n] != k[n - 1]) dir = k[n] > k[n - 1] ? 1 : -1;
  }
  return k;
}

std::vector<double> endpoint_candidates(const WallConfig& config,
                                        const std::vector<long>& k) {
  const double alpha = config.alpha();
  const double last = k.back() * kPi;
  // direction of the last transition with a nonzero phase change
  double prev = alpha;
  for (std::size_t n = k.size() - 1; n-- > 0;)
    if (k[n] != k.back()) {
      prev = k[n] * kPi;
      break;
    }
  const double dir = last - prev;
  std::vector<std::pair<double, double>> c;  // (distance, value)
  const long base = long(std::floor(last / (2 * kPi)));
  for (long j = base - 2; j <= base + 2; ++j)
    for (double s : {alpha, -alpha}) {
      const double v = s + 2 * kPi * double(j);
      c.emplace_back(std::abs(v - last), v);
    }
  std::sort(c.begin(), c.end());
  std::vector<double> out;
  for (auto& [dist, v] : c) {
    if (out.size() == 2) break;
    if (std::abs(dist - c.front().first) > 1e-12) break;
    out.push_back(v);
  }
  if (out.size() == 2) {
    const bool swap = dir < 0 ? out[0] > out[1] : out[0] < out[1];
    if (swap) std::swap(out[0], out[1]);
  }
  return out;
}

std::optional<long> lift_and_wind(const WallConfig& config, const PhaseField& phase) {
  const auto& v = phase.values;
  if (v.empty()) throw DomainError("empty phase field");
  const double a = config.alpha();
  const double start = v.front(), end = v.back();
  if (std::abs(std::cos(end) - std::cos(start)) > 1e-9 ||
      std::abs(std::sin(end) - std::sin(start)) > 1e-9 || std::abs(start - a) > 1e-9)
    return std::nullopt;
  const double w = (end - start) / (2 * kPi);
  const double r = std::round(w);
  if (std::abs(w - r) > 1e-9) throw SolverError("non-integer winding under periodic boundary values");
  return long(r);
}

std::pair<WallConfig, std::vector<std::size_t>> snap_to_grid(const WallConfig& config,
                                                             const Grid& grid) {
  std::vector<std::size_t> idx;
  std::vector<double> pos;
  for (double p : config.positions()) {
    std::size_t i = grid.nearest(p);
    if (i == 0 || i + 1 == grid.size()) throw DomainError("wall snapped onto the boundary");
    if (!idx.empty() && i <= idx.back()) throw DomainError("walls snapped onto the same node");
    idx.push_back(i);
    pos.push_back(grid.x(i));
  }
  return {config.withPositions(pos), idx};
}

}  // namespace neelwall
