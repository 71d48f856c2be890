// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Problem instances, length scales, Moebius geometry of (-1,1) and the
// phase-lifting conventions shared by the other modules.

#ifndef NEELWALL_DOMAIN_HPP
#define NEELWALL_DOMAIN_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace neelwall {

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

struct Scales {
  double epsilon = 0;
  double delta = 0;        // epsilon * log(1/epsilon)
  double logInvDelta = 0;  // log(1/delta)

  static Scales fromEpsilon(double epsilon);
};

class WallConfig {
public:
  // Throws DomainError on unordered positions, alpha outside (0,pi),
  // signs other than +-1 or a branch list of the wrong length.
  static WallConfig create(double alpha, std::vector<double> positions,
                           std::vector<int> signs,
                           std::optional<std::vector<long>> branches = std::nullopt);

  double alpha() const { return alpha_; }
  std::size_t size() const { return positions_.size(); }
  const std::vector<double>& positions() const { return positions_; }
  const std::vector<int>& signs() const { return signs_; }
  const std::vector<double>& gammas() const { return gammas_; }
  const std::optional<std::vector<long>>& branches() const { return branches_; }
  double Gamma() const { return Gamma_; }
  double rho() const { return rho_; }

  // Same instance with moved walls (used when snapping to a grid).
  WallConfig withPositions(std::vector<double> positions) const;

  // Structured text block with fields alpha, positions, signs, branches.
  std::string serialize() const;

private:
  WallConfig() = default;
  double alpha_ = 0;
  std::vector<double> positions_;
  std::vector<int> signs_;
  std::vector<double> gammas_;
  std::optional<std::vector<long>> branches_;
  double Gamma_ = 0;
  double rho_ = 0;
};

// rho(a) = 1/2 min{2a_1+2, a_2-a_1, ..., 2-2a_N}
double separation_radius(const std::vector<double>& positions);

double mobius_metric(double b, double c);
std::complex<double> mobius_transform(double b, std::complex<double> z);

// Sorted nodes on [-1,1], first node -1 and last node 1.
class Grid {
public:
  struct Grading {
    double hMin = 1e-3;   // spacing at wall nodes
    double hEdge = 2e-3;  // spacing at +-1
    double growth = 0.08; // spacing grows like hMin + growth * distance
    double hMax = 1e-2;
  };

  static std::shared_ptr<const Grid> uniform(std::size_t cells);
  // Every anchor in (-1,1) becomes a node.
  static std::shared_ptr<const Grid> graded(const std::vector<double>& anchors,
                                            const Grading& grading);
  static std::shared_ptr<const Grid> fromNodes(std::vector<double> nodes);

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& nodes() const { return x_; }
  double x(std::size_t i) const { return x_[i]; }
  double cell(std::size_t c) const { return x_[c + 1] - x_[c]; }
  double minSpacing() const;
  double maxSpacing() const;
  // Lumped mass (h_{i-1}+h_i)/2.
  double mass(std::size_t i) const;
  std::size_t nearest(double x) const;

private:
  explicit Grid(std::vector<double> x) : x_(std::move(x)) {}
  std::vector<double> x_;
};

struct PhaseField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  std::vector<std::size_t> pinned;  // wall node indices

  std::vector<double> m1() const;
  std::vector<double> m2() const;
};

// Pinned phase multiples k_n with phi(a_n) = k_n pi. Uses the branch integers
// of the config when present, otherwise minimal rotation from phi(-1)=alpha.
std::vector<long> pinned_multiples(const WallConfig& config);

// The two admissible endpoint values +-alpha + 2 pi k closest to k_N pi,
// the first one continuing the previous rotation direction.
std::vector<double> endpoint_candidates(const WallConfig& config,
                                        const std::vector<long>& multiples);

// Winding number when m(1) = m(-1), none otherwise.
std::optional<long> lift_and_wind(const WallConfig& config, const PhaseField& phase);

// Snaps wall positions to nearest nodes; returns snapped config and indices.
std::pair<WallConfig, std::vector<std::size_t>> snap_to_grid(const WallConfig& config,
                                                             const Grid& grid);

}  // namespace neelwall

#endif
