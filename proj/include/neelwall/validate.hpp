// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Identity checks with fixed pass thresholds: closed forms against
// quadrature, the three H^1/2 routes against each other, and the Pohozaev
// residual under grid refinement.

#ifndef NEELWALL_VALIDATE_HPP
#define NEELWALL_VALIDATE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace neelwall {

// (1 - x^2)^3 (c0 + c1 x + ... + c4 x^4), zero outside [-1, 1].
struct SmoothTrace {
  std::array<double, 5> c{};
  double value(double x) const;
  double derivative(double x) const;
};

// Coefficients uniform in [-1, 1] from a 64-bit Mersenne twister.
std::vector<SmoothTrace> random_smooth_traces(std::uint64_t seed, std::size_t count);

// (1/4pi) int int (g(x)-g(y))^2/(x-y)^2 by tensor Gauss rules, g supported
// in [-1, 1] and smooth there.
double gagliardo_energy(const std::function<double(double)>& g,
                        const std::function<double(double)>& gPrime);

struct ValidationRow {
  std::string name;
  double value = 0, reference = 0;
  double error = 0, tolerance = 0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool passed() const;
  std::string csv() const;  // name,value,reference,error,tolerance,pass
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::size_t traces = 20;
  bool pohozaev = true;  // the refinement study runs three minimizations
};

ValidationReport validation_suite(const ValidationOptions& options = {});

}  // namespace neelwall

#endif
