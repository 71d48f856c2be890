// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0
//
// Least-squares extrapolation of y(L) = c0 + c1/L + ... + ck/L^k to L -> inf.

#ifndef NEELWALL_EXTRAPOLATE_HPP
#define NEELWALL_EXTRAPOLATE_HPP

#include <vector>

namespace neelwall {

struct InverseFit {
  std::vector<double> coefficients;  // c0 (the limit), c1, ...
  std::vector<double> residuals;
  double limit() const { return coefficients.front(); }
};

// Needs at least terms + 1 points.
InverseFit fit_inverse_powers(const std::vector<double>& L, const std::vector<double>& y,
                              int terms);

}  // namespace neelwall

#endif
