// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#include "neelwall/extrapolate.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "neelwall/domain.hpp"

namespace neelwall {

InverseFit fit_inverse_powers(const std::vector<double>& L, const std::vector<double>& y,
                              int terms) {
  if (L.size() != y.size() || terms < 0 || L.size() < std::size_t(terms) + 1)
    throw DomainError("not enough points for the extrapolation model");
  const Eigen::Index n = Eigen::Index(L.size()), m = terms + 1;
  Eigen::MatrixXd A(n, m);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(L[std::size_t(i)] > 0)) throw DomainError("extrapolation variable must be positive");
    for (Eigen::Index k = 0; k < m; ++k) A(i, k) = std::pow(L[std::size_t(i)], -double(k));
    b[i] = y[std::size_t(i)];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd r = b - A * c;
  InverseFit f;
  f.coefficients.assign(c.data(), c.data() + c.size());
  f.residuals.assign(r.data(), r.data() + r.size());
  return f;
}

}  // namespace neelwall
