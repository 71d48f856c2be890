// Copyright 2026 The neelwall authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef NEELWALL_FORMAT_HPP
#define NEELWALL_FORMAT_HPP

#include <string>
#include <vector>

namespace neelwall {

// Round-trip decimal form with 17 significant digits.
std::string fmt17(double v);
std::string join17(const std::vector<double>& v, const char* sep = ", ");

}  // namespace neelwall

#endif
