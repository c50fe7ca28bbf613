// Copyright 2026 The freemeixner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "freemeixner/quadrature.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

namespace fm {

int default_max_quad_order() {
  static const int cap = [] {
    if (const char* env = std::getenv("FM_MAX_QUAD_ORDER")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v >= 32 && v <= (1L << 24)) return static_cast<int>(v);
    }
    return 1 << 16;
  }();
  return cap;
}

QuadRule QuadRule::gauss_chebyshev2(int order) {
  if (order < 1) throw DomainError("gauss_chebyshev2: order must be positive");
  QuadRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double h = std::numbers::pi / (order + 1);
  // cos is decreasing on (0, pi); fill from the back so nodes increase.
  for (int k = 1; k <= order; ++k) {
    const double s = std::sin(k * h);
    rule.nodes[order - k] = std::cos(k * h);
    rule.weights[order - k] = h * s * s;
  }
  return rule;
}

void ContourSpec::validate() const {
  if (!(radius > 0.0)) throw DomainError("ContourSpec: radius must be positive");
  if (num_points < 8 || (num_points & (num_points - 1)) != 0)
    throw DomainError("ContourSpec: num_points must be a power of two >= 8");
}

namespace detail {

void throw_no_convergence(const char* what, int order, double last_diff, double tol) {
  std::ostringstream msg;
  msg << what << ": no convergence at order " << order << " (last change " << last_diff << ", tol " << tol
      << "); integrand singular on the support?";
  throw ConvergenceError(msg.str());
}

}  // namespace detail
}  // namespace fm
