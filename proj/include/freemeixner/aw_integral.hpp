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

// Elementary Askey-Wilson integral
//
//   K(a1..a4) = int_{-1}^{1} sqrt(1-x^2) / prod_i (1 + a_i^2 - 2 a_i x) dx
//             = (pi/2) (1 - a1 a2 a3 a4) / prod_{i<j} (1 - a_i a_j)   for |a_i| < 1.

#pragma once

#include <array>
#include <complex>

#include "freemeixner/quadrature.hpp"

namespace fm {

struct AWParams {
  std::array<cdouble, 4> a{};

  AWParams() = default;
  AWParams(cdouble a1, cdouble a2, cdouble a3 = 0.0, cdouble a4 = 0.0) : a{a1, a2, a3, a4} {}
};

/// sqrt(1-x^2) / prod (1 + a_i^2 - 2 a_i x). Throws PoleError when a factor vanishes.
cdouble f_tilde(double x, const AWParams& p);

/// Closed form for |a_i| < 1. Also accepts the two boundary configurations in
/// which the integral still converges: a single a_i = +-1, or one pair (-1, 1).
cdouble K_closed(const AWParams& p);

/// The integral when |a1| > 1 and |a2|,|a3|,|a4| < 1, via K(1/a1, a2, a3, a4) / a1^2.
cdouble K_large(const AWParams& p);

/// The integral for any parameters off the unit circle (boundary values +-1
/// allowed as in K_closed): each a_i with |a_i| > 1 is replaced by 1/a_i and
/// the result divided by a_i^2. Covers the two-large case a1 > 1, a2 < -1.
cdouble K_any(const AWParams& p);

/// Real part of a value that must be real, after checking |Im| <= 1e-12 * max(1, |Re|).
double real_part_checked(cdouble v, const char* what);

}  // namespace fm
