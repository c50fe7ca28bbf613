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

#include "freemeixner/aw_integral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "freemeixner/errors.hpp"

namespace fm {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_unit_real(cdouble a, double sign) { return a.imag() == 0.0 && a.real() == sign; }

bool inside_or_allowed_boundary(const AWParams& p) {
  int plus = 0, minus = 0;
  for (const auto& a : p.a) {
    if (is_unit_real(a, 1.0)) {
      ++plus;
    } else if (is_unit_real(a, -1.0)) {
      ++minus;
    } else if (!(std::abs(a) < 1.0)) {
      return false;
    }
  }
  return plus <= 1 && minus <= 1;
}

}  // namespace

cdouble f_tilde(double x, const AWParams& p) {
  cdouble den = 1.0;
  for (const auto& a : p.a) {
    const cdouble factor = 1.0 + a * a - 2.0 * a * x;
    if (factor == 0.0) throw PoleError("f_tilde: factor 1+a^2-2ax vanishes at x=" + std::to_string(x));
    den *= factor;
  }
  const double w = std::sqrt(std::max(0.0, 1.0 - x * x));
  return w / den;
}

cdouble K_closed(const AWParams& p) {
  if (!inside_or_allowed_boundary(p))
    throw DomainError(
        "K_closed: parameters must satisfy |a_i| < 1 (one a_i = +-1 or a pair (-1,1) allowed); "
        "use K_large for a parameter outside the unit disk");
  const auto& a = p.a;
  cdouble den = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) den *= 1.0 - a[i] * a[j];
  return kPi / 2.0 * (1.0 - a[0] * a[1] * a[2] * a[3]) / den;
}

cdouble K_large(const AWParams& p) {
  const auto& a = p.a;
  if (!(std::abs(a[0]) > 1.0))
    throw DomainError("K_large: the outside parameter must be in slot 1 with |a1| > 1");
  for (int j = 1; j < 4; ++j) {
    if (!(std::abs(a[j]) < 1.0)) throw DomainError("K_large: requires |a2|,|a3|,|a4| < 1");
    if (a[j] == a[0]) throw DomainError("K_large: coincident parameters a1 = a" + std::to_string(j + 1));
  }
  const cdouble num = kPi * (a[0] - a[1] * a[2] * a[3]);
  const cdouble den = 2.0 * (a[0] - a[1]) * (a[0] - a[2]) * (a[0] - a[3]) * (1.0 - a[1] * a[2]) *
                      (1.0 - a[1] * a[3]) * (1.0 - a[2] * a[3]);
  return num / den;
}

cdouble K_any(const AWParams& p) {
  AWParams inv = p;
  cdouble scale = 1.0;
  for (auto& a : inv.a) {
    const double r = std::abs(a);
    if (r > 1.0) {
      scale *= a * a;
      a = 1.0 / a;
    } else if (r == 1.0 && a.imag() != 0.0) {
      throw DomainError("K_any: complex parameter on the unit circle; the integral diverges");
    }
  }
  return K_closed(inv) / scale;
}

double real_part_checked(cdouble v, const char* what) {
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
    throw InvariantError(std::string(what) + ": imaginary part " + std::to_string(v.imag()) +
                         " on a real-valued quantity");
  return v.real();
}

}  // namespace fm
