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

// Deterministic integration backends.
//
// Every integral in this library lives on [-1,1] after an affine map and
// carries either the weight sqrt(1-u^2) or 1/sqrt(1-u^2). With u = cos(a)
// both become periodic integrals over [0, pi] for which the trapezoid rule
// is spectrally accurate; on the interior nodes the sqrt-weighted trapezoid
// coincides with Gauss-Chebyshev of the second kind. Halving the step reuses
// every previous node, so node-doubling costs one new evaluation per node.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "freemeixner/errors.hpp"

namespace fm {

using cdouble = std::complex<double>;

/// Largest number of nodes the adaptive rules may reach. 65536 unless the
/// environment variable FM_MAX_QUAD_ORDER overrides it.
int default_max_quad_order();

struct QuadOptions {
  double tol = 1e-10;
  double rel_tol = 0.0;  // also accept |change| <= rel_tol * |estimate|
  int max_order = default_max_quad_order();
  int initial_order = 16;
};

/// Gauss-Chebyshev rule of the second kind:
/// sum_k weights[k] * g(nodes[k]) ~ int_{-1}^{1} g(x) sqrt(1-x^2) dx,
/// exact for polynomials g of degree <= 2*order-1.
struct QuadRule {
  std::vector<double> nodes;    // strictly increasing, inside (-1,1)
  std::vector<double> weights;  // positive
  int order = 0;

  static QuadRule gauss_chebyshev2(int order);

  template <class F>
  auto apply(F&& g) const {
    using R = std::decay_t<decltype(g(0.0))>;
    R acc{};
    for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * g(nodes[k]);
    return acc;
  }
};

namespace detail {

template <class R>
double magnitude(const R& v) {
  return std::abs(v);
}

[[noreturn]] void throw_no_convergence(const char* what, int order, double last_diff, double tol);

// Trapezoid in the angle a on [0, pi] for G(a) with G(0), G(pi) supplied
// by the caller through `endpoints`. Steps pi/n, n = initial, 2*initial, ...
template <class G, class R>
R doubling_trapezoid(G&& eval, R endpoints, const QuadOptions& opt, const char* what) {
  constexpr double pi = std::numbers::pi;
  int n = opt.initial_order;
  R sum = endpoints * 0.5;
  double mag = 0.5 * magnitude(endpoints);  // sum of |terms|, sets the rounding floor
  auto add = [&](double a) {
    const R v = eval(a);
    sum += v;
    mag += magnitude(v);
  };
  for (int j = 1; j < n; ++j) add(pi * j / n);
  R prev = sum * (pi / n);
  double diff = 0.0;
  while (2 * n <= opt.max_order) {
    for (int j = 1; j < 2 * n; j += 2) add(pi * j / (2 * n));
    n *= 2;
    R cur = sum * (pi / n);
    diff = magnitude(cur - prev);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * mag * (pi / n);
    if (diff <= std::max(opt.tol, floor) || diff <= opt.rel_tol * magnitude(cur)) return cur;
    prev = cur;
  }
  throw_no_convergence(what, n, diff, opt.tol);
}

}  // namespace detail

/// int_{-1}^{1} g(x) sqrt(1-x^2) dx for real- or complex-valued g.
/// Doubles the number of nodes until two successive estimates agree within
/// opt.tol; throws ConvergenceError once opt.max_order is reached, which in
/// practice means g is singular on (or extremely close to) [-1,1].
template <class F>
auto integrate_sqrt_weight(F&& g, const QuadOptions& opt = {}) {
  using R = std::decay_t<decltype(g(0.0))>;
  return detail::doubling_trapezoid(
      [&](double a) -> R {
        const double s = std::sin(a);
        return g(std::cos(a)) * (s * s);
      },
      R{}, opt, "integrate_sqrt_weight");
}

/// int_{-1}^{1} g(x) / sqrt(1-x^2) dx (Chebyshev-Lobatto nodes, endpoints included).
template <class F>
auto integrate_arcsine_weight(F&& g, const QuadOptions& opt = {}) {
  using R = std::decay_t<decltype(g(0.0))>;
  R ends = g(1.0) + g(-1.0);
  return detail::doubling_trapezoid([&](double a) -> R { return g(std::cos(a)); }, ends, opt,
                                    "integrate_arcsine_weight");
}

/// Circle in the complex plane traversed counter-clockwise.
struct ContourSpec {
  cdouble center{0.0, 0.0};
  double radius = 1.0;
  int num_points = 512;  // power of two, >= 8

  void validate() const;
};

/// (1/2 pi i) \oint h(z) dz on the circle `spec`. The equispaced trapezoid
/// sum is doubled from spec.num_points until successive values agree
/// within tol.
template <class H>
cdouble contour_integral(H&& h, const ContourSpec& spec, double tol = 1e-10,
                         int max_points = 1 << 16) {
  spec.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto term = [&](double phi) {
    const cdouble e = std::polar(1.0, phi);
    return cdouble(h(spec.center + spec.radius * e)) * e;
  };
  int n = spec.num_points;
  cdouble sum{};
  double magnitude = 0.0;  // sum of |terms|, sets the rounding floor
  auto add = [&](double phi) {
    const cdouble v = term(phi);
    sum += v;
    magnitude += std::abs(v);
  };
  for (int j = 0; j < n; ++j) add(two_pi * j / n);
  cdouble prev = sum * (spec.radius / n);
  double diff = 0.0;
  while (2 * n <= max_points) {
    for (int j = 1; j < 2 * n; j += 2) add(two_pi * j / (2 * n));
    n *= 2;
    const cdouble cur = sum * (spec.radius / n);
    diff = std::abs(cur - prev);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude * (spec.radius / n);
    if (diff <= std::max(tol, floor)) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "contour_integral: no convergence on the circle of radius " << spec.radius
      << " centered at " << spec.center << " (last change " << diff << ", tol " << tol
      << "); the integrand is singular near the contour";
  throw ConvergenceError(msg.str());
}

}  // namespace fm
