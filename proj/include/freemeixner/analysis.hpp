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

// Martingale transform M_t = 1 / (1 - z (X_t - theta) + (t + tau) z^2) and the
// generator L_t of the free-Meixner process, computed by three independent routes:
//
//   semicircle  int (f(y) - f(x) - (y-x) f'(x)) / (y-x)^2  w_{theta, t+tau}(dy)
//   contour     (1/2 pi i) \oint z^2 g_t(z) / (1 - z(x-theta) + (t+tau) z^2)^2 dz,
//               g_t(z) = ((t+tau) z - 1/z) f(theta + (t+tau) z + 1/z), |z| = 1/(r_t + delta)
//   fd          lim_{h->0+} int (f(y) - f(x))/h P_{t,t+h}(x, dy), Richardson-extrapolated

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freemeixner/fm_kernel.hpp"

namespace fm {

/// A function analytic near the support, callable on complex arguments.
struct TestFunction {
  std::string name;
  std::function<cdouble(cdouble)> value;
  std::function<cdouble(cdouble)> derivative;  // empty when unavailable

  double operator()(double y) const { return value(cdouble(y, 0.0)).real(); }
};

TestFunction monomial(int k);
TestFunction exponential(double alpha);
/// y -> 1 / (1 + z^2 - 2 z y) for a real z.
TestFunction h_kernel(double z);

/// Upper end 1/|z|^2 - tau of the martingale window; requires tau |z|^2 < 1.
double martingale_horizon(const ProcessParams& p, cdouble z);

/// 1 / (1 - z (x - theta) + (t + tau) z^2) with no window restriction.
cdouble martingale_transform(const ProcessParams& p, cdouble z, double t, double x);
/// M_t(x), enforcing tau |z|^2 < 1 and t < 1/|z|^2 - tau.
cdouble martingale_value(const ProcessParams& p, cdouble z, double t, double x);

/// |int M_t(y) P_{s,t}(x, dy) - M_s(x)| for 0 <= s < t < 1/|z|^2 - tau.
double martingale_check(const ProcessParams& p, cdouble z, double s, double t, double x);

/// E(M_t) against the marginal law of X_t by quadrature (any t > 0).
cdouble expected_m_quadrature(const ProcessParams& p, cdouble z, double t);
/// (t+tau) / ((t+tau)^2 z^2 + theta z (t+tau) + tau) for t beyond the martingale
/// window. Throws InvariantError if quadrature disagrees by more than 1e-8.
cdouble expected_m_beyond(const ProcessParams& p, cdouble z, double t);

struct GeneratorConfig {
  std::optional<double> delta;  // contour margin; defaults to 0.1 r_t
  int contour_points = 512;
  std::vector<double> fd_steps{1e-2, 5e-3, 2.5e-3};

  void validate() const;
};

/// f'-subtracted semicircle form, valid at every x in supp(X_t) including atoms.
double generator_semicircle(const TestFunction& f, const ProcessParams& p, double t, double x);
/// d/dx int (f(y) - f(x)) / (y - x) w_{theta,t+tau}(dy) by central differences
/// with step 1e-5 (1 + |x|); only for x inside the continuous support.
double generator_semicircle_dx(const TestFunction& f, const ProcessParams& p, double t, double x);
double generator_contour(const TestFunction& f, const ProcessParams& p, double t, double x,
                         const GeneratorConfig& cfg = {});
double generator_fd(const TestFunction& f, const ProcessParams& p, double t, double x,
                    const GeneratorConfig& cfg = {});

/// (f(y) - f(x)) / (y - x) through the contour representation with g_t.
double divided_difference_contour(const TestFunction& f, const ProcessParams& p, double t, double x, double y,
                                  const GeneratorConfig& cfg = {});

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of E[f(X_T) - f(X_0) - int_0^T L_s f(X_s) ds] on the
/// path grid {0} U time_grid, time integral by the trapezoid rule.
McEstimate ito_residual(const TestFunction& f, const ProcessParams& p, const std::vector<double>& time_grid,
                        std::size_t num_paths, std::uint64_t seed);

}  // namespace fm
