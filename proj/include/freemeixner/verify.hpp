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

// Verification suites: each identity is evaluated over a parameter grid by two
// independent routes and the worst deviation is compared with a tolerance.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "freemeixner/fm_kernel.hpp"
#include "freemeixner/nu_measure.hpp"

namespace fm {

struct CheckReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json grid = nlohmann::json::array();
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  nlohmann::json worst = nullptr;  // grid point of the largest deviation
  std::size_t evaluations = 0;

  CheckReport(std::string name, double tol) : check(std::move(name)), tolerance(tol) {}

  /// Records one comparison; NaN deviations count as failures.
  void record(double deviation, const nlohmann::json& where);
  /// {check, params, grid, max_deviation, tolerance, pass} plus worst/evaluations.
  nlohmann::json to_json() const;
};

bool all_pass(const std::vector<CheckReport>& reports);

/// (theta, tau) grid used when the caller does not fix the parameters.
std::vector<ProcessParams> default_process_grid();

struct AwTolerances {
  double closed_vs_quadrature = 1e-9;
};
/// nu parameter pairs covering every regime of the density formula.
std::vector<NuParams> nu_regime_grid();

/// K_closed / K_large / two-large inversion versus quadrature of f_tilde on >= 200 tuples.
std::vector<CheckReport> verify_aw(const AwTolerances& tol = {});

struct NuTolerances {
  double mass = 1e-9;
  double moments = 1e-9;
  double h_transform = 1e-9;
};
/// Mass, mean/variance and H-transform of nu over all five parameter regimes.
std::vector<CheckReport> verify_nu(const NuTolerances& tol = {});

/// Mixing identity for nu and Chapman-Kolmogorov for the auxiliary kernels (monomials up to degree 8).
std::vector<CheckReport> verify_convolution(double tol = 1e-7);

struct KernelTolerances {
  double mass = 1e-9;
  double conditional_mean = 1e-9;
  double marginal_moments = 1e-9;
  double chapman_kolmogorov = 1e-7;
  double affine_consistency = 1e-9;
};
/// Normalization, martingale of the state, marginal moments, variance propagation,
/// Chapman-Kolmogorov and consistency with the auxiliary process.
std::vector<CheckReport> verify_kernel(const std::vector<ProcessParams>& grid, const KernelTolerances& tol = {});

/// Martingale property inside the window, closed-form E(M_t) outside it.
std::vector<CheckReport> verify_martingale(const std::vector<ProcessParams>& grid, double tol = 1e-8);

struct GeneratorTolerances {
  double contour_vs_semicircle = 1e-7;
  double fd_vs_semicircle = 1e-3;
  double exact_polynomials = 1e-9;
  double divided_difference = 1e-9;
};
/// Three-route agreement of the generator plus exact polynomial values.
std::vector<CheckReport> verify_generator(const std::vector<ProcessParams>& grid, const GeneratorTolerances& tol = {});

}  // namespace fm
