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

#include "freemeixner/nu_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "freemeixner/aw_integral.hpp"
#include "freemeixner/errors.hpp"

namespace fm {

namespace {
constexpr double kPi = std::numbers::pi;
}

NuParams::NuParams(cdouble first, cdouble second) : a1(first), a2(second) {
  const bool real_pair = a1.imag() == 0.0 && a2.imag() == 0.0;
  if (!real_pair) {
    const double tol = 1e-12 * std::max(1.0, std::abs(a1));
    if (std::abs(a2 - std::conj(a1)) > tol)
      throw DomainError("NuParams: a1, a2 must be real or complex conjugate");
    a2 = std::conj(a1);
  }
  // Boundary parameters are detected by exact comparison downstream.
  for (cdouble* a : {&a1, &a2}) {
    if (a->imag() == 0.0 && std::abs(std::abs(a->real()) - 1.0) <= 1e-12) *a = std::copysign(1.0, a->real());
  }
  if (!(product() < 1.0))
    throw DomainError("NuParams: a1*a2 = " + std::to_string(product()) + " must be < 1");
}

double nu_atom_location(double a) { return 0.5 * (a + 1.0 / a); }

double nu_atom_weight(double a, double b) { return (a * a - 1.0) / (a * a - a * b); }

MixedMeasure nu_build(const NuParams& p) {
  const double c = 2.0 * (1.0 - p.product()) / kPi;
  auto cont = ContinuousPart::factored(-1.0, 1.0, c, p.a1, p.a2);

  std::vector<Atom> atoms;
  if (p.is_real()) {
    const double r1 = p.a1.real(), r2 = p.a2.real();
    if (std::abs(r1) > 1.0) atoms.push_back({nu_atom_location(r1), nu_atom_weight(r1, r2)});
    if (std::abs(r2) > 1.0) atoms.push_back({nu_atom_location(r2), nu_atom_weight(r2, r1)});
  }
  return MixedMeasure(std::move(cont), std::move(atoms));
}

MeanVar nu_mean_var(const NuParams& p) {
  return {real_part_checked((p.a1 + p.a2) / 2.0, "nu_mean_var"), (1.0 - p.product()) / 4.0};
}

MeanVar mean_var_numeric(const MixedMeasure& m) { return {m.mean(), m.variance()}; }

cdouble h_transform(const MixedMeasure& measure, cdouble z) {
  if (std::abs(std::abs(z) - 1.0) < 1e-12) throw PoleError("h_transform: z on the unit circle");
  for (const auto& a : measure.atoms()) {
    if (std::abs(1.0 + z * z - 2.0 * z * a.location) < 1e-14)
      throw PoleError("h_transform: atom at a pole of the kernel");
  }
  return measure.expect([z](double y) { return 1.0 / (1.0 + z * z - 2.0 * z * y); });
}

cdouble h_transform_closed(const NuParams& p, cdouble z) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) < 1e-12) throw PoleError("h_transform_closed: z on the unit circle");
  if (r < 1.0) return 1.0 / ((1.0 - p.a1 * z) * (1.0 - p.a2 * z));
  const cdouble w = 1.0 / z;
  return 1.0 / ((1.0 - p.a1 * w) * (1.0 - p.a2 * w)) / (z * z);
}

std::vector<RealTestFunction> convolution_test_functions(int max_degree) {
  std::vector<RealTestFunction> fns;
  for (int k = 0; k <= max_degree; ++k)
    fns.push_back({"y^" + std::to_string(k), [k](double y) { return std::pow(y, k); }});
  for (double z : {0.3, -0.5})
    fns.push_back({"H(z=" + std::to_string(z) + ")", [z](double y) { return 1.0 / (1.0 + z * z - 2.0 * z * y); }});
  return fns;
}

NuParams mixing_params(double x, double m) {
  const cdouble r = std::sqrt(cdouble(x * x - 1.0, 0.0));
  if (std::abs(x) >= 1.0) return NuParams(m * (x + r.real()), m * (x - r.real()));
  return NuParams(m * cdouble(x, r.imag()), m * cdouble(x, -r.imag()));
}

double nu_convolution_check(const NuParams& p, double m, const std::vector<RealTestFunction>& test_fns) {
  if (!(m > -1.0 && m < 1.0)) throw DomainError("nu_convolution_check: m must lie in (-1,1)");
  const MixedMeasure outer = nu_build(p);
  const MixedMeasure lhs_measure = nu_build(NuParams(m * p.a1, m * p.a2));
  double worst = 0.0;
  for (const auto& fn : test_fns) {
    const double lhs = lhs_measure.expect(fn.f);
    const double rhs = outer.expect([&](double x) { return nu_build(mixing_params(x, m)).expect(fn.f); });
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

AuxTimeDomain::AuxTimeDomain(cdouble c, cdouble d) : C(c), D(d) {
  const bool real_pair = C.imag() == 0.0 && D.imag() == 0.0;
  if (real_pair) {
    if (t_min() < 0.0) throw DomainError("AuxTimeDomain: real C, D with CD < 0 are not supported");
  } else if (std::abs(D - std::conj(C)) > 1e-12 * std::max(1.0, std::abs(C))) {
    throw DomainError("AuxTimeDomain: C, D must be real or complex conjugate");
  } else {
    D = std::conj(C);
  }
}

MixedMeasure mu_marginal(const AuxTimeDomain& dom, double t) {
  if (!(t > dom.t_min()))
    throw DomainError("mu_marginal: t = " + std::to_string(t) + " must exceed CD = " + std::to_string(dom.t_min()));
  const double r = std::sqrt(t);
  return nu_build(NuParams(dom.C / r, dom.D / r));
}

NuParams mu_transition_params(double x, double s, double t) {
  if (!(s >= 0.0 && s < t)) throw DomainError("mu_transition: requires 0 <= s < t");
  return mixing_params(x, std::sqrt(s / t));
}

MixedMeasure mu_transition(double x, double s, double t) { return nu_build(mu_transition_params(x, s, t)); }

MixedMeasure mu_transition(const AuxTimeDomain& dom, double x, double s, double t) {
  if (s < dom.t_min()) throw DomainError("mu_transition: s must be >= CD");
  return mu_transition(x, s, t);
}

std::vector<double> moments_from_h(const std::function<cdouble(cdouble)>& H, int k, double radius, int points) {
  if (k < 0) throw DomainError("moments_from_h: negative order");
  if (k > 12) throw DomainError("moments_from_h: orders beyond 12 are too ill-conditioned");
  if (!(radius > 0.0) || points < 2 * (k + 1)) throw DomainError("moments_from_h: bad contour");

  std::vector<cdouble> samples(points);
  for (int j = 0; j < points; ++j) samples[j] = H(std::polar(radius, 2.0 * kPi * j / points));
  std::vector<double> taylor(k + 1);
  for (int n = 0; n <= k; ++n) {
    cdouble acc = 0.0;
    for (int j = 0; j < points; ++j) acc += samples[j] * std::polar(1.0, -2.0 * kPi * j * n / points);
    taylor[n] = (acc / static_cast<double>(points)).real() / std::pow(radius, n);
  }

  // u[n][i]: coefficient of y^i in U_n(y); U_{n+1} = 2y U_n - U_{n-1}
  std::vector<std::vector<double>> u(k + 1, std::vector<double>(k + 1, 0.0));
  u[0][0] = 1.0;
  if (k >= 1) u[1][1] = 2.0;
  for (int n = 1; n < k; ++n)
    for (int i = 0; i <= k; ++i)
      u[n + 1][i] = (i > 0 ? 2.0 * u[n][i - 1] : 0.0) - u[n - 1][i];

  std::vector<double> moments(k + 1);
  for (int n = 0; n <= k; ++n) {
    double rest = taylor[n];
    for (int i = 0; i < n; ++i) rest -= u[n][i] * moments[i];
    moments[n] = rest / u[n][n];
  }
  return moments;
}

}  // namespace fm
