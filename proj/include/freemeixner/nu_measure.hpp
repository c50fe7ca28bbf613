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

// The two-parameter family nu(dy; a1, a2) on [-1,1], its H-transform and the
// auxiliary Markov kernels mu_t, mu_{s,t} built from it.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "freemeixner/mixed_measure.hpp"

namespace fm {

/// Admissible pair: both real, or a2 = conj(a1); in either case a1*a2 < 1.
struct NuParams {
  cdouble a1{0.0, 0.0};
  cdouble a2{0.0, 0.0};

  NuParams() = default;
  NuParams(cdouble first, cdouble second);  // validates; snaps near-conjugates to exact ones

  bool is_real() const { return a1.imag() == 0.0 && a2.imag() == 0.0; }
  double product() const { return (a1 * a2).real(); }
};

/// Atom location y(a) = (a + 1/a) / 2.
double nu_atom_location(double a);
/// Atom weight w(a, b) = (a^2 - 1) / (a^2 - a b).
double nu_atom_weight(double a, double b);

/// Builds nu(.; a1, a2). The continuous part is f(y; a1, a2) = sqrt(1-y^2) /
/// (k(a1,a2) (1+a1^2-2a1 y)(1+a2^2-2a2 y)) with k = pi / (2(1 - a1 a2)); a real
/// parameter a = +-1 leaves an arcsine-type edge, and every real parameter with
/// |a| > 1 contributes an atom at y(a) with weight w(a, other).
MixedMeasure nu_build(const NuParams& p);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;
};

/// Closed form: mean (a1+a2)/2, variance (1 - a1 a2)/4.
MeanVar nu_mean_var(const NuParams& p);
/// Mean and variance of any measure by quadrature plus atoms.
MeanVar mean_var_numeric(const MixedMeasure& m);

/// int (1 + z^2 - 2 z y)^{-1} measure(dy). Throws PoleError for |z| = 1 or when
/// an atom sits at a root of 1 + z^2 - 2 z y.
cdouble h_transform(const MixedMeasure& measure, cdouble z);
/// 1/((1 - a1 z)(1 - a2 z)) for |z| < 1, and H(1/z)/z^2 for |z| > 1.
cdouble h_transform_closed(const NuParams& p, cdouble z);

struct RealTestFunction {
  std::string name;
  std::function<double(double)> f;
};

/// Monomials y^0..y^max_degree followed by H-kernels (1 + z^2 - 2 z y)^{-1} at z = 0.3, -0.5.
std::vector<RealTestFunction> convolution_test_functions(int max_degree = 8);

/// Inner parameters (m(x + sqrt(x^2-1)), m(x - sqrt(x^2-1))) of the mixing identity.
NuParams mixing_params(double x, double m);

/// Max over test functions of |int f dnu(m a1, m a2) - int [int f dnu(mixing_params(x, m))] nu(dx; a1, a2)|.
double nu_convolution_check(const NuParams& p, double m,
                            const std::vector<RealTestFunction>& test_fns = convolution_test_functions());

/// Time domain (CD, inf) of the auxiliary process; C, D real with CD >= 0 or conjugate.
struct AuxTimeDomain {
  cdouble C{0.0, 0.0};
  cdouble D{0.0, 0.0};

  AuxTimeDomain() = default;
  AuxTimeDomain(cdouble c, cdouble d);
  double t_min() const { return (C * D).real(); }
};

/// mu_t = nu(C/sqrt(t), D/sqrt(t)), t > CD.
MixedMeasure mu_marginal(const AuxTimeDomain& dom, double t);
/// Parameters of mu_{s,t}(x, .): sqrt(s/t) (x +- sqrt(x^2 - 1)).
NuParams mu_transition_params(double x, double s, double t);
/// mu_{s,t}(x, .) for 0 <= s < t.
MixedMeasure mu_transition(double x, double s, double t);
/// Same, additionally enforcing s >= CD.
MixedMeasure mu_transition(const AuxTimeDomain& dom, double x, double s, double t);

/// Moments m_0..m_k of a compactly supported measure from its H-transform near 0.
/// Taylor coefficients c_n of H are taken on the circle |z| = radius (which must lie
/// inside the disk of analyticity); they satisfy c_n = int U_n(y) dmeasure with U_n
/// the Chebyshev polynomials of the second kind, a triangular system in the moments.
/// Refuses k > 12.
std::vector<double> moments_from_h(const std::function<cdouble(cdouble)>& H, int k,
                                   double radius = 0.25, int points = 64);

}  // namespace fm
