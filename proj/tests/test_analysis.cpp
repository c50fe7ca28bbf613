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

#include <doctest.h>

#include <cmath>

#include "freemeixner/analysis.hpp"
#include "freemeixner/errors.hpp"
#include "freemeixner/simulate.hpp"

using namespace fm;

TEST_CASE("test functions") {
  const TestFunction c = monomial(3);
  CHECK(c(2.0) == 8.0);
  CHECK(std::abs(c.derivative(cdouble(2.0, 0.0)) - 12.0) < 1e-14);
  CHECK(monomial(0)(5.0) == 1.0);
  CHECK(std::abs(monomial(0).derivative(1.0)) == 0.0);
  const TestFunction e = exponential(0.25);
  CHECK(e(1.0) == doctest::Approx(std::exp(0.25)));
  CHECK(std::abs(e.derivative(1.0) - 0.25 * std::exp(0.25)) < 1e-15);
  const TestFunction h = h_kernel(0.3);
  CHECK(h(0.5) == doctest::Approx(1.0 / (1.09 - 0.3)));
  CHECK_THROWS_AS(monomial(-1), DomainError);
}

TEST_CASE("martingale transform values") {
  const ProcessParams sc(0.0, 0.0);
  CHECK(std::abs(martingale_value(sc, 0.0, 1.0, 0.3) - 1.0) < 1e-15);
  CHECK(std::abs(martingale_value(sc, 0.5, 1.0, 0.0) - 0.8) < 1e-15);
  CHECK(martingale_horizon(ProcessParams(1.0, 0.5), 0.5) == doctest::Approx(3.5));
  CHECK_THROWS_AS(martingale_value(sc, 0.5, 4.5, 0.0), DomainError);
  CHECK_THROWS_AS(martingale_horizon(ProcessParams(0.0, 2.0), 1.0), DomainError);
}

TEST_CASE("martingale property") {
  CHECK(martingale_check(ProcessParams(0.0, 0.0), 0.4, 0.5, 1.0, 0.3) < 1e-9);
  CHECK(martingale_check(ProcessParams(2.0, 0.0), 0.3, 1.0, 2.0, -0.5) < 1e-8);
  CHECK(martingale_check(ProcessParams(0.0, 1.0), 0.5, 0.2, 0.5, 0.4) < 1e-9);
  // mpmath: both sides 0.543478260869565227557 at the atom state, complex z = 0.3 handled as real here
  const ProcessParams p(2.0, 0.0);
  const cdouble lhs = martingale_value(p, 0.3, 1.0, -0.5);
  CHECK(std::abs(lhs - 0.543478260869565227557) < 1e-15);
  // E M_t = M_0(0) inside the window
  for (double t : {0.5, 2.0}) {
    const cdouble z(0.2, 0.15);
    const ProcessParams q(1.0, 0.5);
    CHECK(std::abs(expected_m_quadrature(q, z, t) - 1.0 / (1.0 + q.theta * z + q.tau * z * z)) < 1e-12);
  }
}

TEST_CASE("E M_t beyond the window") {
  CHECK(std::abs(expected_m_beyond(ProcessParams(0.0, 0.0), 0.5, 8.0) - 0.5) < 1e-14);
  CHECK(std::abs(expected_m_beyond(ProcessParams(1.0, 0.0), 1.0, 2.0) - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(expected_m_quadrature(ProcessParams(0.0, 0.0), 0.5, 8.0) - 0.5) < 1e-8);
  CHECK(std::abs(expected_m_quadrature(ProcessParams(1.0, 0.0), 1.0, 2.0) - 1.0 / 3.0) < 1e-8);
}

TEST_CASE("generator on polynomials") {
  for (auto [th, ta] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.5}, std::pair{2.0, 0.0}, std::pair{3.0, 1.0}}) {
    const ProcessParams p(th, ta);
    const double t = 1.0;
    std::vector<double> xs{th, th + 0.5 * std::sqrt(t + ta), th - 2.0 * std::sqrt(t + ta)};
    if (marginal_atom_weight(p, t) > 0.0) xs.push_back(*atom_location(p, t));
    for (double x : xs) {
      CHECK(std::abs(generator_semicircle(monomial(1), p, t, x)) < 1e-12);
      CHECK(std::abs(generator_semicircle(monomial(2), p, t, x) - 1.0) < 1e-12);
      CHECK(std::abs(generator_semicircle(monomial(3), p, t, x) - (th + 2.0 * x)) < 1e-11);
      CHECK(std::abs(generator_contour(monomial(2), p, t, x) - 1.0) < 1e-11);
      CHECK(std::abs(generator_contour(monomial(3), p, t, x) - (th + 2.0 * x)) < 1e-10);
    }
  }
}

TEST_CASE("generator routes agree") {
  const ProcessParams p(1.0, 0.0);
  const TestFunction e = exponential(0.25);
  const double semi = generator_semicircle(e, p, 1.0, 0.5);
  CHECK(std::abs(semi - 0.0371333287251422575457) < 1e-12);
  CHECK(std::abs(generator_contour(e, p, 1.0, 0.5) - semi) < 1e-7);
  CHECK(std::abs(generator_semicircle_dx(e, p, 1.0, 0.5) - semi) < 1e-6);

  // atom state of case 1
  const ProcessParams q(2.0, 0.0);
  CHECK(std::abs(generator_semicircle(e, q, 1.0, -0.5) - 0.0345577579285597610811) < 1e-12);
  CHECK(std::abs(generator_contour(e, q, 1.0, -0.5) - 0.0345577579285597610811) < 1e-10);

  CHECK(std::abs(generator_fd(monomial(2), ProcessParams(0.0, 0.0), 1.0, 0.0) - 1.0) < 1e-4);
  CHECK(std::abs(generator_fd(monomial(1), ProcessParams(0.0, 0.0), 1.0, 0.3)) < 1e-6);
  CHECK(std::abs(generator_fd(monomial(3), p, 1.0, 0.2) - 1.4) < 1e-3);
  CHECK(std::abs(generator_fd(e, q, 1.0, -0.5) - 0.0345577579285597610811) < 1e-3);
}

TEST_CASE("divided difference through the contour") {
  const ProcessParams p(1.0, 0.5);
  const TestFunction e = exponential(0.3);
  const double x = 0.2, y = 1.9;
  CHECK(std::abs(divided_difference_contour(e, p, 1.0, x, y) - (e(y) - e(x)) / (y - x)) < 1e-11);
}

TEST_CASE("generator configuration and domain errors") {
  GeneratorConfig bad;
  bad.contour_points = 100;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  GeneratorConfig steps;
  steps.fd_steps = {1e-3, 1e-2};
  CHECK_THROWS_AS(steps.validate(), DomainError);
  CHECK_THROWS_AS(generator_semicircle(monomial(2), ProcessParams(0.0, 0.0), 1.0, 3.0), DomainError);
  TestFunction no_derivative{"f", [](cdouble z) { return z; }, {}};
  CHECK_THROWS_AS(generator_semicircle(no_derivative, ProcessParams(0.0, 0.0), 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(generator_contour(monomial(2), ProcessParams(0.0, 0.0), 0.0, 0.0), DomainError);
}

TEST_CASE("Ito residual of the identity vanishes path by path") {
  const McEstimate e = ito_residual(monomial(1), ProcessParams(1.0, 0.5), uniform_grid(1.0, 4), 200, 5);
  CHECK(std::abs(e.mean) < 3.0 * e.std_error + 1e-12);
  const McEstimate sq = ito_residual(monomial(2), ProcessParams(0.0, 0.0), uniform_grid(1.0, 4), 4000, 6);
  CHECK(std::abs(sq.mean) < 4.0 * sq.std_error);
  CHECK(sq.samples == 4000);
}
