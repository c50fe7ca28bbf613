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
#include <limits>
#include <numbers>

#include "freemeixner/errors.hpp"
#include "freemeixner/fm_kernel.hpp"
#include "freemeixner/nu_measure.hpp"

using namespace fm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("process parameters") {
  const ProcessParams p(3.0, 1.0);
  CHECK(std::abs(p.C() * p.D() - 1.0) < 1e-15);
  CHECK(std::abs(p.C() + p.D() + 3.0) < 1e-15);
  CHECK(p.atom_branch());
  CHECK_FALSE(ProcessParams(0.0, 1.0).atom_branch());
  CHECK_FALSE(ProcessParams(0.0, 0.0).atom_branch());
  CHECK_FALSE(ProcessParams(2.0, 1.0).atom_branch());
  CHECK(ProcessParams(2.0, 0.0).extinction_time() == doctest::Approx(4.0));
  CHECK(std::isinf(ProcessParams(0.0, 1.0).extinction_time()));
  CHECK_THROWS_AS(ProcessParams(0.0, -0.1), DomainError);
  CHECK_THROWS_AS(ProcessParams(std::numeric_limits<double>::quiet_NaN(), 0.0), DomainError);
}

TEST_CASE("atom location") {
  CHECK(*atom_location(ProcessParams(1.0, 0.0), 2.0) == doctest::Approx(-2.0));
  CHECK(*atom_location(ProcessParams(3.0, 1.0), 1.0) == doctest::Approx(-(3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK(std::abs(*atom_location(ProcessParams(3.0, 1.0), 1.0) + 0.381966011250105151795) < 1e-15);
  CHECK_FALSE(atom_location(ProcessParams(0.0, 0.0), 1.0).has_value());
  CHECK_FALSE(atom_location(ProcessParams(0.0, 1.0), 1.0).has_value());
  CHECK(*atom_location(ProcessParams(-2.0, 0.0), 1.0) == doctest::Approx(0.5));
}

TEST_CASE("marginal atom weight") {
  CHECK(marginal_atom_weight(ProcessParams(2.0, 0.0), 1.0) == doctest::Approx(0.75));
  CHECK(marginal_atom_weight(ProcessParams(2.0, 0.0), 4.0) == 0.0);
  CHECK(marginal_atom_weight(ProcessParams(0.0, 1.0), 1.0) == 0.0);
  CHECK(std::abs(marginal_atom_weight(ProcessParams(3.0, 1.0), 1.0) - 0.829179606750063091077) < 1e-15);
}

TEST_CASE("support radius") {
  CHECK(support_radius(ProcessParams(0.0, 0.0), 1.0) == doctest::Approx(2.0));
  CHECK(support_radius(ProcessParams(3.0, 0.0), 1.0) == doctest::Approx(10.0 / 3.0));
  CHECK(support_radius(ProcessParams(3.0, 1.0), 1.0) ==
        doctest::Approx(std::max(2.0 * std::sqrt(2.0), (3.0 * 3.0 + std::sqrt(5.0)) / 2.0)));
  // the bound covers the atom
  for (auto [th, ta] : {std::pair{2.0, 0.0}, std::pair{-3.0, 1.0}, std::pair{3.0, 2.0}})
    for (double t : {0.3, 1.0, 2.0}) {
      const ProcessParams p(th, ta);
      if (marginal_atom_weight(p, t) > 0.0) CHECK(std::abs(*atom_location(p, t) - th) <= support_radius(p, t));
    }
}

TEST_CASE("transition density closed values") {
  const ProcessParams sc(0.0, 0.0);
  for (double y : {-1.5, 0.0, 0.7})
    CHECK(transition_density(sc, 0.0, 2.0, 0.0, y) == doctest::Approx(std::sqrt(8.0 - y * y) / (4.0 * kPi)));
  CHECK(transition_density(ProcessParams(1.0, 0.0), 0.0, 1.0, 0.0, 0.0) ==
        doctest::Approx(std::sqrt(3.0) / (2.0 * kPi)).epsilon(1e-14));
  CHECK(transition_density(sc, 0.0, 1.0, 0.0, 2.5) == 0.0);
  CHECK_THROWS_AS(transition_density(sc, 1.0, 2.0, 5.0, 0.0), DomainError);
  CHECK_THROWS_AS(transition_density(sc, 0.0, 1.0, 0.3, 0.0), DomainError);  // X_0 = 0
}

TEST_CASE("case-1 atom") {
  const ProcessParams p(2.0, 0.0);
  const auto atom = transition_atom(p, 1.0, 2.0, -0.5);
  REQUIRE(atom.has_value());
  CHECK(atom->location == -1.0);
  CHECK(atom->weight == 2.0 / 3.0);
  CHECK_FALSE(transition_atom(p, 1.0, 5.0, -0.5).has_value());
  CHECK_FALSE(transition_atom(ProcessParams(0.0, 1.0), 0.5, 1.0, 0.2).has_value());

  const TransitionKernel k = transition_measure(p, 1.0, 2.0, -0.5);
  CHECK(std::abs(k.measure.total_mass() - 1.0) < 1e-12);
  CHECK(std::abs(k.measure.mean() + 0.5) < 1e-12);
  CHECK(std::abs(k.measure.expect([](double y) { return (y + 0.5) * (y + 0.5); }) - 1.0) < 1e-12);
}

TEST_CASE("kernel mass and martingale property on a grid") {
  for (auto [th, ta] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.0}, std::pair{2.0, 0.0}, std::pair{0.0, 1.0},
                        std::pair{3.0, 1.0}, std::pair{1.0, 2.0}, std::pair{-2.0, 0.5}}) {
    const ProcessParams p(th, ta);
    for (auto [s, t] : {std::pair{0.4, 0.9}, std::pair{1.0, 3.0}}) {
      const double r = 2.0 * std::sqrt(s + ta);
      std::vector<double> xs{th - r, th - 0.3 * r, th + 0.6 * r, th + r};
      if (marginal_atom_weight(p, s) > 0.0) xs.push_back(*atom_location(p, s));
      for (double x : xs) {
        const MixedMeasure k = transition_measure(p, s, t, x).measure;
        CHECK(std::abs(k.total_mass() - 1.0) < 1e-9);
        CHECK(std::abs(k.mean() - x) < 1e-9);
      }
    }
  }
}

TEST_CASE("marginal laws") {
  const MixedMeasure m = marginal(ProcessParams(1.0, 0.2), 0.7);
  CHECK(std::abs(m.total_mass() - 1.0) < 1e-12);
  CHECK(std::abs(m.mean()) < 1e-12);
  CHECK(std::abs(m.moment(2) - 0.7) < 1e-12);

  const MixedMeasure a = marginal(ProcessParams(3.0, 1.0), 1.0);
  REQUIRE(a.atoms().size() == 1);
  CHECK(std::abs(a.atoms()[0].location + 0.381966011250105151795) < 1e-14);
  CHECK(std::abs(a.atoms()[0].weight - 0.829179606750063091077) < 1e-14);
  CHECK_THROWS_AS(marginal(ProcessParams(0.0, 0.0), 0.0), DomainError);
}

TEST_CASE("marginal equals the affine image of the auxiliary marginal") {
  // X_t = theta + 2 sqrt(t + tau) Y_{t + tau}; oracle values of the density
  const ProcessParams p(1.0, 0.5);
  const double t = 1.0, sigma = std::sqrt(t + p.tau);
  const AuxTimeDomain dom(p.C(), p.D());
  const MixedMeasure y = mu_marginal(dom, t + p.tau);
  const MixedMeasure x = marginal(p, t);
  for (double v : {-1.0, 0.2, 1.7}) {
    CHECK(std::abs(x.density(v) - y.density((v - p.theta) / (2.0 * sigma)) / (2.0 * sigma)) < 1e-13);
  }
  CHECK(std::abs(x.density(-1.0) - 0.450158158078553035) < 1e-13);
  CHECK(std::abs(x.density(0.2) - 0.302024862869613160) < 1e-13);
  CHECK(std::abs(x.density(1.7) - 0.0901304202771362077) < 1e-13);
}

TEST_CASE("atom at the extinction time") {
  const ProcessParams p(2.0, 0.0);
  // the marginal at t = 4 has no atom and an arcsine-type edge at a_*(4) = -2
  const MixedMeasure m = marginal(p, 4.0);
  CHECK(m.atoms().empty());
  CHECK(std::abs(m.total_mass() - 1.0) < 1e-12);
  CHECK(m.continuous()->edge() == EdgeWeight::InvSqrt);
  // from the atom state just before extinction
  const MixedMeasure k = transition_measure(p, 3.0, 4.0, *atom_location(p, 3.0)).measure;
  CHECK(std::abs(k.total_mass() - 1.0) < 1e-12);
  // at extinction the point a_*(4) is the edge of the continuous support
  CHECK(in_state_space(p, 4.0, -2.0));
  const MixedMeasure after = transition_measure(p, 4.0, 5.0, -2.0).measure;
  CHECK(after.atoms().empty());
  CHECK(std::abs(after.mean() + 2.0) < 1e-12);
  // beyond extinction the old atom point is outside the state space
  CHECK_FALSE(in_state_space(p, 4.5, *atom_location(p, 4.5)));
}

TEST_CASE("state space") {
  const ProcessParams p(2.0, 0.0);
  CHECK(in_state_space(p, 0.0, 0.0));
  CHECK_FALSE(in_state_space(p, 0.0, 0.1));
  CHECK(in_state_space(p, 1.0, -0.5));
  CHECK(is_atom_state(p, 1.0, -0.5));
  CHECK(is_atom_state(p, 1.0, -0.5 + 1e-12));
  CHECK_FALSE(is_atom_state(p, 1.0, -0.5 + 1e-6));
  CHECK_FALSE(in_state_space(p, 1.0, -0.6));
  CHECK_THROWS_AS(transition_measure(p, 1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(transition_measure(p, 1.0, 2.0, -0.6), DomainError);
}
