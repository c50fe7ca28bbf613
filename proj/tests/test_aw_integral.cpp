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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "freemeixner/aw_integral.hpp"
#include "freemeixner/errors.hpp"

using namespace fm;

namespace {
constexpr double kPi = std::numbers::pi;

cdouble quad(const AWParams& p) {
  QuadOptions opt;
  opt.tol = 1e-14;
  opt.rel_tol = 1e-15;
  return integrate_sqrt_weight(
      [&](double x) {
        cdouble d = 1.0;
        for (const auto& a : p.a) d *= 1.0 + a * a - 2.0 * a * x;
        return 1.0 / d;
      },
      opt);
}
}  // namespace

TEST_CASE("f_tilde values") {
  CHECK(std::abs(f_tilde(0.0, AWParams(0.0, 0.0)) - 1.0) < 1e-15);
  CHECK(std::abs(f_tilde(1.0, AWParams(0.3, -0.2, 0.5, 0.1))) < 1e-15);
  CHECK(std::abs(f_tilde(0.0, AWParams(0.5, 0.0)) - 0.8) < 1e-15);
  CHECK_THROWS_AS(f_tilde(1.0, AWParams(1.0, 0.0)), PoleError);
  CHECK_THROWS_AS(f_tilde(-1.0, AWParams(0.2, -1.0)), PoleError);
}

TEST_CASE("K_closed reference values") {
  CHECK(std::abs(K_closed(AWParams(0.0, 0.0)) - kPi / 2.0) < 1e-15);
  CHECK(std::abs(K_closed(AWParams(0.5, 0.5)) - 2.0943951023931954923) < 1e-14);
  // mpmath: K(0.5, 0.2, 0, 0) = pi / 1.8
  CHECK(std::abs(K_closed(AWParams(0.5, 0.2)) - 1.74532925199432952489) < 1e-14);
  CHECK(std::abs(K_closed(AWParams(cdouble(0.3, 0.4), cdouble(0.3, -0.4), 0.5, -0.2)) - 2.26501718998512356754) <
        1e-14);
  // boundary parameter
  CHECK(std::abs(K_closed(AWParams(1.0, 0.3)) - 2.24399475256413817) < 1e-14);
  CHECK(std::abs(K_closed(AWParams(0.5, 0.2)) - quad(AWParams(0.5, 0.2))) < 1e-10);
}

TEST_CASE("K_large reference values") {
  CHECK(std::abs(K_large(AWParams(2.0, 0.0)) - kPi / 8.0) < 1e-15);
  CHECK(std::abs(K_large(AWParams(2.0, 0.3)) - 0.46199891964555777444528501965) < 1e-14);
  CHECK(std::abs(K_large(AWParams(3.0, 0.1)) - 0.180551301930447886147362642684) < 1e-14);
  CHECK(std::abs(K_large(AWParams(2.0, 0.3)) - quad(AWParams(2.0, 0.3))) < 1e-10);
  CHECK(std::abs(K_large(AWParams(3.0, 0.1)) - quad(AWParams(3.0, 0.1))) < 1e-10);
}

TEST_CASE("K_closed is symmetric in its parameters") {
  std::array<cdouble, 4> a{0.7, -0.35, cdouble(0.1, 0.5), cdouble(0.1, -0.5)};
  const cdouble ref = K_closed(AWParams(a[0], a[1], a[2], a[3]));
  std::sort(a.begin(), a.end(), [](cdouble x, cdouble y) { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); });
  do {
    CHECK(std::abs(K_closed(AWParams(a[0], a[1], a[2], a[3])) - ref) < 1e-14);
  } while (std::next_permutation(a.begin(), a.end(), [](cdouble x, cdouble y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  }));
}

TEST_CASE("K_any covers inverted parameters") {
  CHECK(std::abs(K_any(AWParams(0.5, 0.2)) - K_closed(AWParams(0.5, 0.2))) < 1e-15);
  CHECK(std::abs(K_any(AWParams(0.3, 2.0)) - K_large(AWParams(2.0, 0.3))) < 1e-14);
  for (auto [a1, a2] : {std::pair{1.5, -2.0}, std::pair{3.0, -1.25}}) {
    const AWParams p(a1, a2, 0.4, -0.3);
    CHECK(std::abs(K_any(p) - quad(p)) < 1e-10);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(K_closed(AWParams(1.5, 0.0)), DomainError);
  CHECK_THROWS_AS(K_closed(AWParams(1.0, 1.0)), DomainError);
  CHECK_THROWS_AS(K_large(AWParams(0.5, 0.2)), DomainError);
  CHECK_THROWS_AS(K_large(AWParams(2.0, 1.5)), DomainError);
  CHECK_THROWS_AS(real_part_checked(cdouble(1.0, 1e-6), "test"), InvariantError);
  CHECK(real_part_checked(cdouble(1.0, 1e-14), "test") == 1.0);
}
