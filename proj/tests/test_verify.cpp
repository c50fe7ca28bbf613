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

#include "freemeixner/verify.hpp"

using namespace fm;

TEST_CASE("check report bookkeeping") {
  CheckReport r("demo", 1e-6);
  CHECK(r.pass);
  r.record(1e-8, {{"x", 1}});
  r.record(5e-7, {{"x", 2}});
  r.record(1e-9, {{"x", 3}});
  CHECK(r.pass);
  CHECK(r.max_deviation == 5e-7);
  CHECK(r.worst["x"] == 2);
  CHECK(r.evaluations == 3);
  r.record(std::numeric_limits<double>::quiet_NaN(), {{"x", 4}});
  CHECK_FALSE(r.pass);
  CHECK(r.worst["x"] == 4);
  const auto j = r.to_json();
  for (const char* key : {"check", "params", "grid", "max_deviation", "tolerance", "pass"}) CHECK(j.contains(key));
  CHECK_FALSE(all_pass({r}));
}

TEST_CASE("Askey-Wilson suite") {
  const auto reports = verify_aw();
  std::size_t tuples = 0;
  for (const auto& r : reports) {
    CHECK_MESSAGE(r.pass, r.to_json().dump());
    tuples += r.evaluations;
  }
  CHECK(tuples >= 200);
}

TEST_CASE("nu suite covers all regimes") {
  for (const auto& r : verify_nu()) CHECK_MESSAGE(r.pass, r.to_json().dump());
  bool boundary = false, outside = false, complex = false;
  for (const auto& p : nu_regime_grid()) {
    for (cdouble a : {p.a1, p.a2}) {
      boundary = boundary || std::abs(a) == 1.0;
      outside = outside || (a.imag() == 0.0 && std::abs(a) > 1.0);
      complex = complex || a.imag() != 0.0;
    }
  }
  CHECK(boundary);
  CHECK(outside);
  CHECK(complex);
}

TEST_CASE("kernel suite on a single parameter pair") {
  for (const auto& r : verify_kernel({ProcessParams(2.0, 0.0)})) CHECK_MESSAGE(r.pass, r.to_json().dump());
}

TEST_CASE("martingale suite on a single parameter pair") {
  for (const auto& r : verify_martingale({ProcessParams(3.0, 1.0)})) CHECK_MESSAGE(r.pass, r.to_json().dump());
}

TEST_CASE("a deliberately tight tolerance fails") {
  const auto reports = verify_aw(AwTolerances{1e-18});
  CHECK_FALSE(all_pass(reports));
}
