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

#pragma once

#include <stdexcept>
#include <string>

namespace fm {

/// Parameters outside the domain where a formula or measure is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A rational integrand or transform evaluated at one of its poles.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical integration that failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity violated an identity it is guaranteed to satisfy
/// (e.g. a nonzero imaginary part on a real-valued integral).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fm
