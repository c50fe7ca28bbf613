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

// Transition probabilities P_{s,t}(x, dy) of the free-Meixner Markov process
// with parameters theta (real) and tau >= 0, started at X_0 = 0.

#pragma once

#include <optional>

#include "freemeixner/mixed_measure.hpp"

namespace fm {

struct ProcessParams {
  double theta = 0.0;
  double tau = 0.0;

  ProcessParams() = default;
  ProcessParams(double theta_, double tau_);

  /// Roots of z^2 + theta z + tau = 0; C D = tau, C + D = -theta.
  cdouble C() const;
  cdouble D() const;

  /// True for tau = 0, theta != 0 and for tau > 0, theta^2 > 4 tau: the only
  /// configurations in which kernels can carry an atom.
  bool atom_branch() const;
  /// Rate kappa with marginal atom weight (1 - kappa t)^+; zero off the atom branch.
  double atom_decay_rate() const;
  /// Time at which the atom disappears (1/kappa), +inf off the atom branch.
  double extinction_time() const;
};

/// a_*(t): -t/theta (tau = 0), -t (theta -+ sqrt(theta^2 - 4 tau)) / (2 tau) for
/// tau > 0 and theta > 0 / theta < 0. Empty when theta = 0 (any tau) or
/// theta^2 < 4 tau. For theta^2 = 4 tau the location is returned although no
/// kernel ever places mass there.
std::optional<double> atom_location(const ProcessParams& p, double t);

/// (1 - kappa t)^+: weight of the atom of the marginal law of X_t.
double marginal_atom_weight(const ProcessParams& p, double t);

/// x coincides with a_*(s) up to 1e-9 (1 + |a_*(s)|).
bool is_atom_state(const ProcessParams& p, double s, double x);

/// x in supp(X_s): x = 0 at s = 0; otherwise the closed interval
/// [theta - 2 sqrt(s+tau), theta + 2 sqrt(s+tau)] or the atom point while its weight is positive.
bool in_state_space(const ProcessParams& p, double s, double x);

/// Continuous component of P_{s,t}(x, dy) at y; 0 outside [theta +- 2 sqrt(t+tau)].
/// Throws DomainError when x is not in supp(X_s) or the denominator is not positive.
double transition_density(const ProcessParams& p, double s, double t, double x, double y);

/// Discrete component of P_{s,t}(x, .): the atom at a_*(t) when x is the atom
/// state at time s and the weight is positive.
std::optional<Atom> transition_atom(const ProcessParams& p, double s, double t, double x);

struct TransitionKernel {
  ProcessParams params;
  double s = 0.0;
  double t = 0.0;
  double x = 0.0;
  MixedMeasure measure;
};

TransitionKernel transition_measure(const ProcessParams& p, double s, double t, double x);

/// Law of X_t: P_{0,t}(0, .).
MixedMeasure marginal(const ProcessParams& p, double t);

/// Radius r_t of a disk centered at theta containing supp(X_t).
double support_radius(const ProcessParams& p, double t);

}  // namespace fm
