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

#include "freemeixner/fm_kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "freemeixner/errors.hpp"
#include "freemeixner/nu_measure.hpp"

namespace fm {

namespace {

constexpr double kPi = std::numbers::pi;

void check_times(double s, double t, const char* what) {
  if (!(s >= 0.0 && t > s)) throw DomainError(std::string(what) + ": requires 0 <= s < t");
}

bool in_continuous_support(const ProcessParams& p, double s, double x) {
  return std::abs(x - p.theta) <= 2.0 * std::sqrt(s + p.tau) * (1.0 + 1e-12) + 1e-15;
}

// Q(y) = tau (y-x)^2 + theta (t-s)(y-x) + t x^2 + s y^2 - (s+t) x y + (t-s)^2 as A y^2 + B y + C0.
struct Quadratic {
  double a, b, c;
  double operator()(double y) const { return (a * y + b) * y + c; }
};

Quadratic kernel_denominator(const ProcessParams& p, double s, double t, double x) {
  const double th = p.theta, ta = p.tau, dt = t - s;
  return {ta + s, -2.0 * ta * x + th * dt - (s + t) * x, ta * x * x - th * dt * x + t * x * x + dt * dt};
}

}  // namespace

ProcessParams::ProcessParams(double theta_, double tau_) : theta(theta_), tau(tau_) {
  if (!std::isfinite(theta) || !std::isfinite(tau)) throw DomainError("ProcessParams: non-finite parameter");
  if (tau < 0.0) throw DomainError("ProcessParams: tau must be >= 0 (tau < 0 is not supported)");
}

cdouble ProcessParams::C() const {
  return (-theta + std::sqrt(cdouble(theta * theta - 4.0 * tau, 0.0))) / 2.0;
}

cdouble ProcessParams::D() const {
  return (-theta - std::sqrt(cdouble(theta * theta - 4.0 * tau, 0.0))) / 2.0;
}

bool ProcessParams::atom_branch() const {
  if (tau == 0.0) return theta != 0.0;
  return theta * theta > 4.0 * tau;
}

double ProcessParams::atom_decay_rate() const {
  if (!atom_branch()) return 0.0;
  if (tau == 0.0) return 1.0 / (theta * theta);
  const double r = std::sqrt(theta * theta - 4.0 * tau);
  return (std::abs(theta) - r) / (2.0 * tau * r);
}

double ProcessParams::extinction_time() const {
  if (!atom_branch()) return std::numeric_limits<double>::infinity();
  return 1.0 / atom_decay_rate();
}

std::optional<double> atom_location(const ProcessParams& p, double t) {
  if (t < 0.0) throw DomainError("atom_location: t must be >= 0");
  const double th = p.theta, ta = p.tau;
  if (th == 0.0) return std::nullopt;
  if (ta == 0.0) return -t / th;
  const double disc = th * th - 4.0 * ta;
  if (disc < 0.0) return std::nullopt;
  const double r = std::sqrt(disc);
  return th > 0.0 ? -t * (th - r) / (2.0 * ta) : -t * (th + r) / (2.0 * ta);
}

double marginal_atom_weight(const ProcessParams& p, double t) {
  if (!p.atom_branch()) return 0.0;
  return std::max(0.0, 1.0 - t * p.atom_decay_rate());
}

bool is_atom_state(const ProcessParams& p, double s, double x) {
  const auto a = atom_location(p, s);
  return a && std::abs(x - *a) <= 1e-9 * (1.0 + std::abs(*a));
}

bool in_state_space(const ProcessParams& p, double s, double x) {
  if (s < 0.0) return false;
  if (s == 0.0) return std::abs(x) <= 1e-12;
  if (in_continuous_support(p, s, x)) return true;
  return p.atom_branch() && s < p.extinction_time() && is_atom_state(p, s, x);
}

namespace {

void require_state(const ProcessParams& p, double s, double x, const char* what) {
  if (!in_state_space(p, s, x))
    throw DomainError(std::string(what) + ": x = " + std::to_string(x) + " is not in the support of X_s at s = " +
                      std::to_string(s));
}

}  // namespace

double transition_density(const ProcessParams& p, double s, double t, double x, double y) {
  check_times(s, t, "transition_density");
  require_state(p, s, x, "transition_density");
  const double var = t + p.tau;
  const double dy = y - p.theta;
  if (dy * dy > 4.0 * var) return 0.0;
  const double den = kernel_denominator(p, s, t, x)(y);
  if (!(den > 0.0))
    throw DomainError("transition_density: non-positive denominator at y = " + std::to_string(y) +
                      "; x is outside the state space at time s");
  return (t - s) * std::sqrt(4.0 * var - dy * dy) / (2.0 * kPi * den);
}

std::optional<Atom> transition_atom(const ProcessParams& p, double s, double t, double x) {
  check_times(s, t, "transition_atom");
  if (!p.atom_branch() || !is_atom_state(p, s, x)) return std::nullopt;
  const double kappa = p.atom_decay_rate();
  const double parent = 1.0 - s * kappa;
  if (!(parent > 0.0)) {
    // At the extinction time the atom point is the edge of the continuous support.
    if (in_continuous_support(p, s, x)) return std::nullopt;
    throw DomainError("transition_atom: x = a_*(s) cannot be an atom state at s = " + std::to_string(s) +
                      " (atom extinct at " + std::to_string(p.extinction_time()) + ")");
  }
  const double w = std::max(0.0, 1.0 - t * kappa) / parent;
  if (!(w > 0.0)) return std::nullopt;
  return Atom{*atom_location(p, t), w};
}

TransitionKernel transition_measure(const ProcessParams& p, double s, double t, double x) {
  check_times(s, t, "transition_measure");
  require_state(p, s, x, "transition_measure");
  const double sigma = std::sqrt(t + p.tau);
  // The density is the image of the auxiliary law under y = theta + 2 sigma u;
  // its factored denominator stays accurate when the two roots nearly coincide.
  // s + tau = 0 is the limit of the mixing parameters as the start variance vanishes.
  NuParams aux((x - p.theta) / sigma, 0.0);
  if (s + p.tau > 0.0) aux = mu_transition_params((x - p.theta) / (2.0 * std::sqrt(s + p.tau)), s + p.tau, t + p.tau);
  const double c = 2.0 * (1.0 - aux.product()) / kPi;

  std::optional<ContinuousPart> cont;
  try {
    cont = ContinuousPart::factored(p.theta - 2.0 * sigma, p.theta + 2.0 * sigma, c, aux.a1, aux.a2);
  } catch (const DomainError& e) {
    throw DomainError(std::string("transition_measure: x = ") + std::to_string(x) +
                      " is outside the state space at time s (" + e.what() + ")");
  }
  std::vector<Atom> atoms;
  if (auto a = transition_atom(p, s, t, x)) atoms.push_back(*a);
  return TransitionKernel{p, s, t, x, MixedMeasure(std::move(cont), std::move(atoms))};
}

MixedMeasure marginal(const ProcessParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("marginal: t must be > 0");
  return transition_measure(p, 0.0, t, 0.0).measure;
}

double support_radius(const ProcessParams& p, double t) {
  if (!(t > 0.0)) throw DomainError("support_radius: t must be > 0");
  const double semicircle = 2.0 * std::sqrt(t + p.tau);
  if (!p.atom_branch() || marginal_atom_weight(p, t) <= 0.0) return semicircle;
  const double th = std::abs(p.theta);
  if (p.tau == 0.0) return std::max(semicircle, std::abs(p.theta + t / p.theta));
  const double r = std::sqrt(p.theta * p.theta - 4.0 * p.tau);
  return std::max(semicircle, ((t + 2.0 * p.tau) * th + t * r) / (2.0 * p.tau));
}

}  // namespace fm
