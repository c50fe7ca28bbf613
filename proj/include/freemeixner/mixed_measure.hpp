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

#include <array>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "freemeixner/quadrature.hpp"

namespace fm {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

enum class EdgeWeight {
  Sqrt,     // density ~ sqrt(1-u^2) near the edges
  InvSqrt,  // density ~ 1/sqrt(1-u^2): an endpoint root of the denominator was cancelled
};

/// Absolutely continuous component on [lo, hi]. With u = (2y - lo - hi)/(hi - lo),
///
///   density(y) dy = num(u) / den(u) * W(u) du,   W = sqrt(1-u^2) or 1/sqrt(1-u^2),
///
/// where num has degree <= 1 and den degree <= 2 with no root in [-1,1].
class ContinuousPart {
 public:
  /// Density c * sqrt(1-u^2) / q(u), q(u) = q[0] + q[1] u + q[2] u^2. A root of q
  /// at u = +-1 (root within 1e-11 of the endpoint) is cancelled against the square root.
  /// Throws DomainError if q vanishes elsewhere on [-1,1] or the density is negative.
  static ContinuousPart rational(double lo, double hi, double c, std::array<double, 3> q);
  /// Density c * sqrt(1-u^2) / ((1 + a1^2 - 2 a1 u)(1 + a2^2 - 2 a2 u)) with a1, a2 real
  /// or complex conjugate, kept in factored form. A parameter equal to +-1 cancels
  /// its factor against the square root.
  static ContinuousPart factored(double lo, double hi, double c, cdouble a1, cdouble a2);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double half_width() const { return 0.5 * (hi_ - lo_); }
  EdgeWeight edge() const { return edge_; }

  double to_y(double u) const { return lo_ + half_width() * (u + 1.0); }
  double to_u(double y) const { return (2.0 * y - lo_ - hi_) / (hi_ - lo_); }

  /// num(u)/den(u); the smooth factor of the density in the u variable.
  double regular(double u) const {
    const double n = num_[0] + num_[1] * u;
    if (factors_ < 0) return n / (den_[0] + u * (den_[1] + u * den_[2]));
    cdouble d = 1.0;
    for (int i = 0; i < factors_; ++i) d *= fac0_[i] + fac1_[i] * u;
    return n / d.real();
  }
  /// Density with respect to dy; zero outside [lo, hi].
  double density(double y) const;
  /// Density with respect to the angle a, u = cos(a): regular(cos a) * (sin^2 a or 1).
  double angular_density(double cos_a) const {
    const double r = regular(cos_a);
    return edge_ == EdgeWeight::Sqrt ? r * (1.0 - cos_a * cos_a) : r;
  }

  template <class F>
  auto integrate(F&& g, const QuadOptions& opt) const {
    auto integrand = [&](double u) { return g(to_y(u)) * regular(u); };
    if (edge_ == EdgeWeight::Sqrt) return integrate_sqrt_weight(integrand, opt);
    return integrate_arcsine_weight(integrand, opt);
  }

 private:
  double lo_ = -1.0, hi_ = 1.0;
  EdgeWeight edge_ = EdgeWeight::Sqrt;
  std::array<double, 2> num_{};
  std::array<double, 3> den_{};
  int factors_ = -1;  // -1: den_ holds the expanded quadratic
  std::array<cdouble, 2> fac0_{}, fac1_{};
};

/// Quadrature settings used for expectations against measures.
inline QuadOptions measure_quad_options() {
  QuadOptions opt;
  opt.tol = 1e-13;
  opt.rel_tol = 1e-14;
  return opt;
}

struct CdfTable;
struct CdfCache;

/// A compactly supported measure: optional continuous part plus finitely many atoms.
/// Immutable; the inverse-CDF table is built once on first use and shared by copies.
class MixedMeasure {
 public:
  MixedMeasure() = default;
  MixedMeasure(std::optional<ContinuousPart> cont, std::vector<Atom> atoms);

  const std::optional<ContinuousPart>& continuous() const { return cont_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Interval of the continuous part, or the hull of the atoms if there is none.
  std::pair<double, double> support() const;
  double atom_mass() const;

  /// Density of the continuous part with respect to dy.
  double density(double y) const { return cont_ ? cont_->density(y) : 0.0; }

  /// int g d(measure) = continuous quadrature + sum of atom terms.
  template <class F>
  auto expect(F&& g, const QuadOptions& opt = measure_quad_options()) const {
    using R = std::decay_t<decltype(g(0.0))>;
    R acc{};
    if (cont_) acc = cont_->integrate(g, opt);
    for (const auto& a : atoms_) acc += a.weight * g(a.location);
    return acc;
  }

  double total_mass() const;
  double moment(int k) const;
  double mean() const;
  double variance() const;

  /// Measure of (-inf, y] and of (-inf, y).
  double cdf(double y) const;
  double cdf_left(double y) const;
  /// Mass of the continuous part as integrated by the CDF table.
  double continuous_mass() const;

  /// Generalized inverse of the CDF at p in [0,1), monotone in p. The continuous
  /// part is inverted by bisection to 1e-12 in y. Sets *from_atom when given.
  double inverse_cdf(double p, bool* from_atom = nullptr) const;

  /// {"support":[lo,hi], "grid":[y...], "density":[f...], "atoms":[{"y":..,"w":..}]}
  nlohmann::json to_json(int grid_points = 201) const;

 private:
  const CdfTable& table() const;
  double continuous_cdf(double y) const;
  double continuous_quantile(double mass) const;

  std::optional<ContinuousPart> cont_;
  std::vector<Atom> atoms_;
  std::shared_ptr<CdfCache> cache_;
};

}  // namespace fm
