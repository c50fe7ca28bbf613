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

#include "freemeixner/mixed_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "freemeixner/errors.hpp"

namespace fm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCdfBins = 2048;
constexpr int kCdfMaxBins = 1 << 16;
constexpr double kEndpointRootTol = 1e-11;

struct Roots {
  int count = 0;
  double r[2] = {0.0, 0.0};
};

Roots real_roots(const std::array<double, 3>& d) {
  Roots out;
  if (d[2] == 0.0) {
    if (d[1] != 0.0) out.r[out.count++] = -d[0] / d[1];
    return out;
  }
  const double disc = d[1] * d[1] - 4.0 * d[2] * d[0];
  if (disc < 0.0) return out;
  const double q = -0.5 * (d[1] + std::copysign(std::sqrt(disc), d[1]));
  out.r[out.count++] = q / d[2];
  if (q != 0.0) out.r[out.count++] = d[0] / q;
  return out;
}

const std::vector<double>& default_cos_table() {
  static const std::vector<double> table = [] {
    std::vector<double> c(2 * kCdfBins + 1);
    for (int k = 0; k <= 2 * kCdfBins; ++k) c[k] = std::cos(kPi * k / (2 * kCdfBins));
    return c;
  }();
  return table;
}

}  // namespace

ContinuousPart ContinuousPart::rational(double lo, double hi, double c, std::array<double, 3> q) {
  if (!(hi > lo)) throw DomainError("ContinuousPart: empty support interval");
  ContinuousPart part;
  part.lo_ = lo;
  part.hi_ = hi;
  const double scale = std::abs(q[0]) + std::abs(q[1]) + std::abs(q[2]);
  if (!(scale > 0.0)) throw DomainError("ContinuousPart: zero denominator");
  // Decide on the root location, not on |q(+-1)|: a near-double root just
  // outside [-1,1] makes q(+-1) tiny without being an endpoint root.
  bool at_plus = false, at_minus = false;
  const Roots qr = real_roots(q);
  for (int i = 0; i < qr.count; ++i) {
    at_plus = at_plus || std::abs(qr.r[i] - 1.0) <= kEndpointRootTol;
    at_minus = at_minus || std::abs(qr.r[i] + 1.0) <= kEndpointRootTol;
  }

  if (!at_plus && !at_minus) {
    part.edge_ = EdgeWeight::Sqrt;
    part.num_ = {c, 0.0};
    part.den_ = q;
  } else if (at_plus && at_minus) {
    // q = q2 (u^2 - 1)
    if (q[2] == 0.0) throw DomainError("ContinuousPart: denominator vanishes identically");
    part.edge_ = EdgeWeight::InvSqrt;
    part.num_ = {-c, 0.0};
    part.den_ = {q[2], 0.0, 0.0};
  } else if (at_plus) {
    // q = (u - 1)(l0 + l1 u)
    part.edge_ = EdgeWeight::InvSqrt;
    part.num_ = {-c, -c};
    part.den_ = {q[1] + q[2], q[2], 0.0};
  } else {
    // q = (u + 1)(l0 + l1 u)
    part.edge_ = EdgeWeight::InvSqrt;
    part.num_ = {c, -c};
    part.den_ = {q[1] - q[2], q[2], 0.0};
  }

  const Roots roots = real_roots(part.den_);
  for (int i = 0; i < roots.count; ++i) {
    if (roots.r[i] >= -1.0 && roots.r[i] <= 1.0)
      throw DomainError("ContinuousPart: density denominator vanishes inside the support (u=" +
                        std::to_string(roots.r[i]) + ")");
  }
  if (part.den_[0] == 0.0 && part.den_[1] == 0.0 && part.den_[2] == 0.0)
    throw DomainError("ContinuousPart: denominator vanishes identically");
  if (part.regular(0.0) < 0.0 || part.regular(0.5) < 0.0 || part.regular(-0.5) < 0.0)
    throw DomainError("ContinuousPart: negative density");
  return part;
}

ContinuousPart ContinuousPart::factored(double lo, double hi, double c, cdouble a1, cdouble a2) {
  if (!(hi > lo)) throw DomainError("ContinuousPart: empty support interval");
  ContinuousPart part;
  part.lo_ = lo;
  part.hi_ = hi;
  part.factors_ = 0;
  bool at_plus = false, at_minus = false;
  for (const cdouble a : {a1, a2}) {
    if (a == 1.0) {
      at_plus = true;
    } else if (a == -1.0) {
      at_minus = true;
    } else {
      part.fac0_[part.factors_] = 1.0 + a * a;
      part.fac1_[part.factors_] = -2.0 * a;
      ++part.factors_;
    }
  }
  // 2(1-u) and 2(1+u) against sqrt(1-u^2)
  if (at_plus && at_minus) {
    part.num_ = {0.25 * c, 0.0};
  } else if (at_plus) {
    part.num_ = {0.5 * c, 0.5 * c};
  } else if (at_minus) {
    part.num_ = {0.5 * c, -0.5 * c};
  } else {
    part.num_ = {c, 0.0};
  }
  part.edge_ = (at_plus || at_minus) ? EdgeWeight::InvSqrt : EdgeWeight::Sqrt;
  for (int i = 0; i < part.factors_; ++i) {
    const cdouble a = -0.5 * part.fac1_[i];
    if (a.imag() == 0.0 && a.real() != 0.0) {
      const double root = (1.0 + a.real() * a.real()) / (2.0 * a.real());
      if (root > -1.0 && root < 1.0) throw DomainError("ContinuousPart: density denominator vanishes inside the support");
    }
  }
  if (part.regular(0.0) < 0.0 || part.regular(0.5) < 0.0 || part.regular(-0.5) < 0.0)
    throw DomainError("ContinuousPart: negative density");
  return part;
}

double ContinuousPart::density(double y) const {
  const double u = to_u(y);
  if (u < -1.0 || u > 1.0) return 0.0;
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  const double w = edge_ == EdgeWeight::Sqrt ? s : 1.0 / s;
  return regular(u) * w / half_width();
}

struct CdfTable {
  int bins = 0;
  double total = 0.0;
  std::vector<double> tail;  // tail[j] = int_{a_j}^{pi} G, a_j = j pi / bins
};

struct CdfCache {
  std::once_flag once;
  CdfTable table;
};

MixedMeasure::MixedMeasure(std::optional<ContinuousPart> cont, std::vector<Atom> atoms)
    : cont_(std::move(cont)), atoms_(std::move(atoms)), cache_(std::make_shared<CdfCache>()) {
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0 && a.weight <= 1.0 + 1e-12))
      throw DomainError("MixedMeasure: atom weight " + std::to_string(a.weight) + " outside (0,1]");
  }
  if (!cont_ && atoms_.empty()) throw DomainError("MixedMeasure: empty measure");
}

std::pair<double, double> MixedMeasure::support() const {
  if (cont_) return {cont_->lo(), cont_->hi()};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& a : atoms_) {
    lo = std::min(lo, a.location);
    hi = std::max(hi, a.location);
  }
  return {lo, hi};
}

double MixedMeasure::atom_mass() const {
  double w = 0.0;
  for (const auto& a : atoms_) w += a.weight;
  return w;
}

double MixedMeasure::total_mass() const {
  return expect([](double) { return 1.0; });
}

double MixedMeasure::moment(int k) const {
  return expect([k](double y) { return std::pow(y, k); });
}

double MixedMeasure::mean() const {
  return expect([](double y) { return y; });
}

double MixedMeasure::variance() const {
  const double m = mean();
  return expect([m](double y) { return (y - m) * (y - m); });
}

const CdfTable& MixedMeasure::table() const {
  std::call_once(cache_->once, [this] {
    CdfTable& t = cache_->table;
    if (!cont_) {
      t.bins = 1;
      t.tail = {0.0, 0.0};
      return;
    }
    const ContinuousPart& c = *cont_;
    std::vector<double> g;
    for (int bins = kCdfBins;; bins *= 2) {
      const int n = 2 * bins;
      g.resize(n + 1);
      if (bins == kCdfBins) {
        const auto& cosines = default_cos_table();
        for (int k = 0; k <= n; ++k) g[k] = c.angular_density(cosines[k]);
      } else {
        for (int k = 0; k <= n; ++k) g[k] = c.angular_density(std::cos(kPi * k / n));
      }
      const double h = kPi / bins;
      std::vector<double> tail(bins + 1, 0.0);
      double trap = 0.5 * (g[0] + g[n]);
      for (int k = 1; k < n; ++k) trap += g[k];
      trap *= 0.5 * h;
      bool monotone = true;
      for (int j = bins - 1; j >= 0; --j) {
        const double bin = h / 6.0 * (g[2 * j] + 4.0 * g[2 * j + 1] + g[2 * j + 2]);
        if (bin < -1e-12) monotone = false;
        tail[j] = tail[j + 1] + std::max(bin, 0.0);
      }
      if (!monotone) throw ConvergenceError("CDF construction: negative density mass in a bin");
      if (std::abs(tail[0] - trap) <= 1e-10) {
        t.bins = bins;
        t.total = tail[0];
        t.tail = std::move(tail);
        return;
      }
      if (2 * bins > kCdfMaxBins)
        throw ConvergenceError("CDF construction: grid refinement did not converge (" +
                               std::to_string(bins) + " bins)");
    }
  });
  return cache_->table;
}

double MixedMeasure::continuous_mass() const { return table().total; }

namespace {

// int_{a}^{b} G(alpha) d alpha on a sub-bin
double local_mass(const ContinuousPart& c, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss<double, 7>::integrate(
      [&c](double alpha) { return c.angular_density(std::cos(alpha)); }, a, b);
}

}  // namespace

double MixedMeasure::continuous_cdf(double y) const {
  if (!cont_) return 0.0;
  const CdfTable& t = table();
  const ContinuousPart& c = *cont_;
  const double u = c.to_u(y);
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return t.total;
  const double alpha = std::acos(u);
  const double h = kPi / t.bins;
  const int j = std::min(static_cast<int>(alpha / h), t.bins - 1);
  return t.tail[j + 1] + local_mass(c, alpha, (j + 1) * h);
}

double MixedMeasure::cdf(double y) const {
  double f = continuous_cdf(y);
  for (const auto& a : atoms_)
    if (a.location <= y) f += a.weight;
  return f;
}

double MixedMeasure::cdf_left(double y) const {
  double f = continuous_cdf(y);
  for (const auto& a : atoms_)
    if (a.location < y) f += a.weight;
  return f;
}

double MixedMeasure::inverse_cdf(double p, bool* from_atom) const {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("inverse_cdf: p must lie in [0,1)");
  std::vector<Atom> sorted = atoms_;
  std::sort(sorted.begin(), sorted.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
  double below = 0.0;  // atom mass strictly left of the current atom
  for (const auto& a : sorted) {
    const double cont_left = continuous_cdf(a.location);
    if (p < below + cont_left) break;
    if (p < below + cont_left + a.weight) {
      if (from_atom) *from_atom = true;
      return a.location;
    }
    below += a.weight;
  }
  if (from_atom) *from_atom = false;
  if (!cont_) return sorted.back().location;
  return continuous_quantile(p - below);
}

// Smallest y with continuous_cdf(y) >= mass.
double MixedMeasure::continuous_quantile(double mass) const {
  const CdfTable& t = table();
  const ContinuousPart& c = *cont_;
  const double target = std::clamp(mass, 0.0, t.total);

  // tail[] decreases in j; find the bin with tail[j+1] <= target < tail[j].
  int lo_bin = 0, hi_bin = t.bins - 1;
  while (lo_bin < hi_bin) {
    const int mid = (lo_bin + hi_bin + 1) / 2;
    if (t.tail[mid] > target)
      lo_bin = mid;
    else
      hi_bin = mid - 1;
  }
  const int j = lo_bin;
  const double h = kPi / t.bins;
  const double edge = (j + 1) * h;
  double a_lo = j * h, a_hi = edge;
  for (int it = 0; it < 200; ++it) {
    if (c.half_width() * (std::cos(a_lo) - std::cos(a_hi)) < 1e-12) break;
    const double mid = 0.5 * (a_lo + a_hi);
    const double mass_above = t.tail[j + 1] + local_mass(c, mid, edge);
    if (mass_above > target)
      a_lo = mid;
    else
      a_hi = mid;
  }
  return c.to_y(std::cos(0.5 * (a_lo + a_hi)));
}

nlohmann::json MixedMeasure::to_json(int grid_points) const {
  const auto [lo, hi] = support();
  nlohmann::json j;
  j["support"] = {lo, hi};
  nlohmann::json grid = nlohmann::json::array(), dens = nlohmann::json::array();
  if (cont_) {
    for (int k = 0; k < grid_points; ++k) {
      const double u = -std::cos(kPi * (k + 0.5) / grid_points);
      const double y = cont_->to_y(u);
      grid.push_back(y);
      dens.push_back(cont_->density(y));
    }
  }
  j["grid"] = grid;
  j["density"] = dens;
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : atoms_) atoms.push_back({{"y", a.location}, {"w", a.weight}});
  j["atoms"] = atoms;
  return j;
}

}  // namespace fm
