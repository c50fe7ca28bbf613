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

#include "freemeixner/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "freemeixner/aw_integral.hpp"
#include "freemeixner/errors.hpp"
#include "freemeixner/quadrature.hpp"
#include "freemeixner/simulate.hpp"

namespace fm {

namespace {

constexpr double kPi = std::numbers::pi;

// Taylor coefficients of f at x from a circle of radius r (trapezoid, 128 points).
constexpr int kTaylorTerms = 48;
constexpr int kTaylorPoints = 128;

const std::array<cdouble, kTaylorPoints>& roots_of_unity() {
  static const std::array<cdouble, kTaylorPoints> w = [] {
    std::array<cdouble, kTaylorPoints> r;
    for (int j = 0; j < kTaylorPoints; ++j) r[j] = std::polar(1.0, 2.0 * kPi * j / kTaylorPoints);
    return r;
  }();
  return w;
}

std::array<double, kTaylorTerms> taylor_coefficients(const TestFunction& f, double x, double r) {
  const auto& w = roots_of_unity();
  std::array<cdouble, kTaylorPoints> vals;
  for (int j = 0; j < kTaylorPoints; ++j) vals[j] = f.value(x + r * w[j]);
  std::array<double, kTaylorTerms> a{};
  double rk = 1.0;
  for (int k = 0; k < kTaylorTerms; ++k) {
    double acc = 0.0;
    for (int j = 0; j < kTaylorPoints; ++j) {
      const cdouble e = std::conj(w[(j * k) % kTaylorPoints]);
      acc += vals[j].real() * e.real() - vals[j].imag() * e.imag();
    }
    a[k] = acc / kTaylorPoints / rk;
    rk *= r;
  }
  return a;
}

// Divided differences of f at (x, y) and (x, x, y). Close to the diagonal the
// quotients lose all precision, so a Taylor expansion around x takes over.
class DividedDifferences {
 public:
  DividedDifferences(const TestFunction& f, double x, double radius)
      : f_(f), x_(x), radius_(radius), near_(0.4 * radius), fx_(f(x)) {
    if (f.derivative) dfx_ = f.derivative(cdouble(x, 0.0)).real();
  }

  double first(double y) {
    const double d = y - x_;
    if (std::abs(d) > near_) return (f_(y) - fx_) / d;
    const auto& a = coefficients();
    double acc = 0.0;
    for (int k = kTaylorTerms - 1; k >= 1; --k) acc = acc * d + a[k];
    return acc;
  }

  double second(double y) {
    const double d = y - x_;
    if (std::abs(d) > near_) return (f_(y) - fx_ - d * dfx_) / (d * d);
    const auto& a = coefficients();
    double acc = 0.0;
    for (int k = kTaylorTerms - 1; k >= 2; --k) acc = acc * d + a[k];
    return acc;
  }

 private:
  const std::array<double, kTaylorTerms>& coefficients() {
    if (!taylor_) taylor_ = taylor_coefficients(f_, x_, radius_);
    return *taylor_;
  }

  const TestFunction& f_;
  double x_, radius_, near_, fx_, dfx_ = 0.0;
  std::optional<std::array<double, kTaylorTerms>> taylor_;
};

// Radius of the disk around x used for local Taylor expansions: within the disk
// of analyticity |z - theta| < (5/4) r_t that the class of admissible f guarantees.
double local_radius(const ProcessParams& p, double t) {
  const double r = t > 0.0 ? support_radius(p, t) : 2.0 * std::sqrt(p.tau);
  return r > 0.0 ? 0.25 * r : 0.25;
}

// int F dw_{theta, var}; point mass at theta when var = 0.
template <class F>
double semicircle_expect(double theta, double var, F&& g) {
  if (var == 0.0) return g(theta);
  const double two_sigma = 2.0 * std::sqrt(var);
  QuadOptions opt;
  opt.tol = 1e-13;
  opt.rel_tol = 1e-14;
  return 2.0 / kPi * integrate_sqrt_weight([&](double u) { return g(theta + two_sigma * u); }, opt);
}

void require_generator_state(const ProcessParams& p, double t, double x, const char* what) {
  if (t < 0.0) throw DomainError(std::string(what) + ": t must be >= 0");
  if (!in_state_space(p, t, x))
    throw DomainError(std::string(what) + ": x = " + std::to_string(x) + " is not in supp(X_t)");
}

double contour_radius(const ProcessParams& p, double t, const GeneratorConfig& cfg) {
  const double r = support_radius(p, t);
  const double delta = cfg.delta.value_or(0.1 * r);
  return 1.0 / (r + delta);
}

}  // namespace

TestFunction monomial(int k) {
  if (k < 0) throw DomainError("monomial: negative degree");
  TestFunction f;
  f.name = "y^" + std::to_string(k);
  f.value = [k](cdouble y) { return k == 0 ? cdouble(1.0) : std::pow(y, k); };
  f.derivative = [k](cdouble y) { return k == 0 ? cdouble(0.0) : double(k) * (k == 1 ? cdouble(1.0) : std::pow(y, k - 1)); };
  return f;
}

TestFunction exponential(double alpha) {
  TestFunction f;
  f.name = "exp(" + std::to_string(alpha) + " y)";
  f.value = [alpha](cdouble y) { return std::exp(alpha * y); };
  f.derivative = [alpha](cdouble y) { return alpha * std::exp(alpha * y); };
  return f;
}

TestFunction h_kernel(double z) {
  TestFunction f;
  f.name = "H(z=" + std::to_string(z) + ")";
  f.value = [z](cdouble y) { return 1.0 / (1.0 + z * z - 2.0 * z * y); };
  f.derivative = [z](cdouble y) {
    const cdouble d = 1.0 + z * z - 2.0 * z * y;
    return 2.0 * z / (d * d);
  };
  return f;
}

double martingale_horizon(const ProcessParams& p, cdouble z) {
  const double z2 = std::norm(z);
  if (!(p.tau * z2 < 1.0)) throw DomainError("martingale: requires tau |z|^2 < 1");
  if (z2 == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / z2 - p.tau;
}

cdouble martingale_transform(const ProcessParams& p, cdouble z, double t, double x) {
  const cdouble den = 1.0 - z * (x - p.theta) + (t + p.tau) * z * z;
  if (std::abs(den) < 1e-14) throw PoleError("martingale_transform: vanishing denominator");
  return 1.0 / den;
}

cdouble martingale_value(const ProcessParams& p, cdouble z, double t, double x) {
  if (!(t < martingale_horizon(p, z))) throw DomainError("martingale_value: t outside the window t < 1/|z|^2 - tau");
  return martingale_transform(p, z, t, x);
}

double martingale_check(const ProcessParams& p, cdouble z, double s, double t, double x) {
  if (!(s >= 0.0 && s < t)) throw DomainError("martingale_check: requires 0 <= s < t");
  if (!(t < martingale_horizon(p, z))) throw DomainError("martingale_check: t outside the martingale window");
  const auto kernel = transition_measure(p, s, t, x);
  const cdouble lhs = kernel.measure.expect([&](double y) { return martingale_transform(p, z, t, y); });
  return std::abs(lhs - martingale_transform(p, z, s, x));
}

cdouble expected_m_quadrature(const ProcessParams& p, cdouble z, double t) {
  return marginal(p, t).expect([&](double y) { return martingale_transform(p, z, t, y); });
}

cdouble expected_m_beyond(const ProcessParams& p, cdouble z, double t) {
  if (!(t > martingale_horizon(p, z)))
    throw DomainError("expected_m_beyond: t is inside the martingale window, where E(M_t) = M_0(0)");
  const double v = t + p.tau;
  const cdouble closed = v / (v * v * z * z + p.theta * z * v + p.tau);
  const cdouble numeric = expected_m_quadrature(p, z, t);
  if (std::abs(closed - numeric) > 1e-8)
    throw InvariantError("expected_m_beyond: closed form and quadrature differ by " +
                         std::to_string(std::abs(closed - numeric)));
  return closed;
}

void GeneratorConfig::validate() const {
  if (delta && !(*delta > 0.0)) throw DomainError("GeneratorConfig: delta must be positive");
  if (contour_points < 8 || (contour_points & (contour_points - 1)) != 0)
    throw DomainError("GeneratorConfig: contour_points must be a power of two >= 8");
  if (fd_steps.empty()) throw DomainError("GeneratorConfig: fd_steps is empty");
  for (std::size_t i = 0; i < fd_steps.size(); ++i) {
    if (!(fd_steps[i] >= 1e-6)) throw DomainError("GeneratorConfig: fd_steps must be >= 1e-6");
    if (i > 0 && !(fd_steps[i] < fd_steps[i - 1]))
      throw DomainError("GeneratorConfig: fd_steps must be strictly decreasing");
  }
}

double generator_semicircle(const TestFunction& f, const ProcessParams& p, double t, double x) {
  if (!f.derivative) throw DomainError("generator_semicircle: the derivative of f is required");
  require_generator_state(p, t, x, "generator_semicircle");
  DividedDifferences dd(f, x, local_radius(p, t));
  return semicircle_expect(p.theta, t + p.tau, [&](double y) { return dd.second(y); });
}

double generator_semicircle_dx(const TestFunction& f, const ProcessParams& p, double t, double x) {
  if (!(t > 0.0)) throw DomainError("generator_semicircle_dx: t must be > 0");
  const double sigma = std::sqrt(t + p.tau);
  const double h = 1e-5 * (1.0 + std::abs(x));
  if (!(std::abs(x - p.theta) + h < 2.0 * sigma))
    throw DomainError("generator_semicircle_dx: x must lie inside the continuous support");
  const double radius = local_radius(p, t);
  auto integral = [&](double at) {
    DividedDifferences dd(f, at, radius);
    return semicircle_expect(p.theta, t + p.tau, [&](double y) { return dd.first(y); });
  };
  return (integral(x + h) - integral(x - h)) / (2.0 * h);
}

double generator_contour(const TestFunction& f, const ProcessParams& p, double t, double x,
                         const GeneratorConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("generator_contour: t must be > 0");
  require_generator_state(p, t, x, "generator_contour");
  const double v = t + p.tau;
  auto integrand = [&](cdouble z) {
    const cdouble g = (v * z - 1.0 / z) * f.value(p.theta + v * z + 1.0 / z);
    const cdouble den = 1.0 - z * (x - p.theta) + v * z * z;
    return z * z * g / (den * den);
  };
  // u = theta + v z + 1/z circles the support counter-clockwise while z runs
  // clockwise, hence the sign.
  ContourSpec spec{0.0, contour_radius(p, t, cfg), cfg.contour_points};
  const cdouble val = -contour_integral(integrand, spec, 1e-13);
  if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val.real())))
    throw InvariantError("generator_contour: imaginary part " + std::to_string(val.imag()));
  return val.real();
}

double divided_difference_contour(const TestFunction& f, const ProcessParams& p, double t, double x, double y,
                                  const GeneratorConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("divided_difference_contour: t must be > 0");
  const double v = t + p.tau;
  auto integrand = [&](cdouble z) {
    const cdouble g = (v * z - 1.0 / z) * f.value(p.theta + v * z + 1.0 / z);
    const cdouble dx = 1.0 - z * (x - p.theta) + v * z * z;
    const cdouble dy = 1.0 - z * (y - p.theta) + v * z * z;
    return z * g / (dx * dy);
  };
  ContourSpec spec{0.0, contour_radius(p, t, cfg), cfg.contour_points};
  return -real_part_checked(contour_integral(integrand, spec, 1e-13), "divided_difference_contour");
}

double generator_fd(const TestFunction& f, const ProcessParams& p, double t, double x, const GeneratorConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("generator_fd: t must be > 0");
  require_generator_state(p, t, x, "generator_fd");
  const double fx = f(x);
  const auto& hs = cfg.fd_steps;
  // Small h puts a root of the kernel denominator close to the support, which
  // limits the attainable accuracy to about 1e-11; ample for this route.
  QuadOptions opt;
  opt.tol = 1e-11;
  opt.rel_tol = 1e-12;
  std::vector<double> raw;
  for (double h : hs) {
    const auto kernel = transition_measure(p, t, t + h, x);
    raw.push_back(kernel.measure.expect([&](double y) { return f(y) - fx; }, opt) / h);
  }
  for (std::size_t i = 2; i < raw.size(); ++i) {
    const double prev = std::abs(raw[i - 1] - raw[i - 2]), cur = std::abs(raw[i] - raw[i - 1]);
    if (cur > prev && cur > 1e-8) {
      std::ostringstream msg;
      msg << "generator_fd: non-monotone convergence of the difference quotients:";
      for (std::size_t k = 0; k < raw.size(); ++k) msg << " h=" << hs[k] << ":" << raw[k];
      throw ConvergenceError(msg.str());
    }
  }
  // Neville extrapolation of the polynomial through (h_i, raw_i) to h = 0.
  std::vector<double> tab = raw;
  for (std::size_t level = 1; level < tab.size(); ++level)
    for (std::size_t i = tab.size() - 1; i >= level; --i)
      tab[i] = (hs[i - level] * tab[i] - hs[i] * tab[i - 1]) / (hs[i - level] - hs[i]);
  return tab.back();
}

McEstimate ito_residual(const TestFunction& f, const ProcessParams& p, const std::vector<double>& time_grid,
                        std::size_t num_paths, std::uint64_t seed) {
  if (num_paths < 2) throw DomainError("ito_residual: need at least two paths");
  std::vector<double> residual(num_paths);
  parallel_for(num_paths, [&](std::size_t i) {
    const Path path = sample_path(p, time_grid, seed, i);
    double integral = 0.0;
    double prev = generator_semicircle(f, p, path.times[0], path.values[0]);
    for (std::size_t k = 1; k < path.times.size(); ++k) {
      const double cur = generator_semicircle(f, p, path.times[k], path.values[k]);
      integral += 0.5 * (prev + cur) * (path.times[k] - path.times[k - 1]);
      prev = cur;
    }
    residual[i] = f(path.values.back()) - f(path.values.front()) - integral;
  });
  McEstimate est;
  est.samples = num_paths;
  for (double r : residual) est.mean += r;
  est.mean /= static_cast<double>(num_paths);
  double ss = 0.0;
  for (double r : residual) ss += (r - est.mean) * (r - est.mean);
  est.std_error = std::sqrt(ss / static_cast<double>(num_paths - 1) / static_cast<double>(num_paths));
  return est;
}

}  // namespace fm
