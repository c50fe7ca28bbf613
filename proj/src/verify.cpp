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

#include "freemeixner/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>
#include <utility>

#include "freemeixner/analysis.hpp"
#include "freemeixner/aw_integral.hpp"
#include "freemeixner/nu_measure.hpp"
#include "freemeixner/quadrature.hpp"

namespace fm {

using nlohmann::json;

namespace {

json cjson(cdouble z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json pjson(const ProcessParams& p) { return {{"theta", p.theta}, {"tau", p.tau}}; }

json nujson(const NuParams& p) { return {{"a1", cjson(p.a1)}, {"a2", cjson(p.a2)}}; }

cdouble aw_quadrature(const AWParams& p) {
  QuadOptions opt;
  opt.tol = 1e-13;
  opt.rel_tol = 1e-14;
  return integrate_sqrt_weight(
      [&](double x) {
        cdouble den = 1.0;
        for (const auto& a : p.a) den *= 1.0 + a * a - 2.0 * a * x;
        return 1.0 / den;
      },
      opt);
}

// Grid of states at time s: a mesh over the continuous support plus the atom point.
std::vector<double> state_mesh(const ProcessParams& p, double s) {
  if (s == 0.0) return {0.0};
  const double r = 2.0 * std::sqrt(s + p.tau);
  std::vector<double> xs;
  for (double u : {-1.0, -0.55, 0.0, 0.3, 0.85, 1.0}) xs.push_back(p.theta + r * u);
  if (marginal_atom_weight(p, s) > 0.0) xs.push_back(*atom_location(p, s));
  return xs;
}

}  // namespace

void CheckReport::record(double deviation, const json& where) {
  ++evaluations;
  if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
  if (deviation >= max_deviation || worst.is_null()) {
    if (deviation >= max_deviation) {
      max_deviation = deviation;
      worst = where;
    }
  }
  pass = max_deviation < tolerance;
}

json CheckReport::to_json() const {
  return {{"check", check},
          {"params", params},
          {"grid", grid},
          {"max_deviation", max_deviation},
          {"tolerance", tolerance},
          {"pass", pass},
          {"worst", worst},
          {"evaluations", evaluations}};
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::vector<ProcessParams> default_process_grid() {
  return {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}, {3.0, 1.0}};
}

std::vector<CheckReport> verify_aw(const AwTolerances& tol) {
  CheckReport inside("aw_closed_vs_quadrature", tol.closed_vs_quadrature);
  CheckReport large("aw_large_vs_quadrature", tol.closed_vs_quadrature);
  CheckReport two_large("aw_two_large_vs_quadrature", tol.closed_vs_quadrature);

  const std::vector<double> reals{-0.8, -0.35, 0.0, 0.4, 0.75};
  const std::vector<cdouble> conj{{0.0, 0.5}, {0.3, 0.6}, {-0.7, 0.2}, {0.6, 0.6}};
  auto check = [](CheckReport& rep, const AWParams& p, cdouble closed) {
    json where = json::array();
    for (const auto& a : p.a) where.push_back(cjson(a));
    rep.record(std::abs(closed - aw_quadrature(p)), where);
  };

  const std::size_t n = reals.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
          AWParams p(reals[i], reals[j], reals[k], reals[l]);
          check(inside, p, K_closed(p));
        }
  for (const auto& c : conj) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        AWParams p(c, std::conj(c), reals[i], reals[j]);
        check(inside, p, K_closed(p));
      }
  }
  for (std::size_t i = 0; i < conj.size(); ++i)
    for (std::size_t j = i; j < conj.size(); ++j) {
      AWParams p(conj[i], std::conj(conj[i]), conj[j], std::conj(conj[j]));
      check(inside, p, K_closed(p));
    }

  const std::vector<double> outside{1.5, -2.0, 3.0, -1.25};
  const std::vector<double> small{-0.6, 0.0, 0.5};
  for (double a1 : outside) {
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = i; j < small.size(); ++j)
        for (std::size_t k = j; k < small.size(); ++k) {
          AWParams p(a1, small[i], small[j], small[k]);
          check(large, p, K_large(p));
        }
    for (std::size_t c = 0; c < 2; ++c)
      for (double a2 : small) {
        AWParams p(a1, a2, conj[c], std::conj(conj[c]));
        check(large, p, K_large(p));
      }
  }
  for (auto [a1, a2] : {std::pair{1.5, -2.0}, std::pair{3.0, -1.25}, std::pair{1.2, -4.0}})
    for (auto [a3, a4] : {std::pair{0.0, 0.0}, std::pair{0.4, -0.3}, std::pair{0.7, 0.2}}) {
      AWParams p(a1, a2, a3, a4);
      check(two_large, p, K_any(p));
    }

  inside.grid = {{"reals", reals}, {"conjugate_pairs", json::array()}};
  for (const auto& c : conj) inside.grid["conjugate_pairs"].push_back(cjson(c));
  large.grid = {{"a1", outside}, {"others", small}};
  return {inside, large, two_large};
}

std::vector<NuParams> nu_regime_grid() {
  return {
      {0.0, 0.0},           {0.5, 0.2},          {-0.7, 0.3},          {cdouble(0, 0.6), cdouble(0, -0.6)},
      {cdouble(0.4, 0.5), cdouble(0.4, -0.5)},   {1.0, 0.4},           {-1.0, 0.3},
      {1.0, -1.0},          {2.0, 0.0},          {-1.5, 0.5},          {3.0, -0.2},
      {2.0, -2.0},          {1.5, -3.0},         {1.0, -3.0},
  };
}

std::vector<CheckReport> verify_nu(const NuTolerances& tol) {
  CheckReport mass("nu_total_mass", tol.mass);
  CheckReport mean("nu_mean", tol.moments);
  CheckReport var("nu_variance", tol.moments);
  CheckReport h("nu_h_transform", tol.h_transform);
  const std::vector<cdouble> zs{0.9, -0.9, 0.2, -0.75, cdouble(0, 0.9), cdouble(0.6, 0.6), cdouble(-0.3, 0.2), 0.0};

  for (const auto& p : nu_regime_grid()) {
    const MixedMeasure m = nu_build(p);
    const MeanVar closed = nu_mean_var(p);
    const MeanVar numeric = mean_var_numeric(m);
    mass.record(std::abs(m.total_mass() - 1.0), nujson(p));
    mean.record(std::abs(numeric.mean - closed.mean), nujson(p));
    var.record(std::abs(numeric.variance - closed.variance), nujson(p));
    for (const auto& z : zs) {
      json where = nujson(p);
      where["z"] = cjson(z);
      h.record(std::abs(h_transform(m, z) - h_transform_closed(p, z)), where);
    }
  }
  for (auto* r : {&mass, &mean, &var, &h})
    for (const auto& p : nu_regime_grid()) r->grid.push_back(nujson(p));
  for (const auto& z : zs) h.params["z"].push_back(cjson(z));
  return {mass, mean, var, h};
}

std::vector<CheckReport> verify_convolution(double tol) {
  CheckReport mix("nu_mixing_identity", tol);
  CheckReport marg("aux_marginal_chapman_kolmogorov", tol);
  CheckReport cond("aux_transition_chapman_kolmogorov", tol);
  const auto fns = convolution_test_functions(8);

  for (const auto& p : nu_regime_grid()) {
    for (double m : {0.5, -0.3, 0.9}) {
      json where = nujson(p);
      where["m"] = m;
      mix.record(nu_convolution_check(p, m, fns), where);
    }
  }

  const std::vector<AuxTimeDomain> domains{
      {0.0, 0.0}, {1.0, 0.5}, {0.0, -2.0}, {cdouble(1, 1), cdouble(1, -1)}, {-3.0, -0.4}};
  for (const auto& dom : domains) {
    const double t0 = dom.t_min();
    json dj = {{"C", cjson(dom.C)}, {"D", cjson(dom.D)}};
    for (auto [ds, dt] : {std::pair{0.3, 0.9}, std::pair{1.2, 2.5}}) {
      const double s = t0 + ds, t = s + dt;
      const MixedMeasure ms = mu_marginal(dom, s), mt = mu_marginal(dom, t);
      for (const auto& fn : fns) {
        const double lhs = mt.expect(fn.f);
        const double rhs = ms.expect([&](double x) { return mu_transition(dom, x, s, t).expect(fn.f); });
        json where = dj;
        where["s"] = s;
        where["t"] = t;
        where["f"] = fn.name;
        marg.record(std::abs(lhs - rhs), where);
      }
    }
    for (auto [ds, dt, du] : {std::tuple{0.0, 0.7, 1.1}, std::tuple{0.4, 0.5, 2.0}}) {
      const double s = t0 + ds, t = s + dt, u = t + du;
      for (double x : {-2.5, -1.0, -0.4, 0.0, 0.8, 1.7}) {
        const MixedMeasure direct = mu_transition(dom, x, s, u);
        const MixedMeasure first = mu_transition(dom, x, s, t);
        for (const auto& fn : fns) {
          const double lhs = direct.expect(fn.f);
          const double rhs = first.expect([&](double y) { return mu_transition(dom, y, t, u).expect(fn.f); });
          json where = dj;
          where["s"] = s;
          where["t"] = t;
          where["u"] = u;
          where["x"] = x;
          where["f"] = fn.name;
          cond.record(std::abs(lhs - rhs), where);
        }
      }
    }
  }
  mix.grid = {{"m", {0.5, -0.3, 0.9}}, {"functions", "y^0..y^8, H(0.3), H(-0.5)"}};
  return {mix, marg, cond};
}

std::vector<CheckReport> verify_kernel(const std::vector<ProcessParams>& grid, const KernelTolerances& tol) {
  CheckReport mass("kernel_mass", tol.mass);
  CheckReport mean("kernel_conditional_mean", tol.conditional_mean);
  CheckReport var("kernel_conditional_variance", tol.conditional_mean);
  CheckReport mom("marginal_mean_and_second_moment", tol.marginal_moments);
  CheckReport ck("kernel_chapman_kolmogorov", tol.chapman_kolmogorov);
  CheckReport affine("kernel_vs_auxiliary_process", tol.affine_consistency);
  CheckReport example("case1_atom_weight_two_thirds", 1e-15);

  const std::vector<std::pair<double, double>> st{{0.0, 0.7}, {0.5, 1.3}, {1.0, 2.0}, {2.0, 4.5}, {0.3, 5.0}};
  std::vector<RealTestFunction> mons;
  for (int k = 0; k <= 6; ++k) mons.push_back({"y^" + std::to_string(k), [k](double y) { return std::pow(y, k); }});

  for (const auto& p : grid) {
    for (auto [s, t] : st) {
      for (double x : state_mesh(p, s)) {
        json where = pjson(p);
        where["s"] = s;
        where["t"] = t;
        where["x"] = x;
        const MixedMeasure k = transition_measure(p, s, t, x).measure;
        mass.record(std::abs(k.total_mass() - 1.0), where);
        mean.record(std::abs(k.mean() - x), where);
        // second derivative of the martingale transform at z = 0: E (X_t - x)^2 = t - s
        var.record(std::abs(k.expect([x](double y) { return (y - x) * (y - x); }) - (t - s)), where);

        if (s + p.tau > 0.0) {
          // X = theta + 2 sqrt(t + tau) Y with Y ~ mu_{s+tau, t+tau}(y_s)
          const double ys = (x - p.theta) / (2.0 * std::sqrt(s + p.tau));
          const MixedMeasure aux = mu_transition(ys, s + p.tau, t + p.tau);
          const double scale = 2.0 * std::sqrt(t + p.tau);
          double dev = 0.0;
          for (double u : {-0.97, -0.5, -0.1, 0.2, 0.66, 0.93}) {
            const double y = p.theta + scale * u;
            dev = std::max(dev, std::abs(aux.density(u) / scale - transition_density(p, s, t, x, y)));
          }
          const auto atom = transition_atom(p, s, t, x);
          const std::size_t aux_atoms = aux.atoms().size();
          if (atom.has_value() != (aux_atoms == 1)) {
            dev = std::numeric_limits<double>::infinity();
          } else if (atom) {
            const Atom& a = aux.atoms().front();
            dev = std::max(dev, std::abs(p.theta + scale * a.location - atom->location));
            dev = std::max(dev, std::abs(a.weight - atom->weight));
          }
          affine.record(dev, where);
        }
      }
    }
    for (double t : {0.3, 1.0, 2.5, 5.0}) {
      json where = pjson(p);
      where["t"] = t;
      const MixedMeasure m = marginal(p, t);
      mom.record(std::max(std::abs(m.mean()), std::abs(m.moment(2) - t)), where);
    }
    for (auto [s, t, u] : {std::tuple{0.0, 0.6, 1.5}, std::tuple{0.5, 1.0, 2.0}, std::tuple{1.0, 2.0, 4.5},
                           std::tuple{1.5, 3.0, 5.0}}) {
      for (double x : state_mesh(p, s)) {
        const MixedMeasure direct = transition_measure(p, s, u, x).measure;
        const MixedMeasure first = transition_measure(p, s, t, x).measure;
        for (const auto& fn : mons) {
          const double lhs = direct.expect(fn.f);
          const double rhs =
              first.expect([&](double y) { return transition_measure(p, t, u, y).measure.expect(fn.f); });
          json where = pjson(p);
          where["s"] = s;
          where["t"] = t;
          where["u"] = u;
          where["x"] = x;
          where["f"] = fn.name;
          ck.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), where);
        }
      }
    }
    mass.grid.push_back(pjson(p));
  }

  {
    const ProcessParams p(2.0, 0.0);
    const auto atom = transition_atom(p, 1.0, 2.0, -0.5);
    example.params = {{"theta", 2.0}, {"tau", 0.0}, {"s", 1.0}, {"t", 2.0}, {"x", -0.5}};
    example.record(atom ? std::max(std::abs(atom->weight - 2.0 / 3.0), std::abs(atom->location + 1.0))
                        : std::numeric_limits<double>::infinity(),
                   example.params);
  }
  json st_grid = json::array();
  for (auto [s, t] : st) st_grid.push_back({s, t});
  for (auto* r : {&mean, &var, &affine}) r->grid = {{"s_t", st_grid}};
  return {mass, mean, var, mom, ck, affine, example};
}

std::vector<CheckReport> verify_martingale(const std::vector<ProcessParams>& grid, double tol) {
  CheckReport inside("martingale_inside_window", tol);
  CheckReport beyond("expected_m_beyond_window", tol);
  const std::vector<cdouble> zs{0.3, -0.4, cdouble(0.2, 0.25), cdouble(0.0, 0.45)};

  for (const auto& p : grid) {
    for (const auto& z : zs) {
      if (!(p.tau * std::norm(z) < 1.0)) continue;
      const double horizon = martingale_horizon(p, z);
      const double t = std::min(0.8 * horizon, 4.0);
      for (double s : {0.0, 0.4 * t}) {
        for (double x : state_mesh(p, s)) {
          json where = pjson(p);
          where["z"] = cjson(z);
          where["s"] = s;
          where["t"] = t;
          where["x"] = x;
          inside.record(martingale_check(p, z, s, t, x), where);
        }
      }
      const double t_out = 2.0 * horizon + 0.5;
      const double v = t_out + p.tau;
      const cdouble closed = v / (v * v * z * z + p.theta * z * v + p.tau);
      json where = pjson(p);
      where["z"] = cjson(z);
      where["t"] = t_out;
      beyond.record(std::abs(closed - expected_m_quadrature(p, z, t_out)), where);
    }
  }
  // The two reference cases of the closed form.
  for (auto [p, z, t] : {std::tuple{ProcessParams(0, 0), 0.5, 8.0}, std::tuple{ProcessParams(1, 0), 1.0, 2.0}}) {
    json where = pjson(p);
    where["z"] = z;
    where["t"] = t;
    const double v = t + p.tau;
    const cdouble closed = v / (v * v * z * z + p.theta * z * v + p.tau);
    beyond.record(std::abs(closed - expected_m_quadrature(p, z, t)), where);
  }
  for (const auto& z : zs) inside.params["z"].push_back(cjson(z));
  for (const auto& p : grid) inside.grid.push_back(pjson(p));
  beyond.params = inside.params;
  beyond.grid = inside.grid;
  return {inside, beyond};
}

std::vector<CheckReport> verify_generator(const std::vector<ProcessParams>& grid, const GeneratorTolerances& tol) {
  CheckReport contour("generator_contour_vs_semicircle", tol.contour_vs_semicircle);
  CheckReport fd("generator_fd_vs_semicircle", tol.fd_vs_semicircle);
  CheckReport exact("generator_exact_polynomials", tol.exact_polynomials);
  CheckReport fraction("divided_difference_contour", tol.divided_difference);
  CheckReport normal("semicircle_normalization", tol.divided_difference);

  for (const auto& p : grid) {
    for (double t : {0.5, 1.5}) {
      const double r = support_radius(p, t);
      std::vector<TestFunction> fns;
      for (int k = 0; k <= 6; ++k) fns.push_back(monomial(k));
      fns.push_back(exponential(1.0 / (2.0 * r)));
      fns.push_back(exponential(-1.0 / (2.0 * r)));
      fns.push_back(h_kernel(0.1 / (r + std::abs(p.theta))));

      const auto xs = state_mesh(p, t);
      for (double x : xs) {
        json base = pjson(p);
        base["t"] = t;
        base["x"] = x;
        for (const auto& f : fns) {
          const double semi = generator_semicircle(f, p, t, x);
          const double cont = generator_contour(f, p, t, x);
          json where = base;
          where["f"] = f.name;
          contour.record(std::abs(semi - cont), where);
        }
        const double expected[] = {0.0, 0.0, 1.0, p.theta + 2.0 * x};
        for (int k = 0; k <= 3; ++k) {
          json where = base;
          where["f"] = "y^" + std::to_string(k);
          exact.record(std::abs(generator_semicircle(monomial(k), p, t, x) - expected[k]), where);
          exact.record(std::abs(generator_contour(monomial(k), p, t, x) - expected[k]), where);
        }
        for (const auto& f : {monomial(2), monomial(3), fns[7]}) {
          json where = base;
          where["f"] = f.name;
          fd.record(std::abs(generator_fd(f, p, t, x) - generator_semicircle(f, p, t, x)), where);
        }
      }
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double x = xs[i], y = xs[i + 1];
        for (const auto& f : {monomial(4), fns[7], fns[9]}) {
          json where = pjson(p);
          where["t"] = t;
          where["x"] = x;
          where["y"] = y;
          where["f"] = f.name;
          const double direct = (f(y) - f(x)) / (y - x);
          fraction.record(std::abs(divided_difference_contour(f, p, t, x, y) - direct), where);
        }
      }
      const double sigma = std::sqrt(t + p.tau);
      for (cdouble z : {cdouble(0.5 / sigma, 0.0), cdouble(-0.9 / sigma, 0.0), cdouble(0.3 / sigma, 0.6 / sigma)}) {
        QuadOptions opt;
        opt.tol = 1e-13;
        const cdouble val = 2.0 / std::numbers::pi * integrate_sqrt_weight(
                                                          [&](double u) {
                                                            const double y = p.theta + 2.0 * sigma * u;
                                                            return 1.0 / (1.0 - z * (y - p.theta) +
                                                                          (t + p.tau) * z * z);
                                                          },
                                                          opt);
        json where = pjson(p);
        where["t"] = t;
        where["z"] = cjson(z);
        normal.record(std::abs(val - 1.0), where);
      }
    }
  }
  for (auto* r : {&contour, &fd, &exact, &fraction, &normal})
    for (const auto& p : grid) r->grid.push_back(pjson(p));
  return {contour, fd, exact, fraction, normal};
}

}  // namespace fm
