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

#include "freemeixner/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "freemeixner/errors.hpp"

namespace fm {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

CounterRng::result_type CounterRng::operator()() { return mix64(key_ + (++counter_) * kGamma); }

Draw sample_one(const MixedMeasure& measure, SamplerState& state) {
  const double total = measure.atom_mass() + measure.continuous_mass();
  if (std::abs(total - 1.0) > 1e-9)
    throw InvariantError("sample_one: kernel mass " + std::to_string(total) + " differs from 1");
  Draw d;
  d.value = measure.inverse_cdf(state.rng.uniform(), &d.from_atom);
  return d;
}

Path sample_path(const ProcessParams& p, const std::vector<double>& grid, std::uint64_t seed, std::uint64_t stream) {
  // A leading 0 is the starting point and is accepted.
  const std::size_t first = !grid.empty() && grid.front() == 0.0 ? 1 : 0;
  if (grid.size() <= first || !(grid[first] > 0.0)) throw DomainError("sample_path: grid needs a time > 0");
  for (std::size_t i = first + 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("sample_path: grid must be strictly increasing");

  SamplerState state(seed, stream);
  Path path;
  path.times.reserve(grid.size() + 1);
  path.times.push_back(0.0);
  path.values.push_back(0.0);
  path.atom_flags.push_back(false);
  for (std::size_t i = first; i < grid.size(); ++i) {
    const double t = grid[i];
    const double s = path.times.back(), x = path.values.back();
    const Draw d = sample_one(transition_measure(p, s, t, x), state);
    path.times.push_back(t);
    path.values.push_back(d.value);
    path.atom_flags.push_back(d.from_atom);
  }
  return path;
}

std::vector<Path> sample_paths(const ProcessParams& p, const std::vector<double>& grid, std::size_t num_paths,
                               std::uint64_t seed) {
  std::vector<Path> paths(num_paths);
  parallel_for(num_paths, [&](std::size_t i) { paths[i] = sample_path(p, grid, seed, i); });
  return paths;
}

std::vector<double> uniform_grid(double horizon, int steps) {
  if (!(horizon > 0.0) || steps < 1) throw DomainError("uniform_grid: need horizon > 0 and steps >= 1");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = horizon * (i + 1) / steps;
  return g;
}

double ks_distance(std::vector<double> samples, const MixedMeasure& measure) {
  if (samples.empty()) throw DomainError("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double v = samples[i];
    d = std::max(d, std::abs(static_cast<double>(j) / n - measure.cdf(v)));
    d = std::max(d, std::abs(static_cast<double>(i) / n - measure.cdf_left(v)));
    i = j;
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_critical_value: bad arguments");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

std::vector<TimeStats> empirical_stats(const std::vector<Path>& paths, const ProcessParams& p) {
  if (paths.size() < 1000) throw DomainError("empirical_stats: requires at least 1000 paths");
  const auto& times = paths.front().times;
  for (const auto& path : paths)
    if (path.times != times) throw DomainError("empirical_stats: paths must share one time grid");

  std::vector<TimeStats> out;
  const double n = static_cast<double>(paths.size());
  for (std::size_t k = 1; k < times.size(); ++k) {
    std::vector<double> xs;
    xs.reserve(paths.size());
    double atoms = 0.0;
    for (const auto& path : paths) {
      xs.push_back(path.values[k]);
      atoms += path.atom_flags[k] ? 1.0 : 0.0;
    }
    TimeStats st;
    st.time = times[k];
    for (double x : xs) st.mean += x;
    st.mean /= n;
    double m2 = 0.0, m3 = 0.0;
    for (double x : xs) {
      const double d = x - st.mean;
      m2 += d * d;
      m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    st.variance = m2 * n / (n - 1.0);
    st.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    st.atom_fraction = atoms / n;
    st.ks = ks_distance(std::move(xs), marginal(p, st.time));
    st.ks_critical = ks_critical_value(paths.size(), 0.01);
    out.push_back(st);
  }
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fm
