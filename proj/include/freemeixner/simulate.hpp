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

// Exact sampling from transition kernels and cadlag path generation on time grids.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "freemeixner/fm_kernel.hpp"

namespace fm {

/// Counter-based 64-bit generator: the i-th output of stream k under seed s is
/// mix(key + (i + 1) * 0x9E3779B97F4A7C15) with key = mix(s ^ mix(k + 0x632BE59BD9B4E019))
/// and mix the SplitMix64 finalizer. Streams are independent of each other and of
/// the order in which they are consumed.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  result_type operator()();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SamplerState {
  CounterRng rng;

  explicit SamplerState(std::uint64_t seed, std::uint64_t stream = 0) : rng(seed, stream) {}
};

struct Draw {
  double value = 0.0;
  bool from_atom = false;
};

/// One draw from a kernel: the atom with probability equal to its weight, otherwise
/// inverse CDF of the continuous part. Requires total mass 1 within 1e-9.
Draw sample_one(const MixedMeasure& measure, SamplerState& state);
inline Draw sample_one(const TransitionKernel& kernel, SamplerState& state) {
  return sample_one(kernel.measure, state);
}

struct Path {
  std::vector<double> times;  // times[0] = 0
  std::vector<double> values;  // values[0] = 0
  std::vector<bool> atom_flags;
};

/// Samples X along {0} U grid by chaining P_{t_i, t_{i+1}}(x_i, .); the grid may start with 0.
Path sample_path(const ProcessParams& p, const std::vector<double>& grid, std::uint64_t seed,
                 std::uint64_t stream = 0);

/// num_paths independent paths; path i uses stream i of `seed`, so the result
/// does not depend on how the work is split across threads.
std::vector<Path> sample_paths(const ProcessParams& p, const std::vector<double>& grid, std::size_t num_paths,
                               std::uint64_t seed);

/// Uniform grid T/n, 2T/n, ..., T.
std::vector<double> uniform_grid(double horizon, int steps);

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and a measure;
/// atoms (jumps of the CDF) are handled through left limits.
double ks_distance(std::vector<double> samples, const MixedMeasure& measure);
/// Asymptotic critical value sqrt(-ln(alpha/2)/2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

struct TimeStats {
  double time = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double atom_fraction = 0.0;
  double ks = 0.0;
  double ks_critical = 0.0;  // alpha = 0.01
};

/// Per-time moments and KS distance to the marginal law. Requires >= 1000 paths on a common grid.
std::vector<TimeStats> empirical_stats(const std::vector<Path>& paths, const ProcessParams& p);

/// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fm
