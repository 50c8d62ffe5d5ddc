// Copyright 2026 The swapq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWAPQ_RNG_HPP
#define SWAPQ_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace swapq {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Seed of the i-th sample stream:
///   stream_i = mix64(master_seed ^ mix64(i + 0x9E3779B97F4A7C15)).
/// Part of the stable record format; changing it changes every CSV.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(master_seed ^ mix64(index + kGoldenGamma));
}

/// SplitMix64: the k-th output is mix64(seed + k * 0x9E3779B97F4A7C15), so the
/// stream is a pure function of (seed, counter). Uniform doubles use the top
/// 53 bits; normals use Box-Muller with both outputs consumed in order.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }

  /// Standard normal deviate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open_low()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Exponential with unit rate.
  double exponential() { return -std::log(uniform_open_low()); }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace swapq

#endif  // SWAPQ_RNG_HPP
