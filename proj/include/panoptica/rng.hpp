// Copyright 2026 The Panoptica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace panoptica {

// Deterministic generator with a fixed algorithm so that seeded outputs are
// reproducible across platforms and standard-library versions. Standard
// <random> distributions are implementation-defined and must not be used
// anywhere a seed reaches persisted output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64() {
    // SplitMix64 step.
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double NextDouble() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextDouble(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t UniformIndex(std::uint64_t n) { return NextU64() % n; }

  double UniformAngle() { return Uniform(0.0, 2.0 * std::numbers::pi); }

  /// Fisher-Yates permutation of 0..n-1.
  std::vector<int> Permutation(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(UniformIndex(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    return perm;
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ull;
  }
  return hash;
}

/// Derives the sub-seed for one role (and optional index) of a run, so that
/// independent random streams can be re-created in isolation. The scheme is
/// part of the persisted-output contract; see docs/formats.md.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view role, std::uint64_t index = 0) {
  Rng mixer(seed ^ Fnv1a64(role) ^ (index * 0x9E3779B97F4A7C15ull));
  return mixer.NextU64();
}

}  // namespace panoptica
