// Copyright 2026 The zsg Authors.
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

// Deterministic random streams.
//
// Every stream is a std::mt19937_64 (whose output sequence is fixed by the
// standard) seeded through a SplitMix64 mixer, and uniform variates are built
// from the top 53 bits directly, so runs reproduce bit-for-bit across
// standard libraries.

#ifndef ZSG_RNG_HPP_
#define ZSG_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

namespace zsg {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for stream (a, b) under `base`. Depends only on the three values.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b) {
  return mix64(mix64(mix64(base) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

// Stream tags used to split a run seed.
inline constexpr std::uint64_t kStreamPlayer1 = 1;
inline constexpr std::uint64_t kStreamPlayer2 = 2;
inline constexpr std::uint64_t kStreamEnvironment = 3;

class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF draw over `probs` in index order.
  int sample(std::span<const double> probs) {
    const double u = uniform();
    double cumulative = 0.0;
    int last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      cumulative += probs[i];
      last_positive = static_cast<int>(i);
      if (u < cumulative) return last_positive;
    }
    return last_positive;
  }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zsg

#endif  // ZSG_RNG_HPP_
