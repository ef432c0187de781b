// Copyright 2026 The Aphorist Authors.
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

#ifndef APHORIST_RNG_HPP_
#define APHORIST_RNG_HPP_

#include <cstdint>
#include <limits>
#include <random>

namespace aphorist {

// Seeded random source. All sampling goes through the two primitives below
// instead of std::*_distribution, whose output is implementation-defined;
// this keeps seeded runs byte-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng from_entropy() { return Rng(std::random_device{}()); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform index in [0, n). Rejection sampling, no modulo bias.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t raw;
    do {
      raw = next_u64();
    } while (raw >= limit);
    return static_cast<std::size_t>(raw % bound);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aphorist

#endif  // APHORIST_RNG_HPP_
