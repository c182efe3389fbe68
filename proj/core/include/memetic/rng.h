// Copyright 2026 The memetic Authors.
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

#ifndef MEMETIC_RNG_H_
#define MEMETIC_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace memetic {

// Seeded pseudo-random source shared by every stochastic operator.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Bounded draws do not go through std::uniform_int_distribution
// (its algorithm is implementation-defined); they use rejection sampling on
// the raw 64-bit output so a seed reproduces the same run with any standard
// library:
//
//   uniform_index(n): draw x until x >= (2^64 - n) mod n, return x mod n
//   fair_bit():       top bit of one draw
//   uniform01():      (x >> 11) * 2^-53
//   shuffle:          Fisher-Yates from the back, j = uniform_index(i + 1)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  bool fair_bit() { return (engine_() >> 63) != 0; }

  // Uniform real in [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace memetic

#endif  // MEMETIC_RNG_H_
