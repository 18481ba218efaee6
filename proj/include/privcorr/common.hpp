// Copyright 2026 The privcorr Authors
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

#ifndef PRIVCORR_COMMON_HPP_
#define PRIVCORR_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace privcorr {

// A violated precondition on an operation's inputs.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested computation exceeds a configured size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

// Seeded random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; conversions to real numbers are done
// here rather than through <random> distributions so that draws are
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double Uniform() {
    uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Uniform index in [0, n) by rejection sampling.
  uint64_t Index(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Draws an index from a discrete distribution given by `probs`.
  template <typename Range>
  size_t Categorical(const Range& probs) {
    double u = Uniform();
    size_t last = 0;
    size_t i = 0;
    for (double p : probs) {
      if (p > 0.0) {
        if (u < p) return i;
        u -= p;
        last = i;
      }
      ++i;
    }
    return last;
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finaliser; used to derive independent substream seeds.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the substream identified by (a, b) under `master`.
constexpr uint64_t SubstreamSeed(uint64_t master, uint64_t a, uint64_t b = 0) {
  return Mix64(Mix64(Mix64(master) ^ (a + 0x632be59bd9b4e019ULL)) ^
               (b + 0x85157af5ULL));
}

}  // namespace privcorr

#endif  // PRIVCORR_COMMON_HPP_
