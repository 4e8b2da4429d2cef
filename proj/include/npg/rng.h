// Copyright 2026 The npg-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NPG_RNG_H_
#define NPG_RNG_H_

// Counter-based pseudo random streams.
//
// Every random quantity in the library is drawn from a Stream identified by
// (seed, tag, index). The stream key is
//
//   key = Mix(seed ^ Mix(Fnv1a64(tag) ^ Mix(index + 1)))
//
// and the n-th draw (n = 0, 1, ...) of that stream is
//
//   Mix(key + (n + 1) * 0x9E3779B97F4A7C15)
//
// where Mix is the SplitMix64 finalizer. Uniform doubles take the top 53
// bits. Only integer arithmetic is involved, so streams are identical on all
// platforms and can be reproduced in any language.

#include <cstdint>
#include <string_view>

namespace npg {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0)
      : key_(Mix64(seed ^ Mix64(Fnv1a64(tag) ^ Mix64(index + 1)))) {}

  std::uint64_t NextU64() {
    ++counter_;
    return Mix64(key_ + counter_ * kGoldenGamma);
  }

  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; never returns zero.
  double UniformPositive() {
    return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace npg

#endif  // NPG_RNG_H_
