// Copyright 2026 The Cognitive Neurosecurity Authors
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

#ifndef CNS_RANDOM_H_
#define CNS_RANDOM_H_

#include <cstdint>
#include <limits>
#include <string_view>

namespace cns {

// SplitMix64 output finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit FNV-1a.
constexpr std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based generator: output i is Mix64(key + (i + 1) * gamma).
// Any position is reachable in O(1), so streams never depend on how
// many numbers some other task consumed.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit CounterRng(std::uint64_t key = 0, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Mix64(key_ + (++counter_) * kGamma); }

  void discard(std::uint64_t n) { counter_ += n; }
  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // Standard normal via Box-Muller; consumes exactly two outputs.
  double Normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

// Key for stream (master seed, label, task index).
std::uint64_t DeriveStreamKey(std::uint64_t master_seed, std::string_view label,
                              std::uint64_t task_index = 0);

inline CounterRng MakeStream(std::uint64_t master_seed, std::string_view label,
                             std::uint64_t task_index = 0) {
  return CounterRng(DeriveStreamKey(master_seed, label, task_index));
}

}  // namespace cns

#endif  // CNS_RANDOM_H_
