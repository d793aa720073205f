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

#include "cns/random.h"

#include <cmath>
#include <numbers>

namespace cns {

double CounterRng::Normal() {
  // 1 - U keeps the log argument in (0, 1].
  double u1 = 1.0 - Uniform();
  double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t DeriveStreamKey(std::uint64_t master_seed, std::string_view label,
                              std::uint64_t task_index) {
  std::uint64_t k = Mix64(master_seed + CounterRng::kGamma);
  k = Mix64(k ^ Fnv1a64(label));
  return Mix64(k + (task_index + 1) * 0xd1b54a32d192ed03ULL);
}

}  // namespace cns
