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

#ifndef CNS_PARALLEL_H_
#define CNS_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace cns {

// Process-wide worker count used by Monte Carlo loops. 0 means one per core.
void SetThreadCount(std::size_t threads);
std::size_t ThreadCount();

// Runs body(task) for task in [0, tasks). Tasks are claimed dynamically, so
// callers must write results into per-task slots and merge in task order.
void ParallelFor(std::size_t tasks, const std::function<void(std::size_t)>& body);

// Fixed chunking of `samples` into tasks. The split depends only on the
// sample count, never on the thread count.
struct Chunk {
  std::size_t begin;
  std::size_t end;
};
std::size_t ChunkCount(std::size_t samples);
Chunk ChunkAt(std::size_t samples, std::size_t index);

}  // namespace cns

#endif  // CNS_PARALLEL_H_
