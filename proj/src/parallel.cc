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

#include "cns/parallel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cns {
namespace {

std::atomic<std::size_t> g_threads{1};

constexpr std::size_t kSamplesPerChunk = 1024;
constexpr std::size_t kMaxChunks = 256;

}  // namespace

void SetThreadCount(std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  g_threads.store(threads);
}

std::size_t ThreadCount() { return g_threads.load(); }

void ParallelFor(std::size_t tasks, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min(ThreadCount(), tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::size_t ChunkCount(std::size_t samples) {
  if (samples == 0) return 0;
  std::size_t c = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  return std::min(c, kMaxChunks);
}

Chunk ChunkAt(std::size_t samples, std::size_t index) {
  std::size_t chunks = ChunkCount(samples);
  std::size_t base = samples / chunks;
  std::size_t extra = samples % chunks;
  std::size_t begin = index * base + std::min(index, extra);
  std::size_t len = base + (index < extra ? 1 : 0);
  return {begin, begin + len};
}

}  // namespace cns
