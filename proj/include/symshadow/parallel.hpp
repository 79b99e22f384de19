// Copyright 2026 The symshadow Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace symshadow {

/// Worker count used when a caller passes threads <= 0. Defaults to the
/// hardware concurrency.
int default_threads();
void set_default_threads(int threads);

/// Runs fn(0..n_tasks-1) on up to `threads` workers. Task order of execution
/// is unspecified; callers write per-task results into slots and reduce them
/// in index order so output never depends on the thread count. The first
/// exception thrown by a task is rethrown after all workers join.
void run_tasks(std::size_t n_tasks, const std::function<void(std::size_t)>& fn, int threads = 0);

/// Monte-Carlo work is cut into fixed-size chunks, one random stream per chunk.
inline constexpr std::size_t kSamplesPerTask = 4096;

struct TaskRange {
    std::size_t begin;
    std::size_t end;
};

std::vector<TaskRange> split_samples(std::size_t n, std::size_t chunk = kSamplesPerTask);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

/// Mean and unbiased sample variance by two passes over pairwise sums.
struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;
    std::size_t n = 0;
};
SampleMoments sample_moments(std::span<const double> values);

}  // namespace symshadow
