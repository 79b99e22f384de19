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

#include "symshadow/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace symshadow {

namespace {

std::atomic<int> g_default_threads{0};

}  // namespace

int default_threads() {
    const int t = g_default_threads.load();
    if (t > 0) return t;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_default_threads(int threads) { g_default_threads.store(threads > 0 ? threads : 0); }

void run_tasks(std::size_t n_tasks, const std::function<void(std::size_t)>& fn, int threads) {
    if (n_tasks == 0) return;
    if (threads <= 0) threads = default_threads();
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n_tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_tasks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(n_tasks);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<TaskRange> split_samples(std::size_t n, std::size_t chunk) {
    std::vector<TaskRange> out;
    if (chunk == 0) chunk = kSamplesPerTask;
    for (std::size_t b = 0; b < n; b += chunk) out.push_back({b, std::min(n, b + chunk)});
    return out;
}

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kLeaf = 128;
    if (values.size() <= kLeaf) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SampleMoments sample_moments(std::span<const double> values) {
    SampleMoments m;
    m.n = values.size();
    if (m.n == 0) return m;
    m.mean = pairwise_sum(values) / static_cast<double>(m.n);
    if (m.n < 2) return m;
    std::vector<double> dev2(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dv = values[i] - m.mean;
        dev2[i] = dv * dv;
    }
    m.variance = pairwise_sum(dev2) / static_cast<double>(m.n - 1);
    return m;
}

}  // namespace symshadow
