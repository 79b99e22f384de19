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


#include "symshadow/rng.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "symshadow/parallel.hpp"

namespace symshadow {
namespace {

TEST(RngStream, SameSeedAndStreamRepeat) {
    RngStream a(7, 3);
    RngStream b(7, 3);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, StreamsDiffer) {
    RngStream a(7, 0);
    RngStream b(7, 1);
    int equal = 0;
    for (int i = 0; i < 1000; ++i) equal += a.next_u64() == b.next_u64();
    EXPECT_EQ(equal, 0);
}

TEST(RngStream, StreamsLookIndependent) {
    // Correlation between paired uniforms of two streams should be ~0.
    RngStream a(1, 10);
    RngStream b(1, 11);
    const int n = 100000;
    double sab = 0.0;
    for (int i = 0; i < n; ++i) sab += (a.uniform() - 0.5) * (b.uniform() - 0.5);
    const double corr = sab / n * 12.0;
    EXPECT_LT(std::abs(corr), 5.0 / std::sqrt(n));
}

TEST(RngStream, UniformRangeAndMean) {
    RngStream r(3, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RngStream, NormalMoments) {
    RngStream r(4, 0);
    const int n = 200000;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        s1 += x;
        s2 += x * x;
    }
    EXPECT_NEAR(s1 / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(RngStream, BelowCoversRange) {
    RngStream r(5, 0);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = r.below(6);
        ASSERT_LT(v, 6u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 6u);
}

TEST(RngStream, SubstreamIsDeterministic) {
    const RngStream base(9, 2);
    RngStream a = base.substream(5);
    RngStream b = base.substream(5);
    RngStream c = base.substream(6);
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
}

TEST(Parallel, SplitSamplesCoversRange) {
    const auto ranges = split_samples(10000, 4096);
    ASSERT_EQ(ranges.size(), 3u);
    EXPECT_EQ(ranges.front().begin, 0u);
    EXPECT_EQ(ranges.back().end, 10000u);
    for (std::size_t i = 1; i < ranges.size(); ++i) EXPECT_EQ(ranges[i].begin, ranges[i - 1].end);
}

TEST(Parallel, RunTasksResultIndependentOfThreadCount) {
    std::vector<double> one(64);
    std::vector<double> four(64);
    const RngStream base(11, 0);
    auto fill = [&](std::vector<double>& out) {
        return [&](std::size_t t) {
            RngStream r = base.substream(t);
            out[t] = r.uniform();
        };
    };
    run_tasks(64, fill(one), 1);
    run_tasks(64, fill(four), 4);
    EXPECT_EQ(one, four);
}

TEST(Parallel, SampleMoments) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const SampleMoments m = sample_moments(v);
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_DOUBLE_EQ(m.variance, 5.0 / 3.0);
    EXPECT_EQ(m.n, 4u);
    EXPECT_DOUBLE_EQ(pairwise_sum(v), 10.0);
}

}  // namespace
}  // namespace symshadow
