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


#include "symshadow/shadows.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "symshadow/channel.hpp"
#include "symshadow/haar.hpp"
#include "symshadow/linalg.hpp"

namespace symshadow {
namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

TEST(ValidateState, RejectsNonStates) {
    EXPECT_NO_THROW(validate_state(diag2(0.25, 0.75)));
    EXPECT_THROW(validate_state(diag2(0.5, 0.6)), Error);
    EXPECT_THROW(validate_state(diag2(1.5, -0.5)), Error);
    ComplexMatrix nh = diag2(0.5, 0.5);
    nh(0, 1) = 0.1;
    EXPECT_THROW(validate_state(nh), Error);
    try {
        validate_state(diag2(1.5, -0.5));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidState);
    }
}

TEST(SampleOutcome, DegenerateQuotientMeasuresDirectly) {
    const SpaceSpec spec = make_space(Family::AIII, 2, 2, 0);
    const auto records = sample_records(spec, diag2(0.25, 0.75), 100000, 3);
    double ones = 0.0;
    for (const auto& r : records) {
        EXPECT_EQ(r.V, ComplexMatrix::Identity(2, 2));
        ones += r.w;
    }
    const double p = ones / records.size();
    EXPECT_NEAR(p, 0.75, 5.0 * std::sqrt(0.75 * 0.25 / records.size()));
}

TEST(SampleOutcome, ProbabilitiesOfBasisState) {
    RngStream r(4, 0);
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = 1.0;
    for (Family f : {Family::U, Family::AI, Family::CI, Family::DIII}) {
        const SpaceSpec spec = make_space(f, 4);
        const ComplexMatrix v = sample_point(spec, r);
        const auto p = outcome_probabilities(v, rho);
        double total = 0.0;
        for (int w = 0; w < 4; ++w) {
            // Outcome w is measured in the basis V^dagger|w>, so p_w = |V_{w,0}|^2.
            EXPECT_NEAR(p[w], std::norm(v(w, 0)), 1e-12);
            total += p[w];
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(SampleRecords, DeterministicAcrossThreadCounts) {
    RngStream r(5, 0);
    const ComplexMatrix rho = random_pure_state(3, r);
    const SpaceSpec spec = make_space(Family::AI, 3);
    const auto a = sample_records(spec, rho, 10000, 9, 0, 1);
    const auto b = sample_records(spec, rho, 10000, 9, 0, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].w, b[i].w);
        ASSERT_EQ(a[i].V, b[i].V);
    }
}

TEST(Estimate, IdentityObservableIsExact) {
    RngStream r(6, 0);
    const ComplexMatrix rho = random_pure_state(4, r);
    for (const SpaceSpec& spec : {make_space(Family::AI, 4), make_space(Family::BDI, 4, 2, 2), make_space(Family::CI, 4)}) {
        const auto records = sample_records(spec, rho, 2000, 1);
        const EstimationReport rep = estimate_observable(records, ComplexMatrix::Identity(4, 4), spec);
        EXPECT_NEAR(rep.mean, 1.0, 1e-12);
        EXPECT_NEAR(rep.variance, 0.0, 1e-20);
        EXPECT_FALSE(rep.projected);
    }
}

TEST(Estimate, UnbiasedAI) {
    RngStream r(7, 0);
    const ComplexMatrix rho = random_pure_state(4, r);
    const ComplexMatrix o = random_observable(4, 0.3, true, r);
    const SpaceSpec spec = make_space(Family::AI, 4);
    const auto records = sample_records(spec, rho, 100000, 2);
    const EstimationReport rep = estimate_observable(records, o, spec);
    EXPECT_LE(std::abs(rep.mean - (rho * o).trace().real()), 5.0 * rep.sem);
}

TEST(Estimate, AntisymmetricObservableOnBDIIsProjected) {
    RngStream r(8, 0);
    const ComplexMatrix rho = random_pure_state(4, r);
    ComplexMatrix o = ComplexMatrix::Zero(4, 4);
    o(0, 1) = cd(0.0, 1.0);
    o(1, 0) = cd(0.0, -1.0);
    const SpaceSpec spec = make_space(Family::BDI, 4, 2, 2);
    const EstimationReport rep = estimate_observable(sample_records(spec, rho, 5000, 3), o, spec);
    EXPECT_TRUE(rep.projected);
    EXPECT_NEAR(rep.mean, 0.0, 1e-12);
}

TEST(Estimate, SimulateMatchesRecords) {
    RngStream r(9, 0);
    const ComplexMatrix rho = random_pure_state(3, r);
    const ComplexMatrix x = random_observable(3, 0.5, false, r);
    const SpaceSpec spec = make_space(Family::AIII, 3, 2, 1);
    const auto records = sample_records(spec, rho, 5000, 4, 2);
    const auto direct = record_estimates(records, x);
    const std::vector<ComplexMatrix> xs{x};
    const auto streamed = simulate_estimates(spec, rho, xs, 5000, 4, 2);
    ASSERT_EQ(streamed.size(), 1u);
    ASSERT_EQ(streamed[0].size(), direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i) ASSERT_NEAR(streamed[0][i], direct[i], 1e-13);
}

TEST(RandomObservable, Normalization) {
    RngStream r(10, 0);
    for (int d : {2, 5, 8}) {
        for (double w : {0.0, 0.3, 1.0}) {
            for (bool sym : {false, true}) {
                const ComplexMatrix o = random_observable(d, w, sym, r);
                EXPECT_NEAR(o.norm(), 1.0, 1e-12);
                EXPECT_NEAR(std::abs(o.trace()), 0.0, 1e-12);
                EXPECT_TRUE(is_hermitian(o));
                if (sym) EXPECT_EQ(o, o.transpose().eval());
                if (w == 1.0) EXPECT_EQ(o, dephase(o));
            }
        }
    }
    EXPECT_THROW(random_observable(4, 1.5, false, r), Error);
}

TEST(MedianOfMeans, Cases) {
    const std::vector<double> v{1.0, 2.0, 3.0, 6.0};
    EXPECT_DOUBLE_EQ(median_of_means(v, 1), 3.0);
    const std::vector<double> c(10, 2.5);
    EXPECT_DOUBLE_EQ(median_of_means(c, 5), 2.5);
    const std::vector<double> outlier{0.0, 0.0, 0.0, 100.0};
    EXPECT_DOUBLE_EQ(median_of_means(outlier, 4), 0.0);
    EXPECT_THROW(median_of_means(std::vector<double>{}, 1), Error);
}

TEST(SnapSignature, NearestValid) {
    const SnappedSignature exact = snap_signature(Family::AIII, 8, 0.5);
    EXPECT_EQ(exact.spec.s, 4);
    EXPECT_TRUE(exact.warning.empty());
    const SnappedSignature snapped = snap_signature(Family::BDI, 8, 0.3);
    EXPECT_EQ(snapped.spec.s, 2);
    EXPECT_DOUBLE_EQ(snapped.c_actual, 0.25);
    EXPECT_FALSE(snapped.warning.empty());
}

TEST(VarianceSweep, RowCountAndDeterminism) {
    SweepConfig cfg;
    cfg.d = 4;
    cfg.families = {Family::U, Family::AIII};
    cfg.c_grid = {0.0, 0.5, 1.0};
    cfg.diag_weights = {0.0, 0.25, 0.5, 1.0};
    cfg.instances = 5;
    cfg.shots = 200;
    cfg.seed = 3;
    const auto rows = variance_sweep(cfg);
    EXPECT_EQ(rows.size(), 120u);
    for (const auto& row : rows) {
        EXPECT_GE(row.empirical_variance, 0.0);
        EXPECT_DOUBLE_EQ(row.c_actual, static_cast<double>(row.s) / row.d);
        EXPECT_EQ(row.analytic_second_moment.has_value(), row.family == "AIII");
    }
    cfg.threads = 1;
    const auto again = variance_sweep(cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].empirical_variance, again[i].empirical_variance);
}

}  // namespace
}  // namespace symshadow
