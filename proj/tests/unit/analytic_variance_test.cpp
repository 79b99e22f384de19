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


#include "symshadow/analytic_variance.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "symshadow/channel.hpp"
#include "symshadow/shadows.hpp"

namespace symshadow {
namespace {

TEST(Coefficients, SmallCases) {
    const ExactVarianceCoefficients a = coefficients_exact(Family::AIII, 2, 0);
    EXPECT_EQ(a.lambda_D, Rational::make(7, 15));
    EXPECT_EQ(a.lambda_O, Rational::make(4, 15));
    const ExactVarianceCoefficients b = coefficients_exact(Family::BDI, 4, 0);
    EXPECT_EQ(b.lambda_O, Rational::make(8, 25));
    const VarianceCoefficients f = coefficients(Family::AIII, 2, 0);
    EXPECT_NEAR(f.lambda_D, 7.0 / 15.0, 1e-15);
}

TEST(Coefficients, Validation) {
    EXPECT_THROW(coefficients(Family::AI, 4, 0), Error);
    EXPECT_THROW(coefficients(Family::AIII, 4, 1), Error);
    EXPECT_THROW(coefficients(Family::AIII, 4, 6), Error);
    EXPECT_THROW(coefficients(Family::BDI, 1, 1), Error);
}

TEST(Coefficients, EigenvaluesAgreeWithChannelExactly) {
    for (int d = 2; d <= 64; ++d) {
        for (int s = -d; s <= d; s += 2) {
            const SpaceSpec spec = make_space(Family::AIII, d, (d + s) / 2, (d - s) / 2);
            const Rational alpha = alpha_beta(spec).alpha_exact;
            const Rational base = (Rational::make(1, 1) - alpha) / Rational::make(d + 1, 1);
            const ExactVarianceCoefficients c = coefficients_exact(Family::AIII, d, s);
            ASSERT_EQ(c.lambda_D, base + alpha) << "d=" << d << " s=" << s;
            ASSERT_EQ(c.lambda_O, base) << "d=" << d << " s=" << s;
        }
    }
}

TEST(SecondMoment, LargeDimensionApproachesGroupShadows) {
    RngStream r(1, 0);
    const int d = 200;
    const ComplexMatrix rho = random_pure_state(d, r);
    const ComplexMatrix o = random_observable(d, 0.0, true, r);
    const double aiii = second_moment_aiii(rho, o, make_space(Family::AIII, d, d / 2, d / 2));
    EXPECT_NEAR(aiii / unitary_leading_term(rho, o), 1.0, 0.05);
    const double bdi = second_moment_bdi(rho, o, make_space(Family::BDI, d, d / 2, d / 2));
    EXPECT_NEAR(bdi / orthogonal_leading_term(rho, o), 1.0, 0.05);
}

TEST(SecondMoment, UnitaryOverOrthogonalLeadingTermRatio) {
    RngStream r(2, 0);
    const int d = 64;
    const ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    const ComplexMatrix o = random_observable(d, 0.0, true, r);
    const double ratio = unitary_leading_term(rho, o) / orthogonal_leading_term(rho, o);
    EXPECT_GE(ratio, 1.4);
    EXPECT_LE(ratio, 2.6);
}

TEST(SecondMoment, DiagonalBoundAtFixedC) {
    RngStream r(3, 0);
    const double c = 0.5;
    for (int d : {16, 32, 64, 128}) {
        const ComplexMatrix rho = random_pure_state(d, r);
        const ComplexMatrix o = random_observable(d, 1.0, false, r);
        const int s = static_cast<int>(c * d);
        const double value = second_moment_aiii(rho, o, make_space(Family::AIII, d, (d + s) / 2, (d - s) / 2));
        EXPECT_LE(value, diagonal_bound(o, c) * 1.5) << "d=" << d;
    }
}

TEST(SecondMoment, MatchesMonteCarlo) {
    SweepConfig cfg;
    cfg.d = 8;
    cfg.families = {Family::AIII, Family::BDI};
    cfg.c_grid = {0.0};
    cfg.diag_weights = {0.0};
    cfg.symmetric = true;
    cfg.shots = 100000;
    cfg.seed = 4;
    for (const ResultRow& row : variance_sweep(cfg)) {
        const double n = static_cast<double>(row.n_shots);
        const double empirical = row.empirical_variance * (n - 1.0) / n + row.mean * row.mean;
        ASSERT_TRUE(row.analytic_second_moment.has_value());
        EXPECT_NEAR(*row.analytic_second_moment / empirical, 1.0, 0.05) << row.family;
    }
}

TEST(SecondMoment, RejectsWrongFamily) {
    const ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
    EXPECT_THROW(second_moment_aiii(rho, rho, make_space(Family::BDI, 4, 2, 2)), Error);
    EXPECT_THROW(analytic_second_moment(rho, rho, make_space(Family::AI, 4)), Error);
}

}  // namespace
}  // namespace symshadow
