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


#include "symshadow/momentlab.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "symshadow/channel.hpp"
#include "symshadow/haar.hpp"
#include "symshadow/linalg.hpp"

namespace symshadow {
namespace {

TEST(PairPartitions, Counts) {
    for (int k = 1; k <= 6; ++k) {
        EXPECT_EQ(pair_partitions(k).size(), double_factorial_odd(k)) << "k=" << k;
    }
    EXPECT_EQ(pair_partitions(4).size(), 105u);
    const auto one = pair_partitions(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].pairs, (std::vector<std::pair<int, int>>{{0, 1}}));
    const auto two = pair_partitions(2);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_EQ(two[0].pairs, (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));
    EXPECT_EQ(two[2].pairs, (std::vector<std::pair<int, int>>{{0, 3}, {1, 2}}));
}

TEST(PairPartitions, AreDistinctPerfectMatchings) {
    const auto all = pair_partitions(4);
    for (std::size_t a = 0; a < all.size(); ++a) {
        std::vector<int> seen(8, 0);
        for (const auto& [x, y] : all[a].pairs) {
            EXPECT_LT(x, y);
            ++seen[x];
            ++seen[y];
        }
        for (int c : seen) EXPECT_EQ(c, 1);
        for (std::size_t b = a + 1; b < all.size(); ++b) EXPECT_FALSE(all[a] == all[b]);
    }
}

TEST(Deltas, SmallCases) {
    const std::vector<int> id{0, 1};
    const std::vector<int> i12{1, 2};
    EXPECT_EQ(delta_a(id, i12, i12), 1.0);
    const std::vector<int> swap{1, 0};
    EXPECT_EQ(delta_a(swap, i12, i12), 0.0);

    const PairPartition m{{{0, 1}}};
    const std::vector<int> i34{3, 4};
    const std::vector<int> i33{3, 3};
    EXPECT_EQ(delta_bd(m, i34), 0.0);
    EXPECT_EQ(delta_bd(m, i33), 1.0);

    for (int a = 0; a < 4; ++a) {
        const std::vector<int> partner{a, symplectic_partner(a, 4)};
        const std::vector<int> same{a, a};
        EXPECT_EQ(std::abs(delta_c(m, partner, 4)), 1.0);
        EXPECT_EQ(delta_c(m, same, 4), 0.0);
    }
    EXPECT_THROW(delta_bd(m, std::vector<int>{1, 2, 3}), Error);
}

TEST(McTwirl, AIFirstOrder) {
    RngStream r(1, 0);
    const int d = 3;
    const ComplexMatrix a = ginibre(GinibreKind::Complex, d, r);
    const MatrixEstimate est = mc_twirl(make_space(Family::AI, d), 1, a, 100000, 2);
    const ComplexMatrix expected = (a.trace() * ComplexMatrix::Identity(d, d) + a.transpose()) / (d + 1.0);
    EXPECT_LE(est.max_z(expected), 5.0);
}

TEST(McTwirl, UnitaryOffDiagonalVanishes) {
    ComplexMatrix e12 = ComplexMatrix::Zero(3, 3);
    e12(0, 1) = 1.0;
    EXPECT_LE(mc_twirl(make_space(Family::U, 3), 1, e12, 50000, 3).max_z(ComplexMatrix::Zero(3, 3)), 5.0);
}

TEST(McTwirl, SecondOrderTraceIsPreserved) {
    RngStream r(4, 0);
    const ComplexMatrix a = ginibre(GinibreKind::Complex, 4, r);
    const MatrixEstimate est = mc_twirl(make_space(Family::AI, 2), 2, a, 2000, 5);
    EXPECT_NEAR(std::abs(est.mean.trace() - a.trace()), 0.0, 1e-10);
    EXPECT_THROW(mc_twirl(make_space(Family::AI, 2), 4, a, 10, 5), Error);
    EXPECT_THROW(mc_twirl(make_space(Family::AI, 2), 2, ComplexMatrix::Zero(3, 3), 10, 5), Error);
}

TEST(McTwirl, AITwirlIsNotAProjector) {
    // The first-order AI twirl acts as -1/(d+1) on antisymmetric A, so
    // applying it twice gives +1/(d+1)^2.
    const int d = 3;
    auto twirl = [d](const ComplexMatrix& a) {
        return ((a.trace() * ComplexMatrix::Identity(d, d) + a.transpose()) / (d + 1.0)).eval();
    };
    RngStream r(6, 0);
    const ComplexMatrix g = ginibre(GinibreKind::Complex, d, r);
    const ComplexMatrix anti = g - g.transpose();
    EXPECT_LE(max_abs(twirl(anti) + anti / (d + 1.0)), 1e-14);
    EXPECT_LE(max_abs(twirl(twirl(anti)) - anti / ((d + 1.0) * (d + 1.0))), 1e-14);
    EXPECT_GT(max_abs(twirl(twirl(anti)) - twirl(anti)), 0.1);
    const MatrixEstimate est = mc_twirl(make_space(Family::AI, d), 1, anti, 100000, 7);
    EXPECT_LE(est.max_z(twirl(anti)), 5.0);
}

TEST(Fit, AIRecoversAlpha) {
    const MomentFit fit = fit_channel_coefficients(make_space(Family::AI, 3), 1000000, 1);
    EXPECT_LE(std::abs(fit.alpha - 1.0 / 9.0), 5.0 * fit.alpha_sem);
    EXPECT_LT(fit.residual_norm, 3.0 * fit.aggregate_sem);
    const double diff = fit.coefficient("ab.ij") - fit.coefficient("ai.bj");
    const double sem = std::hypot(fit.standard_error("ab.ij"), fit.standard_error("ai.bj"));
    EXPECT_LE(std::abs(diff), 5.0 * sem + 1e-12);
    EXPECT_LE(fit.superoperator.max_z(build_superoperator(make_space(Family::AI, 3)), 1e-12), 5.0);
}

TEST(Fit, CIThirdCoefficientVanishes) {
    const MomentFit fit = fit_channel_coefficients(make_space(Family::CI, 4), 300000, 2);
    const ChannelCoefficients c = alpha_beta(make_space(Family::CI, 4));
    EXPECT_LE(std::abs(fit.coefficient("Jaj.Jbi")), 5.0 * fit.standard_error("Jaj.Jbi") + 1e-12);
    EXPECT_LE(std::abs(fit.alpha - c.alpha), 5.0 * fit.alpha_sem);
    EXPECT_LE(std::abs(fit.beta - c.beta), 5.0 * fit.beta_sem);
}

TEST(Fit, DegenerateBasisThrows) {
    try {
        fit_channel_coefficients(make_space(Family::CI, 2), 1000, 3);
        FAIL() << "expected a degenerate fit";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FitDegenerate);
    }
}

TEST(Fit, DeterministicAcrossThreadCounts) {
    const MomentFit a = fit_channel_coefficients(make_space(Family::AIII, 4, 3, 1), 20000, 4, 1);
    const MomentFit b = fit_channel_coefficients(make_space(Family::AIII, 4, 3, 1), 20000, 4, 3);
    EXPECT_EQ(a.coefficients, b.coefficients);
}

TEST(TwirlChannel, MatchesClosedForm) {
    for (const SpaceSpec& spec : {make_space(Family::AIII, 3, 2, 1), make_space(Family::CI, 4), make_space(Family::BDI, 3, 2, 1)}) {
        const MatrixEstimate est = superoperator_from_twirl(spec, 100000, 5);
        EXPECT_LE(est.max_z(build_superoperator(spec), 1e-12), 5.0) << describe(spec);
    }
}

TEST(MomentIdentities, AIQubit) {
    for (const auto& m : moment_identities_AI(2, 200000, 6)) EXPECT_LE(m.z(), 5.0) << m.name;
    const auto rows = moment_identities_AI(2, 10, 6);
    EXPECT_DOUBLE_EQ(rows[0].expected, 8.0 / 15.0);
    EXPECT_DOUBLE_EQ(rows[1].expected, 1.0 / 5.0);
}

TEST(Equivariance, KWithinNoise) {
    for (const SpaceSpec& spec : {make_space(Family::AI, 3), make_space(Family::AIII, 4, 2, 2)}) {
        EXPECT_LE(k_equivariance_check(spec, 100000, 7).max_z, 5.0) << describe(spec);
        EXPECT_GT(k_equivariance_check(spec, 100000, 7, true).max_z, 5.0) << describe(spec);
    }
}

TEST(Equivariance, NormalizerCommutesWithChannel) {
    for (const SpaceSpec& spec : {make_space(Family::AI, 4), make_space(Family::AIII, 4, 2, 2), make_space(Family::CII, 4, 1, 1)}) {
        EXPECT_LE(h_equivariance_check(spec, 100, 8).max_residual, 1e-12) << describe(spec);
        EXPECT_GT(h_equivariance_check(spec, 100, 8, true).max_residual, 1e-6) << describe(spec);
    }
}

}  // namespace
}  // namespace symshadow
