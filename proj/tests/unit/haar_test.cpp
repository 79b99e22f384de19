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


#include "symshadow/haar.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "symshadow/linalg.hpp"
#include "symshadow/momentlab.hpp"
#include "symshadow/symspace.hpp"

namespace symshadow {
namespace {

ComplexMatrix unit(int d, int i, int j) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

TEST(Ginibre, DeterministicForSeed) {
    RngStream a(7, 0);
    RngStream b(7, 0);
    EXPECT_EQ(ginibre(GinibreKind::Complex, 2, a), ginibre(GinibreKind::Complex, 2, b));
}

TEST(Ginibre, QuaternionBlockStructure) {
    RngStream r(3, 0);
    const ComplexMatrix z = ginibre(GinibreKind::Quaternion, 2, r);
    ASSERT_EQ(z.rows(), 4);
    const ComplexMatrix a = z.topLeftCorner(2, 2);
    const ComplexMatrix b = z.bottomLeftCorner(2, 2);
    EXPECT_EQ(z.topRightCorner(2, 2), (-b.conjugate()).eval());
    EXPECT_EQ(z.bottomRightCorner(2, 2), a.conjugate());
}

TEST(Ginibre, RealEntriesHaveZeroMean) {
    RngStream r(5, 0);
    const int n = 100000;
    RealMatrix sum = RealMatrix::Zero(3, 3);
    for (int t = 0; t < n; ++t) {
        const ComplexMatrix g = ginibre(GinibreKind::Real, 3, r);
        ASSERT_TRUE(is_real(g, 0.0));
        sum += g.real();
    }
    // Entries are standard normal, so the sem of each mean is 1/sqrt(n).
    EXPECT_LT((sum / n).cwiseAbs().maxCoeff(), 5.0 / std::sqrt(n));
}

TEST(HaarUnitary, IsUnitary) {
    RngStream r(1, 0);
    for (int d : {1, 2, 5, 16, 33}) {
        for (int t = 0; t < 50; ++t) EXPECT_LE(unitarity_residual(haar_unitary(d, r)), kExactTol);
    }
}

TEST(HaarUnitary, FirstMomentIsMaximallyMixed) {
    const MatrixEstimate est = mc_twirl(make_space(Family::U, 2), 1, unit(2, 0, 0), 100000, 1);
    EXPECT_LE(est.max_z(ComplexMatrix::Identity(2, 2) / 2.0), 5.0);
}

TEST(HaarUnitary, LeftInvariance) {
    // Statistics of |(FU)_{ij}|^2 match those of |U_{ij}|^2.
    RngStream fr(2, 0);
    const ComplexMatrix f = haar_unitary(3, fr);
    RngStream r(2, 1);
    const int n = 100000;
    RealMatrix s_plain = RealMatrix::Zero(3, 3);
    RealMatrix s_left = RealMatrix::Zero(3, 3);
    for (int t = 0; t < n; ++t) {
        const ComplexMatrix u = haar_unitary(3, r);
        s_plain += u.cwiseAbs2();
        s_left += (f * u).cwiseAbs2();
    }
    // |U_ij|^2 has mean 1/3 and variance 1/18 at d = 3.
    const double sem = std::sqrt(2.0 / 18.0 / n);
    EXPECT_LT(((s_plain - s_left) / n).cwiseAbs().maxCoeff(), 5.0 * sem);
}

TEST(HaarOrthogonal, MembershipAndDeterminant) {
    RngStream r(4, 0);
    for (int d : {1, 2, 3, 6}) {
        for (int t = 0; t < 50; ++t) {
            const ComplexMatrix o = haar_orthogonal(d, false, r);
            EXPECT_TRUE(is_real(o, 0.0));
            EXPECT_LE(max_abs(o.transpose() * o - ComplexMatrix::Identity(d, d)), kExactTol);
            EXPECT_NEAR(std::abs(o.determinant().real()), 1.0, 1e-12);
            const ComplexMatrix so = haar_orthogonal(d, true, r);
            EXPECT_NEAR(so.determinant().real(), 1.0, 1e-12);
        }
    }
}

TEST(HaarOrthogonal, BothDeterminantsOccur) {
    RngStream r(5, 0);
    int negative = 0;
    for (int t = 0; t < 200; ++t) negative += haar_orthogonal(3, false, r).determinant().real() < 0.0;
    EXPECT_GT(negative, 60);
    EXPECT_LT(negative, 140);
}

TEST(HaarOrthogonal, FirstMomentOfOffDiagonalVanishes) {
    const MatrixEstimate est = mc_twirl(make_space(Family::O, 3), 1, unit(3, 0, 1), 100000, 2);
    EXPECT_LE(est.max_z(ComplexMatrix::Zero(3, 3)), 5.0);
}

TEST(HaarSymplectic, Membership) {
    RngStream r(6, 0);
    for (int d : {2, 4, 8, 12}) {
        const ComplexMatrix j = symplectic_form(d);
        for (int t = 0; t < 50; ++t) {
            const ComplexMatrix u = haar_symplectic(d, r);
            EXPECT_LE(unitarity_residual(u), kExactTol);
            EXPECT_LE(max_abs(u.transpose() * j * u - j), kExactTol);
        }
    }
}

TEST(HaarSymplectic, FirstMoment) {
    const MatrixEstimate est = mc_twirl(make_space(Family::SP, 4), 1, unit(4, 0, 0), 100000, 3);
    EXPECT_LE(est.max_z(ComplexMatrix::Identity(4, 4) / 4.0), 5.0);
}

TEST(HaarSymplectic, Sp2EntryIsUniform) {
    // SP(2) = SU(2), where |U_11|^2 is uniform on [0, 1].
    RngStream r(7, 0);
    const int n = 100000;
    std::vector<double> v(n);
    for (auto& x : v) x = std::norm(haar_symplectic(2, r)(0, 0));
    std::sort(v.begin(), v.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        ks = std::max({ks, std::abs(v[i] - static_cast<double>(i) / n), std::abs(v[i] - static_cast<double>(i + 1) / n)});
    }
    EXPECT_LT(ks, 1.628 / std::sqrt(n));  // 1% critical value
}

TEST(Haar, RejectsBadDimensions) {
    RngStream r(0, 0);
    EXPECT_THROW(haar_unitary(0, r), Error);
    EXPECT_THROW(haar_symplectic(3, r), Error);
}

TEST(Linalg, Predicates) {
    ComplexMatrix s(2, 2);
    s << 1.0, 2.0, 2.0, 3.0;
    EXPECT_TRUE(is_symmetric(s));
    EXPECT_TRUE(is_hermitian(s));
    EXPECT_TRUE(is_real(s));
    EXPECT_FALSE(is_antisymmetric(s));
    ComplexMatrix a(2, 2);
    a << 0.0, cd(0.0, 1.0), cd(0.0, -1.0), 0.0;
    EXPECT_TRUE(is_antisymmetric(a));
    EXPECT_TRUE(is_hermitian(a));
    EXPECT_FALSE(is_real(a));
    EXPECT_TRUE(is_unitary(a));
    EXPECT_FALSE(is_symmetric(a + ComplexMatrix::Constant(2, 2, 1e-11)));
    EXPECT_TRUE(is_symmetric(s + ComplexMatrix::Constant(2, 2, 1e-13)));
}

TEST(Linalg, SymplecticFormAndPartner) {
    const ComplexMatrix j = symplectic_form(4);
    EXPECT_LE(max_abs(j * j + ComplexMatrix::Identity(4, 4)), 0.0);
    EXPECT_EQ(symplectic_partner(0, 4), 2);
    EXPECT_EQ(symplectic_partner(3, 4), 1);
    for (int i = 0; i < 4; ++i) EXPECT_NE(std::abs(j(i, symplectic_partner(i, 4))), 0.0);
}

}  // namespace
}  // namespace symshadow
