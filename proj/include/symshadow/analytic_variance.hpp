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

// Closed-form second moments E[o^2] of the AIII and BDI shadow estimators for
// a traceless observable. Both are assembled from three third-moment
// coefficients c1, c2, c3 of the ensemble and the operator X = M^+(O_0).

#include "symshadow/channel.hpp"
#include "symshadow/common.hpp"
#include "symshadow/symspace.hpp"

namespace symshadow {

struct VarianceCoefficients {
    Family family = Family::AIII;
    int d = 0;
    int s = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double lambda_D = 0.0;
    double lambda_O = 0.0;
};

struct ExactVarianceCoefficients {
    Rational c1, c2, c3, lambda_D, lambda_O;
};

/// Double-precision evaluation. Requires family AIII or BDI, d >= 2,
/// |s| <= d and s = d (mod 2).
VarianceCoefficients coefficients(Family family, int d, int s);

/// The same quantities in exact rational arithmetic.
ExactVarianceCoefficients coefficients_exact(Family family, int d, int s);

/// E[o^2] for AIII:
///   c1 (tr X^2 + 2 tr rho X^2)
///   + c2 (2 tr(A(rho) X^2) + 2 tr rho{D, X} + tr D^2) + c3 tr rho D^2
/// with D = A(X).
double second_moment_aiii(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec);

/// E[o^2] for BDI, with Y~ = (Y + Y^T)/2:
///   c1 (2 tr X~^2 + 8 tr rho~ X~^2)
///   + c2 (4 tr(A(rho) X~^2) + 4 tr rho~{D, X~} + tr D^2) + c3 tr rho~ D^2
double second_moment_bdi(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec);

/// Dispatches on spec.family.
double analytic_second_moment(const ComplexMatrix& rho, const ComplexMatrix& o, const SpaceSpec& spec);

/// Large-d limits at s = O(1): unitary tr O_0^2 + 2 tr rho O_0^2, and
/// orthogonal (1/2) tr O~_0^2 + 2 tr rho~ O~_0^2.
double unitary_leading_term(const ComplexMatrix& rho, const ComplexMatrix& o);
double orthogonal_leading_term(const ComplexMatrix& rho, const ComplexMatrix& o);

/// Diagonal-observable bound at s = c d: c^-4 d^-1 |O_D|_2^2 + c^-2 |O_D|_inf^2.
double diagonal_bound(const ComplexMatrix& o, double c);

}  // namespace symshadow
