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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace symshadow {

using cd = std::complex<double>;

/// Dense square complex matrix. Group elements, states and observables all
/// travel as this type; squareness is checked at API boundaries.
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;

/// Entrywise tolerance for exact-identity checks.
inline constexpr double kExactTol = 1e-12;

enum class ErrorCode {
    InvalidDimension,
    InvalidParameters,
    DimensionMismatch,
    NotAQuotient,
    CoefficientsNotApplicable,
    UnsupportedGroup,
    NotInvertible,
    InvalidState,
    EmptyInput,
    FitDegenerate,
    OrderOutOfRange,
    ArityMismatch,
    UnknownFamily,
    Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Ensemble families: the three parent groups (O and SO kept apart) and the
/// seven classical compact symmetric spaces of type I.
enum class Family { U, O, SO, SP, AI, AII, AIII, BDI, DIII, CI, CII };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

bool is_group(Family family);

/// Parent group of a family: U, SO or SP. Group families map to themselves
/// (O is reported as O).
Family parent_group(Family family);

}  // namespace symshadow
