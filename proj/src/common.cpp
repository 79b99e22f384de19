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

#include "symshadow/common.hpp"

#include <array>
#include <utility>

namespace symshadow {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDimension: return "invalid-dimension";
        case ErrorCode::InvalidParameters: return "invalid-parameters";
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::NotAQuotient: return "not-a-quotient";
        case ErrorCode::CoefficientsNotApplicable: return "coefficients-not-applicable";
        case ErrorCode::UnsupportedGroup: return "unsupported-group";
        case ErrorCode::NotInvertible: return "not-invertible";
        case ErrorCode::InvalidState: return "invalid-state";
        case ErrorCode::EmptyInput: return "empty-input";
        case ErrorCode::FitDegenerate: return "fit-degenerate";
        case ErrorCode::OrderOutOfRange: return "order-out-of-range";
        case ErrorCode::ArityMismatch: return "arity-mismatch";
        case ErrorCode::UnknownFamily: return "unknown-family";
        case ErrorCode::Parse: return "parse-error";
    }
    return "unknown-error";
}

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 11> kFamilyNames{{
    {Family::U, "U"},
    {Family::O, "O"},
    {Family::SO, "SO"},
    {Family::SP, "SP"},
    {Family::AI, "AI"},
    {Family::AII, "AII"},
    {Family::AIII, "AIII"},
    {Family::BDI, "BDI"},
    {Family::DIII, "DIII"},
    {Family::CI, "CI"},
    {Family::CII, "CII"},
}};

}  // namespace

std::string_view to_string(Family family) {
    for (const auto& [f, name] : kFamilyNames) {
        if (f == family) return name;
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (const auto& [f, n] : kFamilyNames) {
        if (n == name) return f;
    }
    throw Error(ErrorCode::UnknownFamily, "unknown ensemble family '" + std::string(name) + "'");
}

bool is_group(Family family) {
    return family == Family::U || family == Family::O || family == Family::SO || family == Family::SP;
}

Family parent_group(Family family) {
    switch (family) {
        case Family::U:
        case Family::AI:
        case Family::AII:
        case Family::AIII:
            return Family::U;
        case Family::O:
            return Family::O;
        case Family::SO:
        case Family::BDI:
        case Family::DIII:
            return Family::SO;
        case Family::SP:
        case Family::CI:
        case Family::CII:
            return Family::SP;
    }
    return Family::U;
}

}  // namespace symshadow
