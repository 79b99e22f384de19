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

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "symshadow/common.hpp"
#include "symshadow/shadows.hpp"

namespace symshadow {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Matrix files are JSON objects {"dim": n, "re": [[...]], "im": [[...]]},
/// row-major. Throws Parse on malformed input.
ComplexMatrix parse_matrix_json(std::string_view text);
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

/// family,d,p,q,s,c_requested,c_actual,diag_weight,instance,n_shots,
/// empirical_variance,analytic_second_moment,mean,sem,seed
std::string_view result_csv_header();
std::string result_row_csv(const ResultRow& row);
std::string results_csv(std::span<const ResultRow> rows);
/// JSON array of row objects in header order, plus "warning" when set.
std::string results_json(std::span<const ResultRow> rows);

/// Flat "key = value" lines; '#' starts a comment. Throws Parse on lines
/// without '=' or on repeated keys.
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace symshadow
