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


#include "symshadow/io.hpp"

#include <cstdio>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "symshadow/haar.hpp"

namespace symshadow {
namespace {

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
    const double third = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_double(third)), third);
}

TEST(MatrixJson, RoundTripIsLossless) {
    RngStream r(1, 0);
    const ComplexMatrix m = ginibre(GinibreKind::Complex, 4, r);
    EXPECT_EQ(parse_matrix_json(matrix_to_json(m)), m);
}

TEST(MatrixJson, FileRoundTrip) {
    RngStream r(2, 0);
    const ComplexMatrix m = ginibre(GinibreKind::Complex, 3, r);
    const auto path = (std::filesystem::temp_directory_path() / "symshadow_io_test.json").string();
    write_matrix_file(path, m);
    EXPECT_EQ(read_matrix_file(path), m);
    std::remove(path.c_str());
}

TEST(MatrixJson, RejectsMalformed) {
    EXPECT_THROW(parse_matrix_json("{"), Error);
    EXPECT_THROW(parse_matrix_json(R"({"dim": 2, "re": [[1,0],[0,1]]})"), Error);
    EXPECT_THROW(parse_matrix_json(R"({"dim": 2, "re": [[1,0],[0]], "im": [[0,0],[0,0]]})"), Error);
    EXPECT_THROW(parse_matrix_json(R"({"dim": 3, "re": [[1,0],[0,1]], "im": [[0,0],[0,0]]})"), Error);
    EXPECT_THROW(read_matrix_file("/nonexistent/matrix.json"), Error);
    const ComplexMatrix ok = parse_matrix_json(R"({"dim": 1, "re": [[2]], "im": [[-1]]})");
    EXPECT_EQ(ok(0, 0), cd(2.0, -1.0));
}

TEST(ResultCsv, HeaderAndRow) {
    EXPECT_EQ(result_csv_header(),
              "family,d,p,q,s,c_requested,c_actual,diag_weight,instance,n_shots,empirical_variance,"
              "analytic_second_moment,mean,sem,seed");
    ResultRow row;
    row.family = "AIII";
    row.d = 8;
    row.p = 6;
    row.q = 2;
    row.s = 4;
    row.c_requested = 0.5;
    row.c_actual = 0.5;
    row.diag_weight = 1.0;
    row.instance = 3;
    row.n_shots = 100;
    row.empirical_variance = 0.25;
    row.mean = -0.125;
    row.sem = 0.05;
    row.seed = 7;
    EXPECT_EQ(result_row_csv(row), "AIII,8,6,2,4,0.5,0.5,1,3,100,0.25,,-0.125,0.05,7");
    row.analytic_second_moment = 0.3;
    EXPECT_EQ(result_row_csv(row), "AIII,8,6,2,4,0.5,0.5,1,3,100,0.25,0.3,-0.125,0.05,7");
    const std::vector<ResultRow> rows{row};
    EXPECT_NE(results_json(rows).find("\"analytic_second_moment\""), std::string::npos);
}

TEST(Config, ParsesFlatKeyValue) {
    const auto cfg = parse_config("# comment\ndim = 8\nfamilies=U,AIII\n\nshots=100\n");
    EXPECT_EQ(cfg.at("dim"), "8");
    EXPECT_EQ(cfg.at("families"), "U,AIII");
    EXPECT_EQ(cfg.size(), 3u);
    EXPECT_THROW(parse_config("dim=8\ndim=9\n"), Error);
    EXPECT_THROW(parse_config("no equals sign\n"), Error);
}

}  // namespace
}  // namespace symshadow
