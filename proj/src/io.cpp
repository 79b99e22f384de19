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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace symshadow {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorCode::Parse, message); }

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

RealMatrix parse_part(const json& doc, const char* key, int dim) {
    if (!doc.contains(key)) parse_error(std::string("matrix file is missing \"") + key + "\"");
    const json& rows = doc.at(key);
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
        parse_error(std::string("\"") + key + "\" must be an array of " + std::to_string(dim) + " rows");
    }
    RealMatrix out(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            parse_error(std::string("row ") + std::to_string(r) + " of \"" + key + "\" must have " + std::to_string(dim) + " entries");
        }
        for (int c = 0; c < dim; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) parse_error(std::string("non-numeric entry in \"") + key + "\"");
            out(r, c) = v.get<double>();
            if (!std::isfinite(out(r, c))) parse_error("non-finite matrix entry");
        }
    }
    return out;
}

json row_json(const ResultRow& row) {
    json j = json::object();
    j["family"] = row.family;
    j["d"] = row.d;
    j["p"] = row.p;
    j["q"] = row.q;
    j["s"] = row.s;
    j["c_requested"] = row.c_requested;
    j["c_actual"] = row.c_actual;
    j["diag_weight"] = row.diag_weight;
    j["instance"] = row.instance;
    j["n_shots"] = row.n_shots;
    j["empirical_variance"] = row.empirical_variance;
    j["analytic_second_moment"] = row.analytic_second_moment ? json(*row.analytic_second_moment) : json(nullptr);
    j["mean"] = row.mean;
    j["sem"] = row.sem;
    j["seed"] = row.seed;
    if (!row.warning.empty()) j["warning"] = row.warning;
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ComplexMatrix parse_matrix_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_error("matrix file must be a JSON object");
    if (!doc.contains("dim") || !doc.at("dim").is_number_integer()) parse_error("matrix file needs an integer \"dim\"");
    const int dim = doc.at("dim").get<int>();
    if (dim < 1) parse_error("\"dim\" must be >= 1");
    const RealMatrix re = parse_part(doc, "re", dim);
    const RealMatrix im = parse_part(doc, "im", dim);
    ComplexMatrix out(dim, dim);
    out.real() = re;
    out.imag() = im;
    return out;
}

std::string matrix_to_json(const ComplexMatrix& m) {
    json doc = json::object();
    doc["dim"] = m.rows();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array();
        json ri = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    return doc.dump();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ComplexMatrix read_matrix_file(const std::string& path) { return parse_matrix_json(read_text_file(path)); }

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) parse_error("cannot write '" + path + "'");
    out << matrix_to_json(m) << "\n";
}

std::string_view result_csv_header() {
    return "family,d,p,q,s,c_requested,c_actual,diag_weight,instance,n_shots,empirical_variance,"
           "analytic_second_moment,mean,sem,seed";
}

std::string result_row_csv(const ResultRow& row) {
    std::string out;
    out += row.family;
    for (int v : {row.d, row.p, row.q, row.s}) out += "," + std::to_string(v);
    out += "," + format_double(row.c_requested);
    out += "," + format_double(row.c_actual);
    out += "," + format_double(row.diag_weight);
    out += "," + std::to_string(row.instance);
    out += "," + std::to_string(row.n_shots);
    out += "," + format_double(row.empirical_variance);
    out += ",";
    if (row.analytic_second_moment) out += format_double(*row.analytic_second_moment);
    out += "," + format_double(row.mean);
    out += "," + format_double(row.sem);
    out += "," + std::to_string(row.seed);
    return out;
}

std::string results_csv(std::span<const ResultRow> rows) {
    std::string out(result_csv_header());
    out += "\n";
    for (const auto& row : rows) out += result_row_csv(row) + "\n";
    return out;
}

std::string results_json(std::span<const ResultRow> rows) {
    json arr = json::array();
    for (const auto& row : rows) arr.push_back(row_json(row));
    return arr.dump(2) + "\n";
}

std::map<std::string, std::string> parse_config(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) parse_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) parse_error("config line " + std::to_string(lineno) + ": empty key");
        if (!out.emplace(key, value).second) parse_error("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) { return parse_config(read_text_file(path)); }

}  // namespace symshadow
