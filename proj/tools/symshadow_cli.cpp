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

// symshadow command-line front end.
//
// Exit codes: 0 ok, 1 a verification check failed, 2 usage or parse error,
// 3 degenerate fit, 4 invalid state.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "symshadow/analytic_variance.hpp"
#include "symshadow/channel.hpp"
#include "symshadow/haar.hpp"
#include "symshadow/io.hpp"
#include "symshadow/linalg.hpp"
#include "symshadow/momentlab.hpp"
#include "symshadow/parallel.hpp"
#include "symshadow/shadows.hpp"
#include "symshadow/symspace.hpp"

namespace {

using namespace symshadow;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInvalidState = 4;

struct Globals {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "csv";
    double tol_sem = 5.0;
    std::string config;
};

struct SpaceFlags {
    std::string space = "AI";
    int dim = 0;
    std::optional<int> p;
    std::optional<int> q;
};

void add_space_flags(CLI::App* cmd, SpaceFlags& f, bool with_dim = true) {
    cmd->add_option("--space", f.space, "Ensemble family (U, O, SO, SP, AI, AII, AIII, BDI, DIII, CI, CII)");
    if (with_dim) cmd->add_option("--dim", f.dim, "Matrix dimension d");
    cmd->add_option("--p", f.p, "Block size p (AIII, BDI, CII)");
    cmd->add_option("--q", f.q, "Block size q (AIII, BDI, CII)");
}

// Fills in p = q (or p = d, q = 0 for odd d) when a block family is given
// without explicit sizes.
SpaceSpec resolve_space(const SpaceFlags& f, int d) {
    const Family family = parse_family(f.space);
    std::optional<int> p = f.p;
    std::optional<int> q = f.q;
    const bool blocks = family == Family::AIII || family == Family::BDI || family == Family::CII;
    if (blocks && !p && !q) {
        const int total = family == Family::CII ? d / 2 : d;
        p = total - total / 2;
        q = total / 2;
    } else if (blocks && p && !q) {
        q = (family == Family::CII ? d / 2 : d) - *p;
    } else if (blocks && q && !p) {
        p = (family == Family::CII ? d / 2 : d) - *q;
    }
    return make_space(family, d, p, q);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(' ');
        const auto last = item.find_last_not_of(' ');
        if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "not a number: '" + text + "'");
    }
    if (used != text.size()) throw Error(ErrorCode::Parse, "not a number: '" + text + "'");
    return v;
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_number(item));
    return out;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

class Report {
public:
    void at_most(std::string name, double statistic, double threshold) {
        checks_.push_back({std::move(name), statistic, threshold, statistic <= threshold});
    }
    void at_least(std::string name, double statistic, double threshold) {
        checks_.push_back({std::move(name), statistic, threshold, statistic >= threshold});
    }
    bool all_pass() const {
        for (const auto& c : checks_) {
            if (!c.pass) return false;
        }
        return true;
    }
    void print(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& c : checks_) {
                arr.push_back({{"name", c.name}, {"statistic", c.statistic}, {"threshold", c.threshold}, {"pass", c.pass}});
            }
            os << arr.dump(2) << "\n";
            return;
        }
        os << "name,statistic,threshold,pass\n";
        for (const auto& c : checks_) {
            os << c.name << "," << format_double(c.statistic) << "," << format_double(c.threshold) << ","
               << (c.pass ? "true" : "false") << "\n";
        }
    }

private:
    std::vector<Check> checks_;
};

struct VerifyOptions {
    std::string suite = "all";
    SpaceFlags space;
    std::size_t samples = 0;
};

std::string label(const SpaceSpec& spec) { return describe(spec); }

std::vector<SpaceSpec> all_spaces_at(int d) {
    std::vector<SpaceSpec> out;
    for (Family f : {Family::U, Family::O, Family::SO, Family::AI, Family::AIII, Family::BDI}) {
        if (f == Family::AIII || f == Family::BDI) {
            out.push_back(make_space(f, d, d - d / 2, d / 2));
        } else {
            out.push_back(make_space(f, d));
        }
    }
    if (d % 2 == 0) {
        for (Family f : {Family::SP, Family::AII, Family::DIII, Family::CI}) out.push_back(make_space(f, d));
        const int n = d / 2;
        out.push_back(make_space(Family::CII, d, n - n / 2, n / 2));
    }
    return out;
}

void verify_haar(Report& r, const Globals& g, std::size_t samples) {
    const std::size_t n = samples ? samples : 20000;
    for (int d : {1, 2, 3, 4, 8, 16}) {
        RngStream rng(g.seed, 100 + static_cast<std::uint64_t>(d));
        double unit = 0.0;
        double orth = 0.0;
        double symp = 0.0;
        for (int t = 0; t < 1000; ++t) {
            unit = std::max(unit, unitarity_residual(haar_unitary(d, rng)));
            const ComplexMatrix o = haar_orthogonal(d, true, rng);
            orth = std::max({orth, unitarity_residual(o), o.imag().cwiseAbs().maxCoeff(), std::abs(o.determinant() - cd(1.0))});
            if (d % 2 == 0) {
                const ComplexMatrix s = haar_symplectic(d, rng);
                const ComplexMatrix j = symplectic_form(d);
                symp = std::max({symp, unitarity_residual(s), max_abs(s.transpose() * j * s - j)});
            }
        }
        r.at_most("haar.unitary.membership.d" + std::to_string(d), unit, kExactTol);
        r.at_most("haar.special_orthogonal.membership.d" + std::to_string(d), orth, kExactTol);
        if (d % 2 == 0) r.at_most("haar.symplectic.membership.d" + std::to_string(d), symp, kExactTol);
    }
    for (Family f : {Family::U, Family::O, Family::SO, Family::SP}) {
        const int d = 4;
        const SpaceSpec spec = make_space(f, d);
        ComplexMatrix a = ComplexMatrix::Zero(d, d);
        a(0, 0) = 1.0;
        const MatrixEstimate est = mc_twirl(spec, 1, a, n, g.seed, 7, g.threads);
        const ComplexMatrix expected = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
        r.at_most("haar.first_moment." + std::string(to_string(f)) + ".d4.max_z", est.max_z(expected), g.tol_sem);
    }
}

void verify_witness(Report& r, const Globals& g, int dim) {
    const int d = dim > 0 ? dim : 4;
    for (const SpaceSpec& spec : all_spaces_at(d)) {
        RngStream rng(g.seed, 200);
        double worst = 0.0;
        double fixed = 0.0;
        double twice = 0.0;
        for (int t = 0; t < 1000; ++t) {
            worst = std::max(worst, structural_witness(spec, sample_point(spec, rng)).residual);
            if (!is_group(spec.family)) {
                const ComplexMatrix k = sample_subgroup(spec, rng);
                fixed = std::max(fixed, max_abs(involution(spec, k) - k));
                const ComplexMatrix gp = sample_parent(spec, rng);
                twice = std::max(twice, max_abs(involution(spec, involution(spec, gp)) - gp));
            }
        }
        r.at_most("witness." + label(spec), worst, kExactTol);
        if (!is_group(spec.family)) {
            r.at_most("subgroup_fixed_point." + label(spec), fixed, kExactTol);
            r.at_most("involution_squared." + label(spec), twice, kExactTol);
        }
    }
}

void verify_channel(Report& r, int dim) {
    const int d = dim > 0 ? dim : 4;
    // Tabulated values.
    const ChannelCoefficients ai4 = alpha_beta(make_space(Family::AI, 4));
    r.at_most("alpha.AI.d4.vs_1/14", std::abs(ai4.alpha - 1.0 / 14.0), kExactTol);
    const ChannelCoefficients ci4 = alpha_beta(make_space(Family::CI, 4));
    r.at_most("alpha.CI.d4.vs_1/7", std::abs(ci4.alpha - 1.0 / 7.0), kExactTol);
    r.at_most("beta.CI.d4.vs_13/105", std::abs(ci4.beta - 13.0 / 105.0), kExactTol);
    const ChannelCoefficients triv = alpha_beta(make_space(Family::AIII, d, d, 0));
    r.at_most("alpha.AIII.q0.vs_1", std::abs(triv.alpha - 1.0) + std::abs(triv.beta - 1.0), kExactTol);

    RngStream rng(0, 300);
    for (const SpaceSpec& spec : all_spaces_at(d)) {
        const ComplexMatrix s = build_superoperator(spec);
        double trace_err = 0.0;
        for (int t = 0; t < 20; ++t) {
            const ComplexMatrix rho = ginibre(GinibreKind::Complex, d, rng);
            trace_err = std::max(trace_err, std::abs(apply_channel(spec, rho).trace() - rho.trace()));
        }
        r.at_most("trace_preservation." + label(spec), trace_err, kExactTol);
        r.at_most("superoperator_hermitian." + label(spec), max_abs(s - s.adjoint()), kExactTol);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> choi(choi_matrix(spec), Eigen::EigenvaluesOnly);
        r.at_least("choi_min_eigenvalue." + label(spec), choi.eigenvalues().minCoeff(), -1e-10);

        // Spectrum from the superoperator against the sector table.
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
        std::vector<double> expected;
        for (const auto& sector : closed_form_spectrum(spec).sectors) {
            for (int m = 0; m < sector.multiplicity; ++m) expected.push_back(sector.eigenvalue);
        }
        std::sort(expected.begin(), expected.end());
        double gap = 0.0;
        for (std::size_t k = 0; k < expected.size(); ++k) gap = std::max(gap, std::abs(expected[k] - es.eigenvalues()[static_cast<Eigen::Index>(k)]));
        r.at_most("spectrum." + label(spec), gap, 1e-10);
    }
}

void verify_moments(Report& r, const Globals& g, const VerifyOptions& o) {
    const int d = o.space.dim > 0 ? o.space.dim : 2;
    const std::size_t n = o.samples ? o.samples : 200000;
    const SpaceSpec spec = resolve_space(o.space, d);
    if (spec.family == Family::AI && d >= 2) {
        for (const auto& m : moment_identities_AI(d, n, g.seed, g.threads)) {
            r.at_most("moments." + m.name + ".d" + std::to_string(d) + ".z", m.z(), g.tol_sem);
        }
    }
    const MatrixEstimate twirl = superoperator_from_twirl(spec, n, g.seed, g.threads);
    r.at_most("twirl_channel." + label(spec) + ".max_z", twirl.max_z(build_superoperator(spec), 1e-10), g.tol_sem);
    if (!is_group(spec.family)) {
        try {
            const MomentFit fit = fit_channel_coefficients(spec, n, g.seed, g.threads);
            const ChannelCoefficients c = alpha_beta(spec);
            r.at_most("fit.alpha." + label(spec) + ".z", std::abs(fit.alpha - c.alpha) / fit.alpha_sem, g.tol_sem);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FitDegenerate) throw;
            std::cerr << "note: " << e.what() << "\n";
        }
    }
}

void verify_equivariance(Report& r, const Globals& g, std::size_t samples) {
    const std::size_t n = samples ? samples : 100000;
    for (const SpaceSpec& spec : all_spaces_at(4)) {
        r.at_most("h_equivariance." + label(spec), h_equivariance_check(spec, 100, g.seed).max_residual, kExactTol);
        // The U and SP group channels commute with every unitary, so they
        // have no meaningful negative control.
        if (spec.family == Family::U || spec.family == Family::SP) continue;
        r.at_least("h_equivariance_control." + label(spec), h_equivariance_check(spec, 100, g.seed, true).max_residual, 1e-6);
    }
    for (const SpaceSpec& spec : {make_space(Family::AI, 3), make_space(Family::AIII, 4, 2, 2)}) {
        r.at_most("k_equivariance." + label(spec) + ".max_z", k_equivariance_check(spec, n, g.seed, false, g.threads).max_z, g.tol_sem);
        r.at_least("k_equivariance_control." + label(spec) + ".max_z",
                   k_equivariance_check(spec, n, g.seed, true, g.threads).max_z, g.tol_sem);
    }
}

int run_verify(const Globals& g, const VerifyOptions& o) {
    Report report;
    const std::string& s = o.suite;
    if (s == "haar" || s == "all") verify_haar(report, g, o.samples);
    if (s == "witness" || s == "all") verify_witness(report, g, o.space.dim);
    if (s == "channel" || s == "all") verify_channel(report, o.space.dim);
    if (s == "moments" || s == "all") verify_moments(report, g, o);
    if (s == "equivariance" || s == "all") verify_equivariance(report, g, o.samples);
    report.print(std::cout, g.out);
    return report.all_pass() ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- fit

int run_fit(const Globals& g, const SpaceFlags& f, std::size_t samples) {
    const SpaceSpec spec = resolve_space(f, f.dim > 0 ? f.dim : 3);
    const MomentFit fit = fit_channel_coefficients(spec, samples, g.seed, g.threads);
    const ChannelCoefficients c = alpha_beta(spec);
    json doc;
    doc["space"] = std::string(to_string(spec.family));
    doc["d"] = spec.d;
    doc["p"] = spec.p;
    doc["q"] = spec.q;
    doc["s"] = spec.s;
    doc["samples"] = fit.n_samples;
    doc["seed"] = g.seed;
    doc["basis"] = fit.labels;
    doc["coefficients"] = fit.coefficients;
    doc["standard_errors"] = fit.standard_errors;
    doc["residual_norm"] = fit.residual_norm;
    doc["aggregate_sem"] = fit.aggregate_sem;
    doc["gram_condition"] = fit.gram_condition;
    doc["alpha"] = {{"fit", fit.alpha}, {"sem", fit.alpha_sem}, {"predicted", c.alpha}, {"predicted_exact", c.alpha_exact.str()}};
    doc["beta"] = {{"fit", fit.beta}, {"sem", fit.beta_sem}, {"predicted", c.beta}, {"predicted_exact", c.beta_exact.str()}};
    if (g.out == "csv") {
        std::cout << "term,coefficient,sem\n";
        for (std::size_t m = 0; m < fit.labels.size(); ++m) {
            std::cout << fit.labels[m] << "," << format_double(fit.coefficients[m]) << ","
                      << format_double(fit.standard_errors[m]) << "\n";
        }
        std::cout << "alpha," << format_double(fit.alpha) << "," << format_double(fit.alpha_sem) << "\n";
        std::cout << "beta," << format_double(fit.beta) << "," << format_double(fit.beta_sem) << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return kExitOk;
}

// ----------------------------------------------------------------- sweep

struct SweepFlags {
    int dim = 8;
    std::string families = "U,AIII";
    std::string c_grid = "0";
    std::string weights = "1";
    int instances = 1;
    std::size_t shots = 10000;
    bool symmetric = false;
    bool no_analytic = false;
};

int run_sweep(const Globals& g, const SweepFlags& f) {
    SweepConfig cfg;
    cfg.d = f.dim;
    cfg.families.clear();
    for (const auto& name : split_list(f.families)) cfg.families.push_back(parse_family(name));
    cfg.c_grid = parse_numbers(f.c_grid);
    cfg.diag_weights = parse_numbers(f.weights);
    cfg.instances = f.instances;
    cfg.shots = f.shots;
    cfg.seed = g.seed;
    cfg.symmetric = f.symmetric;
    cfg.analytic = !f.no_analytic;
    cfg.threads = g.threads;
    const std::vector<ResultRow> rows = variance_sweep(cfg);
    std::map<std::string, bool> warned;
    for (const auto& row : rows) {
        if (!row.warning.empty() && !warned[row.warning]) {
            warned[row.warning] = true;
            std::cerr << "warning: " << row.warning << "\n";
        }
    }
    std::cout << (g.out == "json" ? results_json(rows) : results_csv(rows));
    return kExitOk;
}

// ----------------------------------------------------------------- bloch

int run_bloch(const Globals& g, const std::string& space, std::size_t samples) {
    std::optional<SpaceSpec> spec;
    if (space == "U") {
        spec = make_space(Family::U, 2);
    } else if (space == "SU2-AIII" || space == "AIII") {
        spec = make_space(Family::AIII, 2, 1, 1);
    } else {
        throw Error(ErrorCode::InvalidParameters, "bloch supports --space U or SU2-AIII, got '" + space + "'");
    }
    const auto points = bloch_cloud(*spec, samples, g.seed, g.threads);
    if (g.out == "json") {
        json arr = json::array();
        for (const auto& p : points) arr.push_back({p[0], p[1], p[2]});
        std::cout << arr.dump() << "\n";
    } else {
        std::string out = "x,y,z\n";
        for (const auto& p : points) out += format_double(p[0]) + "," + format_double(p[1]) + "," + format_double(p[2]) + "\n";
        std::cout << out;
    }
    return kExitOk;
}

// -------------------------------------------------------------- estimate

int run_estimate(const Globals& g, const SpaceFlags& f, const std::string& state_path, const std::string& obs_path,
                 std::size_t shots) {
    const ComplexMatrix rho = read_matrix_file(state_path);
    const ComplexMatrix o = read_matrix_file(obs_path);
    if (rho.rows() != o.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "state and observable dimensions differ");
    }
    validate_state(rho);
    if (!is_hermitian(o, 1e-10)) throw Error(ErrorCode::InvalidParameters, "observable is not Hermitian");
    const SpaceSpec spec = resolve_space(f, static_cast<int>(rho.rows()));
    const std::vector<ShadowRecord> records = sample_records(spec, rho, shots, g.seed, 0, g.threads);
    EstimationReport rep = estimate_observable(records, o, spec);
    rep.truth = (rho * o).trace().real();

    json doc;
    doc["space"] = describe(spec);
    doc["mean"] = rep.mean;
    doc["variance"] = rep.variance;
    doc["sem"] = rep.sem;
    doc["n_samples"] = rep.n_samples;
    doc["truth"] = *rep.truth;
    doc["seed"] = g.seed;
    doc["projected"] = rep.projected;
    if (rep.projected) {
        doc["warning"] = "observable has a component outside the channel image; the estimate targets its projection";
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::FitDegenerate: return kExitDegenerate;
        case ErrorCode::InvalidState: return kExitInvalidState;
        case ErrorCode::NotInvertible:
        case ErrorCode::CoefficientsNotApplicable:
        case ErrorCode::NotAQuotient:
        case ErrorCode::UnsupportedGroup:
        case ErrorCode::EmptyInput:
        case ErrorCode::OrderOutOfRange:
        case ErrorCode::ArityMismatch:
        case ErrorCode::InvalidParameters:
        case ErrorCode::InvalidDimension:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::UnknownFamily:
        case ErrorCode::Parse: return kExitUsage;
    }
    return kExitUsage;
}

// Applies key=value pairs from --config to options that were not given on
// the command line.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path) {
    for (const auto& [key, value] : read_config_file(path)) {
        CLI::Option* opt = nullptr;
        for (CLI::App* scope : {sub, &app}) {
            if (scope == nullptr) continue;
            try {
                opt = scope->get_option("--" + key);
                break;
            } catch (const CLI::OptionNotFound&) {
            }
        }
        if (opt == nullptr) throw Error(ErrorCode::Parse, "unknown config key '" + key + "'");
        if (opt->count() > 0) continue;
        if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") {
                opt->add_result("true");
            } else if (value != "false" && value != "0") {
                throw Error(ErrorCode::Parse, "config key '" + key + "' expects true or false");
            } else {
                continue;
            }
        } else {
            opt->add_result(value);
        }
        opt->run_callback();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical shadows over compact symmetric spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--tol-sem", g.tol_sem, "Acceptance threshold in standard errors")->capture_default_str();
    app.add_option("--config", g.config, "key=value file mirroring the flags");

    VerifyOptions vo;
    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", vo.suite, "haar, witness, channel, moments, equivariance or all")
        ->check(CLI::IsMember({"haar", "witness", "channel", "moments", "equivariance", "all"}))
        ->capture_default_str();
    add_space_flags(verify, vo.space);
    verify->add_option("--samples", vo.samples, "Monte-Carlo samples (0 = suite default)");

    SpaceFlags ff;
    std::size_t fit_samples = 1000000;
    CLI::App* fit = app.add_subcommand("fit", "Fit channel coefficients from sampled moments");
    add_space_flags(fit, ff);
    fit->add_option("--samples", fit_samples, "Monte-Carlo samples")->capture_default_str();

    SweepFlags sf;
    CLI::App* sweep = app.add_subcommand("sweep", "Variance sweep over families, signatures and observables");
    sweep->add_option("--dim", sf.dim, "Matrix dimension")->capture_default_str();
    sweep->add_option("--families", sf.families, "Comma-separated families")->capture_default_str();
    sweep->add_option("--c-grid", sf.c_grid, "Comma-separated c = s/d values")->capture_default_str();
    sweep->add_option("--weights", sf.weights, "Comma-separated diagonal weights in [0, 1]")->capture_default_str();
    sweep->add_option("--instances", sf.instances, "Instances per grid point")->capture_default_str();
    sweep->add_option("--shots", sf.shots, "Shots per instance")->capture_default_str();
    sweep->add_flag("--symmetric", sf.symmetric, "Real symmetric observables");
    sweep->add_flag("--no-analytic", sf.no_analytic, "Skip the closed-form second moments");

    std::string bloch_space = "U";
    std::size_t bloch_samples = 100000;
    CLI::App* bloch = app.add_subcommand("bloch", "Bloch-sphere coordinates of V|0> for d = 2 ensembles");
    bloch->add_option("--space", bloch_space, "U or SU2-AIII")->capture_default_str();
    bloch->add_option("--samples", bloch_samples, "Number of points")->capture_default_str();

    SpaceFlags ef;
    std::string state_path;
    std::string obs_path;
    std::size_t shots = 100000;
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate tr(rho O) from simulated shadows");
    add_space_flags(estimate, ef, false);
    estimate->add_option("--state", state_path, "Density matrix file")->required();
    estimate->add_option("--observable", obs_path, "Observable file")->required();
    estimate->add_option("--shots", shots, "Number of shadows")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!g.config.empty()) apply_config(app, app.get_subcommands().front(), g.config);
        if (g.out != "csv" && g.out != "json") throw Error(ErrorCode::Parse, "--out must be csv or json");
        if (g.threads > 0) set_default_threads(g.threads);
        if (verify->parsed()) return run_verify(g, vo);
        if (fit->parsed()) return run_fit(g, ff, fit_samples);
        if (sweep->parsed()) return run_sweep(g, sf);
        if (bloch->parsed()) return run_bloch(g, bloch_space, bloch_samples);
        if (estimate->parsed()) return run_estimate(g, ef, state_path, obs_path, shots);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
