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

#include "symshadow/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "symshadow/analytic_variance.hpp"
#include "symshadow/kernels.hpp"
#include "symshadow/linalg.hpp"
#include "symshadow/parallel.hpp"

namespace symshadow {

namespace {

constexpr double kProbabilityTol = 1e-10;

int draw_outcome(const std::vector<double>& p, RngStream& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t w = 0; w < p.size(); ++w) {
        acc += p[w];
        if (u < acc) return static_cast<int>(w);
    }
    // u landed in the rounding gap above the cumulative sum.
    for (std::size_t w = p.size(); w-- > 0;) {
        if (p[w] > 0.0) return static_cast<int>(w);
    }
    return static_cast<int>(p.size()) - 1;
}

// One round: V from the ensemble, then w from the Born rule. Both the stored
// and the streaming paths go through here so they consume identical draws.
ShadowRecord draw_round(const SpaceSpec& spec, const ComplexMatrix& rho, RngStream& rng) {
    ShadowRecord r;
    r.V = sample_point(spec, rng);
    r.w = draw_outcome(outcome_probabilities(r.V, rho), rng);
    return r;
}

std::string to_text(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void validate_state(const ComplexMatrix& rho, double tol) {
    if (!is_square(rho) || rho.rows() == 0) throw Error(ErrorCode::InvalidState, "state must be a nonempty square matrix");
    if (!rho.allFinite()) throw Error(ErrorCode::InvalidState, "state has non-finite entries");
    if (!is_hermitian(rho, tol)) throw Error(ErrorCode::InvalidState, "state is not Hermitian");
    const cd tr = rho.trace();
    if (std::abs(tr - cd(1.0)) > tol) {
        throw Error(ErrorCode::InvalidState, "state trace is " + to_text(tr.real()) + ", expected 1");
    }
    const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol) {
        throw Error(ErrorCode::InvalidState, "state has negative eigenvalue " + to_text(min_eig));
    }
}

std::vector<double> outcome_probabilities(const ComplexMatrix& v, const ComplexMatrix& rho) {
    const auto d = v.rows();
    const ComplexMatrix vr = v * rho;
    std::vector<double> p(static_cast<std::size_t>(d));
    double total = 0.0;
    for (Eigen::Index w = 0; w < d; ++w) {
        // <w|V rho V^dagger|w> = sum_b (V rho)_wb conj(V_wb)
        double pw = 0.0;
        for (Eigen::Index b = 0; b < d; ++b) pw += (vr(w, b) * std::conj(v(w, b))).real();
        if (pw < -kProbabilityTol) throw Error(ErrorCode::InvalidState, "negative outcome probability " + to_text(pw));
        p[static_cast<std::size_t>(w)] = std::max(pw, 0.0);
        total += pw;
    }
    if (std::abs(total - 1.0) > kProbabilityTol) {
        throw Error(ErrorCode::InvalidState, "outcome probabilities sum to " + to_text(total));
    }
    return p;
}

ShadowRecord sample_outcome(const SpaceSpec& spec, const ComplexMatrix& rho, RngStream& rng) {
    require_dim(rho, spec.d, "state");
    validate_state(rho);
    return draw_round(spec, rho, rng);
}

std::vector<ShadowRecord> sample_records(const SpaceSpec& spec, const ComplexMatrix& rho, std::size_t n,
                                         std::uint64_t seed, std::uint64_t stream, int threads) {
    require_dim(rho, spec.d, "state");
    validate_state(rho);
    std::vector<ShadowRecord> records(n);
    const auto ranges = split_samples(n);
    const RngStream base(seed, stream);
    run_tasks(
        ranges.size(),
        [&](std::size_t t) {
            RngStream rng = base.substream(t);
            for (std::size_t i = ranges[t].begin; i < ranges[t].end; ++i) records[i] = draw_round(spec, rho, rng);
        },
        threads);
    return records;
}

std::vector<double> record_estimates(std::span<const ShadowRecord> records, const ComplexMatrix& x) {
    std::vector<double> out(records.size());
    ComplexVector u;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        require_dim(r.V, static_cast<int>(x.rows()), "record");
        u = r.V.row(r.w).adjoint();
        out[i] = kernels::hermitian_form(u.data(), x.data(), static_cast<std::size_t>(x.rows()));
    }
    return out;
}

EstimationReport summarize(std::span<const double> estimates) {
    if (estimates.empty()) throw Error(ErrorCode::EmptyInput, "no estimates to summarize");
    const SampleMoments m = sample_moments(estimates);
    EstimationReport report;
    report.mean = m.mean;
    report.variance = m.variance;
    report.n_samples = m.n;
    report.sem = std::sqrt(m.variance / static_cast<double>(m.n));
    return report;
}

EstimationReport estimate_observable(std::span<const ShadowRecord> records, const ComplexMatrix& o,
                                     const SpaceSpec& spec) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no shadow records");
    require_dim(o, spec.d, "observable");
    if (!is_hermitian(o, 1e-10)) throw Error(ErrorCode::InvalidParameters, "observable is not Hermitian");
    const ChannelInverse inverse = invert_channel(spec);
    const ComplexMatrix x = inverse.apply(o);
    EstimationReport report = summarize(record_estimates(records, x));
    report.projected = !inverse.in_image(o);
    return report;
}

std::vector<std::vector<double>> simulate_estimates(const SpaceSpec& spec, const ComplexMatrix& rho,
                                                    std::span<const ComplexMatrix> xs, std::size_t n,
                                                    std::uint64_t seed, std::uint64_t stream, int threads) {
    require_dim(rho, spec.d, "state");
    validate_state(rho);
    for (const auto& x : xs) require_dim(x, spec.d, "observable");
    std::vector<std::vector<double>> out(xs.size(), std::vector<double>(n));
    const auto ranges = split_samples(n);
    const RngStream base(seed, stream);
    const auto d = static_cast<std::size_t>(spec.d);
    run_tasks(
        ranges.size(),
        [&](std::size_t t) {
            RngStream rng = base.substream(t);
            ComplexVector u(spec.d);
            for (std::size_t i = ranges[t].begin; i < ranges[t].end; ++i) {
                const ShadowRecord r = draw_round(spec, rho, rng);
                u = r.V.row(r.w).adjoint();
                for (std::size_t k = 0; k < xs.size(); ++k) out[k][i] = kernels::hermitian_form(u.data(), xs[k].data(), d);
            }
        },
        threads);
    return out;
}

ComplexVector random_pure_vector(int d, RngStream& rng) {
    if (d < 1) throw Error(ErrorCode::InvalidDimension, "state dimension must be >= 1");
    ComplexVector psi(d);
    for (int i = 0; i < d; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        psi[i] = cd(re, im);
    }
    return psi / psi.norm();
}

ComplexMatrix random_pure_state(int d, RngStream& rng) {
    const ComplexVector psi = random_pure_vector(d, rng);
    return psi * psi.adjoint();
}

ComplexMatrix random_observable(int d, double diag_weight, bool symmetric, RngStream& rng) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "random_observable needs d >= 2");
    if (!(diag_weight >= 0.0 && diag_weight <= 1.0)) {
        throw Error(ErrorCode::InvalidParameters, "diag_weight must lie in [0, 1]");
    }
    Eigen::VectorXd g(d);
    for (int i = 0; i < d; ++i) g[i] = rng.normal();
    g.array() -= g.mean();
    g /= g.norm();

    ComplexMatrix f = ComplexMatrix::Zero(d, d);
    for (int j = 1; j < d; ++j) {
        for (int i = 0; i < j; ++i) {
            const double re = rng.normal();
            const double im = symmetric ? 0.0 : rng.normal();
            f(i, j) = cd(re, im);
            f(j, i) = cd(re, -im);
        }
    }
    f /= f.norm();

    ComplexMatrix o = std::sqrt(1.0 - diag_weight * diag_weight) * f;
    o.diagonal() = (diag_weight * g).cast<cd>();
    return o;
}

double median_of_means(std::span<const double> values, std::size_t k_batches) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "median_of_means of an empty list");
    if (k_batches == 0 || k_batches > values.size()) {
        throw Error(ErrorCode::InvalidParameters, "k_batches must lie in [1, n]");
    }
    const std::size_t n = values.size();
    std::vector<double> means(k_batches);
    for (std::size_t b = 0; b < k_batches; ++b) {
        const std::size_t lo = b * n / k_batches;
        const std::size_t hi = (b + 1) * n / k_batches;
        means[b] = pairwise_sum(values.subspan(lo, hi - lo)) / static_cast<double>(hi - lo);
    }
    std::sort(means.begin(), means.end());
    const std::size_t mid = k_batches / 2;
    return k_batches % 2 == 1 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
}

SnappedSignature snap_signature(Family family, int d, double c) {
    SnappedSignature out;
    int limit = 0;
    if (family == Family::AIII || family == Family::BDI) {
        limit = d;
    } else if (family == Family::CII) {
        if (d < 2 || d % 2 != 0) throw Error(ErrorCode::InvalidParameters, "CII requires an even dimension");
        limit = d / 2;
    } else {
        out.spec = make_space(family, d);
        return out;
    }
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidParameters, "c must be finite");

    const double target = c * d;
    int best = -limit;
    for (int s = -limit; s <= limit; s += 2) {
        const double gap = std::abs(s - target);
        const double best_gap = std::abs(best - target);
        if (gap < best_gap - 1e-12 || (std::abs(gap - best_gap) <= 1e-12 && std::abs(s) < std::abs(best))) best = s;
    }
    const int p = (limit + best) / 2;
    const int q = (limit - best) / 2;
    out.spec = make_space(family, d, p, q);
    out.c_actual = static_cast<double>(best) / d;
    if (std::abs(out.c_actual - c) > 1e-12) {
        out.warning = "c=" + to_text(c) + " is not representable for " + std::string(to_string(family)) +
                      " at d=" + std::to_string(d) + "; using s=" + std::to_string(best) +
                      " (c=" + to_text(out.c_actual) + ")";
    }
    return out;
}

std::vector<ResultRow> variance_sweep(const SweepConfig& config) {
    const int d = config.d;
    if (config.instances < 1) throw Error(ErrorCode::InvalidParameters, "instances must be >= 1");
    if (config.shots < 2) throw Error(ErrorCode::InvalidParameters, "shots must be >= 2");
    if (config.families.empty() || config.c_grid.empty() || config.diag_weights.empty()) {
        throw Error(ErrorCode::EmptyInput, "sweep grid has an empty axis");
    }

    // Instance data: one state and one observable per diag weight, shared by
    // every family.
    struct Instance {
        ComplexMatrix rho;
        std::vector<ComplexMatrix> observables;
    };
    std::vector<Instance> instances(static_cast<std::size_t>(config.instances));
    const RngStream instance_root(config.seed, 0);
    for (int i = 0; i < config.instances; ++i) {
        RngStream rng = instance_root.substream(static_cast<std::uint64_t>(i));
        auto& inst = instances[static_cast<std::size_t>(i)];
        inst.rho = random_pure_state(d, rng);
        for (std::size_t k = 0; k < config.diag_weights.size(); ++k) {
            RngStream orng = rng.substream(k + 1);
            inst.observables.push_back(random_observable(d, config.diag_weights[k], config.symmetric, orng));
        }
    }

    struct Cell {
        std::vector<EstimationReport> reports;
        std::vector<std::optional<double>> analytic;
    };
    std::map<std::tuple<int, int, int>, Cell> cache;

    std::vector<ResultRow> rows;
    for (Family family : config.families) {
        for (double c : config.c_grid) {
            const SnappedSignature snapped = snap_signature(family, d, c);
            const SpaceSpec& spec = snapped.spec;
            const ChannelInverse inverse = invert_channel(spec);
            for (int i = 0; i < config.instances; ++i) {
                const auto& inst = instances[static_cast<std::size_t>(i)];
                const auto key = std::make_tuple(static_cast<int>(family), spec.s, i);
                auto it = cache.find(key);
                if (it == cache.end()) {
                    std::vector<ComplexMatrix> xs;
                    for (const auto& o : inst.observables) xs.push_back(inverse.apply(o));
                    const std::uint64_t stream = (static_cast<std::uint64_t>(family) + 1) << 48 |
                                                 static_cast<std::uint64_t>(spec.s + 32768) << 24 |
                                                 static_cast<std::uint64_t>(i);
                    const auto estimates = simulate_estimates(spec, inst.rho, xs, config.shots, config.seed, stream, config.threads);
                    Cell cell;
                    for (std::size_t k = 0; k < xs.size(); ++k) {
                        cell.reports.push_back(summarize(estimates[k]));
                        std::optional<double> analytic;
                        if (config.analytic && (family == Family::AIII || family == Family::BDI)) {
                            analytic = analytic_second_moment(inst.rho, inst.observables[k], spec);
                        }
                        cell.analytic.push_back(analytic);
                    }
                    it = cache.emplace(key, std::move(cell)).first;
                }
                for (std::size_t k = 0; k < config.diag_weights.size(); ++k) {
                    const EstimationReport& rep = it->second.reports[k];
                    ResultRow row;
                    row.family = std::string(to_string(family));
                    row.d = d;
                    row.p = spec.p;
                    row.q = spec.q;
                    row.s = spec.s;
                    row.c_requested = c;
                    row.c_actual = snapped.c_actual;
                    row.diag_weight = config.diag_weights[k];
                    row.instance = i;
                    row.n_shots = config.shots;
                    row.empirical_variance = rep.variance;
                    row.analytic_second_moment = it->second.analytic[k];
                    row.mean = rep.mean;
                    row.sem = rep.sem;
                    row.seed = config.seed;
                    row.warning = snapped.warning;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

}  // namespace symshadow
