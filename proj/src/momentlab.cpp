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
#include <functional>
#include <limits>

#include <Eigen/Eigenvalues>

#include "symshadow/channel.hpp"
#include "symshadow/haar.hpp"
#include "symshadow/kernels.hpp"
#include "symshadow/linalg.hpp"
#include "symshadow/parallel.hpp"

namespace symshadow {

namespace {

// Running entrywise sums for one task.
struct Accumulator {
    std::vector<cd> sum;
    std::vector<double> sumsq;

    explicit Accumulator(std::size_t n = 0) : sum(n, cd(0.0)), sumsq(2 * n, 0.0) {}

    void add(const cd* x) { kernels::accumulate_moments(x, sum.size(), sum.data(), sumsq.data()); }

    void merge(const Accumulator& other) {
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += other.sum[k];
        for (std::size_t k = 0; k < sumsq.size(); ++k) sumsq[k] += other.sumsq[k];
    }
};

MatrixEstimate finish(const Accumulator& acc, Eigen::Index rows, Eigen::Index cols, std::size_t n) {
    MatrixEstimate est;
    est.n_samples = n;
    est.mean.resize(rows, cols);
    est.sem_re.resize(rows, cols);
    est.sem_im.resize(rows, cols);
    const double nn = static_cast<double>(n);
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
        const auto u = static_cast<std::size_t>(k);
        const cd mean = acc.sum[u] / nn;
        auto sem = [&](double sq, double m) {
            if (n < 2) return 0.0;
            const double var = std::max(0.0, (sq - nn * m * m) / (nn - 1.0));
            return std::sqrt(var / nn);
        };
        est.mean.data()[k] = mean;
        est.sem_re.data()[k] = sem(acc.sumsq[2 * u], mean.real());
        est.sem_im.data()[k] = sem(acc.sumsq[2 * u + 1], mean.imag());
    }
    return est;
}

using SampleFn = std::function<void(const ComplexMatrix& v, RngStream& rng, ComplexMatrix& out)>;

// Draws n points of `spec`; each sample writes a rows x cols matrix into
// `out`, and the entrywise means and sems are returned.
MatrixEstimate mc_matrix(const SpaceSpec& spec, Eigen::Index rows, Eigen::Index cols, std::size_t n, std::uint64_t seed,
                         std::uint64_t stream, int threads, const SampleFn& fn) {
    if (n == 0) throw Error(ErrorCode::EmptyInput, "Monte-Carlo sample count must be positive");
    const auto ranges = split_samples(n);
    const auto size = static_cast<std::size_t>(rows * cols);
    std::vector<Accumulator> partial(ranges.size());
    const RngStream base(seed, stream);
    run_tasks(
        ranges.size(),
        [&](std::size_t t) {
            RngStream rng = base.substream(t);
            Accumulator acc(size);
            ComplexMatrix out(rows, cols);
            for (std::size_t i = ranges[t].begin; i < ranges[t].end; ++i) {
                const ComplexMatrix v = sample_point(spec, rng);
                fn(v, rng, out);
                acc.add(out.data());
            }
            partial[t] = std::move(acc);
        },
        threads);
    Accumulator total(size);
    for (const auto& p : partial) total.merge(p);
    return finish(total, rows, cols, n);
}

double z_score(double diff, double sem, double abs_tol) {
    diff = std::abs(diff);
    if (sem > 0.0) return diff / sem;
    return diff <= abs_tol ? 0.0 : std::numeric_limits<double>::infinity();
}

enum class ParentKind { Unitary, Orthogonal, Symplectic };

ParentKind parent_kind(Family family) {
    switch (parent_group(family)) {
        case Family::O:
        case Family::SO: return ParentKind::Orthogonal;
        case Family::SP: return ParentKind::Symplectic;
        default: return ParentKind::Unitary;
    }
}

struct BasisTerm {
    std::string label;
    std::function<double(int, int, int, int)> value;  // (a, b, i, j)
};

std::vector<BasisTerm> fit_basis(const SpaceSpec& spec) {
    const ComplexMatrix jm = spec.d % 2 == 0 ? symplectic_form(spec.d) : ComplexMatrix();
    auto delta = [](int x, int y) { return x == y ? 1.0 : 0.0; };
    auto jv = [jm](int x, int y) { return jm(x, y).real(); };

    std::vector<BasisTerm> basis;
    basis.push_back({"ab.ij", [=](int a, int b, int i, int j) { return delta(a, b) * delta(i, j); }});
    basis.push_back({"ai.bj", [=](int a, int b, int i, int j) { return delta(a, i) * delta(b, j); }});
    switch (parent_kind(spec.family)) {
        case ParentKind::Unitary: break;
        case ParentKind::Orthogonal:
            basis.push_back({"aj.bi", [=](int a, int b, int i, int j) { return delta(a, j) * delta(b, i); }});
            break;
        case ParentKind::Symplectic:
            basis.push_back({"Jaj.Jbi", [=](int a, int b, int i, int j) { return jv(a, j) * jv(b, i); }});
            break;
    }
    basis.push_back({"abij", [=](int a, int b, int i, int j) { return delta(a, b) * delta(a, i) * delta(a, j); }});
    if (parent_kind(spec.family) == ParentKind::Symplectic) {
        basis.push_back({"ab.Jai.Jaj", [=](int a, int b, int i, int j) { return delta(a, b) * jv(a, i) * jv(a, j); }});
        basis.push_back({"ai.Jab.Jaj", [=](int a, int b, int i, int j) { return delta(a, i) * jv(a, b) * jv(a, j); }});
    }
    return basis;
}

// Nonzero entries of a basis tensor, addressed in the y y^dagger layout:
// T[a,b,i,j] sits at row a d + j, column b d + i of a d^2 x d^2 matrix.
struct SupportEntry {
    std::size_t offset;  // column-major offset
    double value;
};

std::size_t moment_offset(int a, int b, int i, int j, int d) {
    const auto d2 = static_cast<std::size_t>(d) * d;
    return static_cast<std::size_t>(b * d + i) * d2 + static_cast<std::size_t>(a * d + j);
}

}  // namespace

double MatrixEstimate::max_z(const ComplexMatrix& expected, double abs_tol) const {
    if (expected.rows() != mean.rows() || expected.cols() != mean.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "expected matrix has the wrong shape");
    }
    double worst = 0.0;
    for (Eigen::Index k = 0; k < mean.size(); ++k) {
        const cd diff = mean.data()[k] - expected.data()[k];
        worst = std::max(worst, z_score(diff.real(), sem_re.data()[k], abs_tol));
        worst = std::max(worst, z_score(diff.imag(), sem_im.data()[k], abs_tol));
    }
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return out;
}

MatrixEstimate mc_twirl(const SpaceSpec& spec, int k, const ComplexMatrix& a, std::size_t n, std::uint64_t seed,
                        std::uint64_t stream, int threads) {
    if (k < 1 || k > 3) throw Error(ErrorCode::OrderOutOfRange, "twirl order must be 1, 2 or 3, got " + std::to_string(k));
    int dk = 1;
    for (int r = 0; r < k; ++r) dk *= spec.d;
    require_dim(a, dk, "twirl argument");
    return mc_matrix(spec, dk, dk, n, seed, stream, threads, [&](const ComplexMatrix& v, RngStream&, ComplexMatrix& out) {
        ComplexMatrix vk = v;
        for (int r = 1; r < k; ++r) vk = kron(vk, v);
        out.noalias() = vk * a * vk.adjoint();
    });
}

std::vector<PairPartition> pair_partitions(int k) {
    if (k < 1) throw Error(ErrorCode::InvalidParameters, "pair_partitions needs k >= 1");
    std::vector<PairPartition> out;
    std::vector<bool> used(static_cast<std::size_t>(2 * k), false);
    PairPartition current;
    std::function<void()> recurse = [&] {
        int first = -1;
        for (int x = 0; x < 2 * k; ++x) {
            if (!used[x]) {
                first = x;
                break;
            }
        }
        if (first < 0) {
            out.push_back(current);
            return;
        }
        used[first] = true;
        for (int y = first + 1; y < 2 * k; ++y) {
            if (used[y]) continue;
            used[y] = true;
            current.pairs.emplace_back(first, y);
            recurse();
            current.pairs.pop_back();
            used[y] = false;
        }
        used[first] = false;
    };
    recurse();
    return out;
}

std::uint64_t double_factorial_odd(int k) {
    std::uint64_t out = 1;
    for (int m = 2 * k - 1; m > 1; m -= 2) out *= static_cast<std::uint64_t>(m);
    return out;
}

double delta_a(std::span<const int> sigma, std::span<const int> i, std::span<const int> j) {
    if (sigma.size() != i.size() || i.size() != j.size()) {
        throw Error(ErrorCode::ArityMismatch, "delta_a needs |sigma| = |i| = |j|");
    }
    for (std::size_t r = 0; r < sigma.size(); ++r) {
        const int s = sigma[r];
        if (s < 0 || static_cast<std::size_t>(s) >= j.size()) throw Error(ErrorCode::ArityMismatch, "sigma is not a permutation");
        if (i[r] != j[static_cast<std::size_t>(s)]) return 0.0;
    }
    return 1.0;
}

namespace {

void check_matching(const PairPartition& m, std::size_t n) {
    if (2 * m.pairs.size() != n) {
        throw Error(ErrorCode::ArityMismatch, "matching covers " + std::to_string(2 * m.pairs.size()) + " points but " +
                                                  std::to_string(n) + " indices were given");
    }
    for (const auto& [x, y] : m.pairs) {
        if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= n || static_cast<std::size_t>(y) >= n) {
            throw Error(ErrorCode::ArityMismatch, "matching refers to a point outside the index list");
        }
    }
}

}  // namespace

double delta_bd(const PairPartition& m, std::span<const int> i) {
    check_matching(m, i.size());
    for (const auto& [x, y] : m.pairs) {
        if (i[static_cast<std::size_t>(x)] != i[static_cast<std::size_t>(y)]) return 0.0;
    }
    return 1.0;
}

double delta_c(const PairPartition& m, std::span<const int> i, int d) {
    check_matching(m, i.size());
    if (d < 2 || d % 2 != 0) throw Error(ErrorCode::InvalidDimension, "delta_c needs an even dimension");
    const int n = d / 2;
    double out = 1.0;
    for (const auto& [x, y] : m.pairs) {
        const int a = i[static_cast<std::size_t>(x)];
        const int b = i[static_cast<std::size_t>(y)];
        if (a < 0 || b < 0 || a >= d || b >= d) throw Error(ErrorCode::InvalidParameters, "index out of range");
        // J = [[0, -1], [1, 0]] in n-blocks.
        if (b == a + n && a < n) {
            out *= -1.0;
        } else if (a == b + n && b < n) {
            out *= 1.0;
        } else {
            return 0.0;
        }
    }
    return out;
}

double MomentFit::coefficient(std::string_view label) const {
    for (std::size_t m = 0; m < labels.size(); ++m) {
        if (labels[m] == label) return coefficients[m];
    }
    throw Error(ErrorCode::InvalidParameters, "no basis term '" + std::string(label) + "'");
}

double MomentFit::standard_error(std::string_view label) const {
    for (std::size_t m = 0; m < labels.size(); ++m) {
        if (labels[m] == label) return standard_errors[m];
    }
    throw Error(ErrorCode::InvalidParameters, "no basis term '" + std::string(label) + "'");
}

MomentFit fit_channel_coefficients(const SpaceSpec& spec, std::size_t n, std::uint64_t seed, int threads) {
    if (n < 2) throw Error(ErrorCode::InvalidParameters, "fit needs at least 2 samples");
    const int d = spec.d;
    const auto d2 = static_cast<std::size_t>(d) * d;
    const std::size_t size = d2 * d2;

    const std::vector<BasisTerm> basis = fit_basis(spec);
    const auto m = static_cast<Eigen::Index>(basis.size());
    std::vector<std::vector<SupportEntry>> support(basis.size());
    RealMatrix dense(static_cast<Eigen::Index>(size), m);
    dense.setZero();
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    const std::size_t off = moment_offset(a, b, i, j, d);
                    for (std::size_t t = 0; t < basis.size(); ++t) {
                        const double v = basis[t].value(a, b, i, j);
                        if (v != 0.0) {
                            support[t].push_back({off, v});
                            dense(static_cast<Eigen::Index>(off), static_cast<Eigen::Index>(t)) = v;
                        }
                    }
                }
            }
        }
    }

    const RealMatrix gram = dense.transpose() * dense;
    const Eigen::VectorXd scale = gram.diagonal().cwiseSqrt().cwiseInverse();
    const RealMatrix normalized = scale.asDiagonal() * gram * scale.asDiagonal();
    Eigen::SelfAdjointEigenSolver<RealMatrix> gsolve(normalized, Eigen::EigenvaluesOnly);
    const double min_eig = gsolve.eigenvalues().minCoeff();
    const double max_eig = gsolve.eigenvalues().maxCoeff();
    if (!(min_eig > 1e-10 * max_eig)) {
        throw Error(ErrorCode::FitDegenerate, describe(spec) +
                                                  ": delta-tensor basis is linearly dependent at this dimension; use a larger d");
    }
    const RealMatrix gram_inv = gram.inverse();

    struct Partial {
        Accumulator tensor;
        Eigen::VectorXd lsum;
        RealMatrix lsq;
    };
    const auto ranges = split_samples(n);
    std::vector<Partial> partial(ranges.size());
    const RngStream base(seed, 0);
    run_tasks(
        ranges.size(),
        [&](std::size_t t) {
            RngStream rng = base.substream(t);
            Partial p{Accumulator(size), Eigen::VectorXd::Zero(m), RealMatrix::Zero(m, m)};
            ComplexMatrix ts(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2));
            ComplexVector y(static_cast<Eigen::Index>(d2));
            Eigen::VectorXd proj(m);
            for (std::size_t s = ranges[t].begin; s < ranges[t].end; ++s) {
                const ComplexMatrix v = sample_point(spec, rng);
                ts.setZero();
                for (int w = 0; w < d; ++w) {
                    for (int a = 0; a < d; ++a) {
                        for (int j = 0; j < d; ++j) y[a * d + j] = v(w, a) * v(w, j);
                    }
                    kernels::hermitian_rank1_update(y.data(), d2, ts.data());
                }
                p.tensor.add(ts.data());
                for (Eigen::Index b = 0; b < m; ++b) {
                    double acc = 0.0;
                    for (const auto& e : support[static_cast<std::size_t>(b)]) acc += e.value * ts.data()[e.offset].real();
                    proj[b] = acc;
                }
                const Eigen::VectorXd lambda = gram_inv * proj;
                p.lsum += lambda;
                p.lsq.noalias() += lambda * lambda.transpose();
            }
            partial[t] = std::move(p);
        },
        threads);

    Accumulator tensor(size);
    Eigen::VectorXd lsum = Eigen::VectorXd::Zero(m);
    RealMatrix lsq = RealMatrix::Zero(m, m);
    for (const auto& p : partial) {
        tensor.merge(p.tensor);
        lsum += p.lsum;
        lsq += p.lsq;
    }
    const double nn = static_cast<double>(n);
    const MatrixEstimate raw = finish(tensor, static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2), n);

    MomentFit fit;
    fit.spec = spec;
    fit.n_samples = n;
    fit.gram_condition = max_eig / min_eig;
    const Eigen::VectorXd mean = lsum / nn;
    fit.covariance = (lsq - nn * mean * mean.transpose()) / ((nn - 1.0) * nn);
    for (Eigen::Index b = 0; b < m; ++b) {
        fit.labels.push_back(basis[static_cast<std::size_t>(b)].label);
        fit.coefficients.push_back(mean[b]);
        fit.standard_errors.push_back(std::sqrt(std::max(0.0, fit.covariance(b, b))));
    }

    // Residual of the full complex fit against the mean tensor.
    const ComplexVector tmean = Eigen::Map<const ComplexVector>(raw.mean.data(), static_cast<Eigen::Index>(size));
    const ComplexVector lambda_c = gram_inv.cast<cd>() * (dense.transpose().cast<cd>() * tmean);
    fit.residual_norm = (tmean - dense.cast<cd>() * lambda_c).norm();
    fit.aggregate_sem = std::sqrt(raw.sem_re.squaredNorm() + raw.sem_im.squaredNorm());

    auto index_of = [&](std::string_view label) {
        for (Eigen::Index b = 0; b < m; ++b) {
            if (fit.labels[static_cast<std::size_t>(b)] == label) return b;
        }
        return Eigen::Index(-1);
    };
    const Eigen::Index iabij = index_of("abij");
    if (parent_kind(spec.family) == ParentKind::Symplectic) {
        const Eigen::Index ij = index_of("ab.Jai.Jaj");
        fit.beta = mean[iabij];
        fit.beta_sem = fit.standard_errors[static_cast<std::size_t>(iabij)];
        fit.alpha = mean[iabij] + mean[ij];
        fit.alpha_sem = std::sqrt(std::max(
            0.0, fit.covariance(iabij, iabij) + fit.covariance(ij, ij) + 2.0 * fit.covariance(iabij, ij)));
    } else {
        fit.alpha = fit.beta = mean[iabij];
        fit.alpha_sem = fit.beta_sem = fit.standard_errors[static_cast<std::size_t>(iabij)];
    }

    // Reshuffle into superoperator layout.
    MatrixEstimate& so = fit.superoperator;
    so.n_samples = n;
    so.mean.resize(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2));
    so.sem_re.resize(so.mean.rows(), so.mean.cols());
    so.sem_im.resize(so.mean.rows(), so.mean.cols());
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    const auto src = static_cast<Eigen::Index>(moment_offset(a, b, i, j, d));
                    so.mean(j * d + i, b * d + a) = raw.mean.data()[src];
                    so.sem_re(j * d + i, b * d + a) = raw.sem_re.data()[src];
                    so.sem_im(j * d + i, b * d + a) = raw.sem_im.data()[src];
                }
            }
        }
    }
    return fit;
}

MatrixEstimate superoperator_from_twirl(const SpaceSpec& spec, std::size_t n, std::uint64_t seed, int threads) {
    const int d = spec.d;
    const auto d2 = static_cast<Eigen::Index>(d) * d;
    // (V (x) V) (sum_w P_w (x) P_w) (V (x) V)^dagger = sum_w y_w y_w^dagger with
    // y_w = v_w (x) v_w for the columns v_w of V.
    const MatrixEstimate w = mc_matrix(spec, d2, d2, n, seed, 1, threads, [&](const ComplexMatrix& v, RngStream&, ComplexMatrix& out) {
        out.setZero();
        ComplexVector y(d2);
        for (int c = 0; c < d; ++c) {
            for (int i1 = 0; i1 < d; ++i1) {
                for (int i2 = 0; i2 < d; ++i2) y[i1 * d + i2] = v(i1, c) * v(i2, c);
            }
            kernels::hermitian_rank1_update(y.data(), static_cast<std::size_t>(d2), out.data());
        }
    });
    // Contract rho on the first factor: M(E_ab)_{i j} = W[(b, i), (a, j)].
    MatrixEstimate so;
    so.n_samples = n;
    so.mean.resize(d2, d2);
    so.sem_re.resize(d2, d2);
    so.sem_im.resize(d2, d2);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    so.mean(j * d + i, b * d + a) = w.mean(b * d + i, a * d + j);
                    so.sem_re(j * d + i, b * d + a) = w.sem_re(b * d + i, a * d + j);
                    so.sem_im(j * d + i, b * d + a) = w.sem_im(b * d + i, a * d + j);
                }
            }
        }
    }
    return so;
}

double MomentComparison::z() const { return z_score(estimate - expected, sem, 1e-12); }

std::vector<MomentComparison> moment_identities_AI(int d, std::size_t n, std::uint64_t seed, int threads) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "moment identities need d >= 2");
    const SpaceSpec spec = make_space(Family::AI, d);
    const MatrixEstimate est = mc_matrix(spec, 1, 2, n, seed, 2, threads, [](const ComplexMatrix& v, RngStream&, ComplexMatrix& out) {
        const double a = std::norm(v(0, 0));
        const double b = std::norm(v(0, 1));
        out(0, 0) = a * a;
        out(0, 1) = b * b;
    });
    const double dd = d;
    return {
        {"E|V11|^4", est.mean(0, 0).real(), est.sem_re(0, 0), 8.0 / ((dd + 1.0) * (dd + 3.0))},
        {"E|V12|^4", est.mean(0, 1).real(), est.sem_re(0, 1), 2.0 / (dd * (dd + 3.0))},
    };
}

EquivarianceReport k_equivariance_check(const SpaceSpec& spec, std::size_t n, std::uint64_t seed, bool generic_control,
                                        int threads) {
    const int d = spec.d;
    RngStream setup(seed, 3);
    const ComplexMatrix k = generic_control ? haar_unitary(d, setup) : sample_subgroup(spec, setup);
    const ComplexMatrix a = ginibre(GinibreKind::Complex, d, setup);
    const ComplexMatrix kak = k * a * k.adjoint();
    const MatrixEstimate est = mc_matrix(spec, d, d, n, seed, 4, threads, [&](const ComplexMatrix& v, RngStream&, ComplexMatrix& out) {
        out.noalias() = v * kak * v.adjoint() - k * (v * a * v.adjoint()) * k.adjoint();
    });
    EquivarianceReport report;
    report.max_z = est.max_z(ComplexMatrix::Zero(d, d), 1e-10);
    report.max_residual = max_abs(est.mean);
    return report;
}

EquivarianceReport h_equivariance_check(const SpaceSpec& spec, int trials, std::uint64_t seed, bool generic_control) {
    const int d = spec.d;
    RngStream rng(seed, 5);
    EquivarianceReport report;
    for (int t = 0; t < trials; ++t) {
        const ComplexMatrix h = generic_control ? haar_unitary(d, rng) : sample_normalizer(spec, rng);
        const ComplexMatrix g = ginibre(GinibreKind::Complex, d, rng);
        ComplexMatrix rho = g * g.adjoint();
        rho /= rho.trace();
        const ComplexMatrix lhs = apply_channel(spec, h * rho * h.adjoint());
        const ComplexMatrix rhs = h * apply_channel(spec, rho) * h.adjoint();
        report.max_residual = std::max(report.max_residual, max_abs(lhs - rhs));
    }
    return report;
}

}  // namespace symshadow
