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

// The shadow protocol end to end: draw V, measure V rho V^dagger in the
// computational basis, and estimate tr(rho O) by <w| V M^+(O) V^dagger |w>.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symshadow/channel.hpp"
#include "symshadow/common.hpp"
#include "symshadow/rng.hpp"
#include "symshadow/symspace.hpp"

namespace symshadow {

struct ShadowRecord {
    ComplexMatrix V;
    int w = 0;
};

struct EstimationReport {
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased sample variance of the per-record estimates
    double sem = 0.0;
    std::size_t n_samples = 0;
    std::optional<double> truth;
    /// Set when the observable has a component in a null sector of the
    /// channel; the estimate then targets the projected observable.
    bool projected = false;
};

/// Throws InvalidState unless rho is Hermitian, has unit trace and no
/// eigenvalue below -tol.
void validate_state(const ComplexMatrix& rho, double tol = 1e-10);

/// Born probabilities p_w = <w| V rho V^dagger |w>. Throws InvalidState if
/// they do not sum to 1 within 1e-10.
std::vector<double> outcome_probabilities(const ComplexMatrix& v, const ComplexMatrix& rho);

/// One protocol round. Validates rho.
ShadowRecord sample_outcome(const SpaceSpec& spec, const ComplexMatrix& rho, RngStream& rng);

/// n rounds, parallel over fixed-size chunks. Identical output for any thread
/// count: chunk t draws from RngStream(seed, stream).substream(t).
std::vector<ShadowRecord> sample_records(const SpaceSpec& spec, const ComplexMatrix& rho, std::size_t n,
                                         std::uint64_t seed, std::uint64_t stream = 0, int threads = 0);

/// o_i = <w_i| V_i X V_i^dagger |w_i> for a precomputed X = M^+(O).
std::vector<double> record_estimates(std::span<const ShadowRecord> records, const ComplexMatrix& x);

/// Mean, variance and standard error of a list of per-record estimates.
EstimationReport summarize(std::span<const double> estimates);

EstimationReport estimate_observable(std::span<const ShadowRecord> records, const ComplexMatrix& o,
                                     const SpaceSpec& spec);

/// Streaming variant that never stores V: draws n rounds exactly as
/// sample_records does and evaluates every X in `xs` on each. Returns one
/// estimate vector per X.
std::vector<std::vector<double>> simulate_estimates(const SpaceSpec& spec, const ComplexMatrix& rho,
                                                    std::span<const ComplexMatrix> xs, std::size_t n,
                                                    std::uint64_t seed, std::uint64_t stream = 0, int threads = 0);

/// Haar-random pure state as a normalized vector and as a density matrix.
ComplexVector random_pure_vector(int d, RngStream& rng);
ComplexMatrix random_pure_state(int d, RngStream& rng);

/// O = w D + sqrt(1 - w^2) F with D a random traceless real diagonal and F a
/// random off-diagonal Hermitian (real symmetric if `symmetric`), each of unit
/// Frobenius norm.
ComplexMatrix random_observable(int d, double diag_weight, bool symmetric, RngStream& rng);

/// Median of k contiguous batch means; batch b covers [b n / k, (b+1) n / k).
double median_of_means(std::span<const double> values, std::size_t k_batches);

struct SweepConfig {
    int d = 8;
    std::vector<Family> families{Family::U, Family::AIII};
    std::vector<double> c_grid{0.0};
    std::vector<double> diag_weights{1.0};
    int instances = 1;
    std::size_t shots = 10000;
    std::uint64_t seed = 0;
    bool symmetric = false;
    bool analytic = true;  ///< fill analytic_second_moment for AIII/BDI
    int threads = 0;
};

struct ResultRow {
    std::string family;
    int d = 0;
    int p = 0;
    int q = 0;
    int s = 0;
    double c_requested = 0.0;
    double c_actual = 0.0;
    double diag_weight = 0.0;
    int instance = 0;
    std::size_t n_shots = 0;
    double empirical_variance = 0.0;
    std::optional<double> analytic_second_moment;
    double mean = 0.0;
    double sem = 0.0;
    std::uint64_t seed = 0;
    std::string warning;  ///< nonempty when c was snapped
};

/// Signature chosen for a requested c = s/d. AIII/BDI use s = d (mod 2) with
/// |s| <= d; CII uses s = d/2 (mod 2) with |s| <= d/2 and still reports
/// c = s/d. Families without a signature map to s = 0.
struct SnappedSignature {
    SpaceSpec spec;
    double c_actual = 0.0;
    std::string warning;
};
SnappedSignature snap_signature(Family family, int d, double c);

/// Cartesian sweep over families x c_grid x diag_weights x instances. The
/// state and observables of an instance are shared by all families so rows
/// can be compared pairwise.
std::vector<ResultRow> variance_sweep(const SweepConfig& config);

}  // namespace symshadow
