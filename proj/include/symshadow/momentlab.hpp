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

// Monte-Carlo moment machinery used to check the closed forms independently:
// k-fold twirls, perfect matchings, delta tensors, and least-squares fits of
// the shadow moment tensor onto delta-tensor bases.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symshadow/common.hpp"
#include "symshadow/symspace.hpp"

namespace symshadow {

/// Entrywise Monte-Carlo estimate of a complex matrix.
struct MatrixEstimate {
    ComplexMatrix mean;
    RealMatrix sem_re;
    RealMatrix sem_im;
    std::size_t n_samples = 0;

    /// Largest |mean - expected| in units of the matching sem, taken over
    /// real and imaginary parts. Entries with zero sem count as 0 when they
    /// agree to `abs_tol` and as +inf otherwise.
    double max_z(const ComplexMatrix& expected, double abs_tol = 1e-12) const;
};

/// (1/N) sum V^(x)k A (V^dagger)^(x)k for k in {1, 2, 3}, A of size d^k.
/// Tensor factors are ordered with the first factor most significant.
MatrixEstimate mc_twirl(const SpaceSpec& spec, int k, const ComplexMatrix& a, std::size_t n, std::uint64_t seed,
                        std::uint64_t stream = 0, int threads = 0);

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Perfect matching of {0, ..., 2k-1}: pairs ascending within and sorted by
/// first element.
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;
    bool operator==(const PairPartition&) const = default;
};

/// All (2k-1)!! matchings in lexicographic order.
std::vector<PairPartition> pair_partitions(int k);

/// (2k-1)!!
std::uint64_t double_factorial_odd(int k);

/// Type A delta: prod_r [i_r == j_sigma(r)].
double delta_a(std::span<const int> sigma, std::span<const int> i, std::span<const int> j);

/// Types B/D delta: prod over pairs of [i_a == i_b].
double delta_bd(const PairPartition& m, std::span<const int> i);

/// Type C delta: prod over pairs of J(i_a, i_b) for the d-dimensional J.
double delta_c(const PairPartition& m, std::span<const int> i, int d);

/// Least-squares fit of T[a,b,i,j] = sum_w E[v_wa conj(v_wb) conj(v_wi) v_wj],
/// which gives the channel as M(rho)_ij = sum_ab rho_ab T[a,b,i,j].
///
/// Bases (delta products over the listed index pairs):
///   unitary parent     ab.ij, ai.bj, abij
///   orthogonal parent  ab.ij, ai.bj, aj.bi, abij
///   symplectic parent  ab.ij, ai.bj, Jaj.Jbi, abij, ab.Jai.Jaj, ai.Jab.Jaj
/// "abij" means a = b = i = j; "Jxy" is the entry J(x, y).
///
/// alpha is the abij coefficient for unitary and orthogonal parents. For a
/// symplectic parent beta is the abij coefficient and alpha adds the
/// ab.Jai.Jaj coefficient.
struct MomentFit {
    SpaceSpec spec;
    std::size_t n_samples = 0;
    std::vector<std::string> labels;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    RealMatrix covariance;
    double residual_norm = 0.0;
    double aggregate_sem = 0.0;  ///< sqrt of the summed per-entry variances of the tensor mean
    double gram_condition = 0.0;
    double alpha = 0.0;
    double alpha_sem = 0.0;
    double beta = 0.0;
    double beta_sem = 0.0;
    /// The tensor mean laid out as a superoperator: entry (j d + i, b d + a)
    /// holds T[a,b,i,j], directly comparable with build_superoperator.
    MatrixEstimate superoperator;

    double coefficient(std::string_view label) const;
    double standard_error(std::string_view label) const;
};

/// Throws FitDegenerate when the basis Gram matrix is numerically singular
/// (smallest / largest eigenvalue of the unit-diagonal Gram below 1e-10).
MomentFit fit_channel_coefficients(const SpaceSpec& spec, std::size_t n, std::uint64_t seed, int threads = 0);

/// Channel superoperator from the second-order twirl of sum_w P_w (x) P_w,
/// contracted against rho on the first factor. Independent of the fit above.
MatrixEstimate superoperator_from_twirl(const SpaceSpec& spec, std::size_t n, std::uint64_t seed, int threads = 0);

struct MomentComparison {
    std::string name;
    double estimate = 0.0;
    double sem = 0.0;
    double expected = 0.0;
    double z() const;
};

/// E|V_11|^4 against 8/((d+1)(d+3)) and E|V_12|^4 against 2/(d(d+3)).
std::vector<MomentComparison> moment_identities_AI(int d, std::size_t n, std::uint64_t seed, int threads = 0);

struct EquivarianceReport {
    double max_z = 0.0;         ///< Monte-Carlo checks: worst entry in sem units
    double max_residual = 0.0;  ///< largest absolute discrepancy
};

/// K-equivariance test: for k from sample_subgroup (or a Haar unitary when
/// `generic_control` is set) and a random A, compares V kAk^dagger V^dagger
/// with k V A V^dagger k^dagger on the same V draws.
EquivarianceReport k_equivariance_check(const SpaceSpec& spec, std::size_t n, std::uint64_t seed,
                                        bool generic_control = false, int threads = 0);

/// Closed-form test: max |M(h rho h^dagger) - h M(rho) h^dagger| over `trials`
/// draws of h from sample_normalizer (or Haar unitaries for the control) and
/// random states rho.
EquivarianceReport h_equivariance_check(const SpaceSpec& spec, int trials, std::uint64_t seed,
                                        bool generic_control = false);

}  // namespace symshadow
