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

// Ensembles over the classical compact symmetric spaces G/K.
//
// family  G          K                 involution sigma(g)
// AI      U(d)       O(d)              conj(g)
// AII     U(d)       SP(d)             J conj(g) J^-1
// AIII    U(p+q)     S(U(p) x U(q))    I_pq g I_pq
// BDI     SO(p+q)    SO(p) x SO(q)     I_pq g I_pq
// DIII    SO(d)      U(d/2)            J g J^-1
// CI      SP(d)      U(d/2)            J g J^-1
// CII     SP(d)      SP(2p) x SP(2q)   K_pq g K_pq,  p + q = d/2
//
// A uniform point is V = sigma(g)^-1 g with g Haar on G. For DIII, CI and CII
// the dimension d is the matrix dimension (even).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symshadow/common.hpp"
#include "symshadow/rng.hpp"

namespace symshadow {

struct SpaceSpec {
    Family family = Family::U;
    int d = 1;
    int p = 0;  ///< AIII/BDI: p + q = d. CII: p + q = d/2 (quaternionic blocks).
    int q = 0;
    int s = 0;  ///< signature p - q

    bool operator==(const SpaceSpec&) const = default;
};

/// Validates the parameter rules and computes s. Group families and the
/// fixed-signature spaces take no (p, q).
SpaceSpec make_space(Family family, int d, std::optional<int> p = std::nullopt, std::optional<int> q = std::nullopt);

std::string describe(const SpaceSpec& spec);

enum class InvolutionKind { Conjugate, AdJConjugate, AdIpq, AdJ, AdKpq };

std::string_view to_string(InvolutionKind kind);

/// Throws NotAQuotient for group families.
InvolutionKind involution_kind(const SpaceSpec& spec);

/// The matrix defining the involution (I_pq, J or K_pq); identity for AI.
ComplexMatrix involution_matrix(const SpaceSpec& spec);

/// sigma(g) for the family of `spec`.
ComplexMatrix involution(const SpaceSpec& spec, const ComplexMatrix& g);

/// Haar element of the parent group (O is sampled as O(d), SO/BDI/DIII as SO(d)).
ComplexMatrix sample_parent(const SpaceSpec& spec, RngStream& rng);

/// Uniform point of the ensemble. Group families return a Haar element.
ComplexMatrix sample_point(const SpaceSpec& spec, RngStream& rng);

/// V = sigma(g)^-1 g. Group families return g.
ComplexMatrix point_from_parent(const SpaceSpec& spec, const ComplexMatrix& g);

struct WitnessResult {
    bool pass = false;
    double residual = 0.0;
    std::string description;
};

/// Algebraic fingerprint of each ensemble:
///   AI    V symmetric, unitary
///   AII   JV antisymmetric, V unitary
///   AIII  I_pq V Hermitian, V unitary
///   BDI   I_pq V real symmetric, V orthogonal
///   DIII  JV real antisymmetric, V orthogonal
///   CI    JV anti-Hermitian, V symplectic unitary
///   CII   K_pq V Hermitian, V symplectic unitary
/// Groups check membership only. The residual is the worst entrywise defect.
WitnessResult structural_witness(const SpaceSpec& spec, const ComplexMatrix& v, double tol = kExactTol);

/// Haar element of K. AIII draws U(p) x U(q) and fixes the total determinant
/// to 1; DIII and CI realify a Haar U(d/2).
ComplexMatrix sample_subgroup(const SpaceSpec& spec, RngStream& rng);

/// Random element of a finite subgroup of K that permutes the computational
/// basis up to phases (K intersected with the basis normalizer): signed
/// permutations for orthogonal K, monomials with phases in {1, i, -1, -i}
/// for unitary K, quaternionic monomials for symplectic K. Always respects
/// the block structure of I_pq / K_pq. For group families the whole parent
/// group's normalizer is used.
ComplexMatrix sample_normalizer(const SpaceSpec& spec, RngStream& rng);

/// Bloch coordinates (x, y, z) = (2 Re a*b, 2 Im a*b, |a|^2 - |b|^2) of
/// V|0> = (a, b) for n draws of V. Requires d = 2.
std::vector<std::array<double, 3>> bloch_cloud(const SpaceSpec& spec, std::size_t n, std::uint64_t seed,
                                               int threads = 0);

}  // namespace symshadow
