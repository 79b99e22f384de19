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

// Measurement channels of the shadow protocol, measured in the computational
// basis. For a symmetric space G/K,
//
//   M(rho) = (1 - alpha) M_G(rho) + beta A(rho)
//            + (alpha - beta) (J A(rho) J^dagger - A(rho J) J),
//
// where A is dephasing, M_G the parent-group channel, and the J-term is only
// present when G = SP (otherwise alpha = beta).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symshadow/common.hpp"
#include "symshadow/symspace.hpp"

namespace symshadow {

/// Reduced fraction with a positive denominator.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    static Rational make(__int128 num, __int128 den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

struct ChannelCoefficients {
    Rational alpha_exact;
    Rational beta_exact;
    double alpha = 0.0;
    double beta = 0.0;
    Family parent = Family::U;
    bool has_J_term = false;
};

/// Zeroes the off-diagonal entries.
ComplexMatrix dephase(const ComplexMatrix& m);

/// Shadow channel of a parent group: U and SP give (tr M + M)/(d+1),
/// O and SO give (tr M + M + M^T)/(d+2).
ComplexMatrix parent_channel(Family group, const ComplexMatrix& m, int d);

/// Closed-form alpha and beta. Spaces with p = 0 or q = 0 are the trivial
/// quotient (V = 1) and return alpha = beta = 1. DIII reads d as the matrix
/// dimension; CII uses n = d/2 and s in quaternionic units.
ChannelCoefficients alpha_beta(const SpaceSpec& spec);

/// The channel applied to one operator. Group families use their own channel.
ComplexMatrix apply_channel(const SpaceSpec& spec, const ComplexMatrix& rho);

/// d^2 x d^2 matrix S with S vec(rho) = vec(M(rho)), vec column-major, so
/// column j*d + i holds vec(M(E_ij)).
ComplexMatrix build_superoperator(const SpaceSpec& spec);

/// Choi matrix sum_ij E_ij (x) M(E_ij).
ComplexMatrix choi_matrix(const SpaceSpec& spec);

struct Sector {
    std::string name;
    double eigenvalue = 0.0;
    int multiplicity = 0;
};

struct SectorSpectrum {
    std::vector<Sector> sectors;
    bool numeric = false;  ///< true when clustered from the superoperator

    /// Eigenvalue of the named sector; throws if absent.
    double eigenvalue(std::string_view name) const;
};

/// Closed-form sector eigenvalues.
///
///   U parent:  identity, traceless-diagonal, off-diagonal
///   O parent:  identity, traceless-diagonal, symmetric-off-diagonal,
///              antisymmetric-off-diagonal
///   SP parent: identity, partner-symmetric-diagonal,
///              partner-antisymmetric-diagonal, partner-off-diagonal,
///              generic-off-diagonal
///
/// "Partner" refers to the index pairing i <-> i +- d/2 fixed by J. Sectors
/// with multiplicity zero are omitted.
SectorSpectrum closed_form_spectrum(const SpaceSpec& spec);

/// Sector spectrum. Symplectic-parent spaces are diagonalized numerically from
/// the superoperator and clustered at 1e-9; each cluster is labelled with the
/// closed-form sectors it matches (joined by '+'), or "unclassified".
SectorSpectrum channel_spectrum(const SpaceSpec& spec);

/// Moore-Penrose pseudo-inverse of the channel, applied sector by sector.
class ChannelInverse {
public:
    static constexpr double kNullThreshold = 1e-9;

    explicit ChannelInverse(const SpaceSpec& spec);

    const SpaceSpec& spec() const { return spec_; }
    const SectorSpectrum& spectrum() const { return spectrum_; }

    ComplexMatrix apply(const ComplexMatrix& m) const;

    /// Component of m lying in null sectors (dropped by apply).
    ComplexMatrix null_component(const ComplexMatrix& m) const;

    /// True when null_component(m) is below tol relative to max(1, |m|).
    bool in_image(const ComplexMatrix& m, double tol = 1e-10) const;

private:
    // Sector-resolved scaling; `null_only` keeps just the null sectors.
    ComplexMatrix transform(const ComplexMatrix& m, bool null_only) const;

    SpaceSpec spec_;
    SectorSpectrum spectrum_;
    Family parent_;
};

/// Throws NotInvertible when every nontrivial sector is null.
ChannelInverse invert_channel(const SpaceSpec& spec);

}  // namespace symshadow
