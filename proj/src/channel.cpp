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

#include "symshadow/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "symshadow/linalg.hpp"

namespace symshadow {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_decimal(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string out;
    while (v != 0) {
        const int digit = static_cast<int>(v % 10);
        out.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
        v /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
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

bool trivial_quotient(const SpaceSpec& spec) {
    return (spec.family == Family::AIII || spec.family == Family::BDI || spec.family == Family::CII) &&
           (spec.p == 0 || spec.q == 0);
}

// Per-component eigenvalues in the fixed decomposition order used by
// ChannelInverse::transform:
//   unitary:    identity, diagonal, off
//   orthogonal: identity, diagonal, sym-off, anti-off
//   symplectic: identity, partner-sym-diag, partner-anti-diag, partner-off, generic-off
std::vector<Sector> sector_table(const SpaceSpec& spec) {
    const int d = spec.d;
    double alpha = 0.0;
    double beta = 0.0;
    if (!is_group(spec.family)) {
        const ChannelCoefficients c = alpha_beta(spec);
        alpha = c.alpha;
        beta = c.beta;
    }
    std::vector<Sector> out;
    out.push_back({"identity", 1.0, 1});
    switch (parent_kind(spec.family)) {
        case ParentKind::Unitary: {
            const double base = (1.0 - alpha) / (d + 1);
            out.push_back({"traceless-diagonal", base + alpha, d - 1});
            out.push_back({"off-diagonal", base, d * d - d});
            break;
        }
        case ParentKind::Orthogonal: {
            const double base = 2.0 * (1.0 - alpha) / (d + 2);
            out.push_back({"traceless-diagonal", base + alpha, d - 1});
            out.push_back({"symmetric-off-diagonal", base, d * (d - 1) / 2});
            out.push_back({"antisymmetric-off-diagonal", 0.0, d * (d - 1) / 2});
            break;
        }
        case ParentKind::Symplectic: {
            const double base = (1.0 - alpha) / (d + 1);
            const int n = d / 2;
            out.push_back({"partner-symmetric-diagonal", base + alpha, n - 1});
            out.push_back({"partner-antisymmetric-diagonal", base + 2.0 * beta - alpha, n});
            out.push_back({"partner-off-diagonal", base + alpha - beta, d});
            out.push_back({"generic-off-diagonal", base, d * d - 2 * d});
            break;
        }
    }
    return out;
}

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
    if (den == 0) throw Error(ErrorCode::InvalidParameters, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num = num;
    r.den = den;
    return r;
}

std::string Rational::str() const {
    if (den == 1) return to_decimal(num);
    return to_decimal(num) + "/" + to_decimal(den);
}

Rational operator+(const Rational& a, const Rational& b) { return Rational::make(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(const Rational& a, const Rational& b) { return Rational::make(a.num * b.den - b.num * a.den, a.den * b.den); }
Rational operator*(const Rational& a, const Rational& b) { return Rational::make(a.num * b.num, a.den * b.den); }
Rational operator/(const Rational& a, const Rational& b) { return Rational::make(a.num * b.den, a.den * b.num); }

ComplexMatrix dephase(const ComplexMatrix& m) {
    require_square(m, "dephase argument");
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    out.diagonal() = m.diagonal();
    return out;
}

ComplexMatrix parent_channel(Family group, const ComplexMatrix& m, int d) {
    require_dim(m, d, "parent_channel argument");
    const cd tr = m.trace();
    switch (group) {
        case Family::U:
        case Family::SP: {
            ComplexMatrix out = m;
            out.diagonal().array() += tr;
            return out / static_cast<double>(d + 1);
        }
        case Family::O:
        case Family::SO: {
            ComplexMatrix out = m + m.transpose();
            out.diagonal().array() += tr;
            return out / static_cast<double>(d + 2);
        }
        default:
            throw Error(ErrorCode::UnsupportedGroup,
                        std::string(to_string(group)) + " is not a parent group (expected U, O, SO or SP)");
    }
}

ChannelCoefficients alpha_beta(const SpaceSpec& spec) {
    if (is_group(spec.family)) {
        throw Error(ErrorCode::CoefficientsNotApplicable,
                    std::string(to_string(spec.family)) + " is a group; alpha and beta are defined for quotients only");
    }
    const i128 d = spec.d;
    const i128 s = spec.s;
    const i128 s2 = s * s;
    const i128 s4 = s2 * s2;

    ChannelCoefficients c;
    c.parent = parent_group(spec.family);
    c.has_J_term = c.parent == Family::SP;

    if (trivial_quotient(spec)) {
        c.alpha_exact = c.beta_exact = Rational::make(1, 1);
    } else {
        switch (spec.family) {
            case Family::AI: c.alpha_exact = Rational::make(2, d * (d + 3)); break;
            case Family::AII: c.alpha_exact = Rational::make(2, d * (d - 1)); break;
            case Family::AIII:
                c.alpha_exact = Rational::make(s4 + 2 * s2 * (d - 2) + d * d, d * d * (d - 1) * (d + 3));
                break;
            case Family::BDI:
                c.alpha_exact = Rational::make(s4 + (6 * d - 4) * s2 + 3 * d * (d - 2), d * (d * d - 1) * (d + 6));
                break;
            case Family::DIII: c.alpha_exact = Rational::make(3, d * d - 1); break;
            case Family::CI: {
                const i128 n = d / 2;
                c.alpha_exact = Rational::make(3, (d - 1) * (d + 3));
                c.beta_exact = Rational::make(6 * n + 1, (2 * n - 1) * (2 * n + 1) * (2 * n + 3));
                break;
            }
            case Family::CII: {
                const i128 n = d / 2;
                c.alpha_exact = Rational::make(4 * s4 - 10 * s2 + 3 * n * n + 3 * n, n * (n - 1) * (2 * n - 1) * (2 * n + 3));
                const i128 q = 2 * n * n + n + 1;
                c.beta_exact = Rational::make(3 * n * (n + 1) * q + 4 * s2 * (q * s2 + 2 * n * n * n - 5 * n * n - 6 * n - 1),
                                              n * (n - 1) * (n + 1) * (2 * n - 1) * (2 * n + 1) * (2 * n + 3));
                break;
            }
            default: break;
        }
        if (!c.has_J_term) c.beta_exact = c.alpha_exact;
    }
    c.alpha = c.alpha_exact.value();
    c.beta = c.beta_exact.value();
    return c;
}

ComplexMatrix apply_channel(const SpaceSpec& spec, const ComplexMatrix& rho) {
    const int d = spec.d;
    require_dim(rho, d, "channel input");
    if (is_group(spec.family)) return parent_channel(spec.family, rho, d);

    const ChannelCoefficients c = alpha_beta(spec);
    const ComplexMatrix a = dephase(rho);
    ComplexMatrix out = (1.0 - c.alpha) * parent_channel(c.parent, rho, d) + c.beta * a;
    if (c.has_J_term && c.alpha != c.beta) {
        const ComplexMatrix j = symplectic_form(d);
        out += (c.alpha - c.beta) * (j * a * j.transpose() - dephase(rho * j) * j);
    }
    return out;
}

ComplexMatrix build_superoperator(const SpaceSpec& spec) {
    const int d = spec.d;
    const int d2 = d * d;
    ComplexMatrix s(d2, d2);
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            e(i, j) = 1.0;
            const ComplexMatrix out = apply_channel(spec, e);
            s.col(j * d + i) = Eigen::Map<const ComplexVector>(out.data(), d2);
            e(i, j) = 0.0;
        }
    }
    return s;
}

ComplexMatrix choi_matrix(const SpaceSpec& spec) {
    const int d = spec.d;
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            e(i, j) = 1.0;
            choi.block(i * d, j * d, d, d) = apply_channel(spec, e);
            e(i, j) = 0.0;
        }
    }
    return choi;
}

double SectorSpectrum::eigenvalue(std::string_view name) const {
    for (const auto& sector : sectors) {
        if (sector.name == name) return sector.eigenvalue;
    }
    throw Error(ErrorCode::InvalidParameters, "no sector named '" + std::string(name) + "'");
}

SectorSpectrum closed_form_spectrum(const SpaceSpec& spec) {
    SectorSpectrum out;
    for (auto& sector : sector_table(spec)) {
        if (sector.multiplicity > 0) out.sectors.push_back(std::move(sector));
    }
    return out;
}

SectorSpectrum channel_spectrum(const SpaceSpec& spec) {
    if (parent_kind(spec.family) != ParentKind::Symplectic) return closed_form_spectrum(spec);

    const ComplexMatrix s = build_superoperator(spec);
    const ComplexMatrix h = 0.5 * (s + s.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& values = solver.eigenvalues();

    const SectorSpectrum reference = closed_form_spectrum(spec);
    constexpr double kClusterTol = 1e-9;

    SectorSpectrum out;
    out.numeric = true;
    Eigen::Index start = 0;
    while (start < values.size()) {
        Eigen::Index stop = start + 1;
        while (stop < values.size() && values[stop] - values[stop - 1] <= kClusterTol) ++stop;
        Sector cluster;
        cluster.multiplicity = static_cast<int>(stop - start);
        cluster.eigenvalue = values.segment(start, stop - start).mean();
        for (const auto& ref : reference.sectors) {
            if (std::abs(ref.eigenvalue - cluster.eigenvalue) <= kClusterTol) {
                if (!cluster.name.empty()) cluster.name += "+";
                cluster.name += ref.name;
            }
        }
        if (cluster.name.empty()) cluster.name = "unclassified";
        out.sectors.push_back(std::move(cluster));
        start = stop;
    }
    return out;
}

ChannelInverse::ChannelInverse(const SpaceSpec& spec)
    : spec_(spec), spectrum_(closed_form_spectrum(spec)), parent_(parent_group(spec.family)) {}

ComplexMatrix ChannelInverse::transform(const ComplexMatrix& m, bool null_only) const {
    const int d = spec_.d;
    require_dim(m, d, "pseudo-inverse input");
    const std::vector<Sector> table = sector_table(spec_);
    auto scale = [&](std::size_t k) {
        const bool null = std::abs(table[k].eigenvalue) <= kNullThreshold;
        if (null_only) return null ? 1.0 : 0.0;
        return null ? 0.0 : 1.0 / table[k].eigenvalue;
    };

    const cd mean_diag = m.trace() / static_cast<double>(d);
    ComplexMatrix diag = dephase(m);
    diag.diagonal().array() -= mean_diag;
    const ComplexMatrix off = m - dephase(m);

    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    out.diagonal().setConstant(scale(0) * mean_diag);

    switch (parent_kind(spec_.family)) {
        case ParentKind::Unitary:
            out += scale(1) * diag + scale(2) * off;
            break;
        case ParentKind::Orthogonal:
            out += scale(1) * diag;
            out += scale(2) * 0.5 * (off + off.transpose());
            out += scale(3) * 0.5 * (off - off.transpose());
            break;
        case ParentKind::Symplectic: {
            const int n = d / 2;
            ComplexMatrix sym = ComplexMatrix::Zero(d, d);
            ComplexMatrix partner = ComplexMatrix::Zero(d, d);
            for (int i = 0; i < n; ++i) {
                const cd avg = 0.5 * (diag(i, i) + diag(n + i, n + i));
                sym(i, i) = sym(n + i, n + i) = avg;
                partner(i, n + i) = off(i, n + i);
                partner(n + i, i) = off(n + i, i);
            }
            out += scale(1) * sym + scale(2) * (diag - sym);
            out += scale(3) * partner + scale(4) * (off - partner);
            break;
        }
    }
    return out;
}

ComplexMatrix ChannelInverse::apply(const ComplexMatrix& m) const { return transform(m, false); }

ComplexMatrix ChannelInverse::null_component(const ComplexMatrix& m) const { return transform(m, true); }

bool ChannelInverse::in_image(const ComplexMatrix& m, double tol) const {
    return max_abs(null_component(m)) <= tol * std::max(1.0, max_abs(m));
}

ChannelInverse invert_channel(const SpaceSpec& spec) {
    ChannelInverse inverse(spec);
    bool any_nontrivial = false;
    bool any_alive = false;
    for (const auto& sector : inverse.spectrum().sectors) {
        if (sector.name == "identity") continue;
        any_nontrivial = true;
        if (std::abs(sector.eigenvalue) > ChannelInverse::kNullThreshold) any_alive = true;
    }
    if (any_nontrivial && !any_alive) {
        throw Error(ErrorCode::NotInvertible, describe(spec) + ": every nontrivial channel sector is null");
    }
    return inverse;
}

}  // namespace symshadow
