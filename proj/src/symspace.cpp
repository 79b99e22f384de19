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

#include "symshadow/symspace.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <vector>

#include "symshadow/haar.hpp"
#include "symshadow/linalg.hpp"
#include "symshadow/parallel.hpp"

namespace symshadow {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::InvalidParameters, message); }

void require_even(Family family, int d) {
    if (d < 2 || d % 2 != 0) {
        invalid(std::string(to_string(family)) + " requires an even dimension d >= 2 (got d=" + std::to_string(d) + ")");
    }
}

bool takes_blocks(Family family) {
    return family == Family::AIII || family == Family::BDI || family == Family::CII;
}

std::vector<int> random_permutation(int n, RngStream& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

int permutation_sign(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

// Monomial matrix: column k carries phase[k] in row perm[k].
ComplexMatrix monomial(const std::vector<int>& perm, const std::vector<cd>& phase) {
    const int n = static_cast<int>(perm.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(perm[k], k) = phase[k];
    return m;
}

ComplexMatrix signed_permutation(int n, bool special, RngStream& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    std::vector<int> perm = random_permutation(n, rng);
    std::vector<cd> phase(n);
    int det = permutation_sign(perm);
    for (auto& ph : phase) {
        ph = (rng.next_u64() & 1) ? 1.0 : -1.0;
        if (ph.real() < 0) det = -det;
    }
    if (special && det < 0) phase[0] = -phase[0];
    return monomial(perm, phase);
}

const std::array<cd, 4> kQuarterPhases{cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};

// Monomial with phases in {1, i, -1, -i}; `special` fixes det = 1.
ComplexMatrix phase_monomial(int n, bool special, RngStream& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    std::vector<int> perm = random_permutation(n, rng);
    std::vector<cd> phase(n);
    for (auto& ph : phase) ph = kQuarterPhases[rng.below(4)];
    ComplexMatrix m = monomial(perm, phase);
    if (special) {
        const cd det = m.determinant();
        m.col(0) *= std::conj(det) / std::abs(det);
    }
    return m;
}

// Monomial element of SP(2n): a permutation of the n quaternionic slots with
// a unit quaternion from {+-1, +-i, +-j, +-k} on each.
ComplexMatrix quaternionic_monomial(int n, RngStream& rng) {
    const std::vector<int> perm = random_permutation(n, rng);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const cd ph = kQuarterPhases[rng.below(4)];
        if (rng.next_u64() & 1) {
            a(perm[k], k) = ph;
        } else {
            b(perm[k], k) = ph;
        }
    }
    return quaternionic_block(a, b);
}

ComplexMatrix block_diag(const ComplexMatrix& x, const ComplexMatrix& y) {
    const auto m = x.rows();
    const auto n = y.rows();
    ComplexMatrix out = ComplexMatrix::Zero(m + n, m + n);
    if (m > 0) out.topLeftCorner(m, m) = x;
    if (n > 0) out.bottomRightCorner(n, n) = y;
    return out;
}

// Places a 2m x 2m symplectic block (itself in [[.,.],[.,.]] layout) onto the
// slots offset..offset+m-1 of a 2n-dimensional symplectic space.
void embed_symplectic_block(const ComplexMatrix& block, int offset, int n, ComplexMatrix& out) {
    const int m = static_cast<int>(block.rows()) / 2;
    auto target = [&](int r) { return r < m ? offset + r : n + offset + (r - m); };
    for (int c = 0; c < 2 * m; ++c) {
        for (int r = 0; r < 2 * m; ++r) out(target(r), target(c)) = block(r, c);
    }
}

}  // namespace

SpaceSpec make_space(Family family, int d, std::optional<int> p, std::optional<int> q) {
    if (d < 1) throw Error(ErrorCode::InvalidDimension, "dimension must be >= 1, got " + std::to_string(d));
    SpaceSpec spec;
    spec.family = family;
    spec.d = d;

    if (!takes_blocks(family)) {
        if (p || q) invalid(std::string(to_string(family)) + " takes no block sizes (p, q)");
        switch (family) {
            case Family::SP:
            case Family::AII:
            case Family::DIII:
            case Family::CI:
                require_even(family, d);
                break;
            default:
                break;
        }
        return spec;
    }

    if (!p || !q) invalid(std::string(to_string(family)) + " requires block sizes p and q");
    if (*p < 0 || *q < 0) invalid("block sizes must be nonnegative (got p=" + std::to_string(*p) + ", q=" + std::to_string(*q) + ")");
    spec.p = *p;
    spec.q = *q;
    spec.s = *p - *q;
    if (family == Family::CII) {
        require_even(family, d);
        if (*p + *q != d / 2) {
            invalid("CII requires p + q = d/2 quaternionic blocks (got p+q=" + std::to_string(*p + *q) +
                    ", d/2=" + std::to_string(d / 2) + ")");
        }
    } else if (*p + *q != d) {
        invalid(std::string(to_string(family)) + " requires p + q = d (got p+q=" + std::to_string(*p + *q) +
                ", d=" + std::to_string(d) + ")");
    }
    return spec;
}

std::string describe(const SpaceSpec& spec) {
    std::ostringstream os;
    os << to_string(spec.family) << "(d=" << spec.d;
    if (takes_blocks(spec.family)) os << ", p=" << spec.p << ", q=" << spec.q << ", s=" << spec.s;
    os << ")";
    return os.str();
}

std::string_view to_string(InvolutionKind kind) {
    switch (kind) {
        case InvolutionKind::Conjugate: return "conjugate";
        case InvolutionKind::AdJConjugate: return "AdJ-conjugate";
        case InvolutionKind::AdIpq: return "Ad_Ipq";
        case InvolutionKind::AdJ: return "AdJ";
        case InvolutionKind::AdKpq: return "Ad_Kpq";
    }
    return "?";
}

InvolutionKind involution_kind(const SpaceSpec& spec) {
    switch (spec.family) {
        case Family::AI: return InvolutionKind::Conjugate;
        case Family::AII: return InvolutionKind::AdJConjugate;
        case Family::AIII:
        case Family::BDI: return InvolutionKind::AdIpq;
        case Family::DIII:
        case Family::CI: return InvolutionKind::AdJ;
        case Family::CII: return InvolutionKind::AdKpq;
        default:
            throw Error(ErrorCode::NotAQuotient, std::string(to_string(spec.family)) + " is a group, not a quotient");
    }
}

ComplexMatrix involution_matrix(const SpaceSpec& spec) {
    switch (involution_kind(spec)) {
        case InvolutionKind::Conjugate: return ComplexMatrix::Identity(spec.d, spec.d);
        case InvolutionKind::AdJConjugate:
        case InvolutionKind::AdJ: return symplectic_form(spec.d);
        case InvolutionKind::AdIpq: return signature_matrix(spec.p, spec.q);
        case InvolutionKind::AdKpq: return doubled_signature_matrix(spec.p, spec.q);
    }
    return {};
}

ComplexMatrix involution(const SpaceSpec& spec, const ComplexMatrix& g) {
    require_dim(g, spec.d, "involution argument");
    const InvolutionKind kind = involution_kind(spec);
    if (kind == InvolutionKind::Conjugate) return g.conjugate();
    const ComplexMatrix m = involution_matrix(spec);
    // J^-1 = J^T; I_pq and K_pq are their own inverses.
    switch (kind) {
        case InvolutionKind::AdJConjugate: return m * g.conjugate() * m.transpose();
        case InvolutionKind::AdJ: return m * g * m.transpose();
        default: return m * g * m;
    }
}

ComplexMatrix sample_parent(const SpaceSpec& spec, RngStream& rng) {
    switch (parent_group(spec.family)) {
        case Family::U: return haar_unitary(spec.d, rng);
        case Family::O: return haar_orthogonal(spec.d, false, rng);
        case Family::SO: return haar_orthogonal(spec.d, true, rng);
        default: return haar_symplectic(spec.d, rng);
    }
}

ComplexMatrix point_from_parent(const SpaceSpec& spec, const ComplexMatrix& g) {
    if (is_group(spec.family)) return g;
    if (spec.family == Family::AI) return g.transpose() * g;
    return involution(spec, g).adjoint() * g;
}

ComplexMatrix sample_point(const SpaceSpec& spec, RngStream& rng) {
    if (spec.family == Family::AIII && spec.q == 0) {
        // sigma is the identity map, so sigma(g)^-1 g = 1 exactly.
        (void)sample_parent(spec, rng);
        return ComplexMatrix::Identity(spec.d, spec.d);
    }
    if ((spec.family == Family::AIII || spec.family == Family::BDI) && spec.p == 0) {
        (void)sample_parent(spec, rng);
        return ComplexMatrix::Identity(spec.d, spec.d);
    }
    return point_from_parent(spec, sample_parent(spec, rng));
}

WitnessResult structural_witness(const SpaceSpec& spec, const ComplexMatrix& v, double tol) {
    require_dim(v, spec.d, "witness argument");
    const int d = spec.d;
    const double unit = unitarity_residual(v);
    auto symplectic_defect = [&] {
        const ComplexMatrix j = symplectic_form(d);
        return max_abs(v.transpose() * j * v - j);
    };
    auto imag_part = [](const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff(); };

    WitnessResult out;
    switch (spec.family) {
        case Family::U:
            out.residual = unit;
            out.description = "V unitary";
            break;
        case Family::O:
            out.residual = std::max(unit, imag_part(v));
            out.description = "V real orthogonal";
            break;
        case Family::SO:
            out.residual = std::max({unit, imag_part(v), std::abs(v.determinant() - cd(1.0))});
            out.description = "V real orthogonal, det V = 1";
            break;
        case Family::SP:
            out.residual = std::max(unit, symplectic_defect());
            out.description = "V unitary, V^T J V = J";
            break;
        case Family::AI:
            out.residual = std::max(unit, max_abs(v - v.transpose()));
            out.description = "V symmetric unitary";
            break;
        case Family::AII: {
            const ComplexMatrix jv = symplectic_form(d) * v;
            out.residual = std::max(unit, max_abs(jv + jv.transpose()));
            out.description = "JV antisymmetric, V unitary";
            break;
        }
        case Family::AIII: {
            const ComplexMatrix iv = signature_matrix(spec.p, spec.q) * v;
            out.residual = std::max(unit, max_abs(iv - iv.adjoint()));
            out.description = "I_pq V Hermitian, V unitary";
            break;
        }
        case Family::BDI: {
            const ComplexMatrix iv = signature_matrix(spec.p, spec.q) * v;
            out.residual = std::max({unit, imag_part(v), max_abs(iv - iv.transpose())});
            out.description = "I_pq V real symmetric, V orthogonal";
            break;
        }
        case Family::DIII: {
            const ComplexMatrix jv = symplectic_form(d) * v;
            out.residual = std::max({unit, imag_part(v), max_abs(jv + jv.transpose())});
            out.description = "JV real antisymmetric, V orthogonal";
            break;
        }
        case Family::CI: {
            const ComplexMatrix jv = symplectic_form(d) * v;
            out.residual = std::max({unit, symplectic_defect(), max_abs(jv + jv.adjoint())});
            out.description = "JV anti-Hermitian, V symplectic unitary";
            break;
        }
        case Family::CII: {
            const ComplexMatrix kv = doubled_signature_matrix(spec.p, spec.q) * v;
            out.residual = std::max({unit, symplectic_defect(), max_abs(kv - kv.adjoint())});
            out.description = "K_pq V Hermitian, V symplectic unitary";
            break;
        }
    }
    out.pass = out.residual <= tol;
    return out;
}

ComplexMatrix sample_subgroup(const SpaceSpec& spec, RngStream& rng) {
    const int d = spec.d;
    switch (spec.family) {
        case Family::AI: return haar_orthogonal(d, false, rng);
        case Family::AII: return haar_symplectic(d, rng);
        case Family::AIII: {
            const ComplexMatrix a = spec.p > 0 ? haar_unitary(spec.p, rng) : ComplexMatrix(0, 0);
            const ComplexMatrix b = spec.q > 0 ? haar_unitary(spec.q, rng) : ComplexMatrix(0, 0);
            ComplexMatrix k = block_diag(a, b);
            const cd det = k.determinant();
            k.col(0) *= std::conj(det) / std::abs(det);
            return k;
        }
        case Family::BDI: {
            const ComplexMatrix a = spec.p > 0 ? haar_orthogonal(spec.p, true, rng) : ComplexMatrix(0, 0);
            const ComplexMatrix b = spec.q > 0 ? haar_orthogonal(spec.q, true, rng) : ComplexMatrix(0, 0);
            return block_diag(a, b);
        }
        case Family::DIII:
        case Family::CI: return realify(haar_unitary(d / 2, rng));
        case Family::CII: {
            const int n = d / 2;
            ComplexMatrix k = ComplexMatrix::Zero(d, d);
            if (spec.p > 0) embed_symplectic_block(haar_symplectic(2 * spec.p, rng), 0, n, k);
            if (spec.q > 0) embed_symplectic_block(haar_symplectic(2 * spec.q, rng), spec.p, n, k);
            return k;
        }
        default:
            throw Error(ErrorCode::NotAQuotient, std::string(to_string(spec.family)) + " is a group, not a quotient");
    }
}

ComplexMatrix sample_normalizer(const SpaceSpec& spec, RngStream& rng) {
    const int d = spec.d;
    switch (spec.family) {
        case Family::U: return phase_monomial(d, false, rng);
        case Family::O:
        case Family::AI: return signed_permutation(d, false, rng);
        case Family::SO: return signed_permutation(d, true, rng);
        case Family::SP:
        case Family::AII: return quaternionic_monomial(d / 2, rng);
        case Family::AIII: {
            ComplexMatrix h = block_diag(phase_monomial(spec.p, false, rng), phase_monomial(spec.q, false, rng));
            const cd det = h.determinant();
            h.col(0) *= std::conj(det) / std::abs(det);
            return h;
        }
        case Family::BDI:
            return block_diag(signed_permutation(spec.p, true, rng), signed_permutation(spec.q, true, rng));
        case Family::DIII:
        case Family::CI: return realify(phase_monomial(d / 2, false, rng));
        case Family::CII: {
            const int n = d / 2;
            ComplexMatrix h = ComplexMatrix::Zero(d, d);
            if (spec.p > 0) embed_symplectic_block(quaternionic_monomial(spec.p, rng), 0, n, h);
            if (spec.q > 0) embed_symplectic_block(quaternionic_monomial(spec.q, rng), spec.p, n, h);
            return h;
        }
    }
    return {};
}

std::vector<std::array<double, 3>> bloch_cloud(const SpaceSpec& spec, std::size_t n, std::uint64_t seed, int threads) {
    if (spec.d != 2) throw Error(ErrorCode::InvalidDimension, "Bloch coordinates need d = 2, got " + describe(spec));
    std::vector<std::array<double, 3>> points(n);
    const auto ranges = split_samples(n);
    const RngStream base(seed, 0);
    run_tasks(
        ranges.size(),
        [&](std::size_t t) {
            RngStream rng = base.substream(t);
            for (std::size_t i = ranges[t].begin; i < ranges[t].end; ++i) {
                const ComplexMatrix v = sample_point(spec, rng);
                const cd a = v(0, 0);
                const cd b = v(1, 0);
                const cd ab = std::conj(a) * b;
                points[i] = {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
            }
        },
        threads);
    return points;
}

}  // namespace symshadow
