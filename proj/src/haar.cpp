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

#include "symshadow/haar.hpp"

#include <cmath>
#include <string>

#include "symshadow/linalg.hpp"

namespace symshadow {

namespace {

void require_positive(int n, const char* what) {
    if (n < 1) throw Error(ErrorCode::InvalidDimension, std::string(what) + " needs dimension >= 1, got " + std::to_string(n));
}

ComplexMatrix complex_gaussian(int n, RngStream& rng) {
    const double scale = std::sqrt(0.5);
    ComplexMatrix m(n, n);
    // Fill column-major so the draw order is fixed by the storage layout.
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(r, c) = cd(scale * re, scale * im);
        }
    }
    return m;
}

// Q of the unique QR factorization with positive real R diagonal.
ComplexMatrix normalized_q(const ComplexMatrix& z) {
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        const cd rjj = r(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0.0) q.col(j) *= rjj / mag;
    }
    return q;
}

}  // namespace

ComplexMatrix ginibre(GinibreKind kind, int n, RngStream& rng) {
    require_positive(n, "ginibre");
    switch (kind) {
        case GinibreKind::Real: {
            ComplexMatrix m(n, n);
            for (int c = 0; c < n; ++c) {
                for (int r = 0; r < n; ++r) m(r, c) = cd(rng.normal(), 0.0);
            }
            return m;
        }
        case GinibreKind::Complex:
            return complex_gaussian(n, rng);
        case GinibreKind::Quaternion: {
            ComplexMatrix a = complex_gaussian(n, rng);
            ComplexMatrix b = complex_gaussian(n, rng);
            return quaternionic_block(a, b);
        }
    }
    return {};
}

ComplexMatrix haar_unitary(int d, RngStream& rng) {
    require_positive(d, "haar_unitary");
    return normalized_q(complex_gaussian(d, rng));
}

ComplexMatrix haar_orthogonal(int d, bool special, RngStream& rng) {
    require_positive(d, "haar_orthogonal");
    RealMatrix z(d, d);
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) z(r, c) = rng.normal();
    }
    Eigen::HouseholderQR<RealMatrix> qr(z);
    RealMatrix q = qr.householderQ();
    const RealMatrix& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    if (special && q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q.cast<cd>();
}

ComplexMatrix haar_symplectic(int d, RngStream& rng) {
    if (d < 2 || d % 2 != 0) {
        throw Error(ErrorCode::InvalidDimension, "haar_symplectic needs even d >= 2, got " + std::to_string(d));
    }
    const int n = d / 2;
    const ComplexMatrix z = ginibre(GinibreKind::Quaternion, n, rng);

    // Quaternionic Gram-Schmidt (modified, two passes): column k is
    // orthogonalized against every earlier column and its partner, then the
    // partner column (-conj(bottom); conj(top)) is filled in. The span of the
    // finished columns is closed under the partner map, which keeps the
    // result in block form and hence symplectic.
    ComplexMatrix q = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < n; ++k) {
        ComplexVector v = z.col(k);
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                v -= q.col(j) * q.col(j).dot(v);
                v -= q.col(n + j) * q.col(n + j).dot(v);
            }
        }
        v /= v.norm();
        q.col(k) = v;
        q.col(n + k).head(n) = -v.tail(n).conjugate();
        q.col(n + k).tail(n) = v.head(n).conjugate();
    }
    return q;
}

}  // namespace symshadow
