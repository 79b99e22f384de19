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

#include "symshadow/linalg.hpp"

#include <string>

namespace symshadow {

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

double unitarity_residual(const ComplexMatrix& m) {
    const auto n = m.rows();
    return max_abs(m.adjoint() * m - ComplexMatrix::Identity(n, n));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    return is_square(m) && unitarity_residual(m) <= tol;
}

bool is_symmetric(const ComplexMatrix& m, double tol) {
    return is_square(m) && max_abs(m - m.transpose()) <= tol;
}

bool is_antisymmetric(const ComplexMatrix& m, double tol) {
    return is_square(m) && max_abs(m + m.transpose()) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return is_square(m) && max_abs(m - m.adjoint()) <= tol;
}

bool is_real(const ComplexMatrix& m, double tol) {
    return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix symplectic_form(int d) {
    if (d < 2 || d % 2 != 0) {
        throw Error(ErrorCode::InvalidDimension, "symplectic form needs even d >= 2, got " + std::to_string(d));
    }
    const int n = d / 2;
    ComplexMatrix j = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = -1.0;
        j(n + i, i) = 1.0;
    }
    return j;
}

ComplexMatrix signature_matrix(int p, int q) {
    ComplexMatrix m = ComplexMatrix::Zero(p + q, p + q);
    for (int i = 0; i < p; ++i) m(i, i) = 1.0;
    for (int i = p; i < p + q; ++i) m(i, i) = -1.0;
    return m;
}

ComplexMatrix doubled_signature_matrix(int p, int q) {
    const int n = p + q;
    ComplexMatrix m = ComplexMatrix::Zero(2 * n, 2 * n);
    const ComplexMatrix ipq = signature_matrix(p, q);
    m.topLeftCorner(n, n) = ipq;
    m.bottomRightCorner(n, n) = ipq;
    return m;
}

ComplexMatrix realify(const ComplexMatrix& a) {
    const auto n = a.rows();
    ComplexMatrix out(2 * n, 2 * n);
    const RealMatrix re = a.real();
    const RealMatrix im = a.imag();
    out.topLeftCorner(n, n) = re.cast<cd>();
    out.topRightCorner(n, n) = (-im).cast<cd>();
    out.bottomLeftCorner(n, n) = im.cast<cd>();
    out.bottomRightCorner(n, n) = re.cast<cd>();
    return out;
}

ComplexMatrix quaternionic_block(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto n = a.rows();
    ComplexMatrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = a;
    out.topRightCorner(n, n) = -b.conjugate();
    out.bottomLeftCorner(n, n) = b;
    out.bottomRightCorner(n, n) = a.conjugate();
    return out;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!is_square(m) || m.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
    }
}

void require_dim(const ComplexMatrix& m, int d, const char* what) {
    if (m.rows() != d || m.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(d) + "x" + std::to_string(d));
    }
}

}  // namespace symshadow
