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

#include "symshadow/common.hpp"

namespace symshadow {

double max_abs(const ComplexMatrix& m);

// Structure predicates, entrywise max-norm residuals against `tol`.
bool is_square(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = kExactTol);
bool is_symmetric(const ComplexMatrix& m, double tol = kExactTol);
bool is_antisymmetric(const ComplexMatrix& m, double tol = kExactTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kExactTol);
bool is_real(const ComplexMatrix& m, double tol = kExactTol);

double unitarity_residual(const ComplexMatrix& m);

/// The canonical symplectic form [[0, -1], [1, 0]] in (d/2)-blocks. Every
/// J-dependent routine in the library obtains J from here.
ComplexMatrix symplectic_form(int d);

/// Symplectic partner of basis index i: the unique j with J(i, j) != 0.
inline int symplectic_partner(int i, int d) { return i < d / 2 ? i + d / 2 : i - d / 2; }

/// I_{p,q} = 1_p (+) (-1_q), positive block first.
ComplexMatrix signature_matrix(int p, int q);

/// K_{p,q} = I_{p,q} (+) I_{p,q}, acting on 2(p+q) dimensions.
ComplexMatrix doubled_signature_matrix(int p, int q);

/// Realification A + iB -> [[A, -B], [B, A]]. This is the embedding of U(n)
/// into SO(2n) and SP(2n) used for DIII and CI; its image commutes with J.
ComplexMatrix realify(const ComplexMatrix& a);

/// Quaternionic block form [[A, -conj(B)], [B, conj(A)]].
ComplexMatrix quaternionic_block(const ComplexMatrix& a, const ComplexMatrix& b);

void require_square(const ComplexMatrix& m, const char* what);
void require_dim(const ComplexMatrix& m, int d, const char* what);

}  // namespace symshadow
