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
#include "symshadow/rng.hpp"

namespace symshadow {

enum class GinibreKind { Real, Complex, Quaternion };

/// Matrix of i.i.d. standard Gaussians.
///
/// Real: N(0,1) entries. Complex: independent N(0,1/2) real and imaginary
/// parts. Quaternion: a 2n x 2n complex matrix [[A, -conj(B)], [B, conj(A)]]
/// with A, B complex Ginibre of size n.
ComplexMatrix ginibre(GinibreKind kind, int n, RngStream& rng);

/// Haar-distributed U(d): QR of complex Ginibre, with each Q column rotated by
/// the phase of the matching R diagonal entry.
ComplexMatrix haar_unitary(int d, RngStream& rng);

/// Haar-distributed O(d), or SO(d) when `special` is set (one column is
/// negated when the determinant comes out -1). Returned with zero imaginary
/// part.
ComplexMatrix haar_orthogonal(int d, bool special, RngStream& rng);

/// Haar-distributed unitary symplectic group SP(d) inside U(d), d even, with
/// U^T J U = J for J = symplectic_form(d). Built by quaternionic Gram-Schmidt
/// on a quaternion Ginibre matrix.
ComplexMatrix haar_symplectic(int d, RngStream& rng);

}  // namespace symshadow
