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

// Inner-loop kernels for the Monte-Carlo paths.
//
// Each kernel exists as a scalar reference (namespace `scalar`) and, on
// x86-64, an AVX2+FMA variant (namespace `avx2`) built in a separate
// translation unit. The unqualified functions dispatch through a table chosen
// once at startup from CPUID; SYMSHADOW_KERNELS=scalar|avx2 in the
// environment, or set_backend(), overrides the choice. Complex arrays are
// interleaved (re, im) doubles, matrices column-major.

#include <complex>
#include <cstddef>
#include <string_view>

namespace symshadow::kernels {

using cd = std::complex<double>;

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);
bool backend_available(Backend b);
Backend active_backend();
/// Throws std::invalid_argument if `b` is not available on this CPU/build.
void set_backend(Backend b);

/// out += y y^dagger for an n x n column-major `out`.
void hermitian_rank1_update(const cd* y, std::size_t n, cd* out);
/// sum += x; sumsq[2k] += re(x_k)^2; sumsq[2k+1] += im(x_k)^2.
void accumulate_moments(const cd* x, std::size_t n, cd* sum, double* sumsq);
/// Re(x^dagger A x) for an n x n column-major A.
double hermitian_form(const cd* x, const cd* a, std::size_t n);
/// out[k] = |x_k|^2.
void abs2(const cd* x, std::size_t n, double* out);
/// sum_k conj(x_k) y_k.
cd dot(const cd* x, const cd* y, std::size_t n);

namespace scalar {
void hermitian_rank1_update(const cd* y, std::size_t n, cd* out);
void accumulate_moments(const cd* x, std::size_t n, cd* sum, double* sumsq);
double hermitian_form(const cd* x, const cd* a, std::size_t n);
void abs2(const cd* x, std::size_t n, double* out);
cd dot(const cd* x, const cd* y, std::size_t n);
}  // namespace scalar

#if defined(SYMSHADOW_HAVE_AVX2)
namespace avx2 {
void hermitian_rank1_update(const cd* y, std::size_t n, cd* out);
void accumulate_moments(const cd* x, std::size_t n, cd* sum, double* sumsq);
double hermitian_form(const cd* x, const cd* a, std::size_t n);
void abs2(const cd* x, std::size_t n, double* out);
cd dot(const cd* x, const cd* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace symshadow::kernels
