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

// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed CPU support.

#include <immintrin.h>

#include "symshadow/kernels.hpp"

namespace symshadow::kernels::avx2 {

namespace {

inline const double* as_doubles(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cd* p) { return reinterpret_cast<double*>(p); }

// [a0, b0, a1, b1] * (zr + i zi) for two interleaved complex numbers.
inline __m256d cmul_broadcast(__m256d v, __m256d zr, __m256d zi) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(v, zr, _mm256_mul_pd(swapped, zi));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// even lanes minus odd lanes
inline double alt_sum(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return (t[0] - t[1]) + (t[2] - t[3]);
}

// conj(x) . y over n complex entries
inline cd cdot(const cd* x, const cd* y, std::size_t n) {
    const double* xd = as_doubles(x);
    const double* yd = as_doubles(y);
    __m256d pr = _mm256_setzero_pd();
    __m256d qi = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
        pr = _mm256_fmadd_pd(xv, yv, pr);
        qi = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), qi);
    }
    double re = hsum(pr);
    double im = alt_sum(qi);
    for (; k < n; ++k) {
        re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
        im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
    }
    return {re, im};
}

}  // namespace

void hermitian_rank1_update(const cd* y, std::size_t n, cd* out) {
    const double* yd = as_doubles(y);
    for (std::size_t c = 0; c < n; ++c) {
        const __m256d zr = _mm256_set1_pd(y[c].real());
        const __m256d zi = _mm256_set1_pd(-y[c].imag());
        double* col = as_doubles(out + c * n);
        std::size_t r = 0;
        for (; r + 2 <= n; r += 2) {
            const __m256d yv = _mm256_loadu_pd(yd + 2 * r);
            const __m256d acc = _mm256_loadu_pd(col + 2 * r);
            _mm256_storeu_pd(col + 2 * r, _mm256_add_pd(acc, cmul_broadcast(yv, zr, zi)));
        }
        for (; r < n; ++r) {
            const cd z = std::conj(y[c]);
            out[c * n + r] += cd(y[r].real() * z.real() - y[r].imag() * z.imag(),
                                 y[r].real() * z.imag() + y[r].imag() * z.real());
        }
    }
}

void accumulate_moments(const cd* x, std::size_t n, cd* sum, double* sumsq) {
    const double* xd = as_doubles(x);
    double* sd = as_doubles(sum);
    const std::size_t m = 2 * n;
    std::size_t k = 0;
    for (; k + 4 <= m; k += 4) {
        const __m256d xv = _mm256_loadu_pd(xd + k);
        _mm256_storeu_pd(sd + k, _mm256_add_pd(_mm256_loadu_pd(sd + k), xv));
        _mm256_storeu_pd(sumsq + k, _mm256_fmadd_pd(xv, xv, _mm256_loadu_pd(sumsq + k)));
    }
    for (; k < m; ++k) {
        sd[k] += xd[k];
        sumsq[k] += xd[k] * xd[k];
    }
}

double hermitian_form(const cd* x, const cd* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const cd w = cdot(x, a + c * n, n);
        acc += w.real() * x[c].real() - w.imag() * x[c].imag();
    }
    return acc;
}

void abs2(const cd* x, std::size_t n, double* out) {
    const double* xd = as_doubles(x);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d a = _mm256_loadu_pd(xd + 2 * k);
        const __m256d b = _mm256_loadu_pd(xd + 2 * k + 4);
        // hadd gives [a0+a1, b0+b1, a2+a3, b2+b3] on the squared lanes.
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        _mm256_storeu_pd(out + k, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; k < n; ++k) out[k] = x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
}

cd dot(const cd* x, const cd* y, std::size_t n) { return cdot(x, y, n); }

}  // namespace symshadow::kernels::avx2
