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

#include "symshadow/kernels.hpp"

namespace symshadow::kernels::scalar {

void hermitian_rank1_update(const cd* y, std::size_t n, cd* out) {
    for (std::size_t c = 0; c < n; ++c) {
        const cd z = std::conj(y[c]);
        cd* col = out + c * n;
        for (std::size_t r = 0; r < n; ++r) {
            const double re = y[r].real() * z.real() - y[r].imag() * z.imag();
            const double im = y[r].real() * z.imag() + y[r].imag() * z.real();
            col[r] += cd(re, im);
        }
    }
}

void accumulate_moments(const cd* x, std::size_t n, cd* sum, double* sumsq) {
    for (std::size_t k = 0; k < n; ++k) {
        sum[k] += x[k];
        sumsq[2 * k] += x[k].real() * x[k].real();
        sumsq[2 * k + 1] += x[k].imag() * x[k].imag();
    }
}

double hermitian_form(const cd* x, const cd* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const cd* col = a + c * n;
        double ur = 0.0;
        double ui = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            // conj(x_r) * A(r, c)
            ur += x[r].real() * col[r].real() + x[r].imag() * col[r].imag();
            ui += x[r].real() * col[r].imag() - x[r].imag() * col[r].real();
        }
        acc += ur * x[c].real() - ui * x[c].imag();
    }
    return acc;
}

void abs2(const cd* x, std::size_t n, double* out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
}

cd dot(const cd* x, const cd* y, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
        im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
    }
    return {re, im};
}

}  // namespace symshadow::kernels::scalar
