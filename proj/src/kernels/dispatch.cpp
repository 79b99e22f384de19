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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "symshadow/kernels.hpp"

namespace symshadow::kernels {

namespace {

struct Table {
    Backend backend;
    void (*rank1)(const cd*, std::size_t, cd*);
    void (*moments)(const cd*, std::size_t, cd*, double*);
    double (*form)(const cd*, const cd*, std::size_t);
    void (*abs2)(const cd*, std::size_t, double*);
    cd (*dot)(const cd*, const cd*, std::size_t);
};

constexpr Table kScalar{Backend::Scalar, scalar::hermitian_rank1_update, scalar::accumulate_moments,
                        scalar::hermitian_form, scalar::abs2, scalar::dot};
#if defined(SYMSHADOW_HAVE_AVX2)
constexpr Table kAvx2{Backend::Avx2, avx2::hermitian_rank1_update, avx2::accumulate_moments,
                      avx2::hermitian_form, avx2::abs2, avx2::dot};
#endif

bool cpu_has_avx2() {
#if defined(SYMSHADOW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* table_for(Backend b) {
#if defined(SYMSHADOW_HAVE_AVX2)
    if (b == Backend::Avx2) return &kAvx2;
#endif
    (void)b;
    return &kScalar;
}

const Table* initial_table() {
    if (const char* env = std::getenv("SYMSHADOW_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &kScalar;
        if (want == "avx2" && cpu_has_avx2()) return table_for(Backend::Avx2);
    }
    return cpu_has_avx2() ? table_for(Backend::Avx2) : &kScalar;
}

std::atomic<const Table*>& active() {
    static std::atomic<const Table*> table{initial_table()};
    return table;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

Backend active_backend() { return active().load()->backend; }

void set_backend(Backend b) {
    if (!backend_available(b)) {
        throw std::invalid_argument("kernel backend '" + std::string(to_string(b)) + "' is not available");
    }
    active().store(table_for(b));
}

void hermitian_rank1_update(const cd* y, std::size_t n, cd* out) { active().load()->rank1(y, n, out); }

void accumulate_moments(const cd* x, std::size_t n, cd* sum, double* sumsq) {
    active().load()->moments(x, n, sum, sumsq);
}

double hermitian_form(const cd* x, const cd* a, std::size_t n) { return active().load()->form(x, a, n); }

void abs2(const cd* x, std::size_t n, double* out) { active().load()->abs2(x, n, out); }

cd dot(const cd* x, const cd* y, std::size_t n) { return active().load()->dot(x, y, n); }

}  // namespace symshadow::kernels
