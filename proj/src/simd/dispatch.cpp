// Copyright 2026 The szeno Authors
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
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"
#include "szeno/simd/kernels.hpp"

namespace szeno::simd {

namespace {

constexpr KernelTable kScalar{
    detail::sum_ref,          detail::sum_abs2_ref, detail::sum_abs2_weighted_ref,
    detail::weighted_sum_complex_ref, detail::caxpy_ref, detail::axpy_ref,
    detail::conj_mul_ref,     detail::max_abs_ref,
};

#if defined(SZENO_HAVE_AVX2)
constexpr KernelTable kAvx2{
    detail::sum_avx2,          detail::sum_abs2_avx2, detail::sum_abs2_weighted_avx2,
    detail::weighted_sum_complex_avx2, detail::caxpy_avx2, detail::axpy_avx2,
    detail::conj_mul_avx2,     detail::max_abs_avx2,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(SZENO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept {
    const char* forced = std::getenv("SZENO_ISA");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
        return Isa::scalar;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

bool avx2_available() noexcept {
    static const bool available = cpu_has_avx2();
    return available;
}

const KernelTable& avx2_kernels() {
#if defined(SZENO_HAVE_AVX2)
    if (avx2_available()) {
        return kAvx2;
    }
#endif
    throw std::runtime_error("AVX2 kernels are not available on this machine");
}

const KernelTable& kernels() noexcept {
#if defined(SZENO_HAVE_AVX2)
    if (active().load(std::memory_order_relaxed) == Isa::avx2) {
        return kAvx2;
    }
#endif
    return kScalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available()) {
        throw std::runtime_error("AVX2 kernels are not available on this machine");
    }
    active().store(isa, std::memory_order_relaxed);
}

}  // namespace szeno::simd
