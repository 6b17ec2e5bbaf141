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

// Data-parallel inner loops used by bin assembly and reductions.
//
// Every kernel exists as a scalar reference and, on x86-64, as an AVX2
// variant selected at runtime. Reductions use four interleaved partial sums
// (element i feeds lane i % 4, lanes combined as (l0 + l1) + (l2 + l3)) in
// both variants, and neither variant contracts multiply-add pairs, so the
// two produce bit-identical results. Complex data is stored split into
// separate real and imaginary arrays.

#ifndef SZENO_SIMD_KERNELS_HPP
#define SZENO_SIMD_KERNELS_HPP

#include <cstddef>
#include <string_view>

namespace szeno::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    // sum_i x[i]
    double (*sum)(const double* x, std::size_t n);
    // sum_i re[i]^2 + im[i]^2
    double (*sum_abs2)(const double* re, const double* im, std::size_t n);
    // sum_i w[i] * (re[i]^2 + im[i]^2)
    double (*sum_abs2_weighted)(const double* re, const double* im, const double* w,
                                std::size_t n);
    // (sum_i w[i] * re[i], sum_i w[i] * im[i])
    void (*weighted_sum_complex)(const double* w, const double* re, const double* im,
                                 std::size_t n, double* out_re, double* out_im);
    // out[i] += alpha * x[i] over complex numbers
    void (*caxpy)(double alpha_re, double alpha_im, const double* x_re, const double* x_im,
                  std::size_t n, double* out_re, double* out_im);
    // out[i] += alpha * x[i] over reals
    void (*axpy)(double alpha, const double* x, std::size_t n, double* out);
    // out[i] = conj(a[i]) * b[i]
    void (*conj_mul)(const double* a_re, const double* a_im, const double* b_re,
                     const double* b_im, std::size_t n, double* out_re, double* out_im);
    // max_i sqrt(re[i]^2 + im[i]^2); 0 for n == 0
    double (*max_abs)(const double* re, const double* im, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// True when the AVX2 table was compiled in and the running CPU supports it.
bool avx2_available() noexcept;

/// Throws std::runtime_error when AVX2 is unavailable.
const KernelTable& avx2_kernels();

/// The active table. Defaults to the best available ISA; the environment
/// variable SZENO_ISA=scalar forces the reference kernels.
const KernelTable& kernels() noexcept;
Isa active_isa() noexcept;

/// Switches the active table. Not thread-safe with concurrent calls to kernels().
void set_isa(Isa isa);

}  // namespace szeno::simd

#endif  // SZENO_SIMD_KERNELS_HPP
