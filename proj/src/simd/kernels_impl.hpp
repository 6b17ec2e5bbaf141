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

#ifndef SZENO_SRC_SIMD_KERNELS_IMPL_HPP
#define SZENO_SRC_SIMD_KERNELS_IMPL_HPP

#include <cstddef>

namespace szeno::simd::detail {

double sum_ref(const double* x, std::size_t n);
double sum_abs2_ref(const double* re, const double* im, std::size_t n);
double sum_abs2_weighted_ref(const double* re, const double* im, const double* w,
                             std::size_t n);
void weighted_sum_complex_ref(const double* w, const double* re, const double* im,
                              std::size_t n, double* out_re, double* out_im);
void caxpy_ref(double alpha_re, double alpha_im, const double* x_re, const double* x_im,
               std::size_t n, double* out_re, double* out_im);
void axpy_ref(double alpha, const double* x, std::size_t n, double* out);
void conj_mul_ref(const double* a_re, const double* a_im, const double* b_re,
                  const double* b_im, std::size_t n, double* out_re, double* out_im);
double max_abs_ref(const double* re, const double* im, std::size_t n);

#if defined(SZENO_HAVE_AVX2)
double sum_avx2(const double* x, std::size_t n);
double sum_abs2_avx2(const double* re, const double* im, std::size_t n);
double sum_abs2_weighted_avx2(const double* re, const double* im, const double* w,
                              std::size_t n);
void weighted_sum_complex_avx2(const double* w, const double* re, const double* im,
                               std::size_t n, double* out_re, double* out_im);
void caxpy_avx2(double alpha_re, double alpha_im, const double* x_re, const double* x_im,
                std::size_t n, double* out_re, double* out_im);
void axpy_avx2(double alpha, const double* x, std::size_t n, double* out);
void conj_mul_avx2(const double* a_re, const double* a_im, const double* b_re,
                   const double* b_im, std::size_t n, double* out_re, double* out_im);
double max_abs_avx2(const double* re, const double* im, std::size_t n);
#endif

}  // namespace szeno::simd::detail

#endif  // SZENO_SRC_SIMD_KERNELS_IMPL_HPP
