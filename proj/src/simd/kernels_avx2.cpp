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

// Compiled with -mavx2 -ffp-contract=off. The lane layout of every reduction
// mirrors kernels_scalar.cpp exactly; keep the two files in step.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace szeno::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

inline double finish(__m256d acc, const double* tail, std::size_t tail_n) {
    alignas(32) double lane[kLanes];
    _mm256_store_pd(lane, acc);
    for (std::size_t i = 0; i < tail_n; ++i) {
        lane[i] += tail[i];
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double sum_avx2(const double* x, std::size_t n) {
    const std::size_t body = n - n % kLanes;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    return finish(acc, x + body, n - body);
}

double sum_abs2_avx2(const double* re, const double* im, std::size_t n) {
    const std::size_t body = n - n % kLanes;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
    }
    double tail[kLanes];
    for (std::size_t i = body; i < n; ++i) {
        const double r2 = re[i] * re[i];
        const double i2 = im[i] * im[i];
        tail[i - body] = r2 + i2;
    }
    return finish(acc, tail, n - body);
}

double sum_abs2_weighted_avx2(const double* re, const double* im, const double* w,
                              std::size_t n) {
    const std::size_t body = n - n % kLanes;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        const __m256d mag = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), mag));
    }
    double tail[kLanes];
    for (std::size_t i = body; i < n; ++i) {
        const double r2 = re[i] * re[i];
        const double i2 = im[i] * im[i];
        const double m = r2 + i2;
        tail[i - body] = w[i] * m;
    }
    return finish(acc, tail, n - body);
}

void weighted_sum_complex_avx2(const double* w, const double* re, const double* im,
                               std::size_t n, double* out_re, double* out_im) {
    const std::size_t body = n - n % kLanes;
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d wv = _mm256_loadu_pd(w + i);
        acc_r = _mm256_add_pd(acc_r, _mm256_mul_pd(wv, _mm256_loadu_pd(re + i)));
        acc_i = _mm256_add_pd(acc_i, _mm256_mul_pd(wv, _mm256_loadu_pd(im + i)));
    }
    double tail_r[kLanes];
    double tail_i[kLanes];
    for (std::size_t i = body; i < n; ++i) {
        tail_r[i - body] = w[i] * re[i];
        tail_i[i - body] = w[i] * im[i];
    }
    *out_re = finish(acc_r, tail_r, n - body);
    *out_im = finish(acc_i, tail_i, n - body);
}

void caxpy_avx2(double alpha_re, double alpha_im, const double* x_re, const double* x_im,
                std::size_t n, double* out_re, double* out_im) {
    const std::size_t body = n - n % kLanes;
    const __m256d ar = _mm256_set1_pd(alpha_re);
    const __m256d ai = _mm256_set1_pd(alpha_im);
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d xr = _mm256_loadu_pd(x_re + i);
        const __m256d xi = _mm256_loadu_pd(x_im + i);
        const __m256d re = _mm256_sub_pd(_mm256_mul_pd(ar, xr), _mm256_mul_pd(ai, xi));
        const __m256d im = _mm256_add_pd(_mm256_mul_pd(ar, xi), _mm256_mul_pd(ai, xr));
        _mm256_storeu_pd(out_re + i, _mm256_add_pd(_mm256_loadu_pd(out_re + i), re));
        _mm256_storeu_pd(out_im + i, _mm256_add_pd(_mm256_loadu_pd(out_im + i), im));
    }
    caxpy_ref(alpha_re, alpha_im, x_re + body, x_im + body, n - body, out_re + body,
              out_im + body);
}

void axpy_avx2(double alpha, const double* x, std::size_t n, double* out) {
    const std::size_t body = n - n % kLanes;
    const __m256d a = _mm256_set1_pd(alpha);
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d p = _mm256_mul_pd(a, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), p));
    }
    axpy_ref(alpha, x + body, n - body, out + body);
}

void conj_mul_avx2(const double* a_re, const double* a_im, const double* b_re,
                   const double* b_im, std::size_t n, double* out_re, double* out_im) {
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d ar = _mm256_loadu_pd(a_re + i);
        const __m256d ai = _mm256_loadu_pd(a_im + i);
        const __m256d br = _mm256_loadu_pd(b_re + i);
        const __m256d bi = _mm256_loadu_pd(b_im + i);
        _mm256_storeu_pd(out_re + i, _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi)));
        _mm256_storeu_pd(out_im + i, _mm256_sub_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br)));
    }
    conj_mul_ref(a_re + body, a_im + body, b_re + body, b_im + body, n - body, out_re + body,
                 out_im + body);
}

double max_abs_avx2(const double* re, const double* im, std::size_t n) {
    const std::size_t body = n - n % kLanes;
    __m256d best = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        const __m256d mag =
            _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
        best = _mm256_max_pd(best, mag);
    }
    alignas(32) double lane[kLanes];
    _mm256_store_pd(lane, best);
    double out = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    return std::max(out, max_abs_ref(re + body, im + body, n - body));
}

}  // namespace szeno::simd::detail
