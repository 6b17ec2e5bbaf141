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

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace szeno::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

inline double combine(const double (&lane)[kLanes]) {
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double sum_ref(const double* x, std::size_t n) {
    double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        lane[i % kLanes] += x[i];
    }
    return combine(lane);
}

double sum_abs2_ref(const double* re, const double* im, std::size_t n) {
    double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = re[i] * re[i];
        const double i2 = im[i] * im[i];
        lane[i % kLanes] += r2 + i2;
    }
    return combine(lane);
}

double sum_abs2_weighted_ref(const double* re, const double* im, const double* w,
                             std::size_t n) {
    double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = re[i] * re[i];
        const double i2 = im[i] * im[i];
        const double m = r2 + i2;
        lane[i % kLanes] += w[i] * m;
    }
    return combine(lane);
}

void weighted_sum_complex_ref(const double* w, const double* re, const double* im,
                              std::size_t n, double* out_re, double* out_im) {
    double lr[kLanes] = {0.0, 0.0, 0.0, 0.0};
    double li[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double pr = w[i] * re[i];
        const double pi = w[i] * im[i];
        lr[i % kLanes] += pr;
        li[i % kLanes] += pi;
    }
    *out_re = combine(lr);
    *out_im = combine(li);
}

void caxpy_ref(double alpha_re, double alpha_im, const double* x_re, const double* x_im,
               std::size_t n, double* out_re, double* out_im) {
    for (std::size_t i = 0; i < n; ++i) {
        const double rr = alpha_re * x_re[i];
        const double ii = alpha_im * x_im[i];
        const double ri = alpha_re * x_im[i];
        const double ir = alpha_im * x_re[i];
        out_re[i] += rr - ii;
        out_im[i] += ri + ir;
    }
}

void axpy_ref(double alpha, const double* x, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double p = alpha * x[i];
        out[i] += p;
    }
}

void conj_mul_ref(const double* a_re, const double* a_im, const double* b_re,
                  const double* b_im, std::size_t n, double* out_re, double* out_im) {
    for (std::size_t i = 0; i < n; ++i) {
        // conj(a) * b = (ar - i ai)(br + i bi)
        const double rr = a_re[i] * b_re[i];
        const double ii = a_im[i] * b_im[i];
        const double ri = a_re[i] * b_im[i];
        const double ir = a_im[i] * b_re[i];
        out_re[i] = rr + ii;
        out_im[i] = ri - ir;
    }
}

double max_abs_ref(const double* re, const double* im, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = re[i] * re[i];
        const double i2 = im[i] * im[i];
        best = std::max(best, std::sqrt(r2 + i2));
    }
    return best;
}

}  // namespace szeno::simd::detail
