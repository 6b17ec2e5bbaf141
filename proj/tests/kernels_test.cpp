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

#include "szeno/simd/kernels.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace szeno::simd;

namespace {

struct Data {
    std::vector<double> a_re, a_im, b_re, b_im, w;
};

Data make_data(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        d.a_re.push_back(u(rng));
        d.a_im.push_back(u(rng));
        d.b_re.push_back(u(rng) * 1e3);
        d.b_im.push_back(u(rng) * 1e-3);
        d.w.push_back(std::abs(u(rng)));
    }
    return d;
}

}  // namespace

TEST(kernels, scalar_matches_naive_sums) {
    const KernelTable& k = scalar_kernels();
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
        Data d = make_data(n, 11 + static_cast<unsigned>(n));
        long double s = 0, s2 = 0, sw = 0, wr = 0, wi = 0;
        double mx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            s += d.a_re[i];
            s2 += (long double)d.a_re[i] * d.a_re[i] + (long double)d.a_im[i] * d.a_im[i];
            sw += d.w[i] * ((long double)d.a_re[i] * d.a_re[i] + (long double)d.a_im[i] * d.a_im[i]);
            wr += (long double)d.w[i] * d.a_re[i];
            wi += (long double)d.w[i] * d.a_im[i];
            mx = std::max(mx, std::hypot(d.a_re[i], d.a_im[i]));
        }
        EXPECT_NEAR(k.sum(d.a_re.data(), n), (double)s, 1e-12);
        EXPECT_NEAR(k.sum_abs2(d.a_re.data(), d.a_im.data(), n), (double)s2, 1e-12);
        EXPECT_NEAR(k.sum_abs2_weighted(d.a_re.data(), d.a_im.data(), d.w.data(), n), (double)sw,
                    1e-12);
        double r = 0, i = 0;
        k.weighted_sum_complex(d.w.data(), d.a_re.data(), d.a_im.data(), n, &r, &i);
        EXPECT_NEAR(r, (double)wr, 1e-12);
        EXPECT_NEAR(i, (double)wi, 1e-12);
        EXPECT_NEAR(k.max_abs(d.a_re.data(), d.a_im.data(), n), mx, 1e-15);
    }
}

TEST(kernels, scalar_elementwise) {
    const KernelTable& k = scalar_kernels();
    Data d = make_data(9, 5);
    std::vector<double> out_re(d.b_re), out_im(d.b_im);
    k.caxpy(0.5, -2.0, d.a_re.data(), d.a_im.data(), 9, out_re.data(), out_im.data());
    for (std::size_t i = 0; i < 9; ++i) {
        const std::complex<double> want =
            std::complex<double>(d.b_re[i], d.b_im[i]) +
            std::complex<double>(0.5, -2.0) * std::complex<double>(d.a_re[i], d.a_im[i]);
        EXPECT_NEAR(out_re[i], want.real(), 1e-12);
        EXPECT_NEAR(out_im[i], want.imag(), 1e-12);
    }
    std::vector<double> y(d.w);
    k.axpy(3.0, d.a_re.data(), 9, y.data());
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_DOUBLE_EQ(y[i], d.w[i] + 3.0 * d.a_re[i]);
    }
    k.conj_mul(d.a_re.data(), d.a_im.data(), d.b_re.data(), d.b_im.data(), 9, out_re.data(),
               out_im.data());
    for (std::size_t i = 0; i < 9; ++i) {
        const auto want = std::conj(std::complex<double>(d.a_re[i], d.a_im[i])) *
                          std::complex<double>(d.b_re[i], d.b_im[i]);
        EXPECT_NEAR(out_re[i], want.real(), 1e-9);
        EXPECT_NEAR(out_im[i], want.imag(), 1e-9);
    }
}

TEST(kernels, avx2_bit_identical_to_scalar) {
    if (!avx2_available()) {
        GTEST_SKIP() << "AVX2 not available on this machine";
    }
    const KernelTable& s = scalar_kernels();
    const KernelTable& v = avx2_kernels();
    for (std::size_t n = 0; n < 70; ++n) {
        Data d = make_data(n, 100 + static_cast<unsigned>(n));
        EXPECT_EQ(s.sum(d.a_re.data(), n), v.sum(d.a_re.data(), n));
        EXPECT_EQ(s.sum_abs2(d.a_re.data(), d.a_im.data(), n),
                  v.sum_abs2(d.a_re.data(), d.a_im.data(), n));
        EXPECT_EQ(s.sum_abs2_weighted(d.a_re.data(), d.a_im.data(), d.w.data(), n),
                  v.sum_abs2_weighted(d.a_re.data(), d.a_im.data(), d.w.data(), n));
        EXPECT_EQ(s.max_abs(d.a_re.data(), d.a_im.data(), n),
                  v.max_abs(d.a_re.data(), d.a_im.data(), n));
        double r1 = 0, i1 = 0, r2 = 0, i2 = 0;
        s.weighted_sum_complex(d.w.data(), d.a_re.data(), d.a_im.data(), n, &r1, &i1);
        v.weighted_sum_complex(d.w.data(), d.a_re.data(), d.a_im.data(), n, &r2, &i2);
        EXPECT_EQ(r1, r2);
        EXPECT_EQ(i1, i2);

        std::vector<double> o1r(d.b_re), o1i(d.b_im), o2r(d.b_re), o2i(d.b_im);
        s.caxpy(0.3, -1.7, d.a_re.data(), d.a_im.data(), n, o1r.data(), o1i.data());
        v.caxpy(0.3, -1.7, d.a_re.data(), d.a_im.data(), n, o2r.data(), o2i.data());
        EXPECT_EQ(o1r, o2r);
        EXPECT_EQ(o1i, o2i);
        std::vector<double> y1(d.w), y2(d.w);
        s.axpy(-0.25, d.a_im.data(), n, y1.data());
        v.axpy(-0.25, d.a_im.data(), n, y2.data());
        EXPECT_EQ(y1, y2);
        s.conj_mul(d.a_re.data(), d.a_im.data(), d.b_re.data(), d.b_im.data(), n, o1r.data(),
                   o1i.data());
        v.conj_mul(d.a_re.data(), d.a_im.data(), d.b_re.data(), d.b_im.data(), n, o2r.data(),
                   o2i.data());
        EXPECT_EQ(o1r, o2r);
        EXPECT_EQ(o1i, o2i);
    }
}

TEST(kernels, isa_switching) {
    const Isa before = active_isa();
    set_isa(Isa::scalar);
    EXPECT_EQ(active_isa(), Isa::scalar);
    EXPECT_EQ(&kernels(), &scalar_kernels());
    if (avx2_available()) {
        set_isa(Isa::avx2);
        EXPECT_EQ(active_isa(), Isa::avx2);
        EXPECT_EQ(isa_name(Isa::avx2), "avx2");
    } else {
        EXPECT_ANY_THROW(set_isa(Isa::avx2));
    }
    set_isa(before);
}
