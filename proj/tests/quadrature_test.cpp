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

#include "szeno/quadrature.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "szeno/error.hpp"
#include "szeno/state.hpp"

using namespace szeno;
using std::numbers::pi;

namespace {

Bin interval_bin(double a, double b) { return Bin({Interval(a, b)}); }

// sum_k (i w)^k / k! / (k + q): the integral of x^(q-1) e^{i w x} over [0, 1).
Complex power_exp_series(double q, double w) {
    Complex term(1.0, 0.0);
    Complex total(0.0, 0.0);
    for (int k = 0; k < 80; ++k) {
        total += term / (k + q);
        term *= Complex(0.0, w) / static_cast<double>(k + 1);
    }
    return total;
}

}  // namespace

TEST(gauss_legendre, exact_for_polynomials) {
    for (int p : {1, 2, 4, 8, 16, 33}) {
        const GaussLegendreRule& r = gauss_legendre(p);
        ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(p));
        for (int deg = 0; deg < 2 * p; ++deg) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                s += r.weights[i] * std::pow(r.nodes[i], deg);
            }
            const double want = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            EXPECT_NEAR(s, want, 1e-14) << "p=" << p << " deg=" << deg;
        }
    }
    EXPECT_EQ(&gauss_legendre(8), &gauss_legendre(8));
}

TEST(quadrature_config, validation) {
    QuadratureConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.points_per_axis_per_bin = 1;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.rel_tol = 0.0;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(integrate_1d, smooth_singular_and_infinite) {
    QuadratureConfig cfg;
    auto e = integrate_1d([](double x) { return Complex(std::exp(x), 0.0); }, 0.0, 1.0, cfg);
    EXPECT_NEAR(e.value.real(), std::exp(1.0) - 1.0, 1e-13);
    EXPECT_FALSE(e.exact);

    Singularity s{0.0, -0.5};
    auto r = integrate_1d([](double x) { return Complex(1.0 / std::sqrt(x), 0.0); }, 0.0, 1.0, cfg,
                          {&s, 1});
    EXPECT_NEAR(r.value.real(), 2.0, 1e-9);

    Singularity mid{0.5, -0.5};
    auto m = integrate_1d([](double x) { return Complex(1.0 / std::sqrt(std::abs(x - 0.5)), 0.0); },
                          0.0, 1.0, cfg, {&mid, 1});
    EXPECT_NEAR(m.value.real(), 2.0 * std::sqrt(2.0), 1e-9);

    auto g = integrate_1d([](double x) { return Complex(std::exp(-x * x), 0.0); }, -INFINITY,
                          INFINITY, cfg);
    EXPECT_NEAR(g.value.real(), std::sqrt(pi), 1e-12);
}

TEST(integrate_factor, numeric_power_exponential_atom) {
    QuadratureConfig cfg;
    Factor f = Factor::single(0.0, 1.0, Atom{{1.0, 0.0}, -0.25, {0.0, 3.0 * pi}}, INFINITY);
    const Estimate e = integrate_factor(f, 0.0, 1.0, cfg);
    const Complex want = power_exp_series(0.75, 3.0 * pi);
    EXPECT_NEAR(std::abs(e.value - want), 0.0, 1e-10);
    EXPECT_FALSE(e.exact);
    EXPECT_LT(e.error, 1e-8);
}

TEST(bin_inner_product, examples) {
    QuadratureConfig cfg;
    auto u = catalog::uniform();
    auto s1 = catalog::sine_mode({1});
    auto c1 = catalog::complex_exponential({1});
    EXPECT_NEAR(bin_inner_product(u, u, interval_bin(0.5, 1.0), cfg).value.real(), 0.5, 1e-15);
    const Estimate a = bin_inner_product(u, s1, interval_bin(0.0, 1.0), cfg);
    EXPECT_NEAR(a.value.real(), 0.9003163162, 1e-10);
    EXPECT_NEAR(a.value.real(), 2.0 * std::sqrt(2.0) / pi, 1e-15);
    EXPECT_NEAR(a.value.imag(), 0.0, 1e-15);
    EXPECT_TRUE(a.exact);
    const Estimate c = bin_inner_product(c1, c1, interval_bin(0.0, 0.5), cfg);
    EXPECT_NEAR(c.value.real(), 0.5, 1e-15);
    EXPECT_NEAR(c.value.imag(), 0.0, 1e-15);
}

TEST(bin_mass, examples) {
    QuadratureConfig cfg;
    EXPECT_NEAR(bin_mass(catalog::uniform(), interval_bin(0.0, 1.0 / 3.0), cfg).value, 1.0 / 3.0,
                1e-15);
    EXPECT_NEAR(bin_mass(catalog::sine_mode({1}), interval_bin(0.0, 0.5), cfg).value, 0.5, 1e-15);
    EXPECT_NEAR(bin_mass(catalog::power_singular(0.25), interval_bin(0.0, 0.25), cfg).value, 0.5,
                1e-15);
}

TEST(l2_distance, examples) {
    QuadratureConfig cfg;
    auto u = catalog::uniform().as_field();
    GridLevel whole = uniform_grid(1, 1);
    EXPECT_NEAR(l2_distance(u, u, whole, cfg), 0.0, 1e-15);

    Field x{1, [](std::span<const double> p) { return Complex(p[0], 0.0); }, {}};
    Field bars{1, [](std::span<const double> p) { return Complex(p[0] < 0.5 ? 0.25 : 0.75, 0.0); },
               {}};
    EXPECT_NEAR(l2_distance(x, bars, uniform_grid(2, 1), cfg), 1.0 / std::sqrt(48.0), 1e-13);
    EXPECT_NEAR(l2_distance(catalog::sine_mode({1}).as_field(), zero_field(1), whole, cfg), 1.0,
                1e-12);
}

TEST(numeric_box_integral, tensor_product_and_singular_axis) {
    QuadratureConfig cfg;
    Field f{2, [](std::span<const double> p) { return Complex(std::cos(p[0]) * p[1] * p[1], 0.0); },
            {}};
    Bin box({Interval(0.0, 1.0), Interval(0.5, 2.0)});
    EXPECT_NEAR(numeric_box_integral(f, box, cfg).value.real(),
                std::sin(1.0) * (8.0 - 0.125) / 3.0, 1e-12);

    Field g{2, [](std::span<const double> p) { return Complex(1.0 / std::sqrt(p[0]) * p[1], 0.0); },
            {{Singularity{0.0, -0.5}}, {}}};
    EXPECT_NEAR(numeric_box_integral(g, Bin::unit_cube(2), cfg).value.real(), 1.0, 1e-9);
}

TEST(quadrature_properties, resolution_of_identity) {
    QuadratureConfig cfg;
    std::vector<WaveFunction> states{catalog::uniform(),
                                     catalog::sine_mode({3}),
                                     catalog::complex_exponential({2}),
                                     catalog::power_singular(0.3),
                                     catalog::gaussian({0.4}, {0.2}, DomainKind::unit_cube),
                                     catalog::haar_like(7, 3)};
    for (const WaveFunction& psi : states) {
        for (const GridLevel& g : {uniform_grid(13, 1), jittered_grid(9, 1, 2.0, 1)}) {
            double total = 0.0;
            for (std::size_t j = 0; j < g.bin_count(); ++j) {
                total += bin_mass(psi, g.bin(j), cfg).value;
            }
            EXPECT_NEAR(total, 1.0, 1e-8) << psi.descriptor();
        }
    }
}

TEST(quadrature_properties, exact_and_numeric_agree_on_random_bins) {
    QuadratureConfig cfg;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<WaveFunction, WaveFunction>> pairs{
        {catalog::uniform(), catalog::sine_mode({1})},
        {catalog::sine_mode({2}), catalog::sine_mode({3})},
        {catalog::complex_exponential({1}), catalog::sine_mode({1})},
        {catalog::uniform(), catalog::power_singular(0.25)},
        {catalog::indicator(interval_bin(0.2, 0.7)), catalog::complex_exponential({-2})},
    };
    for (const auto& [phi, psi] : pairs) {
        for (int t = 0; t < 100; ++t) {
            double a = u(rng);
            double b = u(rng);
            if (a > b) {
                std::swap(a, b);
            }
            if (b - a < 1e-3) {
                continue;
            }
            const Bin bin = interval_bin(a, b);
            auto exact = exact_bin_integral(phi, psi, bin);
            ASSERT_TRUE(exact) << phi.descriptor() << " " << psi.descriptor();
            const Estimate num = numeric_bin_inner_product(phi, psi, bin, cfg);
            EXPECT_NEAR(std::abs(*exact - num.value), 0.0, 1e-10)
                << phi.descriptor() << " " << psi.descriptor() << " [" << a << "," << b << ")";
        }
    }
}

TEST(quadrature_properties, doubling_order_does_not_increase_error) {
    // Gaussian times oscillation has no closed form, so every bin goes through
    // Gauss-Legendre with its embedded estimate.
    std::vector<WaveFunction> states{
        catalog::gaussian({0.3}, {0.15}, DomainKind::unit_cube),
        catalog::combination({{1.0, catalog::gaussian({0.5}, {0.3}, DomainKind::unit_cube)},
                              {Complex(0, 1), catalog::sine_mode({2})}})};
    const auto phi = catalog::sine_mode({3});
    const GridLevel g = uniform_grid(8, 1);
    for (const WaveFunction& psi : states) {
        for (std::size_t j = 0; j < g.bin_count(); ++j) {
            double prev = INFINITY;
            for (int p : {8, 16, 32}) {
                QuadratureConfig cfg;
                cfg.points_per_axis_per_bin = p;
                const Estimate e = bin_inner_product(phi, psi, g.bin(j), cfg);
                EXPECT_FALSE(e.exact);
                // Below a few ulps of the value the estimate is rounding noise.
                const double ulps = 16.0 * DBL_EPSILON * std::abs(e.value);
                EXPECT_LE(e.error, prev + ulps) << psi.descriptor() << " bin " << j << " p=" << p;
                prev = e.error;
            }
        }
    }
}
