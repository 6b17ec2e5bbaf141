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

#include "szeno/analysis.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "szeno/error.hpp"

using namespace szeno;
using std::numbers::pi;

namespace {

// Closed-form bin amplitudes on uniform 1-d grids.
double sine_pair_amplitude(double a, double b) {
    return (b - a) - (std::sin(2 * pi * b) - std::sin(2 * pi * a)) / (2 * pi);
}

double power_amplitude(double a, double b) {
    // uniform against sqrt(1/2) x^(-1/4)
    return std::sqrt(0.5) * 4.0 / 3.0 * (std::pow(b, 0.75) - std::pow(a, 0.75));
}

double gauss_amplitude(double a, double b) {
    // integral of the standard normal density
    return 0.5 * (std::erf(b / std::sqrt(2.0)) - std::erf(a / std::sqrt(2.0)));
}

template <class Amp>
double oracle_p(int n, double lo, double hi, Amp amp) {
    double p = 0.0;
    const int cells = static_cast<int>(std::lround((hi - lo) * n));
    for (int j = 0; j < cells; ++j) {
        const double a = lo + static_cast<double>(j) / n;
        const double v = amp(a, lo + static_cast<double>(j + 1) / n);
        p += v * v;
    }
    return p;
}

std::vector<ConvergenceRow> synthetic(const std::vector<int>& ns, double c, double r) {
    std::vector<ConvergenceRow> rows;
    for (int n : ns) {
        ConvergenceRow row;
        row.n = n;
        row.p_y1 = c * std::pow(n, -r);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(fit_rate, synthetic_power_laws) {
    const auto ns = powers_of_two(2, 1024);
    RateFit f = fit_rate(synthetic(ns, 1.0, 1.0));
    EXPECT_NEAR(f.rate, 1.0, 1e-12);
    EXPECT_NEAR(f.constant, 1.0, 1e-12);
    EXPECT_LT(f.residual, 1e-12);
    EXPECT_EQ(f.rows_used, ns.size());

    f = fit_rate(synthetic(ns, 0.37, 2.0));
    EXPECT_NEAR(f.rate, 2.0, 1e-12);
    EXPECT_NEAR(f.constant, 0.37, 1e-12);

    f = fit_rate(synthetic(ns, 3.0, 1.0), std::pair{8, 64});
    EXPECT_EQ(f.n_min, 8);
    EXPECT_EQ(f.n_max, 64);
    EXPECT_EQ(f.rows_used, 4u);
}

TEST(fit_rate, exclusions_and_errors) {
    auto rows = synthetic({2, 4, 8, 16}, 1.0, 1.0);
    rows[1].p_y1 = 0.0;
    RateFit f = fit_rate(rows);
    EXPECT_EQ(f.rows_used, 3u);
    ASSERT_EQ(f.warnings.size(), 1u);
    EXPECT_NE(f.warnings[0].find("n=4"), std::string::npos);
    EXPECT_NEAR(f.rate, 1.0, 1e-12);

    rows[2].error_bound = rows[2].p_y1 / 5.0;  // signal only 5x the noise
    f = fit_rate(rows);
    EXPECT_EQ(f.rows_used, 2u);

    try {
        fit_rate(synthetic({2, 4}, 1.0, 1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_window);
    }
    rows[0].p_y1 = -1.0;
    EXPECT_THROW(fit_rate(rows), Error);
}

TEST(convergence_study, uniform_exact_rate) {
    auto u = catalog::uniform();
    const auto rec = convergence_study(u, u, GridScheme::uniform(1), powers_of_two(2, 1024));
    ASSERT_EQ(rec.rows.size(), 10u);
    for (const auto& row : rec.rows) {
        EXPECT_NEAR(row.p_y1, 1.0 / row.n, 1e-15);
        EXPECT_EQ(row.bins, static_cast<std::size_t>(row.n));
        EXPECT_NEAR(row.scaled, 1.0, 1e-12);
    }
    EXPECT_NEAR(rec.fit.rate, 1.0, 1e-6);
    EXPECT_NEAR(rec.fit.constant, 1.0, 1e-6);
    EXPECT_EQ(rec.fit.n_min, 2);
    EXPECT_EQ(rec.fit.n_max, 1024);
}

TEST(convergence_study, sine_product_rate_two) {
    auto s = catalog::product({catalog::sine_mode({1}), catalog::sine_mode({1})});
    const auto rec = convergence_study(s, s, GridScheme::uniform(2), powers_of_two(4, 64));
    for (const auto& row : rec.rows) {
        const double p1 = oracle_p(row.n, 0.0, 1.0, sine_pair_amplitude);
        EXPECT_NEAR(row.p_y1, p1 * p1, 1e-14 * p1 * p1);
    }
    EXPECT_NEAR(rec.fit.rate, 2.0, 0.05);
}

TEST(convergence_study, singular_state_rate_one) {
    auto psi = catalog::power_singular(0.25);
    auto u = catalog::uniform();
    const auto rec = convergence_study(psi, u, GridScheme::uniform(1), powers_of_two(4, 4096));
    for (const auto& row : rec.rows) {
        const double p = oracle_p(row.n, 0.0, 1.0, power_amplitude);
        EXPECT_NEAR(row.p_y1, p, 1e-12 * p) << row.n;
    }
    EXPECT_LT(rec.rows.back().p_y1, rec.rows.front().p_y1 / 100);
    EXPECT_NEAR(rec.fit.rate, 1.0, 0.1);
}

TEST(convergence_study, preconditions_and_noise) {
    auto u = catalog::uniform();
    EXPECT_THROW(convergence_study(u, u, GridScheme::uniform(1), {2, 4}), Error);
    EXPECT_THROW(convergence_study(u, u, GridScheme::uniform(1), {2, 8, 4}), Error);
    EXPECT_THROW(convergence_study(u, u, GridScheme::uniform(1), {0, 2, 4}), Error);

    // 1% of the trace represented: the spectral tail swamps every row.
    auto rho = DensityState::make({{0.01, u}});
    try {
        convergence_study(rho, u, GridScheme::uniform(1), {2, 4, 8});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::insufficient_signal);
    }
}

TEST(riemann_limit, examples) {
    auto u = catalog::uniform();
    RiemannCheck r = riemann_limit_check(u, u, GridScheme::uniform(1), {1, 7, 64});
    EXPECT_NEAR(r.limit_estimate, 1.0, 1e-13);
    EXPECT_NEAR(r.reference, 1.0, 1e-15);
    EXPECT_EQ(r.n, 64);

    auto s = catalog::sine_mode({1});
    r = riemann_limit_check(s, s, GridScheme::uniform(1), {64, 256, 512});
    EXPECT_NEAR(r.reference, 1.5, 1e-14);
    EXPECT_LT(r.relative_error, 0.01);
    EXPECT_NEAR(r.limit_estimate, 512 * oracle_p(512, 0.0, 1.0, sine_pair_amplitude), 1e-12);
    EXPECT_TRUE(r.sandwich_holds);

    r = riemann_limit_check(s, s, GridScheme::jittered(1, 2.0, 11), powers_of_two(4, 512));
    EXPECT_TRUE(r.sandwich_holds);
    for (const auto& row : r.sandwich) {
        EXPECT_NEAR(row.lower, row.upper / 2, 1e-15 * row.upper);
        EXPECT_TRUE(row.holds) << row.n;
    }

    try {
        riemann_limit_check(u, catalog::power_singular(0.25), GridScheme::uniform(1), {4, 8, 16});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::bounded_flag_missing);
    }
}

TEST(rd_study, gaussian_cube_list) {
    auto g = catalog::gaussian({0.0}, {1.0});
    const RdStudy s = rd_study(g, g, GridScheme::uniform(1), powers_of_two(4, 256), 1 - 1e-6);
    EXPECT_EQ(s.budget.radius, 5);
    EXPECT_EQ(s.budget.cubes.size(), 10u);
    EXPECT_NEAR(s.budget.tail_bound, std::erfc(5 / std::sqrt(2.0)), 1e-12);
    EXPECT_NEAR(s.budget.captured_mass, s.budget.captured_mass_phi, 1e-15);
    for (const auto& row : s.record.rows) {
        const double p = oracle_p(row.n, -5.0, 5.0, gauss_amplitude);
        EXPECT_NEAR(row.p_y1, p, 1e-12 * p);
        EXPECT_GE(row.error_bound, s.budget.tail_bound);
    }
    EXPECT_NEAR(s.record.fit.rate, 1.0, 0.05);

    RdOptions tight;
    tight.max_cubes = 8;
    try {
        rd_study(g, g, GridScheme::uniform(1), {4, 8, 16}, 1 - 1e-6, tight);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::cube_budget_exceeded);
    }
    EXPECT_THROW(rd_study(g, g, GridScheme::uniform(1), {4, 8, 16}, 1.0), Error);
    auto u = catalog::uniform();
    EXPECT_THROW(rd_study(u, u, GridScheme::uniform(1), {4, 8, 16}, 0.5), Error);
}

TEST(rd_study, compact_support_matches_unit_cube) {
    auto s_rd = catalog::sine_mode({1}, DomainKind::euclidean);
    auto s = catalog::sine_mode({1});
    auto c_rd = catalog::complex_exponential({1}, DomainKind::euclidean);
    auto c = catalog::complex_exponential({1});
    const auto ns = powers_of_two(4, 128);
    const RdStudy r = rd_study(s_rd, c_rd, GridScheme::uniform(1), ns, 1 - 1e-9);
    const auto ref = convergence_study(s, c, GridScheme::uniform(1), ns);
    EXPECT_EQ(r.budget.radius, 1);
    EXPECT_LE(r.budget.tail_bound, 1e-15);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        EXPECT_NEAR(r.record.rows[i].p_y1, ref.rows[i].p_y1, 1e-15);
        EXPECT_EQ(r.record.rows[i].bins, 2 * ref.rows[i].bins);
    }
}

// ---------------------------------------------------------------- properties

TEST(analysis_properties, decline_to_zero) {
    std::vector<std::pair<WaveFunction, WaveFunction>> pairs{
        {catalog::uniform(), catalog::uniform()},
        {catalog::sine_mode({1}), catalog::sine_mode({1})},
        {catalog::sine_mode({2}), catalog::complex_exponential({1})},
        {catalog::power_singular(0.25), catalog::uniform()},
        {catalog::power_singular(0.25), catalog::sine_mode({3})},
        {catalog::haar_like(6, 4), catalog::indicator(Bin({Interval(0.2, 0.7)}))},
        {catalog::gaussian({0.4}, {0.1}, DomainKind::unit_cube), catalog::uniform()},
    };
    const std::vector<GridScheme> schemes{GridScheme::uniform(1), GridScheme::jittered(1, 2.0, 1),
                                          GridScheme::jittered(1, 1.5, 2)};
    for (const auto& [psi, phi] : pairs) {
        for (const auto& scheme : schemes) {
            const auto rec = convergence_study(psi, phi, scheme, {4, 40, 400});
            EXPECT_LT(rec.rows.back().p_y1, rec.rows.front().p_y1 / 10)
                << psi.descriptor() << " " << scheme.describe();
        }
    }
}

TEST(analysis_properties, bounded_uniform_rate_is_dimension) {
    for (int d = 1; d <= 2; ++d) {
        std::vector<std::pair<WaveFunction, WaveFunction>> pairs;
        std::vector<WaveFunction> s, e, g;
        for (int k = 0; k < d; ++k) {
            s.push_back(catalog::sine_mode({k + 1}));
            e.push_back(catalog::complex_exponential({2}));
            g.push_back(catalog::gaussian({0.5}, {0.2}, DomainKind::unit_cube));
        }
        pairs.emplace_back(catalog::product(s), catalog::product(e));
        pairs.emplace_back(catalog::product(g), catalog::product(s));
        pairs.emplace_back(catalog::uniform(d), catalog::product(g));
        for (const auto& [psi, phi] : pairs) {
            const auto rec = convergence_study(psi, phi, GridScheme::uniform(d),
                                               powers_of_two(16, d == 1 ? 256 : 128));
            EXPECT_NEAR(rec.fit.rate, d, 0.1) << psi.descriptor() << " / " << phi.descriptor();
        }
    }
}

TEST(analysis_properties, jittered_sandwich_all_rows) {
    auto a = catalog::combination({{1.0, catalog::sine_mode({1})}, {0.3, catalog::uniform()}});
    auto b = catalog::gaussian({0.3}, {0.25}, DomainKind::unit_cube);
    for (double c : {1.2, 2.0, 3.0}) {
        const auto r = riemann_limit_check(a, b, GridScheme::jittered(1, c, 3), powers_of_two(2, 256));
        EXPECT_TRUE(r.sandwich_holds) << c;
    }
    auto p = catalog::product({catalog::sine_mode({1}), catalog::uniform()});
    const auto r = riemann_limit_check(p, p, GridScheme::jittered(2, 2.0, 9), {3, 8, 20});
    EXPECT_TRUE(r.sandwich_holds);
}

TEST(analysis_properties, truncation_soundness) {
    auto psi = catalog::gaussian({0.3}, {1.2});
    auto phi = catalog::gaussian({-0.5}, {0.8});
    const DensityState rho = DensityState::pure(psi);
    for (SchemeKind sub : {SchemeKind::uniform, SchemeKind::jittered}) {
        for (int n : {3, 16}) {
            double prev_p = -1.0, prev_tail = 0.0;
            for (int radius = 1; radius <= 6; ++radius) {
                const auto cubes = centered_cubes(1, radius);
                const GridScheme sch = GridScheme::rd(1, sub, 2.0, 5, cubes);
                const double p = prob_y1_pure(psi, phi, sch.level(n)).p_y1;
                const TailBudget tb = tail_budget(rho, phi, cubes);
                if (prev_p >= 0.0) {
                    EXPECT_LE(std::abs(p - prev_p), prev_tail + 1e-15) << radius;
                }
                prev_p = p;
                prev_tail = tb.tail_bound;
            }
        }
    }
}

TEST(analysis_properties, mixed_and_pure_paths_agree) {
    auto s = catalog::sine_mode({2});
    auto e = catalog::complex_exponential({1});
    const auto ns = powers_of_two(4, 64);
    for (const GridScheme& sch : {GridScheme::uniform(1), GridScheme::jittered(1, 2.0, 8)}) {
        const auto a = convergence_study(s, e, sch, ns);
        const auto b = convergence_study(DensityState::pure(s), e, sch, ns);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            EXPECT_NEAR(a.rows[i].p_y1, b.rows[i].p_y1, 1e-12);
        }
        EXPECT_NEAR(a.fit.rate, b.fit.rate, 1e-9);
    }
    auto g = catalog::gaussian({0.2}, {0.7});
    auto h = catalog::gaussian({0.0}, {1.0});
    const auto a = rd_study(g, h, GridScheme::jittered(1, 2.0, 4), ns, 1 - 1e-7);
    const auto b = rd_study(DensityState::pure(g), h, GridScheme::jittered(1, 2.0, 4), ns, 1 - 1e-7);
    EXPECT_EQ(a.budget.radius, b.budget.radius);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        EXPECT_NEAR(a.record.rows[i].p_y1, b.record.rows[i].p_y1, 1e-12);
    }
}
