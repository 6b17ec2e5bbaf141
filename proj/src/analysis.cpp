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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "szeno/error.hpp"

namespace szeno {

namespace {

void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) {
        throw Error(code, message);
    }
}

void check_n_list(const std::vector<int>& n_list) {
    require(n_list.size() >= 3, ErrorCode::invalid_parameter,
            "a convergence study needs at least three resolutions");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        require(n_list[i] >= 1, ErrorCode::invalid_parameter, "resolutions must be >= 1");
        require(i == 0 || n_list[i] > n_list[i - 1], ErrorCode::invalid_parameter,
                "resolutions must be strictly increasing");
    }
}

void add_warnings(std::vector<std::string>& into, const std::vector<std::string>& from) {
    for (const std::string& w : from) {
        if (std::find(into.begin(), into.end(), w) == into.end()) {
            into.push_back(w);
        }
    }
}

ConvergenceRow row_of(const MeasurementResult& r) {
    ConvergenceRow row;
    row.n = r.n;
    row.bins = r.bin_count;
    row.p_y1 = r.p_y1;
    row.error_bound = r.p_y1_error_bound;
    row.norm_fn2 = r.norm_fn2;
    row.scaled = std::pow(static_cast<double>(r.n), r.dim) * r.p_y1;
    row.min_bin_volume = r.min_bin_volume;
    row.max_bin_volume = r.max_bin_volume;
    row.wall_seconds = r.wall_seconds;
    return row;
}

template <class Measure>
ConvergenceRecord run_study(Measure&& measure, const GridScheme& scheme,
                            const std::vector<int>& n_list, const StudyOptions& opts) {
    check_n_list(n_list);
    ConvergenceRecord rec;
    rec.scheme = scheme.describe();
    rec.dim = scheme.dim;
    for (int n : n_list) {
        const MeasurementResult r = measure(scheme.level(n));
        rec.rows.push_back(row_of(r));
        add_warnings(rec.warnings, r.warnings);
    }
    const bool any_signal = std::any_of(rec.rows.begin(), rec.rows.end(), [&](const auto& row) {
        return row.p_y1 > 0.0 && row.p_y1 > opts.noise_factor * row.error_bound;
    });
    require(any_signal, ErrorCode::insufficient_signal,
            "every row is below " + std::to_string(opts.noise_factor) + "x its error bound");
    rec.fit = fit_rate(rec.rows, opts.window, opts.noise_factor);
    add_warnings(rec.warnings, rec.fit.warnings);
    return rec;
}

double captured(const DensityState& rho, const Bin& cube, const QuadratureConfig& cfg) {
    double m = 0.0;
    for (const DensityTerm& t : rho.terms()) {
        if (t.weight != 0.0) {
            m += t.weight * bin_mass(t.state, cube, cfg).value;
        }
    }
    return m;
}

template <class Study>
RdStudy run_rd(const DensityState& rho, const WaveFunction& phi, const GridScheme& scheme,
               double mass_target, const RdOptions& opts, Study&& study) {
    require(mass_target > 0.0 && mass_target < 1.0, ErrorCode::invalid_parameter,
            "mass_target must lie in (0, 1)");
    require(rho.domain() == DomainKind::euclidean && phi.domain() == DomainKind::euclidean,
            ErrorCode::domain_mismatch, "rd_study needs states on R^d");
    require(rho.dim() == scheme.dim && phi.dim() == scheme.dim, ErrorCode::domain_mismatch,
            "states and scheme differ in dimension");
    GridScheme rd = scheme;
    if (rd.kind != SchemeKind::rd_translated_cubes) {
        require(scheme.kind == SchemeKind::uniform || scheme.kind == SchemeKind::jittered,
                ErrorCode::invalid_parameter, "per-cube scheme must be uniform or jittered");
        rd = GridScheme::rd(scheme.dim, scheme.kind, scheme.ratio_bound, scheme.seed);
        rd.cells_per_axis = scheme.cells_per_axis;
    }
    const double target = mass_target * rho.declared_trace();
    const DensityState phi_state = DensityState::pure(phi);
    const QuadratureConfig& cfg = opts.study.measurement.quadrature;

    // Masses per cube are cached by origin so growing R only adds the new shell.
    std::vector<std::vector<double>> seen;
    std::vector<std::pair<double, double>> masses;
    for (int radius = 1;; ++radius) {
        double cubes_count = std::pow(2.0 * radius, scheme.dim);
        require(cubes_count <= static_cast<double>(opts.max_cubes), ErrorCode::cube_budget_exceeded,
                "mass target " + std::to_string(mass_target) + " not reached within " +
                    std::to_string(opts.max_cubes) + " cubes");
        std::vector<std::vector<double>> cubes = centered_cubes(scheme.dim, radius);
        TailBudget budget;
        for (const auto& origin : cubes) {
            auto it = std::find(seen.begin(), seen.end(), origin);
            std::pair<double, double> m;
            if (it == seen.end()) {
                const Bin cube = Bin::unit_cube(origin);
                m = {captured(rho, cube, cfg), captured(phi_state, cube, cfg)};
                seen.push_back(origin);
                masses.push_back(m);
            } else {
                m = masses[static_cast<std::size_t>(it - seen.begin())];
            }
            budget.captured_mass += m.first;
            budget.captured_mass_phi += m.second;
        }
        if (budget.captured_mass >= target && budget.captured_mass_phi >= mass_target) {
            budget.captured_mass = std::min(budget.captured_mass, 1.0);
            budget.captured_mass_phi = std::min(budget.captured_mass_phi, 1.0);
            budget.tail_bound = std::max(0.0, rho.declared_trace() - budget.captured_mass);
            budget.radius = radius;
            budget.cubes = cubes;
            rd.cubes = std::move(cubes);
            RdStudy out{study(rd), std::move(budget)};
            for (ConvergenceRow& row : out.record.rows) {
                row.error_bound = std::max(row.error_bound, out.budget.tail_bound);
            }
            return out;
        }
    }
}

}  // namespace

std::vector<int> powers_of_two(int n_min, int n_max) {
    require(n_min >= 1 && n_max >= n_min, ErrorCode::invalid_parameter,
            "need 1 <= n_min <= n_max");
    std::vector<int> out;
    for (long long n = 1; n <= n_max; n *= 2) {
        if (n >= n_min) {
            out.push_back(static_cast<int>(n));
        }
    }
    return out;
}

RateFit fit_rate(const std::vector<ConvergenceRow>& rows, const FitWindow& window,
                 double noise_factor) {
    RateFit fit;
    std::vector<const ConvergenceRow*> in;
    for (const ConvergenceRow& r : rows) {
        if (!window || (r.n >= window->first && r.n <= window->second)) {
            in.push_back(&r);
        }
    }
    require(in.size() >= 3, ErrorCode::degenerate_window,
            "the fit window holds " + std::to_string(in.size()) + " rows; at least 3 are needed");
    std::vector<double> xs, ys;
    for (const ConvergenceRow* r : in) {
        if (!(r->p_y1 > 0.0)) {
            fit.warnings.push_back("row n=" + std::to_string(r->n) +
                                   " excluded from the fit: p_y1 is not positive");
            continue;
        }
        if (r->p_y1 <= noise_factor * r->error_bound) {
            fit.warnings.push_back("row n=" + std::to_string(r->n) +
                                   " excluded from the fit: p_y1 within noise");
            continue;
        }
        if (xs.empty()) {
            fit.n_min = r->n;
        }
        fit.n_max = r->n;
        xs.push_back(std::log(static_cast<double>(r->n)));
        ys.push_back(std::log(r->p_y1));
    }
    require(xs.size() >= 2, ErrorCode::degenerate_window,
            "fewer than two rows of the window carry signal");
    const double k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ss += e * e;
    }
    fit.rate = -slope;
    fit.constant = std::exp(intercept);
    fit.residual = std::sqrt(ss / k);
    fit.rows_used = xs.size();
    return fit;
}

ConvergenceRecord convergence_study(const WaveFunction& psi, const WaveFunction& phi,
                                    const GridScheme& scheme, const std::vector<int>& n_list,
                                    const StudyOptions& opts) {
    ConvergenceRecord rec = run_study(
        [&](const GridLevel& level) {
            MeasurementOptions m = opts.measurement;
            m.retain = Retention::never;
            return prob_y1_pure(psi, phi, level, m);
        },
        scheme, n_list, opts);
    rec.state = psi.descriptor();
    rec.phi = phi.descriptor();
    return rec;
}

ConvergenceRecord convergence_study(const DensityState& rho, const WaveFunction& phi,
                                    const GridScheme& scheme, const std::vector<int>& n_list,
                                    const StudyOptions& opts) {
    ConvergenceRecord rec = run_study(
        [&](const GridLevel& level) {
            MeasurementOptions m = opts.measurement;
            m.retain = Retention::never;
            return prob_y1_mixed(rho, phi, level, m);
        },
        scheme, n_list, opts);
    std::string desc = "mixture(";
    for (std::size_t l = 0; l < rho.terms().size(); ++l) {
        desc += (l ? "; " : "") + std::to_string(rho.terms()[l].weight) + " " +
                rho.terms()[l].state.descriptor();
    }
    rec.state = desc + ")";
    rec.phi = phi.descriptor();
    return rec;
}

RiemannCheck riemann_limit_check(const WaveFunction& phi, const WaveFunction& psi,
                                 const GridScheme& scheme, const std::vector<int>& n_list,
                                 const MeasurementOptions& opts, double tol) {
    require(phi.bounded() && psi.bounded(), ErrorCode::bounded_flag_missing,
            "the Riemann-sum limit needs bounded states: " +
                (phi.bounded() ? psi.descriptor() : phi.descriptor()) + " is not");
    require(!n_list.empty(), ErrorCode::invalid_parameter, "empty resolution list");
    require(phi.domain() == psi.domain() && phi.dim() == psi.dim(), ErrorCode::domain_mismatch,
            "states live on different domains");
    const Expansion phi2 = phi.expansion().conj() * phi.expansion();
    const Expansion psi2 = psi.expansion().conj() * psi.expansion();
    const auto box = domain_bounds(psi.domain(), psi.dim());
    RiemannCheck out;
    out.reference = separable_inner_product(phi2, psi2, box, opts.quadrature, false)->value.real();

    const double c_d = std::pow(scheme.ratio_bound, scheme.dim);
    const bool uneven = scheme.kind == SchemeKind::jittered || scheme.kind == SchemeKind::custom ||
                        (scheme.kind == SchemeKind::rd_translated_cubes &&
                         scheme.cube_scheme == SchemeKind::jittered);
    MeasurementOptions m = opts;
    m.retain = Retention::never;
    for (int n : n_list) {
        const MeasurementResult r = prob_y1_pure(psi, phi, scheme.level(n), m);
        SandwichRow row;
        row.n = n;
        row.scaled = std::pow(static_cast<double>(n), r.dim) * r.p_y1_unclamped;
        row.upper = r.norm_fn2;
        row.lower = uneven ? r.norm_fn2 / c_d : r.norm_fn2;
        const double slack = tol * std::max(1.0, r.norm_fn2);
        row.holds = row.scaled >= row.lower - slack && row.scaled <= row.upper + slack;
        out.sandwich_holds = out.sandwich_holds && row.holds;
        out.sandwich.push_back(row);
        if (n >= out.n) {
            out.n = n;
            out.limit_estimate = row.scaled;
        }
    }
    out.relative_error = std::abs(out.limit_estimate - out.reference) / out.reference;
    return out;
}

TailBudget tail_budget(const DensityState& rho, const WaveFunction& phi,
                       std::vector<std::vector<double>> cubes, const QuadratureConfig& cfg) {
    TailBudget b;
    const DensityState phi_state = DensityState::pure(phi);
    for (const auto& origin : cubes) {
        const Bin cube = Bin::unit_cube(origin);
        b.captured_mass += captured(rho, cube, cfg);
        b.captured_mass_phi += captured(phi_state, cube, cfg);
    }
    b.captured_mass = std::min(b.captured_mass, 1.0);
    b.captured_mass_phi = std::min(b.captured_mass_phi, 1.0);
    b.tail_bound = std::max(0.0, rho.declared_trace() - b.captured_mass);
    b.cubes = std::move(cubes);
    return b;
}

RdStudy rd_study(const WaveFunction& psi, const WaveFunction& phi, const GridScheme& scheme,
                 const std::vector<int>& n_list, double mass_target, const RdOptions& opts) {
    return run_rd(DensityState::pure(psi), phi, scheme, mass_target, opts,
                  [&](const GridScheme& rd) {
                      return convergence_study(psi, phi, rd, n_list, opts.study);
                  });
}

RdStudy rd_study(const DensityState& rho, const WaveFunction& phi, const GridScheme& scheme,
                 const std::vector<int>& n_list, double mass_target, const RdOptions& opts) {
    return run_rd(rho, phi, scheme, mass_target, opts, [&](const GridScheme& rd) {
        return convergence_study(rho, phi, rd, n_list, opts.study);
    });
}

}  // namespace szeno
