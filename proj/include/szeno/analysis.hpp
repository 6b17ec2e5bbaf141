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

// Finite-n diagnostics: convergence studies over n, power-law rate fits, the
// Riemann-sum limit n^d p_y1 -> integral |phi|^2 |psi|^2, and truncation of
// R^d to centered cube lists.

#ifndef SZENO_ANALYSIS_HPP
#define SZENO_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "szeno/grid.hpp"
#include "szeno/measurement.hpp"
#include "szeno/state.hpp"

namespace szeno {

struct ConvergenceRow {
    int n = 0;
    std::size_t bins = 0;  // N_n
    double p_y1 = 0.0;
    double error_bound = 0.0;
    double norm_fn2 = 0.0;
    double scaled = 0.0;  // n^d p_y1
    double min_bin_volume = 0.0;
    double max_bin_volume = 0.0;
    double wall_seconds = 0.0;
};

/// p ~ constant * n^(-rate) by least squares on (log n, log p).
struct RateFit {
    double rate = 0.0;
    double constant = 0.0;
    /// RMS of the log-space residuals.
    double residual = 0.0;
    int n_min = 0;
    int n_max = 0;
    std::size_t rows_used = 0;
    std::vector<std::string> warnings;
};

/// Inclusive n range; nullopt means every row.
using FitWindow = std::optional<std::pair<int, int>>;

/// Rows with p_y1 <= 0 (warned) or p_y1 <= noise_factor * error_bound are
/// skipped. Throws degenerate_window when the window holds fewer than three
/// rows or fewer than two rows survive.
RateFit fit_rate(const std::vector<ConvergenceRow>& rows, const FitWindow& window = std::nullopt,
                 double noise_factor = 10.0);

struct ConvergenceRecord {
    std::string scheme;
    std::string state;
    std::string phi;
    int dim = 0;
    std::vector<ConvergenceRow> rows;
    RateFit fit;
    std::vector<std::string> warnings;
};

struct StudyOptions {
    MeasurementOptions measurement;
    FitWindow window;
    double noise_factor = 10.0;
};

/// Powers of two from n_min to n_max inclusive.
std::vector<int> powers_of_two(int n_min, int n_max);

/// p_y1 at every n of an increasing list (at least three entries), then a
/// rate fit. Throws insufficient_signal when no row clears the noise floor.
ConvergenceRecord convergence_study(const WaveFunction& psi, const WaveFunction& phi,
                                    const GridScheme& scheme, const std::vector<int>& n_list,
                                    const StudyOptions& opts = {});
ConvergenceRecord convergence_study(const DensityState& rho, const WaveFunction& phi,
                                    const GridScheme& scheme, const std::vector<int>& n_list,
                                    const StudyOptions& opts = {});

struct SandwichRow {
    int n = 0;
    double scaled = 0.0;  // n^d p_y1
    double lower = 0.0;   // ||f_n||^2 / C^d
    double upper = 0.0;   // ||f_n||^2
    bool holds = false;
};

struct RiemannCheck {
    int n = 0;               // the largest n
    double limit_estimate = 0.0;  // n^d p_y1 there
    double reference = 0.0;       // integral of |phi|^2 |psi|^2
    double relative_error = 0.0;
    std::vector<SandwichRow> sandwich;
    bool sandwich_holds = true;
};

/// Both states must be bounded (bounded_flag_missing otherwise). The sandwich
/// n^d p in [||f_n||^2 / C^d, ||f_n||^2] is checked at every n with
/// tolerance `tol` relative to ||f_n||^2.
RiemannCheck riemann_limit_check(const WaveFunction& phi, const WaveFunction& psi,
                                 const GridScheme& scheme, const std::vector<int>& n_list,
                                 const MeasurementOptions& opts = {}, double tol = 1e-9);

struct TailBudget {
    std::vector<std::vector<double>> cubes;
    int radius = 0;
    /// Sum over the cubes of the integral of |psi|^2 (mixture-weighted).
    double captured_mass = 0.0;
    double captured_mass_phi = 0.0;
    /// ||phi||^2 (1 - captured_mass).
    double tail_bound = 0.0;
};

struct RdOptions {
    StudyOptions study;
    /// Cap on the number of unit cubes in the list.
    std::size_t max_cubes = 4096;
};

struct RdStudy {
    ConvergenceRecord record;
    TailBudget budget;
};

/// Smallest centered cube list [-R, R)^d holding mass_target of both |psi|^2
/// and |phi|^2, then a convergence study on it. The scheme supplies the
/// per-cube sub-scheme (uniform or jittered). Every row's error_bound
/// includes tail_bound. Throws cube_budget_exceeded.
RdStudy rd_study(const WaveFunction& psi, const WaveFunction& phi, const GridScheme& scheme,
                 const std::vector<int>& n_list, double mass_target, const RdOptions& opts = {});
RdStudy rd_study(const DensityState& rho, const WaveFunction& phi, const GridScheme& scheme,
                 const std::vector<int>& n_list, double mass_target, const RdOptions& opts = {});

/// Tail budget of a given cube list.
TailBudget tail_budget(const DensityState& rho, const WaveFunction& phi,
                       std::vector<std::vector<double>> cubes, const QuadratureConfig& cfg = {});

}  // namespace szeno

#endif  // SZENO_ANALYSIS_HPP
