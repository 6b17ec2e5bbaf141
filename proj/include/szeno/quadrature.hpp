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

// Bin integrals. Closed forms are used whenever the integrand's atoms admit
// them; everything else goes through fixed-order Gauss-Legendre with an
// embedded error estimate |I_p - I_{p/2}|, bisection on failure, and
// geometric grading toward declared endpoint singularities.

#ifndef SZENO_QUADRATURE_HPP
#define SZENO_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "szeno/factor.hpp"
#include "szeno/grid.hpp"

namespace szeno {

class WaveFunction;

struct QuadratureConfig {
    /// Gauss-Legendre order per axis per bin; the error estimate uses order/2.
    int points_per_axis_per_bin = 8;
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    /// Maximum bisection depth (1-d) or uniform refinement level (tensor).
    int subdivision_limit = 30;

    /// Throws invalid_parameter on out-of-range settings.
    void validate() const;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// Cached rule of the given order (>= 1). Thread-safe.
const GaussLegendreRule& gauss_legendre(int order);

/// An integral with its absolute error estimate. exact is set when only
/// closed forms were used (error is then zero).
struct Estimate {
    Complex value{0.0, 0.0};
    double error = 0.0;
    bool exact = true;
};

using Function1D = std::function<Complex(double)>;
using FunctionND = std::function<Complex(std::span<const double>)>;

/// Adaptive Gauss-Legendre over [a, b). Singularities located at a or b (or
/// inside, where the interval is split) are handled by geometric grading
/// plus a power-law remainder. Throws tolerance_not_met.
Estimate integrate_1d(const Function1D& f, double a, double b, const QuadratureConfig& cfg,
                      std::span<const Singularity> singularities = {});

/// Integral of a factor over [a, b): closed-form atoms exactly, the rest by
/// integrate_1d.
Estimate integrate_factor(const Factor& f, double a, double b, const QuadratureConfig& cfg);

/// integrate_factor over every cell [b_i, b_{i+1}) of a breakpoint array.
struct AxisProfile {
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> err;
    bool exact = true;
};
AxisProfile integrate_factor_cells(const Factor& f, std::span<const double> breakpoints,
                                   const QuadratureConfig& cfg);

/// A pointwise-evaluable function with declared singularities per axis.
struct Field {
    int dim = 1;
    FunctionND value;
    std::vector<std::vector<Singularity>> singularities;  // empty or one list per axis
    /// Points where the field may jump, per axis (empty or one list per axis).
    /// Tensor quadrature never straddles them.
    std::vector<std::vector<double>> breaks;
};

/// Tensor-product Gauss-Legendre over a box, refined uniformly per axis
/// until the embedded estimate meets tolerance. Throws tolerance_not_met.
Estimate numeric_box_integral(const Field& f, const Bin& box, const QuadratureConfig& cfg);

/// <phi | P_bin psi> = integral over the bin of conj(phi) psi. Uses
/// product-separable closed forms where available.
Estimate bin_inner_product(const WaveFunction& phi, const WaveFunction& psi, const Bin& bin,
                           const QuadratureConfig& cfg);

/// The same integral by tensor quadrature of pointwise values only.
Estimate numeric_bin_inner_product(const WaveFunction& phi, const WaveFunction& psi,
                                   const Bin& bin, const QuadratureConfig& cfg);

/// ||P_bin psi||^2 with its error estimate.
struct MassEstimate {
    double value = 0.0;
    double error = 0.0;
};
MassEstimate bin_mass(const WaveFunction& psi, const Bin& bin, const QuadratureConfig& cfg);

/// sqrt(sum over the region's bins of the integral of |f - g|^2).
double l2_distance(const Field& f, const Field& g, std::span<const Bin> region,
                   const QuadratureConfig& cfg);

/// Region given as every bin of a grid level.
double l2_distance(const Field& f, const Field& g, const GridLevel& level,
                   const QuadratureConfig& cfg);

/// The zero function in d dimensions.
Field zero_field(int dim);

}  // namespace szeno

#endif  // SZENO_QUADRATURE_HPP
