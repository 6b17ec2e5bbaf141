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

// Bar-chart discretization: on every bin, the average of f over that bin.

#ifndef SZENO_DISCRETIZER_HPP
#define SZENO_DISCRETIZER_HPP

#include <string>
#include <vector>

#include "szeno/grid.hpp"
#include "szeno/quadrature.hpp"
#include "szeno/state.hpp"

namespace szeno {

struct DiscretizeOptions {
    QuadratureConfig quadrature;
    int threads = 1;
    /// Required above 10^6 bins.
    bool allow_large = false;
};

class DiscretizedFunction {
public:
    DiscretizedFunction(GridLevel level, std::vector<Complex> averages, std::vector<double> errors,
                        std::string source);

    const GridLevel& level() const noexcept { return level_; }
    const std::vector<Complex>& averages() const noexcept { return averages_; }
    /// Absolute error estimate of each average.
    const std::vector<double>& errors() const noexcept { return errors_; }
    const std::string& source() const noexcept { return source_; }

    /// averages[locate_bin(x)]; throws out_of_domain outside the level.
    Complex value(std::span<const double> x) const;
    double linf() const noexcept;
    /// Pointwise view; integrate it bin by bin (it jumps at every bin edge).
    Field as_field() const;

private:
    GridLevel level_;
    std::vector<Complex> averages_;
    std::vector<double> errors_;
    std::string source_;
};

/// Averages by tensor quadrature of pointwise values.
DiscretizedFunction discretize(const Field& f, const GridLevel& level,
                               const DiscretizeOptions& opts = {});
/// Averages through the separable bin-integral path used by measurement.
DiscretizedFunction discretize(const Expansion& f, const GridLevel& level,
                               const DiscretizeOptions& opts = {});
DiscretizedFunction discretize(const WaveFunction& f, const GridLevel& level,
                               const DiscretizeOptions& opts = {});

/// conj(phi) psi as an expansion.
Expansion overlap_density(const WaveFunction& phi, const WaveFunction& psi);

/// ||f_n - f||_{L2} over the level's bins.
double discretization_error(const Field& f, const GridLevel& level,
                            const DiscretizeOptions& opts = {});
double discretization_error(const Expansion& f, const GridLevel& level,
                            const DiscretizeOptions& opts = {});

struct NormIdentity {
    /// ||f_n||^2 for f = conj(phi) psi, by quadrature of the bar chart.
    double lhs = 0.0;
    /// sum_j |<phi|P_j psi>|^2 / |B_j| from the measurement amplitudes.
    double rhs = 0.0;
};

NormIdentity norm_identity_check(const WaveFunction& phi, const WaveFunction& psi,
                                 const GridLevel& level, const DiscretizeOptions& opts = {});

}  // namespace szeno

#endif  // SZENO_DISCRETIZER_HPP
