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

// Two-stage measurement: a position measurement over the bins of a grid
// level, followed by the rank-one projector |phi><phi|.

#ifndef SZENO_MEASUREMENT_HPP
#define SZENO_MEASUREMENT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "szeno/grid.hpp"
#include "szeno/quadrature.hpp"
#include "szeno/state.hpp"

namespace szeno {

/// Above this many bins, per-bin arrays are dropped unless requested.
inline constexpr std::size_t kRetentionLimit = 1'000'000;

enum class Retention { automatic, always, never };

struct MeasurementOptions {
    QuadratureConfig quadrature;
    /// Worker threads for bin assembly. Results do not depend on this.
    int threads = 1;
    Retention retain = Retention::automatic;
};

struct MeasurementResult {
    int n = 0;
    int dim = 0;
    std::size_t bin_count = 0;
    double min_bin_volume = 0.0;
    double max_bin_volume = 0.0;

    /// <phi|P_j psi> per bin; pure states only, empty when not retained.
    std::vector<Complex> amplitudes;
    /// P(X = j, Y = 1) and ||P_j psi||^2 (mixture-weighted), empty when not retained.
    std::vector<double> joint_y1;
    std::vector<double> masses;
    bool retained = false;

    double p_y1 = 0.0;            // clamped to [0, 1]
    double p_y1_unclamped = 0.0;
    /// Quadrature, spectral-tail and truncation contributions combined.
    double p_y1_error_bound = 0.0;
    double quadrature_error = 0.0;
    double spectral_tail_bound = 0.0;
    double truncation_bound = 0.0;

    double mass_total = 0.0;
    double mass_error = 0.0;
    /// sum_j |<phi|P_j psi>|^2 / |B_j|, mixture-weighted.
    double norm_fn2 = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::string> warnings;

    /// P(Y = 1 | X = j); requires retained arrays.
    double conditional_y1(std::size_t j) const;
};

/// P_bin psi / ||P_bin psi||. Throws zero_mass_bin when the mass is not
/// distinguishable from zero.
WaveFunction collapse(const WaveFunction& psi, const Bin& bin, const QuadratureConfig& cfg = {});

/// |<phi|P_bin psi>|^2 / ||P_bin psi||^2. Throws zero_mass_bin.
double prob_y1_given_bin(const WaveFunction& psi, const WaveFunction& phi, const Bin& bin,
                         const QuadratureConfig& cfg = {});

/// The same probability computed as |<phi|collapse(psi, bin)>|^2.
double prob_y1_given_bin_via_collapse(const WaveFunction& psi, const WaveFunction& phi,
                                      const Bin& bin, const QuadratureConfig& cfg = {});

MeasurementResult prob_y1_pure(const WaveFunction& psi, const WaveFunction& phi,
                               const GridLevel& level, const MeasurementOptions& opts = {});

/// Spectral form sum_l p_l sum_j |<phi|P_j psi_l>|^2, with the missing trace
/// carried as the additive bound ||phi||^2 (1 - sum_l p_l).
MeasurementResult prob_y1_mixed(const DensityState& rho, const WaveFunction& phi,
                                const GridLevel& level, const MeasurementOptions& opts = {});

struct JointDistribution {
    std::vector<double> y1;  // P(X = j, Y = 1)
    std::vector<double> y0;  // P(X = j, Y = 0)
    double total_y1 = 0.0;
    double total = 0.0;

    /// Sum over Y for each bin: the distribution of X.
    std::vector<double> marginal_x() const;
};

JointDistribution joint_distribution(const WaveFunction& psi, const WaveFunction& phi,
                                     const GridLevel& level, const MeasurementOptions& opts = {});
JointDistribution joint_distribution(const DensityState& rho, const WaveFunction& phi,
                                     const GridLevel& level, const MeasurementOptions& opts = {});

struct Sample {
    std::size_t bin;
    int y;

    friend bool operator==(const Sample&, const Sample&) = default;
};

/// i.i.d. draws of (X, Y): the spectral term first (mixtures), then X by
/// inverse CDF over the bin masses, then Y ~ Bernoulli(P(Y=1 | X)).
/// Zero-mass bins are never drawn. `stream` selects an independent substream.
std::vector<Sample> sample_xy(const DensityState& rho, const WaveFunction& phi,
                              const GridLevel& level, std::size_t count, std::uint64_t seed,
                              const MeasurementOptions& opts = {}, std::uint64_t stream = 0);
std::vector<Sample> sample_xy(const WaveFunction& psi, const WaveFunction& phi,
                              const GridLevel& level, std::size_t count, std::uint64_t seed,
                              const MeasurementOptions& opts = {}, std::uint64_t stream = 0);

}  // namespace szeno

#endif  // SZENO_MEASUREMENT_HPP
