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

#include "szeno/measurement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "assembly.hpp"
#include "parallel.hpp"
#include "szeno/error.hpp"
#include "szeno/rng.hpp"
#include "szeno/simd/kernels.hpp"

namespace szeno {

namespace {

void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) {
        throw Error(code, message);
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct TermTotals {
    double y1 = 0.0;
    double y1_err = 0.0;
    double fn2 = 0.0;
    double mass = 0.0;
    double mass_err = 0.0;
};

struct RowPartial {
    double y1, y1_err, fn2, mass, mass_err;
};

// One pure term: per-row partial sums (reduced in row order) and optionally
// per-bin arrays, scaled by `weight` and added into the outputs.
TermTotals measure_term(const WaveFunction& psi, const WaveFunction& phi, const GridLevel& level,
                        const MeasurementOptions& opts, double weight, bool keep,
                        std::vector<Complex>* amplitudes, std::vector<double>* joint_y1,
                        std::vector<double>* masses) {
    const QuadratureConfig& cfg = opts.quadrature;
    std::vector<detail::BlockAssembler> amp;
    std::vector<detail::BlockAssembler> mass;
    std::vector<std::size_t> row_offset{0};
    amp.reserve(level.blocks().size());
    mass.reserve(level.blocks().size());
    for (const ProductBlock& block : level.blocks()) {
        amp.emplace_back(phi.expansion(), psi.expansion(), block, cfg);
        mass.emplace_back(psi.expansion(), psi.expansion(), block, cfg);
        row_offset.push_back(row_offset.back() + amp.back().rows());
    }
    const std::size_t total_rows = row_offset.back();
    std::vector<RowPartial> partial(total_rows);

    detail::parallel_for(total_rows, opts.threads, [&](std::size_t begin, std::size_t end) {
        const simd::KernelTable& K = simd::kernels();
        std::vector<double> re, im, err, mre, mim, merr, w;
        std::size_t b = static_cast<std::size_t>(
            std::upper_bound(row_offset.begin(), row_offset.end(), begin) - row_offset.begin() - 1);
        for (std::size_t g = begin; g < end; ++g) {
            while (g >= row_offset[b + 1]) {
                ++b;
            }
            const detail::BlockAssembler& A = amp[b];
            const detail::BlockAssembler& M = mass[b];
            const std::size_t r = g - row_offset[b];
            const std::size_t m = A.row_length();
            re.resize(m), im.resize(m), err.resize(m), mre.resize(m), mim.resize(m),
                merr.resize(m), w.resize(m);
            A.row(r, re.data(), im.data(), err.data());
            M.row(r, mre.data(), mim.data(), merr.data());
            const ProductBlock& block = level.blocks()[b];
            const auto& bp = block.breakpoints(block.dim() - 1);
            const double outer = A.outer_volume(r);
            for (std::size_t i = 0; i < m; ++i) {
                w[i] = 1.0 / (outer * (bp[i + 1] - bp[i]));
            }
            RowPartial p{};
            p.y1 = K.sum_abs2(re.data(), im.data(), m);
            p.fn2 = K.sum_abs2_weighted(re.data(), im.data(), w.data(), m);
            p.mass = K.sum(mre.data(), m);
            p.mass_err = K.sum(merr.data(), m);
            for (std::size_t i = 0; i < m; ++i) {
                const double a = std::hypot(re[i], im[i]);
                p.y1_err += (2.0 * a + err[i]) * err[i];
            }
            partial[g] = p;
            if (keep) {
                const std::size_t j0 = level.block_range(b).first + r * m;
                for (std::size_t i = 0; i < m; ++i) {
                    if (amplitudes) {
                        (*amplitudes)[j0 + i] = Complex(re[i], im[i]);
                    }
                    (*joint_y1)[j0 + i] += weight * (re[i] * re[i] + im[i] * im[i]);
                    (*masses)[j0 + i] += weight * mre[i];
                }
            }
        }
    });

    TermTotals t;
    for (const RowPartial& p : partial) {
        t.y1 += p.y1;
        t.y1_err += p.y1_err;
        t.fn2 += p.fn2;
        t.mass += p.mass;
        t.mass_err += p.mass_err;
    }
    return t;
}

void check_compatible(const WaveFunction& psi, const WaveFunction& phi, const GridLevel& level) {
    require(psi.dim() == phi.dim() && psi.domain() == phi.domain(), ErrorCode::domain_mismatch,
            "states " + psi.descriptor() + " and " + phi.descriptor() +
                " live on different domains");
    require(level.dim() == psi.dim(), ErrorCode::domain_mismatch,
            "grid dimension " + std::to_string(level.dim()) + " does not match state dimension " +
                std::to_string(psi.dim()));
    require(level.domain_kind() == psi.domain(), ErrorCode::domain_mismatch,
            "grid and states are defined on different domain kinds");
}

bool should_retain(const GridLevel& level, Retention policy) {
    switch (policy) {
        case Retention::always: return true;
        case Retention::never: return false;
        case Retention::automatic: return level.bin_count() <= kRetentionLimit;
    }
    return false;
}

MeasurementResult measure(const std::vector<DensityTerm>& terms, double declared_trace,
                          const WaveFunction& phi, const GridLevel& level,
                          const MeasurementOptions& opts, bool pure) {
    opts.quadrature.validate();
    const auto start = std::chrono::steady_clock::now();
    MeasurementResult out;
    out.n = level.n();
    out.dim = level.dim();
    out.bin_count = level.bin_count();
    out.min_bin_volume = level.min_bin_volume();
    out.max_bin_volume = level.max_bin_volume();
    const bool keep = should_retain(level, opts.retain);
    out.retained = keep;
    if (keep) {
        if (pure) {
            out.amplitudes.assign(level.bin_count(), Complex(0.0, 0.0));
        }
        out.joint_y1.assign(level.bin_count(), 0.0);
        out.masses.assign(level.bin_count(), 0.0);
    } else if (level.bin_count() > kRetentionLimit) {
        out.warnings.push_back("per-bin arrays dropped for " + std::to_string(level.bin_count()) +
                               " bins");
    }
    const double phi_norm2 = 1.0;
    for (const DensityTerm& term : terms) {
        check_compatible(term.state, phi, level);
        if (term.weight == 0.0) {
            continue;
        }
        const TermTotals t =
            measure_term(term.state, phi, level, opts, term.weight, keep,
                         pure && keep ? &out.amplitudes : nullptr, &out.joint_y1, &out.masses);
        out.p_y1_unclamped += term.weight * t.y1;
        out.quadrature_error += term.weight * t.y1_err;
        out.norm_fn2 += term.weight * t.fn2;
        out.mass_total += term.weight * t.mass;
        out.mass_error += term.weight * t.mass_err;
        if (level.domain_kind() == DomainKind::euclidean) {
            out.truncation_bound +=
                term.weight * phi_norm2 * std::max(0.0, 1.0 - t.mass + t.mass_err);
        }
    }
    out.spectral_tail_bound = phi_norm2 * std::max(0.0, 1.0 - declared_trace);
    out.p_y1_error_bound = out.quadrature_error + out.spectral_tail_bound + out.truncation_bound;
    out.p_y1 = std::clamp(out.p_y1_unclamped, 0.0, 1.0);
    if (out.p_y1 != out.p_y1_unclamped) {
        out.warnings.push_back("p_y1 clamped from " + fmt(out.p_y1_unclamped));
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

double MeasurementResult::conditional_y1(std::size_t j) const {
    require(retained, ErrorCode::invalid_parameter, "per-bin arrays were not retained");
    require(j < masses.size(), ErrorCode::invalid_parameter, "bin index out of range");
    return masses[j] > 0.0 ? std::clamp(joint_y1[j] / masses[j], 0.0, 1.0) : 0.0;
}

WaveFunction collapse(const WaveFunction& psi, const Bin& bin, const QuadratureConfig& cfg) {
    const MassEstimate m = bin_mass(psi, bin, cfg);
    require(m.value > m.error && m.value > 0.0, ErrorCode::zero_mass_bin,
            "state " + psi.descriptor() + " has zero mass in the bin (mass " + fmt(m.value) + ")");
    return restrict_and_renormalize(psi, bin, m.value);
}

double prob_y1_given_bin(const WaveFunction& psi, const WaveFunction& phi, const Bin& bin,
                         const QuadratureConfig& cfg) {
    const MassEstimate m = bin_mass(psi, bin, cfg);
    require(m.value > m.error && m.value > 0.0, ErrorCode::zero_mass_bin,
            "state " + psi.descriptor() + " has zero mass in the bin (mass " + fmt(m.value) + ")");
    const Complex a = bin_inner_product(phi, psi, bin, cfg).value;
    return std::norm(a) / m.value;
}

double prob_y1_given_bin_via_collapse(const WaveFunction& psi, const WaveFunction& phi,
                                      const Bin& bin, const QuadratureConfig& cfg) {
    const WaveFunction post = collapse(psi, bin, cfg);
    return std::norm(inner_product(phi, post, cfg).value);
}

MeasurementResult prob_y1_pure(const WaveFunction& psi, const WaveFunction& phi,
                               const GridLevel& level, const MeasurementOptions& opts) {
    return measure({DensityTerm{1.0, psi}}, 1.0, phi, level, opts, true);
}

MeasurementResult prob_y1_mixed(const DensityState& rho, const WaveFunction& phi,
                                const GridLevel& level, const MeasurementOptions& opts) {
    return measure(rho.terms(), rho.declared_trace(), phi, level, opts, false);
}

std::vector<double> JointDistribution::marginal_x() const {
    std::vector<double> m(y1.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
        m[j] = y1[j] + y0[j];
    }
    return m;
}

namespace {

JointDistribution joint_from(const MeasurementResult& r) {
    JointDistribution j;
    j.y1 = r.joint_y1;
    j.y0.resize(r.masses.size());
    for (std::size_t i = 0; i < r.masses.size(); ++i) {
        j.y1[i] = std::max(j.y1[i], 0.0);
        j.y0[i] = std::max(r.masses[i] - j.y1[i], 0.0);
    }
    const simd::KernelTable& K = simd::kernels();
    j.total_y1 = K.sum(j.y1.data(), j.y1.size());
    j.total = j.total_y1 + K.sum(j.y0.data(), j.y0.size());
    return j;
}

MeasurementOptions retaining(MeasurementOptions opts) {
    opts.retain = Retention::always;
    return opts;
}

}  // namespace

JointDistribution joint_distribution(const WaveFunction& psi, const WaveFunction& phi,
                                     const GridLevel& level, const MeasurementOptions& opts) {
    return joint_from(prob_y1_pure(psi, phi, level, retaining(opts)));
}

JointDistribution joint_distribution(const DensityState& rho, const WaveFunction& phi,
                                     const GridLevel& level, const MeasurementOptions& opts) {
    return joint_from(prob_y1_mixed(rho, phi, level, retaining(opts)));
}

std::vector<Sample> sample_xy(const DensityState& rho, const WaveFunction& phi,
                              const GridLevel& level, std::size_t count, std::uint64_t seed,
                              const MeasurementOptions& opts, std::uint64_t stream) {
    require(count >= 1, ErrorCode::invalid_parameter, "sample count must be >= 1");
    struct Table {
        std::vector<double> cumulative;
        std::vector<double> conditional;
    };
    std::vector<Table> tables;
    std::vector<double> term_cumulative;
    double acc_weight = 0.0;
    for (const DensityTerm& term : rho.terms()) {
        const MeasurementResult r = prob_y1_pure(term.state, phi, level, retaining(opts));
        Table t;
        t.cumulative.resize(r.masses.size());
        t.conditional.resize(r.masses.size());
        double acc = 0.0;
        for (std::size_t j = 0; j < r.masses.size(); ++j) {
            const double m = std::max(r.masses[j], 0.0);
            acc += m;
            t.cumulative[j] = acc;
            t.conditional[j] = m > 0.0 ? std::clamp(r.joint_y1[j] / m, 0.0, 1.0) : 0.0;
        }
        tables.push_back(std::move(t));
        acc_weight += std::max(term.weight, 0.0);
        term_cumulative.push_back(acc_weight);
    }
    require(acc_weight > 0.0, ErrorCode::zero_mass_bin, "density state has zero total weight");

    RandomStream rng(seed, {0x5a3b1e, stream});
    std::vector<Sample> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::size_t l = 0;
        if (tables.size() > 1) {
            const double u = rng.uniform() * acc_weight;
            l = static_cast<std::size_t>(
                std::upper_bound(term_cumulative.begin(), term_cumulative.end(), u) -
                term_cumulative.begin());
            l = std::min(l, tables.size() - 1);
        }
        const Table& t = tables[l];
        const double total = t.cumulative.back();
        require(total > 0.0, ErrorCode::zero_mass_bin, "state has zero mass on the grid");
        const double u = rng.uniform() * total;
        std::size_t j = static_cast<std::size_t>(
            std::upper_bound(t.cumulative.begin(), t.cumulative.end(), u) - t.cumulative.begin());
        if (j >= t.cumulative.size()) {
            // Only reachable through rounding at the top; take the last bin with mass.
            j = static_cast<std::size_t>(
                std::lower_bound(t.cumulative.begin(), t.cumulative.end(), total) -
                t.cumulative.begin());
        }
        const int y = rng.uniform() < t.conditional[j] ? 1 : 0;
        out.push_back(Sample{j, y});
    }
    return out;
}

std::vector<Sample> sample_xy(const WaveFunction& psi, const WaveFunction& phi,
                              const GridLevel& level, std::size_t count, std::uint64_t seed,
                              const MeasurementOptions& opts, std::uint64_t stream) {
    return sample_xy(DensityState::pure(psi), phi, level, count, seed, opts, stream);
}

}  // namespace szeno
