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

#include "szeno/discretizer.hpp"

#include <algorithm>
#include <cmath>

#include "assembly.hpp"
#include "parallel.hpp"
#include "szeno/error.hpp"
#include "szeno/measurement.hpp"

namespace szeno {

namespace {

void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) {
        throw Error(code, message);
    }
}

void check_size(const GridLevel& level, const DiscretizeOptions& opts) {
    require(opts.allow_large || level.bin_count() <= kRetentionLimit,
            ErrorCode::invalid_parameter,
            "discretizing " + std::to_string(level.bin_count()) +
                " bins needs allow_large (limit 1000000)");
    opts.quadrature.validate();
}

// The constant 1 on all of R^d.
Expansion constant_one(int dim) {
    std::vector<Factor> axes(static_cast<std::size_t>(dim),
                             Factor::single(-INFINITY, INFINITY, Atom{{1.0, 0.0}}, 1.0));
    return Expansion(dim, {ProductTerm{{1.0, 0.0}, std::move(axes)}});
}

}  // namespace

DiscretizedFunction::DiscretizedFunction(GridLevel level, std::vector<Complex> averages,
                                         std::vector<double> errors, std::string source)
    : level_(std::move(level)),
      averages_(std::move(averages)),
      errors_(std::move(errors)),
      source_(std::move(source)) {
    require(averages_.size() == level_.bin_count() && errors_.size() == averages_.size(),
            ErrorCode::invalid_parameter, "one average per bin is required");
}

Complex DiscretizedFunction::value(std::span<const double> x) const {
    return averages_[level_.locate_bin(x)];
}

double DiscretizedFunction::linf() const noexcept {
    double m = 0.0;
    for (const Complex& a : averages_) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

Field DiscretizedFunction::as_field() const {
    Field f;
    f.dim = level_.dim();
    f.value = [self = *this](std::span<const double> x) { return self.value(x); };
    return f;
}

DiscretizedFunction discretize(const Field& f, const GridLevel& level,
                               const DiscretizeOptions& opts) {
    check_size(level, opts);
    require(f.dim == level.dim(), ErrorCode::domain_mismatch,
            "function and grid differ in dimension");
    std::vector<Complex> avg(level.bin_count());
    std::vector<double> err(level.bin_count());
    detail::parallel_for(level.bin_count(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const Bin b = level.bin(j);
            const Estimate e = numeric_box_integral(f, b, opts.quadrature);
            const double v = b.volume();
            avg[j] = e.value / v;
            err[j] = e.error / v;
        }
    });
    return DiscretizedFunction(level, std::move(avg), std::move(err), "field");
}

DiscretizedFunction discretize(const Expansion& f, const GridLevel& level,
                               const DiscretizeOptions& opts) {
    check_size(level, opts);
    require(f.dim() == level.dim(), ErrorCode::domain_mismatch,
            "function and grid differ in dimension");
    const Expansion one = constant_one(f.dim());
    std::vector<Complex> avg(level.bin_count());
    std::vector<double> err(level.bin_count());
    for (std::size_t b = 0; b < level.blocks().size(); ++b) {
        const ProductBlock& block = level.blocks()[b];
        const detail::BlockAssembler A(one, f, block, opts.quadrature);
        const std::size_t m = A.row_length();
        const std::size_t first = level.block_range(b).first;
        const auto& bp = block.breakpoints(block.dim() - 1);
        detail::parallel_for(A.rows(), opts.threads, [&](std::size_t begin, std::size_t end) {
            std::vector<double> re(m), im(m), e(m);
            for (std::size_t r = begin; r < end; ++r) {
                A.row(r, re.data(), im.data(), e.data());
                const double outer = A.outer_volume(r);
                for (std::size_t i = 0; i < m; ++i) {
                    const double v = outer * (bp[i + 1] - bp[i]);
                    avg[first + r * m + i] = Complex(re[i], im[i]) / v;
                    err[first + r * m + i] = e[i] / v;
                }
            }
        });
    }
    return DiscretizedFunction(level, std::move(avg), std::move(err), "expansion");
}

DiscretizedFunction discretize(const WaveFunction& f, const GridLevel& level,
                               const DiscretizeOptions& opts) {
    DiscretizedFunction d = discretize(f.expansion(), level, opts);
    return DiscretizedFunction(d.level(), d.averages(), d.errors(), f.descriptor());
}

Expansion overlap_density(const WaveFunction& phi, const WaveFunction& psi) {
    require(phi.dim() == psi.dim() && phi.domain() == psi.domain(), ErrorCode::domain_mismatch,
            "states live on different domains");
    return phi.expansion().conj() * psi.expansion();
}

double discretization_error(const Field& f, const GridLevel& level,
                            const DiscretizeOptions& opts) {
    const DiscretizedFunction d = discretize(f, level, opts);
    return l2_distance(f, d.as_field(), level, opts.quadrature);
}

double discretization_error(const Expansion& f, const GridLevel& level,
                            const DiscretizeOptions& opts) {
    const DiscretizedFunction d = discretize(f, level, opts);
    return l2_distance(f.as_field(), d.as_field(), level, opts.quadrature);
}

NormIdentity norm_identity_check(const WaveFunction& phi, const WaveFunction& psi,
                                 const GridLevel& level, const DiscretizeOptions& opts) {
    require(level.domain_kind() == DomainKind::unit_cube && psi.domain() == DomainKind::unit_cube,
            ErrorCode::domain_mismatch, "the norm identity check runs on the unit cube");
    const DiscretizedFunction d = discretize(overlap_density(phi, psi), level, opts);
    Field bars2;
    bars2.dim = level.dim();
    bars2.value = [&d](std::span<const double> x) { return Complex(std::norm(d.value(x)), 0.0); };
    std::vector<double> per_bin(level.bin_count());
    detail::parallel_for(level.bin_count(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            per_bin[j] = numeric_box_integral(bars2, level.bin(j), opts.quadrature).value.real();
        }
    });
    NormIdentity out;
    for (double v : per_bin) {
        out.lhs += v;
    }
    MeasurementOptions m;
    m.quadrature = opts.quadrature;
    m.threads = opts.threads;
    m.retain = Retention::never;
    out.rhs = prob_y1_pure(psi, phi, level, m).norm_fn2;
    return out;
}

}  // namespace szeno
