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

// Row-wise assembly of bin integrals over product blocks.

#ifndef SZENO_SRC_ASSEMBLY_HPP
#define SZENO_SRC_ASSEMBLY_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "szeno/grid.hpp"
#include "szeno/quadrature.hpp"
#include "szeno/simd/kernels.hpp"
#include "szeno/state.hpp"

namespace szeno::detail {

// Per-axis bin integrals of one product-term pair over one block.
struct PairProfile {
    Complex kappa;
    double kappa_abs;
    std::vector<AxisProfile> axes;
    std::vector<std::vector<double>> abs;       // |P_k[i]|
    std::vector<std::vector<double>> abs_plus;  // |P_k[i]| + err_k[i]
};

// Assembles integrals of conj(a) b over the bins of one block, one row of
// the last axis at a time.
class BlockAssembler {
public:
    BlockAssembler(const Expansion& a, const Expansion& b, const ProductBlock& block,
                   const QuadratureConfig& cfg)
        : block_(block), dim_(block.dim()) {
        for (const ProductTerm& s : a.terms()) {
            for (const ProductTerm& t : b.terms()) {
                PairProfile p{std::conj(s.coef) * t.coef, 0.0, {}, {}, {}};
                p.kappa_abs = std::abs(p.kappa);
                if (p.kappa_abs == 0.0) {
                    continue;
                }
                bool nonzero = true;
                for (int k = 0; k < dim_ && nonzero; ++k) {
                    const auto uk = static_cast<std::size_t>(k);
                    const Factor f = s.factors[uk].conj() * t.factors[uk];
                    AxisProfile prof = integrate_factor_cells(f, block.breakpoints(k), cfg);
                    std::vector<double> ab(prof.re.size());
                    std::vector<double> ap(prof.re.size());
                    bool any = false;
                    for (std::size_t i = 0; i < ab.size(); ++i) {
                        ab[i] = std::hypot(prof.re[i], prof.im[i]);
                        ap[i] = ab[i] + prof.err[i];
                        any = any || ap[i] > 0.0;
                    }
                    nonzero = any;
                    p.axes.push_back(std::move(prof));
                    p.abs.push_back(std::move(ab));
                    p.abs_plus.push_back(std::move(ap));
                }
                if (nonzero) {
                    pairs_.push_back(std::move(p));
                }
            }
        }
    }

    std::size_t row_length() const { return block_.cells(dim_ - 1); }
    std::size_t rows() const { return block_.bin_count() / row_length(); }

    // Writes values and error bounds of row r into re, im, err (length row_length()).
    void row(std::size_t r, double* re, double* im, double* err) const {
        const std::size_t m = row_length();
        std::fill(re, re + m, 0.0);
        std::fill(im, im + m, 0.0);
        std::fill(err, err + m, 0.0);
        const simd::KernelTable& K = simd::kernels();
        const auto outer = outer_index(r);
        const auto last = static_cast<std::size_t>(dim_ - 1);
        for (const PairProfile& p : pairs_) {
            Complex alpha = p.kappa;
            double plus = p.kappa_abs;
            double base = p.kappa_abs;
            for (std::size_t k = 0; k < last; ++k) {
                const std::size_t i = outer[k];
                alpha *= Complex(p.axes[k].re[i], p.axes[k].im[i]);
                plus *= p.abs_plus[k][i];
                base *= p.abs[k][i];
            }
            if (plus == 0.0) {
                continue;
            }
            K.caxpy(alpha.real(), alpha.imag(), p.axes[last].re.data(), p.axes[last].im.data(), m,
                    re, im);
            K.axpy(plus, p.abs_plus[last].data(), m, err);
            K.axpy(-base, p.abs[last].data(), m, err);
        }
        for (std::size_t i = 0; i < m; ++i) {
            err[i] = std::max(err[i], 0.0);
        }
    }

    // Volume of the outer (all but last axis) cell of row r.
    double outer_volume(std::size_t r) const {
        const auto outer = outer_index(r);
        double v = 1.0;
        for (int k = 0; k + 1 < dim_; ++k) {
            const auto& bp = block_.breakpoints(k);
            const std::size_t i = outer[static_cast<std::size_t>(k)];
            v *= bp[i + 1] - bp[i];
        }
        return v;
    }

private:
    std::vector<std::size_t> outer_index(std::size_t r) const {
        std::vector<std::size_t> idx(static_cast<std::size_t>(dim_ - 1));
        for (int k = dim_ - 2; k >= 0; --k) {
            const std::size_t c = block_.cells(k);
            idx[static_cast<std::size_t>(k)] = r % c;
            r /= c;
        }
        return idx;
    }

    const ProductBlock& block_;
    int dim_;
    std::vector<PairProfile> pairs_;
};

}  // namespace szeno::detail

#endif  // SZENO_SRC_ASSEMBLY_HPP
