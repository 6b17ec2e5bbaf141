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

#ifndef SZENO_STATE_HPP
#define SZENO_STATE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "szeno/factor.hpp"
#include "szeno/grid.hpp"
#include "szeno/quadrature.hpp"

namespace szeno {

/// coef * prod_k factors[k](x_k)
struct ProductTerm {
    Complex coef{1.0, 0.0};
    std::vector<Factor> factors;
};

/// A finite sum of product terms: the representation behind every state.
class Expansion {
public:
    Expansion(int dim, std::vector<ProductTerm> terms);

    int dim() const noexcept { return dim_; }
    const std::vector<ProductTerm>& terms() const noexcept { return terms_; }

    Complex value(std::span<const double> x) const;
    Expansion conj() const;
    Expansion scaled(Complex c) const;
    Expansion restricted(const Bin& box) const;
    /// Tensor product with a function of further variables.
    Expansion tensor(const Expansion& other) const;

    double linf_bound() const noexcept;
    bool bounded() const noexcept;
    /// Per axis, the union of the factors' singular points.
    std::vector<std::vector<Singularity>> singularities() const;
    /// Per axis, the finite piece endpoints of every factor, sorted.
    std::vector<std::vector<double>> breaks() const;
    Field as_field() const;

    friend Expansion operator*(const Expansion& a, const Expansion& b);
    friend Expansion operator+(const Expansion& a, const Expansion& b);

private:
    int dim_;
    std::vector<ProductTerm> terms_;
};

/// Per-axis integration bounds of a domain kind: [0, 1) or (-inf, inf).
std::vector<std::pair<double, double>> domain_bounds(DomainKind kind, int dim);

/// Integral over an axis-aligned box (bounds may be infinite) of conj(a) * b.
/// With exact_only, returns nullopt unless every factor pair has a closed form.
std::optional<Estimate> separable_inner_product(const Expansion& a, const Expansion& b,
                                                std::span<const std::pair<double, double>> box,
                                                const QuadratureConfig& cfg, bool exact_only);

/// A normalized state on [0,1)^d or R^d.
class WaveFunction {
public:
    /// Divides by the L2 norm over the domain. Throws invalid_parameter for a
    /// zero or non-finite norm.
    static WaveFunction normalized(Expansion expansion, DomainKind domain, std::string descriptor,
                                   const QuadratureConfig& cfg = {});

    const Expansion& expansion() const noexcept { return expansion_; }
    int dim() const noexcept { return expansion_.dim(); }
    DomainKind domain() const noexcept { return domain_; }
    const std::string& descriptor() const noexcept { return descriptor_; }
    bool bounded() const noexcept { return expansion_.bounded(); }
    double linf_bound() const noexcept { return expansion_.linf_bound(); }

    Complex value(std::span<const double> x) const { return expansion_.value(x); }
    Complex operator()(std::span<const double> x) const { return value(x); }
    Complex operator()(double x) const { return value(std::span<const double>(&x, 1)); }

    /// Multiplies by a unit complex constant.
    WaveFunction with_phase(Complex unit) const;
    Field as_field() const { return expansion_.as_field(); }

private:
    WaveFunction(Expansion expansion, DomainKind domain, std::string descriptor)
        : expansion_(std::move(expansion)), domain_(domain), descriptor_(std::move(descriptor)) {}

    friend WaveFunction restrict_and_renormalize(const WaveFunction& psi, const Bin& bin,
                                                 double mass);

    Expansion expansion_;
    DomainKind domain_;
    std::string descriptor_;
};

/// (1/sqrt(mass)) * 1_bin * psi; used by collapse.
WaveFunction restrict_and_renormalize(const WaveFunction& psi, const Bin& bin, double mass);

/// <phi|psi> over the common domain. Throws domain_mismatch.
Estimate inner_product(const WaveFunction& phi, const WaveFunction& psi,
                       const QuadratureConfig& cfg = {});

/// Closed-form integral of conj(phi) psi over the bin, or nullopt when some
/// factor pair has no elementary antiderivative.
std::optional<Complex> exact_bin_integral(const WaveFunction& phi, const WaveFunction& psi,
                                          const Bin& bin);

/// Catalog constructors. Dimension follows the parameter vectors; a
/// d-dimensional entry is the product of its 1-d entries along each axis.
namespace catalog {

WaveFunction uniform(int d = 1, DomainKind domain = DomainKind::unit_cube);
/// sqrt(2) sin(k pi x) per axis, k >= 1.
WaveFunction sine_mode(std::vector<int> k, DomainKind domain = DomainKind::unit_cube);
/// exp(2 pi i k x) per axis.
WaveFunction complex_exponential(std::vector<int> k, DomainKind domain = DomainKind::unit_cube);
/// Normalized indicator of a box.
WaveFunction indicator(const Bin& box, DomainKind domain = DomainKind::unit_cube);
/// c x^(-alpha) per axis with 0 < alpha < 1/2, c = sqrt(1 - 2 alpha).
WaveFunction power_singular(double alpha, int d = 1, DomainKind domain = DomainKind::unit_cube);
/// Product of normal-density square roots: |psi|^2 is N(mu_k, sigma_k^2) per
/// axis. On the unit cube the restriction is renormalized.
WaveFunction gaussian(std::vector<double> mu, std::vector<double> sigma,
                      DomainKind domain = DomainKind::euclidean);
/// Seeded random piecewise-constant complex values on `pieces` equal cells per axis.
WaveFunction haar_like(int pieces, std::uint64_t seed, int d = 1,
                       DomainKind domain = DomainKind::unit_cube);
/// Renormalized sum of coef * state.
WaveFunction combination(const std::vector<std::pair<Complex, WaveFunction>>& terms);
/// Tensor product of lower-dimensional states on the same domain kind.
WaveFunction product(const std::vector<WaveFunction>& parts);

/// Names of the catalog entries, in a stable order.
std::vector<std::string> entry_names();

}  // namespace catalog

struct DensityTerm {
    double weight;
    WaveFunction state;
};

/// sum_l p_l |psi_l><psi_l| with finitely many terms. The missing weight
/// 1 - sum p_l is carried as the spectral tail.
class DensityState {
public:
    /// Checks p_l >= 0, pairwise orthogonality within `orthogonality_tol`, and
    /// sum p_l <= 1 + 1e-12 unless `renormalize` rescales the weights to sum 1.
    /// Throws negative_weight, non_orthogonal_terms, trace_exceeded, domain_mismatch.
    static DensityState make(std::vector<DensityTerm> terms, bool renormalize = false,
                             const QuadratureConfig& cfg = {}, double orthogonality_tol = 1e-6);
    static DensityState pure(WaveFunction psi);

    const std::vector<DensityTerm>& terms() const noexcept { return terms_; }
    double declared_trace() const noexcept { return trace_; }
    double tail_mass() const noexcept { return trace_ >= 1.0 ? 0.0 : 1.0 - trace_; }
    int dim() const noexcept { return terms_.front().state.dim(); }
    DomainKind domain() const noexcept { return terms_.front().state.domain(); }

private:
    explicit DensityState(std::vector<DensityTerm> terms, double trace)
        : terms_(std::move(terms)), trace_(trace) {}

    std::vector<DensityTerm> terms_;
    double trace_;
};

}  // namespace szeno

#endif  // SZENO_STATE_HPP
