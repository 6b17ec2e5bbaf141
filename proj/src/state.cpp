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

#include "szeno/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "szeno/error.hpp"
#include "szeno/rng.hpp"

namespace szeno {

namespace {

void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) {
        throw Error(code, message);
    }
}

template <typename T>
std::string list_string(const std::vector<T>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? "," : "") << v[i];
    }
    os << "]";
    return os.str();
}

void merge_singularities(std::vector<Singularity>& into, const std::vector<Singularity>& from) {
    for (const Singularity& s : from) {
        auto it = std::find_if(into.begin(), into.end(),
                               [&](const Singularity& t) { return t.at == s.at; });
        if (it == into.end()) {
            into.push_back(s);
        } else {
            it->exponent = std::min(it->exponent, s.exponent);
        }
    }
}

Expansion product_of_axes(std::vector<Factor> factors) {
    const int d = static_cast<int>(factors.size());
    return Expansion(d, {ProductTerm{{1.0, 0.0}, std::move(factors)}});
}

Factor unit_interval_constant(double value) {
    return Factor::single(0.0, 1.0, Atom{{value, 0.0}}, std::abs(value));
}

}  // namespace

// ---------------------------------------------------------------- Expansion

Expansion::Expansion(int dim, std::vector<ProductTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
    require(dim_ >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    for (const ProductTerm& t : terms_) {
        require(static_cast<int>(t.factors.size()) == dim_, ErrorCode::invalid_parameter,
                "every product term needs one factor per axis");
    }
}

Complex Expansion::value(std::span<const double> x) const {
    require(static_cast<int>(x.size()) == dim_, ErrorCode::invalid_parameter,
            "evaluation point has the wrong dimension");
    Complex total(0.0, 0.0);
    for (const ProductTerm& t : terms_) {
        Complex v = t.coef;
        for (std::size_t k = 0; k < t.factors.size() && v != Complex(0.0, 0.0); ++k) {
            v *= t.factors[k].value(x[k]);
        }
        total += v;
    }
    return total;
}

Expansion Expansion::conj() const {
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const ProductTerm& t : terms_) {
        ProductTerm c{std::conj(t.coef), {}};
        for (const Factor& f : t.factors) {
            c.factors.push_back(f.conj());
        }
        out.push_back(std::move(c));
    }
    return Expansion(dim_, std::move(out));
}

Expansion Expansion::scaled(Complex c) const {
    std::vector<ProductTerm> out = terms_;
    for (ProductTerm& t : out) {
        t.coef *= c;
    }
    return Expansion(dim_, std::move(out));
}

Expansion Expansion::restricted(const Bin& box) const {
    require(box.dim() == dim_, ErrorCode::invalid_parameter, "box has the wrong dimension");
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const ProductTerm& t : terms_) {
        ProductTerm r{t.coef, {}};
        for (int k = 0; k < dim_; ++k) {
            r.factors.push_back(t.factors[static_cast<std::size_t>(k)].restricted(
                box.edge(k).lo(), box.edge(k).hi()));
        }
        out.push_back(std::move(r));
    }
    return Expansion(dim_, std::move(out));
}

Expansion Expansion::tensor(const Expansion& other) const {
    std::vector<ProductTerm> out;
    for (const ProductTerm& a : terms_) {
        for (const ProductTerm& b : other.terms_) {
            ProductTerm t{a.coef * b.coef, a.factors};
            t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
            out.push_back(std::move(t));
        }
    }
    return Expansion(dim_ + other.dim_, std::move(out));
}

double Expansion::linf_bound() const noexcept {
    double bound = 0.0;
    for (const ProductTerm& t : terms_) {
        double b = std::abs(t.coef);
        for (const Factor& f : t.factors) {
            b = (b == 0.0 || f.linf_bound() == 0.0) ? 0.0 : b * f.linf_bound();
        }
        bound += b;
    }
    return bound;
}

bool Expansion::bounded() const noexcept { return std::isfinite(linf_bound()); }

std::vector<std::vector<Singularity>> Expansion::singularities() const {
    std::vector<std::vector<Singularity>> out(static_cast<std::size_t>(dim_));
    for (const ProductTerm& t : terms_) {
        for (std::size_t k = 0; k < t.factors.size(); ++k) {
            merge_singularities(out[k], t.factors[k].singularities());
        }
    }
    return out;
}

std::vector<std::vector<double>> Expansion::breaks() const {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(dim_));
    for (const ProductTerm& t : terms_) {
        for (std::size_t k = 0; k < t.factors.size(); ++k) {
            for (const Piece& p : t.factors[k].pieces()) {
                for (double x : {p.lo, p.hi}) {
                    if (std::isfinite(x)) {
                        out[k].push_back(x);
                    }
                }
            }
        }
    }
    for (auto& b : out) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    return out;
}

Field Expansion::as_field() const {
    Field f;
    f.dim = dim_;
    f.value = [e = *this](std::span<const double> x) { return e.value(x); };
    f.singularities = singularities();
    f.breaks = breaks();
    return f;
}

Expansion operator*(const Expansion& a, const Expansion& b) {
    require(a.dim_ == b.dim_, ErrorCode::domain_mismatch, "expansions differ in dimension");
    std::vector<ProductTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const ProductTerm& s : a.terms_) {
        for (const ProductTerm& t : b.terms_) {
            ProductTerm p{s.coef * t.coef, {}};
            for (std::size_t k = 0; k < s.factors.size(); ++k) {
                p.factors.push_back(s.factors[k] * t.factors[k]);
            }
            out.push_back(std::move(p));
        }
    }
    return Expansion(a.dim_, std::move(out));
}

Expansion operator+(const Expansion& a, const Expansion& b) {
    require(a.dim_ == b.dim_, ErrorCode::domain_mismatch, "expansions differ in dimension");
    std::vector<ProductTerm> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return Expansion(a.dim_, std::move(out));
}

std::vector<std::pair<double, double>> domain_bounds(DomainKind kind, int dim) {
    const auto bounds = kind == DomainKind::unit_cube
                            ? std::pair<double, double>{0.0, 1.0}
                            : std::pair<double, double>{-INFINITY, INFINITY};
    return std::vector<std::pair<double, double>>(static_cast<std::size_t>(dim), bounds);
}

std::optional<Estimate> separable_inner_product(const Expansion& a, const Expansion& b,
                                                std::span<const std::pair<double, double>> box,
                                                const QuadratureConfig& cfg, bool exact_only) {
    require(a.dim() == b.dim() && static_cast<int>(box.size()) == a.dim(),
            ErrorCode::domain_mismatch, "inner product operands differ in dimension");
    Estimate total;
    for (const ProductTerm& s : a.terms()) {
        for (const ProductTerm& t : b.terms()) {
            const Complex kappa = std::conj(s.coef) * t.coef;
            if (kappa == Complex(0.0, 0.0)) {
                continue;
            }
            Complex value = kappa;
            double magnitude = std::abs(kappa);
            double inflated = magnitude;
            bool exact = true;
            for (std::size_t k = 0; k < box.size(); ++k) {
                const Factor f = s.factors[k].conj() * t.factors[k];
                Estimate axis;
                if (exact_only) {
                    auto v = f.exact_integral(box[k].first, box[k].second);
                    if (!v) {
                        return std::nullopt;
                    }
                    axis.value = *v;
                } else {
                    axis = integrate_factor(f, box[k].first, box[k].second, cfg);
                }
                value *= axis.value;
                magnitude *= std::abs(axis.value);
                inflated *= std::abs(axis.value) + axis.error;
                exact = exact && axis.exact;
            }
            total.value += value;
            total.error += inflated - magnitude;
            total.exact = total.exact && exact;
        }
    }
    return total;
}

// ---------------------------------------------------------------- WaveFunction

WaveFunction WaveFunction::normalized(Expansion expansion, DomainKind domain,
                                      std::string descriptor, const QuadratureConfig& cfg) {
    const auto bounds = domain_bounds(domain, expansion.dim());
    const double norm2 =
        separable_inner_product(expansion, expansion, bounds, cfg, false)->value.real();
    require(std::isfinite(norm2) && norm2 > 0.0, ErrorCode::invalid_parameter,
            "state " + descriptor + " has zero or non-finite norm on its domain");
    return WaveFunction(expansion.scaled(1.0 / std::sqrt(norm2)), domain, std::move(descriptor));
}

WaveFunction WaveFunction::with_phase(Complex unit) const {
    return WaveFunction(expansion_.scaled(unit), domain_, descriptor_);
}

WaveFunction restrict_and_renormalize(const WaveFunction& psi, const Bin& bin, double mass) {
    require(mass > 0.0, ErrorCode::zero_mass_bin, "cannot renormalize a zero-mass restriction");
    std::ostringstream os;
    os << "collapse(" << psi.descriptor() << ")";
    return WaveFunction(psi.expansion_.restricted(bin).scaled(1.0 / std::sqrt(mass)),
                        psi.domain_, os.str());
}

Estimate inner_product(const WaveFunction& phi, const WaveFunction& psi,
                       const QuadratureConfig& cfg) {
    require(phi.dim() == psi.dim() && phi.domain() == psi.domain(), ErrorCode::domain_mismatch,
            "states " + phi.descriptor() + " and " + psi.descriptor() +
                " live on different domains");
    const auto bounds = domain_bounds(psi.domain(), psi.dim());
    return *separable_inner_product(phi.expansion(), psi.expansion(), bounds, cfg, false);
}

std::optional<Complex> exact_bin_integral(const WaveFunction& phi, const WaveFunction& psi,
                                          const Bin& bin) {
    require(phi.dim() == psi.dim() && bin.dim() == psi.dim(), ErrorCode::domain_mismatch,
            "bin and states differ in dimension");
    std::vector<std::pair<double, double>> box;
    for (const Interval& e : bin.edges()) {
        box.emplace_back(e.lo(), e.hi());
    }
    auto r = separable_inner_product(phi.expansion(), psi.expansion(), box, QuadratureConfig{},
                                     true);
    if (!r) {
        return std::nullopt;
    }
    return r->value;
}

// ---------------------------------------------------------------- catalog

namespace catalog {

WaveFunction uniform(int d, DomainKind domain) {
    require(d >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    std::vector<Factor> axes(static_cast<std::size_t>(d), unit_interval_constant(1.0));
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain,
                                    "uniform(d=" + std::to_string(d) + ")");
}

WaveFunction sine_mode(std::vector<int> k, DomainKind domain) {
    require(!k.empty(), ErrorCode::invalid_parameter, "sine_mode needs at least one mode number");
    std::vector<Factor> axes;
    for (int kk : k) {
        require(kk >= 1, ErrorCode::invalid_parameter, "sine_mode needs k >= 1");
        // sqrt(2) sin(k pi x) = (-i/sqrt2) e^{i k pi x} + (i/sqrt2) e^{-i k pi x}
        const double w = kk * std::numbers::pi;
        const double c = 1.0 / std::numbers::sqrt2;
        Piece p{0.0, 1.0, {Atom{{0.0, -c}, 0.0, {0.0, w}}, Atom{{0.0, c}, 0.0, {0.0, -w}}}};
        axes.emplace_back(std::vector<Piece>{std::move(p)}, std::numbers::sqrt2);
    }
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain,
                                    "sine_mode(k=" + list_string(k) + ")");
}

WaveFunction complex_exponential(std::vector<int> k, DomainKind domain) {
    require(!k.empty(), ErrorCode::invalid_parameter,
            "complex_exponential needs at least one frequency");
    std::vector<Factor> axes;
    for (int kk : k) {
        axes.push_back(Factor::single(
            0.0, 1.0, Atom{{1.0, 0.0}, 0.0, {0.0, 2.0 * std::numbers::pi * kk}}, 1.0));
    }
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain,
                                    "complex_exponential(k=" + list_string(k) + ")");
}

WaveFunction indicator(const Bin& box, DomainKind domain) {
    std::vector<Factor> axes;
    std::ostringstream os;
    os << "indicator(";
    for (int k = 0; k < box.dim(); ++k) {
        const Interval& e = box.edge(k);
        if (domain == DomainKind::unit_cube) {
            require(e.lo() >= 0.0 && e.hi() <= 1.0, ErrorCode::invalid_parameter,
                    "indicator box must lie inside the unit cube");
        }
        const double h = 1.0 / std::sqrt(e.length());
        axes.push_back(Factor::single(e.lo(), e.hi(), Atom{{h, 0.0}}, h));
        os << (k ? "x" : "") << "[" << e.lo() << "," << e.hi() << ")";
    }
    os << ")";
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain, os.str());
}

WaveFunction power_singular(double alpha, int d, DomainKind domain) {
    require(alpha > 0.0 && alpha < 0.5, ErrorCode::invalid_parameter,
            "power_singular needs 0 < alpha < 1/2 for square integrability");
    require(d >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    const double c = std::sqrt(1.0 - 2.0 * alpha);
    std::vector<Factor> axes(static_cast<std::size_t>(d),
                             Factor::single(0.0, 1.0, Atom{{c, 0.0}, -alpha}, INFINITY));
    std::ostringstream os;
    os << "power_singular(alpha=" << alpha << ",d=" << d << ")";
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain, os.str());
}

WaveFunction gaussian(std::vector<double> mu, std::vector<double> sigma, DomainKind domain) {
    require(!mu.empty() && mu.size() == sigma.size(), ErrorCode::invalid_parameter,
            "gaussian needs matching mu and sigma vectors");
    std::vector<Factor> axes;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        require(sigma[k] > 0.0 && std::isfinite(sigma[k]) && std::isfinite(mu[k]),
                ErrorCode::invalid_parameter, "gaussian needs finite mu and sigma > 0");
        const double peak = std::pow(2.0 * std::numbers::pi * sigma[k] * sigma[k], -0.25);
        Atom a{{peak, 0.0}, 0.0, {0.0, 0.0}, 1.0 / (4.0 * sigma[k] * sigma[k]), mu[k]};
        const double lo = domain == DomainKind::unit_cube ? 0.0 : -INFINITY;
        const double hi = domain == DomainKind::unit_cube ? 1.0 : INFINITY;
        axes.push_back(Factor::single(lo, hi, a, peak));
    }
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain,
                                    "gaussian(mu=" + list_string(mu) +
                                        ",sigma=" + list_string(sigma) + ")");
}

WaveFunction haar_like(int pieces, std::uint64_t seed, int d, DomainKind domain) {
    require(pieces >= 1, ErrorCode::invalid_parameter, "haar_like needs at least one piece");
    require(d >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    std::vector<Factor> axes;
    for (int k = 0; k < d; ++k) {
        RandomStream rng(seed, {static_cast<std::uint64_t>(k), 0x4a11ULL});
        std::vector<Piece> cells;
        double peak = 0.0;
        for (int i = 0; i < pieces; ++i) {
            const double r = 0.25 + 0.75 * rng.uniform();
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            peak = std::max(peak, r);
            const double lo = static_cast<double>(i) / pieces;
            const double hi = static_cast<double>(i + 1) / pieces;
            cells.push_back(Piece{lo, hi, {Atom{std::polar(r, theta)}}});
        }
        axes.emplace_back(std::move(cells), peak);
    }
    std::ostringstream os;
    os << "haar_like(pieces=" << pieces << ",seed=" << seed << ",d=" << d << ")";
    return WaveFunction::normalized(product_of_axes(std::move(axes)), domain, os.str());
}

WaveFunction combination(const std::vector<std::pair<Complex, WaveFunction>>& terms) {
    require(!terms.empty(), ErrorCode::invalid_parameter, "combination needs at least one term");
    const WaveFunction& first = terms.front().second;
    std::optional<Expansion> sum;
    std::ostringstream os;
    os << "combination(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [c, s] = terms[i];
        require(s.dim() == first.dim() && s.domain() == first.domain(),
                ErrorCode::domain_mismatch, "combination terms live on different domains");
        Expansion e = s.expansion().scaled(c);
        sum = sum ? *sum + e : e;
        os << (i ? "+" : "") << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag()
           << "i)*" << s.descriptor();
    }
    os << ")";
    return WaveFunction::normalized(*sum, first.domain(), os.str());
}

WaveFunction product(const std::vector<WaveFunction>& parts) {
    require(!parts.empty(), ErrorCode::invalid_parameter, "product needs at least one factor");
    Expansion e = parts.front().expansion();
    std::ostringstream os;
    os << "product(" << parts.front().descriptor();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        require(parts[i].domain() == parts.front().domain(), ErrorCode::domain_mismatch,
                "product factors live on different domain kinds");
        e = e.tensor(parts[i].expansion());
        os << "," << parts[i].descriptor();
    }
    os << ")";
    return WaveFunction::normalized(e, parts.front().domain(), os.str());
}

std::vector<std::string> entry_names() {
    return {"uniform",  "sine_mode", "complex_exponential", "indicator",  "power_singular",
            "gaussian", "haar_like", "combination",         "product"};
}

}  // namespace catalog

// ---------------------------------------------------------------- DensityState

DensityState DensityState::make(std::vector<DensityTerm> terms, bool renormalize,
                                const QuadratureConfig& cfg, double orthogonality_tol) {
    require(!terms.empty(), ErrorCode::invalid_parameter, "a density state needs terms");
    double trace = 0.0;
    for (const DensityTerm& t : terms) {
        require(t.weight >= 0.0 && std::isfinite(t.weight), ErrorCode::negative_weight,
                "density weights must be finite and non-negative");
        require(t.state.dim() == terms.front().state.dim() &&
                    t.state.domain() == terms.front().state.domain(),
                ErrorCode::domain_mismatch, "density terms live on different domains");
        trace += t.weight;
    }
    for (std::size_t l = 0; l < terms.size(); ++l) {
        for (std::size_t m = l + 1; m < terms.size(); ++m) {
            const double overlap = std::abs(inner_product(terms[l].state, terms[m].state, cfg).value);
            require(overlap <= orthogonality_tol, ErrorCode::non_orthogonal_terms,
                    "density terms " + std::to_string(l) + " and " + std::to_string(m) +
                        " overlap by " + std::to_string(overlap));
        }
    }
    if (renormalize) {
        require(trace > 0.0, ErrorCode::negative_weight, "cannot renormalize zero total weight");
        for (DensityTerm& t : terms) {
            t.weight /= trace;
        }
        trace = 1.0;
    } else {
        require(trace <= 1.0 + 1e-12, ErrorCode::trace_exceeded,
                "density weights sum to " + std::to_string(trace) + " > 1");
    }
    return DensityState(std::move(terms), trace);
}

DensityState DensityState::pure(WaveFunction psi) {
    std::vector<DensityTerm> terms;
    terms.push_back(DensityTerm{1.0, std::move(psi)});
    return DensityState(std::move(terms), 1.0);
}

}  // namespace szeno
