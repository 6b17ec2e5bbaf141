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

#include "szeno/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "szeno/error.hpp"
#include "szeno/state.hpp"

namespace szeno {

namespace {

constexpr double kGrading = 0.85;
constexpr double kGradingFloor = 1e-8;
// Upper bound on integrand evaluations for a single tensor-product integral.
constexpr double kTensorBudget = 4.0e7;

void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) {
        throw Error(code, message);
    }
}

GaussLegendreRule build_rule(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(order - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (order % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
    }
    return rule;
}

int lower_order(int p) { return std::max(1, p / 2); }

Complex gl_on(const Function1D& f, double a, double b, const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return s * half;
}

struct Segment {
    double lo;
    double hi;
};

// Adaptive bisection of one segment; the piece budget scales with length.
void adaptive(const Function1D& f, double a, double b, double total_length,
              const QuadratureConfig& cfg, Estimate& out) {
    const GaussLegendreRule& hi_rule = gauss_legendre(cfg.points_per_axis_per_bin);
    const GaussLegendreRule& lo_rule = gauss_legendre(lower_order(cfg.points_per_axis_per_bin));
    struct Item {
        double lo, hi;
        int depth;
    };
    std::vector<Item> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const Complex fine = gl_on(f, it.lo, it.hi, hi_rule);
        const Complex coarse = gl_on(f, it.lo, it.hi, lo_rule);
        const double diff = std::abs(fine - coarse);
        const double budget = std::max(cfg.abs_tol * (it.hi - it.lo) / total_length,
                                       cfg.rel_tol * std::abs(fine));
        if (diff <= budget || !std::isfinite(diff)) {
            require(std::isfinite(diff), ErrorCode::tolerance_not_met,
                    "integrand is not finite on the integration segment");
            out.value += fine;
            out.error += diff;
            continue;
        }
        const double mid = 0.5 * (it.lo + it.hi);
        if (it.depth >= cfg.subdivision_limit || !(it.lo < mid && mid < it.hi)) {
            std::ostringstream os;
            os.precision(17);
            os << "quadrature error estimate " << diff << " exceeds tolerance " << budget
               << " on [" << it.lo << ", " << it.hi << ") after " << it.depth
               << " subdivisions";
            throw Error(ErrorCode::tolerance_not_met, os.str());
        }
        // Push the right half first so the left half is summed first.
        stack.push_back({mid, it.hi, it.depth + 1});
        stack.push_back({it.lo, mid, it.depth + 1});
    }
}

// Integral over [a, a + eps] (toward = +1) or [b - eps, b] (toward = -1) of a
// function behaving like |x - s|^gamma, from one evaluation at distance eps.
void power_remainder(const Function1D& f, double s, double eps, int direction, double gamma,
                     Estimate& out) {
    const Complex at_eps = f(s + direction * eps);
    const Complex at_half = f(s + direction * 0.5 * eps);
    const Complex r = at_eps * (eps / (1.0 + gamma));
    // Deviation from a pure power law between eps/2 and eps.
    const Complex r_half = at_half * std::pow(2.0, 1.0 + gamma) * (0.5 * eps / (1.0 + gamma));
    out.value += r;
    out.error += std::abs(r - r_half);
}

// [lo, hi) with optional power singularities at either end.
void integrate_graded(const Function1D& f, double lo, double hi, std::optional<double> gamma_lo,
                      std::optional<double> gamma_hi, double total_length,
                      const QuadratureConfig& cfg, Estimate& out) {
    if (gamma_lo && gamma_hi) {
        const double mid = 0.5 * (lo + hi);
        integrate_graded(f, lo, mid, gamma_lo, std::nullopt, total_length, cfg, out);
        integrate_graded(f, mid, hi, std::nullopt, gamma_hi, total_length, cfg, out);
        return;
    }
    if (!gamma_lo && !gamma_hi) {
        adaptive(f, lo, hi, total_length, cfg, out);
        return;
    }
    const double len = hi - lo;
    const double floor = kGradingFloor * len;
    const double gamma = gamma_lo ? *gamma_lo : *gamma_hi;
    require(gamma > -1.0, ErrorCode::invalid_parameter,
            "singularity exponent must exceed -1 for integrability");
    double r = len;
    std::vector<Segment> segs;
    while (r * kGrading > floor) {
        const double inner = r * kGrading;
        segs.push_back(gamma_lo ? Segment{lo + inner, lo + r} : Segment{hi - r, hi - inner});
        r = inner;
    }
    if (gamma_lo) {
        power_remainder(f, lo, r, +1, gamma, out);
    }
    // Accumulate in ascending x.
    if (gamma_lo) {
        std::reverse(segs.begin(), segs.end());
    }
    for (const Segment& s : segs) {
        adaptive(f, s.lo, s.hi, total_length, cfg, out);
    }
    if (gamma_hi) {
        power_remainder(f, hi, r, -1, gamma, out);
    }
}

Estimate integrate_finite(const Function1D& f, double a, double b, const QuadratureConfig& cfg,
                          std::span<const Singularity> singularities) {
    Estimate out;
    out.exact = false;
    std::vector<double> cuts{a};
    for (const Singularity& s : singularities) {
        if (a < s.at && s.at < b) {
            cuts.push_back(s.at);
        }
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto exponent_at = [&](double x) -> std::optional<double> {
        std::optional<double> g;
        for (const Singularity& s : singularities) {
            if (s.at == x && s.exponent < 0.0) {
                g = g ? std::min(*g, s.exponent) : s.exponent;
            }
        }
        return g;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        integrate_graded(f, cuts[i], cuts[i + 1], exponent_at(cuts[i]), exponent_at(cuts[i + 1]),
                         b - a, cfg, out);
    }
    return out;
}

// Per-axis composite rule for tensor quadrature: 2^level equal cells, with
// geometric grading and a power-law remainder node at declared singularities.
struct AxisRule {
    std::vector<double> x;
    std::vector<double> w;
};

AxisRule axis_rule(double lo, double hi, int level, const GaussLegendreRule& rule,
                   std::span<const Singularity> singularities, std::span<const double> breaks) {
    AxisRule out;
    const int cells = 1 << level;
    const double h = (hi - lo) / cells;
    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(cells) + 1 + breaks.size());
    for (int c = 0; c <= cells; ++c) {
        cuts.push_back(c == cells ? hi : lo + c * h);
    }
    for (double b : breaks) {
        if (lo < b && b < hi) {
            cuts.push_back(b);
        }
    }
    for (const Singularity& s : singularities) {
        if (lo < s.at && s.at < hi) {
            cuts.push_back(s.at);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto add_gl = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            out.x.push_back(mid + half * rule.nodes[i]);
            out.w.push_back(rule.weights[i] * half);
        }
    };
    auto singular_exponent = [&](double p) -> std::optional<double> {
        std::optional<double> g;
        for (const Singularity& s : singularities) {
            if (std::abs(s.at - p) <= 1e-14 * std::max(1.0, std::abs(p)) && s.exponent < 0.0) {
                g = g ? std::min(*g, s.exponent) : s.exponent;
            }
        }
        return g;
    };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c];
        const double b = cuts[c + 1];
        const auto ga = singular_exponent(a);
        const auto gb = singular_exponent(b);
        if (!ga && !gb) {
            add_gl(a, b);
            continue;
        }
        const double mid = 0.5 * (a + b);
        auto graded = [&](double s, double far, int dir, double gamma) {
            require(gamma > -1.0, ErrorCode::invalid_parameter,
                    "singularity exponent must exceed -1 for integrability");
            const double len = std::abs(far - s);
            double r = len;
            while (r * kGrading > kGradingFloor * len) {
                const double inner = r * kGrading;
                add_gl(dir > 0 ? s + inner : s - r, dir > 0 ? s + r : s - inner);
                r = inner;
            }
            out.x.push_back(s + dir * r);
            out.w.push_back(r / (1.0 + gamma));
        };
        if (ga && gb) {
            graded(a, mid, +1, *ga);
            graded(b, mid, -1, *gb);
        } else if (ga) {
            graded(a, b, +1, *ga);
        } else {
            graded(b, a, -1, *gb);
        }
    }
    return out;
}

std::vector<std::vector<double>> merged_breaks(const std::vector<std::vector<double>>& a,
                                               const std::vector<std::vector<double>>& b,
                                               std::size_t dim) {
    std::vector<std::vector<double>> out(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (const auto* src : {&a, &b}) {
            if (src->size() == dim) {
                out[k].insert(out[k].end(), (*src)[k].begin(), (*src)[k].end());
            }
        }
        std::sort(out[k].begin(), out[k].end());
        out[k].erase(std::unique(out[k].begin(), out[k].end()), out[k].end());
    }
    return out;
}

Complex tensor_sum(const Field& f, const std::vector<AxisRule>& axes) {
    const std::size_t d = axes.size();
    const std::size_t outer_dims = d - 1;
    std::vector<std::size_t> idx(outer_dims, 0);
    std::vector<double> x(d);
    Complex total(0.0, 0.0);
    // Row sums along the last axis keep the accumulation order fixed.
    for (;;) {
        double w_outer = 1.0;
        for (std::size_t k = 0; k < outer_dims; ++k) {
            x[k] = axes[k].x[idx[k]];
            w_outer *= axes[k].w[idx[k]];
        }
        Complex row(0.0, 0.0);
        const AxisRule& last = axes[d - 1];
        for (std::size_t i = 0; i < last.x.size(); ++i) {
            x[d - 1] = last.x[i];
            row += last.w[i] * f.value(x);
        }
        total += w_outer * row;
        std::size_t k = outer_dims;
        while (k > 0 && ++idx[k - 1] == axes[k - 1].x.size()) {
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) {
            return total;
        }
    }
}

}  // namespace

void QuadratureConfig::validate() const {
    require(points_per_axis_per_bin >= 2, ErrorCode::invalid_parameter,
            "points_per_axis_per_bin must be >= 2");
    require(points_per_axis_per_bin <= 256, ErrorCode::invalid_parameter,
            "points_per_axis_per_bin must be <= 256");
    require(abs_tol > 0.0 && std::isfinite(abs_tol), ErrorCode::invalid_parameter,
            "abs_tol must be positive");
    require(rel_tol > 0.0 && std::isfinite(rel_tol), ErrorCode::invalid_parameter,
            "rel_tol must be positive");
    require(subdivision_limit >= 0 && subdivision_limit <= 60, ErrorCode::invalid_parameter,
            "subdivision_limit must lie in [0, 60]");
}

const GaussLegendreRule& gauss_legendre(int order) {
    require(order >= 1, ErrorCode::invalid_parameter, "Gauss-Legendre order must be >= 1");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[order];
    if (!slot) {
        slot = std::make_unique<GaussLegendreRule>(build_rule(order));
    }
    return *slot;
}

Estimate integrate_1d(const Function1D& f, double a, double b, const QuadratureConfig& cfg,
                      std::span<const Singularity> singularities) {
    if (!(a < b)) {
        return Estimate{};
    }
    if (std::isfinite(a) && std::isfinite(b)) {
        return integrate_finite(f, a, b, cfg, singularities);
    }
    if (!std::isfinite(a) && !std::isfinite(b)) {
        Estimate left = integrate_1d(f, a, 0.0, cfg, singularities);
        const Estimate right = integrate_1d(f, 0.0, b, cfg, singularities);
        left.value += right.value;
        left.error += right.error;
        return left;
    }
    // Half-line: x = base + dir * t / (1 - t), t in [0, 1).
    const double base = std::isfinite(a) ? a : b;
    const double dir = std::isfinite(a) ? 1.0 : -1.0;
    Function1D g = [&](double t) -> Complex {
        const double u = 1.0 - t;
        if (u <= 0.0) {
            return {0.0, 0.0};
        }
        const Complex v = f(base + dir * t / u);
        return v == Complex(0.0, 0.0) ? v : v / (u * u);
    };
    return integrate_finite(g, 0.0, 1.0, cfg, {});
}

Estimate integrate_factor(const Factor& f, double a, double b, const QuadratureConfig& cfg) {
    Estimate out;
    for (const Piece& p : f.pieces()) {
        const double lo = std::max(p.lo, a);
        const double hi = std::min(p.hi, b);
        if (!(lo < hi)) {
            continue;
        }
        std::vector<Atom> numeric;
        for (const Atom& atom : p.atoms) {
            if (auto v = atom.integral(lo, hi)) {
                out.value += *v;
            } else {
                numeric.push_back(atom);
            }
        }
        if (numeric.empty()) {
            continue;
        }
        std::vector<Singularity> sing;
        double worst = 0.0;
        for (const Atom& atom : numeric) {
            worst = std::min(worst, atom.power);
        }
        if (worst < 0.0 && lo <= 0.0 && 0.0 <= hi) {
            sing.push_back(Singularity{0.0, worst});
        }
        Function1D g = [&numeric](double x) {
            Complex v(0.0, 0.0);
            for (const Atom& atom : numeric) {
                v += atom.value(x);
            }
            return v;
        };
        const Estimate e = integrate_1d(g, lo, hi, cfg, sing);
        out.value += e.value;
        out.error += e.error;
        out.exact = false;
    }
    return out;
}

AxisProfile integrate_factor_cells(const Factor& f, std::span<const double> breakpoints,
                                   const QuadratureConfig& cfg) {
    AxisProfile out;
    const std::size_t cells = breakpoints.size() < 2 ? 0 : breakpoints.size() - 1;
    out.re.resize(cells);
    out.im.resize(cells);
    out.err.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const Estimate e = integrate_factor(f, breakpoints[i], breakpoints[i + 1], cfg);
        out.re[i] = e.value.real();
        out.im[i] = e.value.imag();
        out.err[i] = e.error;
        out.exact = out.exact && e.exact;
    }
    return out;
}

Estimate numeric_box_integral(const Field& f, const Bin& box, const QuadratureConfig& cfg) {
    require(f.dim == box.dim(), ErrorCode::domain_mismatch, "field and box differ in dimension");
    const std::size_t d = static_cast<std::size_t>(f.dim);
    const GaussLegendreRule& hi_rule = gauss_legendre(cfg.points_per_axis_per_bin);
    const GaussLegendreRule& lo_rule = gauss_legendre(lower_order(cfg.points_per_axis_per_bin));
    const std::vector<Singularity> none;
    const std::vector<double> no_breaks;
    double last_diff = INFINITY;
    for (int level = 0; level <= cfg.subdivision_limit; ++level) {
        std::vector<AxisRule> fine;
        std::vector<AxisRule> coarse;
        double evaluations = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            const auto& sing = f.singularities.size() == d ? f.singularities[k] : none;
            const auto& cut = f.breaks.size() == d ? f.breaks[k] : no_breaks;
            const Interval& e = box.edge(static_cast<int>(k));
            fine.push_back(axis_rule(e.lo(), e.hi(), level, hi_rule, sing, cut));
            coarse.push_back(axis_rule(e.lo(), e.hi(), level, lo_rule, sing, cut));
            evaluations *= static_cast<double>(fine.back().x.size());
        }
        if (evaluations > kTensorBudget) {
            break;
        }
        const Complex vf = tensor_sum(f, fine);
        const Complex vc = tensor_sum(f, coarse);
        last_diff = std::abs(vf - vc);
        require(std::isfinite(last_diff), ErrorCode::tolerance_not_met,
                "integrand is not finite on the box");
        if (last_diff <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(vf))) {
            return Estimate{vf, last_diff, false};
        }
    }
    std::ostringstream os;
    os.precision(17);
    os << "tensor quadrature error estimate " << last_diff
       << " exceeds tolerance after refinement";
    throw Error(ErrorCode::tolerance_not_met, os.str());
}

Estimate bin_inner_product(const WaveFunction& phi, const WaveFunction& psi, const Bin& bin,
                           const QuadratureConfig& cfg) {
    require(phi.dim() == psi.dim() && phi.domain() == psi.domain(), ErrorCode::domain_mismatch,
            "states " + phi.descriptor() + " and " + psi.descriptor() +
                " live on different domains");
    require(bin.dim() == psi.dim(), ErrorCode::domain_mismatch,
            "bin and states differ in dimension");
    std::vector<std::pair<double, double>> box;
    box.reserve(bin.edges().size());
    for (const Interval& e : bin.edges()) {
        box.emplace_back(e.lo(), e.hi());
    }
    return *separable_inner_product(phi.expansion(), psi.expansion(), box, cfg, false);
}

Estimate numeric_bin_inner_product(const WaveFunction& phi, const WaveFunction& psi,
                                   const Bin& bin, const QuadratureConfig& cfg) {
    require(phi.dim() == psi.dim() && bin.dim() == psi.dim(), ErrorCode::domain_mismatch,
            "bin and states differ in dimension");
    Field integrand;
    integrand.dim = psi.dim();
    integrand.value = [&](std::span<const double> x) {
        return std::conj(phi.value(x)) * psi.value(x);
    };
    const auto sp = phi.expansion().singularities();
    const auto ss = psi.expansion().singularities();
    integrand.singularities.resize(static_cast<std::size_t>(psi.dim()));
    for (std::size_t k = 0; k < integrand.singularities.size(); ++k) {
        // Exponents add where both states are singular at the same point.
        auto& out = integrand.singularities[k];
        out = sp[k];
        for (const Singularity& s : ss[k]) {
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const Singularity& t) { return t.at == s.at; });
            if (it == out.end()) {
                out.push_back(s);
            } else {
                it->exponent += s.exponent;
            }
        }
    }
    integrand.breaks = merged_breaks(phi.expansion().breaks(), psi.expansion().breaks(),
                                     static_cast<std::size_t>(psi.dim()));
    return numeric_box_integral(integrand, bin, cfg);
}

MassEstimate bin_mass(const WaveFunction& psi, const Bin& bin, const QuadratureConfig& cfg) {
    const Estimate e = bin_inner_product(psi, psi, bin, cfg);
    return MassEstimate{e.value.real(), e.error};
}

double l2_distance(const Field& f, const Field& g, std::span<const Bin> region,
                   const QuadratureConfig& cfg) {
    require(f.dim == g.dim, ErrorCode::domain_mismatch, "fields differ in dimension");
    Field diff2;
    diff2.dim = f.dim;
    diff2.value = [&](std::span<const double> x) {
        return Complex(std::norm(f.value(x) - g.value(x)), 0.0);
    };
    diff2.singularities.resize(static_cast<std::size_t>(f.dim));
    for (std::size_t k = 0; k < diff2.singularities.size(); ++k) {
        auto& out = diff2.singularities[k];
        for (const Field* h : {&f, &g}) {
            if (h->singularities.size() != diff2.singularities.size()) {
                continue;
            }
            for (const Singularity& s : h->singularities[k]) {
                auto it = std::find_if(out.begin(), out.end(),
                                       [&](const Singularity& t) { return t.at == s.at; });
                if (it == out.end()) {
                    out.push_back(Singularity{s.at, 2.0 * s.exponent});
                } else {
                    it->exponent = std::min(it->exponent, 2.0 * s.exponent);
                }
            }
        }
    }
    diff2.breaks = merged_breaks(f.breaks, g.breaks, static_cast<std::size_t>(f.dim));
    double total = 0.0;
    for (const Bin& b : region) {
        total += numeric_box_integral(diff2, b, cfg).value.real();
    }
    return std::sqrt(std::max(total, 0.0));
}

double l2_distance(const Field& f, const Field& g, const GridLevel& level,
                   const QuadratureConfig& cfg) {
    std::vector<Bin> bins;
    bins.reserve(level.bin_count());
    for (std::size_t j = 0; j < level.bin_count(); ++j) {
        bins.push_back(level.bin(j));
    }
    return l2_distance(f, g, bins, cfg);
}

Field zero_field(int dim) {
    Field f;
    f.dim = dim;
    f.value = [](std::span<const double>) { return Complex(0.0, 0.0); };
    return f;
}

}  // namespace szeno
