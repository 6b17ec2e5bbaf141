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

#include "szeno/factor.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

namespace szeno {

namespace {

// (e^z - 1) / z without cancellation, using e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2).
Complex exp_ratio(Complex z) noexcept {
    if (z == Complex(0.0, 0.0)) {
        return {1.0, 0.0};
    }
    const double x = z.real();
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    const Complex num(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
    return num / z;
}

// erf(ub) - erf(ua) for ua <= ub, using erfc in the tails.
double erf_difference(double ua, double ub) noexcept {
    if (ua >= 0.0) {
        return std::erfc(ua) - std::erfc(ub);
    }
    if (ub <= 0.0) {
        return std::erfc(-ub) - std::erfc(-ua);
    }
    return std::erf(ub) - std::erf(ua);
}

}  // namespace

// ---------------------------------------------------------------- Atom

Complex Atom::value(double x) const noexcept {
    Complex v = coef;
    if (power != 0.0) {
        if (x <= 0.0) {
            // Measure-zero singular point: report a large finite cap.
            v *= power < 0.0 ? std::pow(DBL_MIN, power) : 0.0;
        } else {
            v *= std::pow(x, power);
        }
    }
    if (rate != Complex(0.0, 0.0)) {
        v *= std::exp(rate * x);
    }
    if (width > 0.0) {
        const double u = x - center;
        v *= std::exp(-width * u * u);
    }
    return v;
}

Atom Atom::conj() const noexcept {
    Atom a = *this;
    a.coef = std::conj(coef);
    a.rate = std::conj(rate);
    return a;
}

Atom operator*(const Atom& a, const Atom& b) noexcept {
    Atom out;
    out.coef = a.coef * b.coef;
    out.power = a.power + b.power;
    out.rate = a.rate + b.rate;
    if (a.width > 0.0 && b.width > 0.0) {
        out.width = a.width + b.width;
        out.center = (a.width * a.center + b.width * b.center) / out.width;
        const double gap = a.center - b.center;
        out.coef *= std::exp(-a.width * b.width / out.width * gap * gap);
    } else if (a.width > 0.0) {
        out.width = a.width;
        out.center = a.center;
    } else if (b.width > 0.0) {
        out.width = b.width;
        out.center = b.center;
    }
    return out;
}

std::optional<Complex> Atom::integral(double a, double b) const noexcept {
    if (!(a < b)) {
        return Complex(0.0, 0.0);
    }
    const bool has_power = power != 0.0;
    const bool has_rate = rate != Complex(0.0, 0.0);
    const bool has_gauss = width > 0.0;

    if (!has_power && !has_gauss) {
        if (!std::isfinite(a) || !std::isfinite(b)) {
            return std::nullopt;
        }
        const double h = b - a;
        return coef * std::exp(rate * a) * h * exp_ratio(rate * h);
    }
    if (has_power && !has_rate && !has_gauss) {
        if (a < 0.0 || !std::isfinite(b)) {
            return std::nullopt;
        }
        const double q = power + 1.0;
        if (a == 0.0) {
            if (q <= 0.0) {
                return std::nullopt;
            }
            return coef * (std::pow(b, q) / q);
        }
        const double t = std::log1p((b - a) / a);
        if (q == 0.0) {
            return coef * t;
        }
        return coef * (std::pow(a, q) * std::expm1(q * t) / q);
    }
    if (has_gauss && !has_power && rate.imag() == 0.0) {
        const double r = rate.real();
        const double shifted = center + r / (2.0 * width);
        const double scale = std::exp(r * center + r * r / (4.0 * width));
        const double root = std::sqrt(width);
        const double diff = erf_difference(root * (a - shifted), root * (b - shifted));
        return coef * (scale * 0.5 * std::sqrt(std::numbers::pi) / root * diff);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- Factor

Factor::Factor(std::vector<Piece> pieces, double linf_bound)
    : pieces_(std::move(pieces)), linf_(linf_bound) {
    std::erase_if(pieces_, [](const Piece& p) { return !(p.lo < p.hi) || p.atoms.empty(); });
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
}

Factor Factor::single(double lo, double hi, Atom atom, double linf_bound) {
    return Factor({Piece{lo, hi, {atom}}}, linf_bound);
}

bool Factor::bounded() const noexcept { return std::isfinite(linf_); }

Complex Factor::value(double x) const noexcept {
    for (const Piece& p : pieces_) {
        if (p.lo <= x && x < p.hi) {
            Complex v(0.0, 0.0);
            for (const Atom& a : p.atoms) {
                v += a.value(x);
            }
            return v;
        }
    }
    return {0.0, 0.0};
}

Factor Factor::conj() const {
    std::vector<Piece> out = pieces_;
    for (Piece& p : out) {
        for (Atom& a : p.atoms) {
            a = a.conj();
        }
    }
    return Factor(std::move(out), linf_);
}

Factor Factor::scaled(Complex c) const {
    std::vector<Piece> out = pieces_;
    for (Piece& p : out) {
        for (Atom& a : p.atoms) {
            a.coef *= c;
        }
    }
    return Factor(std::move(out), std::abs(c) * linf_);
}

Factor Factor::restricted(double lo, double hi) const {
    std::vector<Piece> out;
    for (const Piece& p : pieces_) {
        const double a = std::max(p.lo, lo);
        const double b = std::min(p.hi, hi);
        if (a < b) {
            out.push_back(Piece{a, b, p.atoms});
        }
    }
    return Factor(std::move(out), linf_);
}

std::pair<double, double> Factor::support() const noexcept {
    if (pieces_.empty()) {
        return {0.0, 0.0};
    }
    double hi = pieces_.front().hi;
    for (const Piece& p : pieces_) {
        hi = std::max(hi, p.hi);
    }
    return {pieces_.front().lo, hi};
}

std::vector<Singularity> Factor::singularities() const {
    std::vector<Singularity> out;
    for (const Piece& p : pieces_) {
        if (!(p.lo <= 0.0 && 0.0 <= p.hi)) {
            continue;
        }
        double worst = 0.0;
        for (const Atom& a : p.atoms) {
            if (a.power < worst) {
                worst = a.power;
            }
        }
        if (worst < 0.0) {
            const bool seen = std::any_of(out.begin(), out.end(),
                                          [](const Singularity& s) { return s.at == 0.0; });
            if (!seen) {
                out.push_back(Singularity{0.0, worst});
            }
        }
    }
    return out;
}

std::optional<Complex> Factor::exact_integral(double a, double b) const {
    Complex total(0.0, 0.0);
    for (const Piece& p : pieces_) {
        const double lo = std::max(p.lo, a);
        const double hi = std::min(p.hi, b);
        if (!(lo < hi)) {
            continue;
        }
        for (const Atom& atom : p.atoms) {
            auto v = atom.integral(lo, hi);
            if (!v) {
                return std::nullopt;
            }
            total += *v;
        }
    }
    return total;
}

Factor operator*(const Factor& f, const Factor& g) {
    std::vector<Piece> out;
    std::size_t j0 = 0;
    for (const Piece& p : f.pieces_) {
        while (j0 < g.pieces_.size() && g.pieces_[j0].hi <= p.lo) {
            ++j0;
        }
        for (std::size_t j = j0; j < g.pieces_.size() && g.pieces_[j].lo < p.hi; ++j) {
            const Piece& q = g.pieces_[j];
            const double lo = std::max(p.lo, q.lo);
            const double hi = std::min(p.hi, q.hi);
            if (!(lo < hi)) {
                continue;
            }
            Piece r{lo, hi, {}};
            r.atoms.reserve(p.atoms.size() * q.atoms.size());
            for (const Atom& a : p.atoms) {
                for (const Atom& b : q.atoms) {
                    r.atoms.push_back(a * b);
                }
            }
            out.push_back(std::move(r));
        }
    }
    const double bound = (f.linf_ == 0.0 || g.linf_ == 0.0) ? 0.0 : f.linf_ * g.linf_;
    return Factor(std::move(out), bound);
}

}  // namespace szeno
