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

// One-dimensional piecewise functions built from atoms
//
//     coef * x^power * exp(rate * x) * exp(-width * (x - center)^2)
//
// The atom family is closed under pointwise products and conjugation, which
// makes overlaps of catalog states representable exactly. An atom has an
// elementary antiderivative when at most one of its three shapes is active
// (a real rate may accompany a Gaussian).

#ifndef SZENO_FACTOR_HPP
#define SZENO_FACTOR_HPP

#include <complex>
#include <optional>
#include <vector>

namespace szeno {

using Complex = std::complex<double>;

struct Atom {
    Complex coef{1.0, 0.0};
    double power = 0.0;
    Complex rate{0.0, 0.0};
    double width = 0.0;
    double center = 0.0;

    Complex value(double x) const noexcept;
    Atom conj() const noexcept;
    /// Closed-form integral over [a, b) (a, b may be infinite), or nullopt
    /// when no elementary antiderivative applies.
    std::optional<Complex> integral(double a, double b) const noexcept;
    bool singular_at_zero() const noexcept { return power < 0.0; }
};

Atom operator*(const Atom& a, const Atom& b) noexcept;

/// A sum of atoms on the half-open support [lo, hi); either end may be infinite.
struct Piece {
    double lo;
    double hi;
    std::vector<Atom> atoms;
};

/// A point where the function behaves like |x - at|^exponent.
struct Singularity {
    double at;
    double exponent;
};

/// A piecewise function of one variable: zero outside its sorted, disjoint pieces.
class Factor {
public:
    Factor() = default;
    Factor(std::vector<Piece> pieces, double linf_bound);

    /// Single atom on [lo, hi).
    static Factor single(double lo, double hi, Atom atom, double linf_bound);

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    /// An upper bound on sup |f|; infinite for unbounded factors.
    double linf_bound() const noexcept { return linf_; }
    bool bounded() const noexcept;

    Complex value(double x) const noexcept;
    Factor conj() const;
    Factor scaled(Complex c) const;
    /// The restriction of f to [lo, hi).
    Factor restricted(double lo, double hi) const;
    /// Smallest interval containing every piece.
    std::pair<double, double> support() const noexcept;
    std::vector<Singularity> singularities() const;

    /// Closed-form integral over [a, b), or nullopt when some atom has none.
    std::optional<Complex> exact_integral(double a, double b) const;

    friend Factor operator*(const Factor& f, const Factor& g);

private:
    std::vector<Piece> pieces_;
    double linf_ = 0.0;
};

}  // namespace szeno

#endif  // SZENO_FACTOR_HPP
