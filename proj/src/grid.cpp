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

#include "szeno/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "szeno/error.hpp"
#include "szeno/rng.hpp"

namespace szeno {

namespace {

constexpr double kRelTol = 1e-12;

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) {
        throw Error(code, message);
    }
}

std::vector<double> uniform_axis(int n, double offset) {
    std::vector<double> b(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        b[static_cast<std::size_t>(j)] = offset + static_cast<double>(j) / n;
    }
    return b;
}

int default_cells(int n, double ratio_bound) {
    const double target = 2.0 * ratio_bound * n / (1.0 + ratio_bound);
    const int upper = static_cast<int>(std::floor(ratio_bound * n * (1.0 + kRelTol)));
    const int m = static_cast<int>(std::lround(target));
    return std::clamp(m, n, std::max(n, upper));
}

// Lengths L + u_i * s with L = 1/(Cn), s = 1 - m L and normalized uniform
// weights u_i, then water-filled so that no length exceeds 1/n.
std::vector<double> jittered_axis(int n, double ratio_bound, int cells, RandomStream& rng,
                                  double offset) {
    const double lower = 1.0 / (ratio_bound * n);
    const double upper = 1.0 / n;
    const double slack = std::max(0.0, 1.0 - cells * lower);
    std::vector<double> weight(static_cast<std::size_t>(cells));
    for (double& w : weight) {
        w = rng.uniform_open_closed();
    }
    const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    for (double& w : weight) {
        w /= total;
    }
    std::vector<double> len(weight.size());
    for (std::size_t i = 0; i < len.size(); ++i) {
        len[i] = lower + weight[i] * slack;
    }
    std::vector<bool> clipped(len.size(), false);
    for (std::size_t round = 0; round < len.size(); ++round) {
        double excess = 0.0;
        for (std::size_t i = 0; i < len.size(); ++i) {
            if (!clipped[i] && len[i] > upper) {
                excess += len[i] - upper;
                len[i] = upper;
                clipped[i] = true;
            }
        }
        if (excess <= 0.0) {
            break;
        }
        double free_weight = 0.0;
        for (std::size_t i = 0; i < len.size(); ++i) {
            if (!clipped[i]) {
                free_weight += weight[i];
            }
        }
        if (free_weight <= 0.0) {
            break;
        }
        for (std::size_t i = 0; i < len.size(); ++i) {
            if (!clipped[i]) {
                len[i] += excess * weight[i] / free_weight;
            }
        }
    }
    std::vector<double> b(len.size() + 1);
    b[0] = offset;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < len.size(); ++i) {
        acc += len[i];
        b[i + 1] = offset + acc;
    }
    b.back() = offset + 1.0;
    return b;
}

ProductBlock jittered_block(int n, int d, double ratio_bound, std::uint64_t seed, int cells,
                            std::span<const double> origin, std::uint64_t cube_key) {
    std::vector<std::vector<double>> axes;
    for (int k = 0; k < d; ++k) {
        RandomStream rng(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                static_cast<std::uint64_t>(cells), cube_key});
        axes.push_back(jittered_axis(n, ratio_bound, cells, rng,
                                     origin.empty() ? 0.0 : origin[static_cast<std::size_t>(k)]));
    }
    return ProductBlock(std::move(axes));
}

// Streams are keyed by the cube's position, so a cube keeps its grid when
// the cube list grows.
std::uint64_t cube_key(std::span<const double> origin) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (double a : origin) {
        h ^= std::bit_cast<std::uint64_t>(a + 0.0) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

int resolve_cells(int n, double ratio_bound, std::optional<int> cells_per_axis) {
    require(n >= 1, ErrorCode::invalid_parameter, "n must be >= 1");
    require(ratio_bound > 1.0 && std::isfinite(ratio_bound), ErrorCode::invalid_parameter,
            "ratio bound C must be finite and > 1");
    if (!cells_per_axis) {
        return default_cells(n, ratio_bound);
    }
    const int m = *cells_per_axis;
    // m cells with lengths in [1/(Cn), 1/n] can sum to 1 iff m/(Cn) <= 1 <= m/n.
    const bool feasible = m >= n && m <= ratio_bound * n * (1.0 + kRelTol);
    require(feasible, ErrorCode::infeasible_parameters,
            "no partition of [0,1) into " + std::to_string(m) + " intervals of length in [1/(" +
                fmt_double(ratio_bound) + "*" + std::to_string(n) + "), 1/" + std::to_string(n) +
                "] exists");
    return m;
}

}  // namespace

// ---------------------------------------------------------------- Interval

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    require(std::isfinite(lo) && std::isfinite(hi), ErrorCode::invalid_parameter,
            "interval endpoints must be finite");
    require(lo < hi, ErrorCode::invalid_parameter,
            "interval requires lo < hi, got [" + fmt_double(lo) + ", " + fmt_double(hi) + ")");
}

// ---------------------------------------------------------------- Bin

Bin::Bin(std::vector<Interval> edges) : edges_(std::move(edges)) {
    require(!edges_.empty(), ErrorCode::invalid_parameter, "a bin needs at least one axis");
}

Bin Bin::unit_cube(std::span<const double> origin) {
    std::vector<Interval> edges;
    edges.reserve(origin.size());
    for (double a : origin) {
        edges.emplace_back(a, a + 1.0);
    }
    return Bin(std::move(edges));
}

Bin Bin::unit_cube(int d) {
    require(d >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    return Bin(std::vector<Interval>(static_cast<std::size_t>(d), Interval(0.0, 1.0)));
}

double Bin::volume() const noexcept {
    double v = 1.0;
    for (const Interval& e : edges_) {
        v *= e.length();
    }
    return v;
}

bool Bin::contains(std::span<const double> x) const noexcept {
    if (x.size() != edges_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (!edges_[k].contains(x[k])) {
            return false;
        }
    }
    return true;
}

bool Bin::overlaps(const Bin& other) const noexcept {
    if (other.edges_.size() != edges_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const double lo = std::max(edges_[k].lo(), other.edges_[k].lo());
        const double hi = std::min(edges_[k].hi(), other.edges_[k].hi());
        const double scale = std::max(edges_[k].length(), other.edges_[k].length());
        if (hi - lo <= kRelTol * scale) {
            return false;
        }
    }
    return true;
}

bool Bin::inside(const Bin& outer, double tol) const noexcept {
    if (outer.edges_.size() != edges_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (edges_[k].lo() < outer.edges_[k].lo() - tol ||
            edges_[k].hi() > outer.edges_[k].hi() + tol) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- ProductBlock

ProductBlock::ProductBlock(std::vector<std::vector<double>> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
    require(!breakpoints_.empty(), ErrorCode::invalid_parameter, "a block needs an axis");
    bin_count_ = 1;
    for (const auto& axis : breakpoints_) {
        require(axis.size() >= 2, ErrorCode::invalid_parameter,
                "each axis needs at least two breakpoints");
        for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
            require(std::isfinite(axis[i]) && std::isfinite(axis[i + 1]) && axis[i] < axis[i + 1],
                    ErrorCode::invalid_parameter, "breakpoints must be finite and increasing");
        }
        bin_count_ *= axis.size() - 1;
    }
}

Bin ProductBlock::extent() const {
    std::vector<Interval> edges;
    for (const auto& axis : breakpoints_) {
        edges.emplace_back(axis.front(), axis.back());
    }
    return Bin(std::move(edges));
}

std::vector<std::size_t> ProductBlock::unravel(std::size_t local) const {
    std::vector<std::size_t> idx(breakpoints_.size());
    for (std::size_t k = breakpoints_.size(); k-- > 0;) {
        const std::size_t m = breakpoints_[k].size() - 1;
        idx[k] = local % m;
        local /= m;
    }
    return idx;
}

Bin ProductBlock::bin(std::size_t local) const {
    const auto idx = unravel(local);
    std::vector<Interval> edges;
    edges.reserve(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        edges.emplace_back(breakpoints_[k][idx[k]], breakpoints_[k][idx[k] + 1]);
    }
    return Bin(std::move(edges));
}

std::optional<std::size_t> ProductBlock::locate(std::span<const double> x) const noexcept {
    if (x.size() != breakpoints_.size()) {
        return std::nullopt;
    }
    std::size_t local = 0;
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        const auto& axis = breakpoints_[k];
        if (!(x[k] >= axis.front() && x[k] < axis.back())) {
            return std::nullopt;
        }
        // Boundary points belong to the bin on their right.
        const auto it = std::upper_bound(axis.begin(), axis.end(), x[k]);
        const auto j = static_cast<std::size_t>(it - axis.begin()) - 1;
        local = local * (axis.size() - 1) + j;
    }
    return local;
}

double ProductBlock::min_edge(int axis) const {
    const auto& b = breakpoints(axis);
    double best = b[1] - b[0];
    for (std::size_t i = 1; i + 1 < b.size(); ++i) {
        best = std::min(best, b[i + 1] - b[i]);
    }
    return best;
}

double ProductBlock::max_edge(int axis) const {
    const auto& b = breakpoints(axis);
    double best = b[1] - b[0];
    for (std::size_t i = 1; i + 1 < b.size(); ++i) {
        best = std::max(best, b[i + 1] - b[i]);
    }
    return best;
}

// ---------------------------------------------------------------- GridLevel

GridLevel::GridLevel(int n, double ratio_bound, DomainKind domain_kind,
                     std::vector<Bin> domain_boxes, std::vector<ProductBlock> blocks)
    : n_(n),
      dim_(0),
      ratio_bound_(ratio_bound),
      domain_kind_(domain_kind),
      domain_boxes_(std::move(domain_boxes)),
      blocks_(std::move(blocks)) {
    require(n_ >= 1, ErrorCode::invalid_parameter, "n must be >= 1");
    require(ratio_bound_ > 1.0, ErrorCode::invalid_parameter, "ratio bound C must be > 1");
    require(!blocks_.empty() && !domain_boxes_.empty(), ErrorCode::invalid_parameter,
            "a grid level needs bins and a domain");
    dim_ = blocks_.front().dim();
    for (const auto& b : blocks_) {
        require(b.dim() == dim_, ErrorCode::invalid_parameter, "blocks disagree on dimension");
    }
    for (const auto& box : domain_boxes_) {
        require(box.dim() == dim_, ErrorCode::invalid_parameter,
                "domain and bins disagree on dimension");
    }
    offsets_.reserve(blocks_.size() + 1);
    offsets_.push_back(0);
    for (const auto& b : blocks_) {
        bin_count_ += b.bin_count();
        offsets_.push_back(bin_count_);
    }
}

double GridLevel::domain_volume() const noexcept {
    double v = 0.0;
    for (const auto& box : domain_boxes_) {
        v += box.volume();
    }
    return v;
}

std::pair<std::size_t, std::size_t> GridLevel::block_range(std::size_t b) const {
    return {offsets_.at(b), offsets_.at(b + 1)};
}

Bin GridLevel::bin(std::size_t j) const {
    require(j < bin_count_, ErrorCode::invalid_parameter, "bin index out of range");
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), j);
    const auto b = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return blocks_[b].bin(j - offsets_[b]);
}

double GridLevel::bin_volume(std::size_t j) const { return bin(j).volume(); }

std::size_t GridLevel::locate_bin(std::span<const double> x) const {
    require(static_cast<int>(x.size()) == dim_, ErrorCode::out_of_domain,
            "point dimension does not match the grid");
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (auto local = blocks_[b].locate(x)) {
            return offsets_[b] + *local;
        }
    }
    std::ostringstream os;
    os << "point (";
    for (std::size_t k = 0; k < x.size(); ++k) {
        os << (k ? ", " : "") << x[k];
    }
    os << ") lies outside the grid's domain";
    throw Error(ErrorCode::out_of_domain, os.str());
}

double GridLevel::min_bin_volume() const {
    double best = INFINITY;
    for (const auto& b : blocks_) {
        double v = 1.0;
        for (int k = 0; k < dim_; ++k) {
            v *= b.min_edge(k);
        }
        best = std::min(best, v);
    }
    return best;
}

double GridLevel::max_bin_volume() const {
    double best = 0.0;
    for (const auto& b : blocks_) {
        double v = 1.0;
        for (int k = 0; k < dim_; ++k) {
            v *= b.max_edge(k);
        }
        best = std::max(best, v);
    }
    return best;
}

// ---------------------------------------------------------------- builders

GridLevel uniform_grid(int n, int d) {
    require(n >= 1, ErrorCode::invalid_parameter, "n must be >= 1");
    require(d >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    std::vector<std::vector<double>> axes(static_cast<std::size_t>(d), uniform_axis(n, 0.0));
    std::vector<ProductBlock> blocks;
    blocks.emplace_back(std::move(axes));
    return GridLevel(n, 2.0, DomainKind::unit_cube, {Bin::unit_cube(d)}, std::move(blocks));
}

GridLevel jittered_grid(int n, int d, double ratio_bound, std::uint64_t seed,
                        std::optional<int> cells_per_axis) {
    require(d >= 1, ErrorCode::invalid_parameter, "dimension must be >= 1");
    const int cells = resolve_cells(n, ratio_bound, cells_per_axis);
    std::vector<ProductBlock> blocks;
    blocks.push_back(jittered_block(n, d, ratio_bound, seed, cells, {}, 0));
    return GridLevel(n, ratio_bound, DomainKind::unit_cube, {Bin::unit_cube(d)},
                     std::move(blocks));
}

GridLevel custom_grid(int n, double ratio_bound, std::vector<Bin> bins, Bin domain) {
    std::vector<ProductBlock> blocks;
    blocks.reserve(bins.size());
    for (const Bin& bin : bins) {
        std::vector<std::vector<double>> axes;
        for (const Interval& e : bin.edges()) {
            axes.push_back({e.lo(), e.hi()});
        }
        blocks.emplace_back(std::move(axes));
    }
    return GridLevel(n, ratio_bound, DomainKind::unit_cube, {std::move(domain)},
                     std::move(blocks));
}

ValidationReport validate_grid(const GridLevel& level) {
    ValidationReport report;
    const int d = level.dim();
    const double n = level.n();
    const double lower = 1.0 / (level.ratio_bound() * n);
    const double upper = 1.0 / n;

    // Disjointness: sweep over blocks sorted by their lower corner on axis 0.
    const auto& blocks = level.blocks();
    std::vector<Bin> extents;
    extents.reserve(blocks.size());
    for (const auto& b : blocks) {
        extents.push_back(b.extent());
    }
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return extents[a].edge(0).lo() < extents[b].edge(0).lo();
    });
    for (std::size_t i = 0; i < order.size() && report.disjoint; ++i) {
        const Bin& a = extents[order[i]];
        for (std::size_t k = i + 1; k < order.size(); ++k) {
            const Bin& b = extents[order[k]];
            if (b.edge(0).lo() >= a.edge(0).hi() - kRelTol * a.edge(0).length()) {
                break;
            }
            if (a.overlaps(b)) {
                report.disjoint = false;
                report.messages.push_back("overlap detected between bins starting at " +
                                          fmt_double(a.edge(0).lo()) + " and " +
                                          fmt_double(b.edge(0).lo()) + " on axis 0");
                break;
            }
        }
    }

    // Coverage: disjoint pieces inside the domain whose volumes add up to it.
    double covered = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        covered += extents[b].volume();
        const bool housed = std::any_of(
            level.domain_boxes().begin(), level.domain_boxes().end(),
            [&](const Bin& box) { return extents[b].inside(box, kRelTol); });
        if (!housed) {
            report.covers_domain = false;
            report.messages.push_back("block " + std::to_string(b) +
                                      " is not contained in a single domain box");
        }
    }
    const double domain_volume = level.domain_volume();
    if (std::abs(covered - domain_volume) > 1e-12 * std::max(1.0, domain_volume)) {
        report.covers_domain = false;
        report.messages.push_back("bins cover volume " + fmt_double(covered) +
                                  " but the domain has volume " + fmt_double(domain_volume));
    }

    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (int k = 0; k < d; ++k) {
            const double lo = blocks[b].min_edge(k);
            const double hi = blocks[b].max_edge(k);
            if (hi > upper * (1.0 + kRelTol)) {
                report.edge_lengths_ok = false;
                report.messages.push_back("edge length " + fmt_double(hi) + " exceeds 1/n = " +
                                          fmt_double(upper) + " on axis " + std::to_string(k));
            }
            if (lo < lower * (1.0 - kRelTol)) {
                report.edge_lengths_ok = false;
                report.messages.push_back("edge length " + fmt_double(lo) +
                                          " is below 1/(Cn) = " + fmt_double(lower) +
                                          " on axis " + std::to_string(k));
            }
        }
    }

    const double max_volume = level.max_bin_volume();
    const double volume_cap = std::pow(n, -d);
    if (max_volume > volume_cap * (1.0 + 1e-11)) {
        report.volume_bound_ok = false;
        report.messages.push_back("bin volume " + fmt_double(max_volume) +
                                  " exceeds 1/n^d = " + fmt_double(volume_cap));
    }

    const double min_count = domain_volume * std::pow(n, d);
    if (static_cast<double>(level.bin_count()) < min_count * (1.0 - 1e-12)) {
        report.bin_count_ok = false;
        report.messages.push_back("bin count " + std::to_string(level.bin_count()) +
                                  " is below n^d times the domain volume");
    }
    return report;
}

// ---------------------------------------------------------------- schemes

std::string scheme_kind_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::uniform:
            return "uniform";
        case SchemeKind::jittered:
            return "jittered";
        case SchemeKind::custom:
            return "custom";
        case SchemeKind::rd_translated_cubes:
            return "rd_translated_cubes";
    }
    return "unknown";
}

GridScheme GridScheme::uniform(int d) {
    GridScheme s;
    s.kind = SchemeKind::uniform;
    s.dim = d;
    return s;
}

GridScheme GridScheme::jittered(int d, double ratio_bound, std::uint64_t seed,
                                std::optional<int> cells_per_axis) {
    GridScheme s;
    s.kind = SchemeKind::jittered;
    s.dim = d;
    s.ratio_bound = ratio_bound;
    s.seed = seed;
    s.cells_per_axis = cells_per_axis;
    return s;
}

GridScheme GridScheme::rd(int d, SchemeKind cube_scheme, double ratio_bound, std::uint64_t seed,
                          std::vector<std::vector<double>> cubes) {
    require(cube_scheme == SchemeKind::uniform || cube_scheme == SchemeKind::jittered,
            ErrorCode::invalid_parameter, "per-cube scheme must be uniform or jittered");
    GridScheme s;
    s.kind = SchemeKind::rd_translated_cubes;
    s.dim = d;
    s.cube_scheme = cube_scheme;
    s.ratio_bound = ratio_bound;
    s.seed = seed;
    s.cubes = std::move(cubes);
    return s;
}

GridLevel GridScheme::level(int n) const {
    switch (kind) {
        case SchemeKind::uniform:
            return uniform_grid(n, dim);
        case SchemeKind::jittered:
            return jittered_grid(n, dim, ratio_bound, seed, cells_per_axis);
        case SchemeKind::custom: {
            auto it = custom_levels.find(n);
            require(it != custom_levels.end() && custom_domain.has_value(),
                    ErrorCode::invalid_parameter,
                    "custom scheme has no level for n = " + std::to_string(n));
            return custom_grid(n, ratio_bound, it->second, *custom_domain);
        }
        case SchemeKind::rd_translated_cubes:
            require(!cubes.empty(), ErrorCode::invalid_parameter,
                    "rd scheme needs a non-empty cube list");
            return rd_grid(*this, n, cubes);
    }
    throw Error(ErrorCode::invalid_parameter, "unknown scheme kind");
}

std::string GridScheme::describe() const {
    std::ostringstream os;
    os << scheme_kind_name(kind) << "(d=" << dim;
    if (kind == SchemeKind::jittered ||
        (kind == SchemeKind::rd_translated_cubes && cube_scheme == SchemeKind::jittered)) {
        os << ", C=" << ratio_bound << ", seed=" << seed;
    }
    if (cells_per_axis) {
        os << ", cells_per_axis=" << *cells_per_axis;
    }
    if (kind == SchemeKind::rd_translated_cubes) {
        os << ", cube_scheme=" << scheme_kind_name(cube_scheme) << ", cubes=" << cubes.size();
    }
    os << ")";
    return os.str();
}

GridLevel rd_grid(const GridScheme& scheme, int n,
                  std::span<const std::vector<double>> cube_origins) {
    require(scheme.kind == SchemeKind::rd_translated_cubes, ErrorCode::invalid_parameter,
            "rd_grid requires an rd_translated_cubes scheme");
    require(!cube_origins.empty(), ErrorCode::invalid_parameter, "cube list is empty");
    const int d = scheme.dim;
    for (const auto& a : cube_origins) {
        require(static_cast<int>(a.size()) == d, ErrorCode::invalid_parameter,
                "cube origin dimension does not match the scheme");
    }
    std::vector<Bin> cubes;
    cubes.reserve(cube_origins.size());
    for (const auto& a : cube_origins) {
        cubes.push_back(Bin::unit_cube(a));
    }
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        for (std::size_t k = i + 1; k < cubes.size(); ++k) {
            require(!cubes[i].overlaps(cubes[k]), ErrorCode::overlapping_cubes,
                    "cubes " + std::to_string(i) + " and " + std::to_string(k) + " overlap");
        }
    }
    const int cells = scheme.cube_scheme == SchemeKind::jittered
                          ? resolve_cells(n, scheme.ratio_bound, scheme.cells_per_axis)
                          : n;
    std::vector<ProductBlock> blocks;
    blocks.reserve(cube_origins.size());
    for (std::size_t c = 0; c < cube_origins.size(); ++c) {
        const auto& a = cube_origins[c];
        if (scheme.cube_scheme == SchemeKind::jittered) {
            blocks.push_back(
                jittered_block(n, d, scheme.ratio_bound, scheme.seed, cells, a, cube_key(a)));
        } else {
            std::vector<std::vector<double>> axes;
            for (int k = 0; k < d; ++k) {
                axes.push_back(uniform_axis(n, a[static_cast<std::size_t>(k)]));
            }
            blocks.emplace_back(std::move(axes));
        }
    }
    const double ratio = scheme.cube_scheme == SchemeKind::jittered ? scheme.ratio_bound : 2.0;
    return GridLevel(n, ratio, DomainKind::euclidean, std::move(cubes), std::move(blocks));
}

std::vector<std::vector<double>> centered_cubes(int d, int radius) {
    require(d >= 1 && radius >= 1, ErrorCode::invalid_parameter,
            "centered cube lists need d >= 1 and radius >= 1");
    const auto side = static_cast<std::size_t>(2 * radius);
    std::size_t count = 1;
    for (int k = 0; k < d; ++k) {
        count *= side;
    }
    std::vector<std::vector<double>> out;
    out.reserve(count);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rest = c;
        std::vector<double> origin(static_cast<std::size_t>(d));
        for (std::size_t k = static_cast<std::size_t>(d); k-- > 0;) {
            origin[k] = static_cast<double>(rest % side) - radius;
            rest /= side;
        }
        out.push_back(std::move(origin));
    }
    return out;
}

}  // namespace szeno
