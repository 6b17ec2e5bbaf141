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

// Rectangular partitions of the unit cube and of finite unions of translated
// unit cubes. All intervals are half-open [lo, hi).

#ifndef SZENO_GRID_HPP
#define SZENO_GRID_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace szeno {

class Interval {
public:
    /// Throws invalid_parameter unless lo < hi and both are finite.
    Interval(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double length() const noexcept { return hi_ - lo_; }
    bool contains(double x) const noexcept { return lo_ <= x && x < hi_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
};

/// A product of one interval per axis. Also used for domain boxes and cubes.
class Bin {
public:
    explicit Bin(std::vector<Interval> edges);

    /// The unit cube [0,1)^d translated by `origin`.
    static Bin unit_cube(std::span<const double> origin);
    static Bin unit_cube(int d);

    int dim() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Interval>& edges() const noexcept { return edges_; }
    const Interval& edge(int axis) const { return edges_.at(static_cast<std::size_t>(axis)); }
    double volume() const noexcept;
    bool contains(std::span<const double> x) const noexcept;
    bool overlaps(const Bin& other) const noexcept;
    bool inside(const Bin& outer, double tol = 0.0) const noexcept;

    friend bool operator==(const Bin&, const Bin&) = default;

private:
    std::vector<Interval> edges_;
};

enum class DomainKind { unit_cube, euclidean };

/// A tensor-product grid over one box: per-axis strictly increasing
/// breakpoints. Local bin indices are row-major with the last axis fastest.
class ProductBlock {
public:
    explicit ProductBlock(std::vector<std::vector<double>> breakpoints);

    int dim() const noexcept { return static_cast<int>(breakpoints_.size()); }
    const std::vector<double>& breakpoints(int axis) const {
        return breakpoints_.at(static_cast<std::size_t>(axis));
    }
    std::size_t cells(int axis) const { return breakpoints(axis).size() - 1; }
    std::size_t bin_count() const noexcept { return bin_count_; }
    Bin extent() const;
    Bin bin(std::size_t local) const;
    /// Multi-index of a local bin index.
    std::vector<std::size_t> unravel(std::size_t local) const;
    /// Local index of the bin containing x, or nullopt when x is outside.
    std::optional<std::size_t> locate(std::span<const double> x) const noexcept;
    double min_edge(int axis) const;
    double max_edge(int axis) const;

private:
    std::vector<std::vector<double>> breakpoints_;
    std::size_t bin_count_ = 0;
};

class GridLevel {
public:
    GridLevel(int n, double ratio_bound, DomainKind domain_kind, std::vector<Bin> domain_boxes,
              std::vector<ProductBlock> blocks);

    int n() const noexcept { return n_; }
    int dim() const noexcept { return dim_; }
    double ratio_bound() const noexcept { return ratio_bound_; }
    DomainKind domain_kind() const noexcept { return domain_kind_; }
    const std::vector<Bin>& domain_boxes() const noexcept { return domain_boxes_; }
    double domain_volume() const noexcept;

    const std::vector<ProductBlock>& blocks() const noexcept { return blocks_; }
    /// Global bin index range [first, last) of block `b`.
    std::pair<std::size_t, std::size_t> block_range(std::size_t b) const;

    std::size_t bin_count() const noexcept { return bin_count_; }
    Bin bin(std::size_t j) const;
    double bin_volume(std::size_t j) const;

    /// Unique j with x in bin j. Throws out_of_domain otherwise.
    std::size_t locate_bin(std::span<const double> x) const;

    double min_bin_volume() const;
    double max_bin_volume() const;

private:
    int n_;
    int dim_;
    double ratio_bound_;
    DomainKind domain_kind_;
    std::vector<Bin> domain_boxes_;
    std::vector<ProductBlock> blocks_;
    std::vector<std::size_t> offsets_;
    std::size_t bin_count_ = 0;
};

struct ValidationReport {
    bool disjoint = true;
    bool covers_domain = true;
    bool edge_lengths_ok = true;
    bool volume_bound_ok = true;
    bool bin_count_ok = true;
    std::vector<std::string> messages;

    bool ok() const noexcept {
        return disjoint && covers_domain && edge_lengths_ok && volume_bound_ok && bin_count_ok;
    }
};

/// n^d bins with edges [(j-1)/n, j/n). The ratio bound is reported as 2.
GridLevel uniform_grid(int n, int d);

/// Randomized per-axis breakpoints with every edge length in [1/(Cn), 1/n].
/// Without `cells_per_axis` the cell count is the integer in [n, Cn] nearest
/// to 2Cn/(1+C). Throws infeasible_parameters when the requested cell count
/// lies outside [n, Cn].
GridLevel jittered_grid(int n, int d, double ratio_bound, std::uint64_t seed,
                        std::optional<int> cells_per_axis = std::nullopt);

/// Explicit bins over a declared box. No checks beyond dimension agreement;
/// use validate_grid.
GridLevel custom_grid(int n, double ratio_bound, std::vector<Bin> bins, Bin domain);

ValidationReport validate_grid(const GridLevel& level);

enum class SchemeKind { uniform, jittered, custom, rd_translated_cubes };

std::string scheme_kind_name(SchemeKind kind);

/// A family of grid levels indexed by n.
struct GridScheme {
    SchemeKind kind = SchemeKind::uniform;
    int dim = 1;
    double ratio_bound = 2.0;
    std::uint64_t seed = 0;
    std::optional<int> cells_per_axis;
    // Per-cube sub-scheme for rd_translated_cubes: uniform or jittered.
    SchemeKind cube_scheme = SchemeKind::uniform;
    // Cube origins for rd_translated_cubes.
    std::vector<std::vector<double>> cubes;
    // Explicit levels for custom schemes.
    std::map<int, std::vector<Bin>> custom_levels;
    std::optional<Bin> custom_domain;

    static GridScheme uniform(int d);
    static GridScheme jittered(int d, double ratio_bound, std::uint64_t seed,
                               std::optional<int> cells_per_axis = std::nullopt);
    static GridScheme rd(int d, SchemeKind cube_scheme, double ratio_bound = 2.0,
                         std::uint64_t seed = 0,
                         std::vector<std::vector<double>> cubes = {});

    /// Throws invalid_parameter for custom schemes without a level for n and
    /// for rd schemes without cubes.
    GridLevel level(int n) const;
    std::string describe() const;
};

/// Concatenates per-cube grids of `scheme.cube_scheme` translated onto each
/// cube. Block b of the result is cube b, so block_range(b) is J_b. Throws
/// overlapping_cubes when two cubes intersect.
GridLevel rd_grid(const GridScheme& scheme, int n,
                  std::span<const std::vector<double>> cube_origins);

/// Origins of the (2R)^d unit cubes tiling [-R, R)^d, in lexicographic order.
std::vector<std::vector<double>> centered_cubes(int d, int radius);

}  // namespace szeno

#endif  // SZENO_GRID_HPP
