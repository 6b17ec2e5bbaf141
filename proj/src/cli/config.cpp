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

#include <cstdio>
#include <limits>
#include <map>
#include <utility>

#include "config_reader.hpp"
#include "szeno/cli.hpp"

namespace szeno::cli {

namespace {

using detail::json;
using detail::Reader;

[[noreturn]] void violation(const std::string& field, const std::string& message) {
    throw ConfigError(ErrorCode::schema_violation, field, message);
}

// Library parameter errors inside a config section become schema violations
// reported against that section.
template <class F>
auto guarded(const std::string& field, F&& make) -> decltype(make()) {
    try {
        return make();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        violation(field, e.what());
    }
}

DomainKind parse_domain(const std::string& s, const std::string& field) {
    if (s == "unit_cube") {
        return DomainKind::unit_cube;
    }
    if (s == "euclidean") {
        return DomainKind::euclidean;
    }
    violation(field, "domain must be \"unit_cube\" or \"euclidean\"");
}

Complex parse_coef(const json& v, const std::string& field) {
    if (v.is_number()) {
        return {Reader::number(v, field), 0.0};
    }
    if (v.is_array() && v.size() == 2) {
        return {Reader::number(v[0], field + "[0]"), Reader::number(v[1], field + "[1]")};
    }
    violation(field, "expected a number or [re, im]");
}

Bin parse_box(const json& lo_v, const json& hi_v, const std::string& field) {
    const auto lo = Reader::numbers(lo_v, field + ".lo");
    const auto hi = Reader::numbers(hi_v, field + ".hi");
    if (lo.size() != hi.size()) {
        violation(field, "lo and hi differ in length");
    }
    std::vector<Interval> edges;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        edges.push_back(guarded(field, [&] { return Interval(lo[k], hi[k]); }));
    }
    return Bin(std::move(edges));
}

// [[lo, hi], ...] per axis.
Bin parse_edges(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) {
        violation(field, "expected a non-empty array of [lo, hi] pairs");
    }
    std::vector<Interval> edges;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string f = field + "[" + std::to_string(k) + "]";
        const auto pair = Reader::numbers(v[k], f);
        if (pair.size() != 2) {
            violation(f, "expected [lo, hi]");
        }
        edges.push_back(guarded(f, [&] { return Interval(pair[0], pair[1]); }));
    }
    return Bin(std::move(edges));
}

WaveFunction parse_state(const json& j, const std::string& path, int default_dim,
                         DomainKind default_domain) {
    Reader r(j, path);
    const std::string kind = r.string("kind");
    const DomainKind domain = r.has("domain")
                                  ? parse_domain(r.string("domain"), r.field("domain"))
                                  : default_domain;
    auto dim = [&] { return r.int_in("dim", 1, 16, default_dim); };
    std::optional<WaveFunction> out;
    if (kind == "uniform") {
        const int d = dim();
        out = guarded(path, [&] { return catalog::uniform(d, domain); });
    } else if (kind == "sine_mode") {
        const auto k = r.ints("k");
        out = guarded(path, [&] { return catalog::sine_mode(k, domain); });
    } else if (kind == "complex_exponential") {
        const auto k = r.ints("k");
        out = guarded(path, [&] { return catalog::complex_exponential(k, domain); });
    } else if (kind == "indicator") {
        const Bin box = parse_box(r.need("lo"), r.need("hi"), path);
        out = guarded(path, [&] { return catalog::indicator(box, domain); });
    } else if (kind == "power_singular") {
        const double alpha = r.number("alpha");
        const int d = dim();
        out = guarded(path, [&] { return catalog::power_singular(alpha, d, domain); });
    } else if (kind == "gaussian") {
        const auto mu = r.numbers("mu");
        const auto sigma = r.numbers("sigma");
        out = guarded(path, [&] { return catalog::gaussian(mu, sigma, domain); });
    } else if (kind == "haar_like") {
        const int pieces = r.int_in("pieces", 1, 1 << 20);
        const auto seed = static_cast<std::uint64_t>(r.integer("seed", 0));
        const int d = dim();
        out = guarded(path, [&] { return catalog::haar_like(pieces, seed, d, domain); });
    } else if (kind == "combination") {
        const json& terms = r.need("terms");
        if (!terms.is_array() || terms.empty()) {
            violation(r.field("terms"), "expected a non-empty array");
        }
        std::vector<std::pair<Complex, WaveFunction>> parts;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string f = r.field("terms") + "[" + std::to_string(i) + "]";
            Reader t(terms[i], f);
            const Complex c = parse_coef(t.need("coef"), t.field("coef"));
            parts.emplace_back(c, parse_state(t.need("state"), t.field("state"), default_dim,
                                              domain));
            t.finish();
        }
        out = guarded(path, [&] { return catalog::combination(parts); });
    } else if (kind == "product") {
        const json& parts = r.need("parts");
        if (!parts.is_array() || parts.empty()) {
            violation(r.field("parts"), "expected a non-empty array");
        }
        std::vector<WaveFunction> states;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            states.push_back(parse_state(parts[i],
                                         r.field("parts") + "[" + std::to_string(i) + "]", 1,
                                         domain));
        }
        out = guarded(path, [&] { return catalog::product(states); });
    } else {
        violation(r.field("kind"), "unknown catalog entry \"" + kind + "\"");
    }
    r.finish();
    return *out;
}

DensityState parse_density(const json& j, const std::string& path, int default_dim,
                           DomainKind default_domain, const QuadratureConfig& cfg) {
    Reader r(j, path);
    const json& terms = r.need("terms");
    if (!terms.is_array() || terms.empty()) {
        violation(r.field("terms"), "expected a non-empty array");
    }
    std::vector<DensityTerm> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string f = r.field("terms") + "[" + std::to_string(i) + "]";
        Reader t(terms[i], f);
        const double w = t.number("weight");
        out.push_back({w, parse_state(t.need("state"), t.field("state"), default_dim,
                                      default_domain)});
        t.finish();
    }
    const bool renormalize = r.boolean("renormalize", false);
    const double tol = r.number("orthogonality_tol", 1e-6);
    r.finish();
    return guarded(path, [&] { return DensityState::make(out, renormalize, cfg, tol); });
}

SchemeKind parse_scheme_kind(const std::string& s, const std::string& field) {
    for (SchemeKind k : {SchemeKind::uniform, SchemeKind::jittered, SchemeKind::custom,
                         SchemeKind::rd_translated_cubes}) {
        if (s == scheme_kind_name(k)) {
            return k;
        }
    }
    violation(field, "unknown scheme \"" + s + "\"");
}

struct GridSpec {
    GridScheme scheme;
    bool explicit_cubes = false;
};

GridSpec parse_grid(const json* j, Experiment kind) {
    GridSpec g;
    if (j == nullptr) {
        return g;
    }
    Reader r(*j, "grid");
    GridScheme& s = g.scheme;
    s.kind = parse_scheme_kind(r.string("scheme", "uniform"), r.field("scheme"));
    s.dim = r.int_in("dim", 1, 16, 1);
    if (r.has("ratio_bound")) {
        s.ratio_bound = r.number("ratio_bound");
        if (!(s.ratio_bound >= 1.0)) {
            violation(r.field("ratio_bound"), "must be >= 1");
        }
    }
    s.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
    if (r.has("cells_per_axis")) {
        s.cells_per_axis = r.int_in("cells_per_axis", 1, std::numeric_limits<int>::max());
    }
    if (s.kind == SchemeKind::rd_translated_cubes) {
        s.cube_scheme = parse_scheme_kind(r.string("cube_scheme", "uniform"),
                                          r.field("cube_scheme"));
        if (s.cube_scheme != SchemeKind::uniform && s.cube_scheme != SchemeKind::jittered) {
            violation(r.field("cube_scheme"), "must be \"uniform\" or \"jittered\"");
        }
        if (kind == Experiment::rd_study) {
            if (r.has("radius") || r.has("cubes")) {
                violation(r.field(r.has("radius") ? "radius" : "cubes"),
                          "rd_study chooses the cube list itself");
            }
        } else if (r.has("cubes")) {
            const json& cubes = r.need("cubes");
            if (!cubes.is_array() || cubes.empty()) {
                violation(r.field("cubes"), "expected a non-empty array of origins");
            }
            for (std::size_t i = 0; i < cubes.size(); ++i) {
                std::vector<double> o;
                for (double x : Reader::numbers(cubes[i], r.field("cubes") + "[" +
                                                              std::to_string(i) + "]")) {
                    o.push_back(x);
                }
                s.cubes.push_back(std::move(o));
            }
            g.explicit_cubes = true;
            if (r.has("radius")) {
                violation(r.field("radius"), "give either radius or cubes");
            }
        } else {
            const int radius = r.int_in("radius", 1, 64);
            s.cubes = centered_cubes(s.dim, radius);
        }
    } else if (s.kind == SchemeKind::custom) {
        s.custom_domain = parse_edges(r.need("domain"), r.field("domain"));
        const json& levels = r.need("levels");
        if (!levels.is_array() || levels.empty()) {
            violation(r.field("levels"), "expected a non-empty array");
        }
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const std::string f = r.field("levels") + "[" + std::to_string(i) + "]";
            Reader l(levels[i], f);
            const int n = l.int_in("n", 1, std::numeric_limits<int>::max());
            const json& bins = l.need("bins");
            if (!bins.is_array() || bins.empty()) {
                violation(l.field("bins"), "expected a non-empty array of bins");
            }
            std::vector<Bin> out;
            for (std::size_t b = 0; b < bins.size(); ++b) {
                out.push_back(parse_edges(bins[b], l.field("bins") + "[" + std::to_string(b) + "]"));
            }
            l.finish();
            s.custom_levels[n] = std::move(out);
        }
    }
    r.finish();
    return g;
}

QuadratureConfig parse_quadrature(const json* j) {
    QuadratureConfig q;
    if (j == nullptr) {
        return q;
    }
    Reader r(*j, "quadrature");
    q.points_per_axis_per_bin = r.int_in("points_per_axis_per_bin", 2, 256, q.points_per_axis_per_bin);
    q.abs_tol = r.number("abs_tol", q.abs_tol);
    q.rel_tol = r.number("rel_tol", q.rel_tol);
    q.subdivision_limit = r.int_in("subdivision_limit", 0, 60, q.subdivision_limit);
    r.finish();
    guarded("quadrature", [&] {
        q.validate();
        return 0;
    });
    return q;
}

std::vector<int> parse_n_list(const json& v, const std::string& field) {
    std::vector<int> out;
    if (v.is_object()) {
        Reader r(v, field);
        const int lo = r.int_in("from", 1, 1 << 24);
        const int hi = r.int_in("to", 1, 1 << 24);
        r.finish();
        out = guarded(field, [&] { return powers_of_two(lo, hi); });
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(Reader::checked_int(v[i], field + "[" + std::to_string(i) + "]", 1,
                                              1 << 24));
        }
    } else {
        violation(field, "expected an array of resolutions or {\"from\", \"to\"}");
    }
    if (out.size() < 3) {
        violation(field, "at least three resolutions are needed");
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i] <= out[i - 1]) {
            violation(field, "resolutions must be strictly increasing");
        }
    }
    return out;
}

Experiment parse_experiment(const std::string& s) {
    for (Experiment e : {Experiment::probability, Experiment::convergence, Experiment::sample,
                         Experiment::discretize, Experiment::joint, Experiment::rd_study}) {
        if (s == experiment_name(e)) {
            return e;
        }
    }
    violation("experiment", "unknown experiment \"" + s + "\"");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Which optional top-level fields each experiment accepts.
bool accepts(Experiment e, const std::string& key) {
    static const std::map<std::string, std::vector<Experiment>> table{
        {"n", {Experiment::probability, Experiment::sample, Experiment::discretize,
               Experiment::joint}},
        {"n_list", {Experiment::convergence, Experiment::rd_study}},
        {"fit_window", {Experiment::convergence, Experiment::rd_study}},
        {"samples", {Experiment::sample}},
        {"seed", {Experiment::sample}},
        {"mass_target", {Experiment::rd_study}},
        {"max_cubes", {Experiment::rd_study}},
        {"f", {Experiment::discretize}},
    };
    auto it = table.find(key);
    if (it == table.end()) {
        return true;
    }
    for (Experiment x : it->second) {
        if (x == e) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::probability:
            return "probability";
        case Experiment::convergence:
            return "convergence";
        case Experiment::sample:
            return "sample";
        case Experiment::discretize:
            return "discretize";
        case Experiment::joint:
            return "joint";
        case Experiment::rd_study:
            return "rd_study";
    }
    return "unknown";
}

std::string hash_hex(std::uint64_t hash) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(ErrorCode::config_parse, "<document>", e.what());
    }
    ExperimentConfig c;
    c.hash = fnv1a(doc.dump());
    Reader r(doc, "");
    const std::string schema = r.string("schema");
    if (schema != kSchemaVersion) {
        violation("schema", "unsupported schema \"" + schema + "\"; expected \"" +
                                std::string(kSchemaVersion) + "\"");
    }
    c.kind = parse_experiment(r.string("experiment"));
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!accepts(c.kind, it.key())) {
            violation(it.key(), "not used by the " + experiment_name(c.kind) + " experiment");
        }
    }
    r.get("description");

    c.quadrature = parse_quadrature(r.get("quadrature"));
    GridSpec grid = parse_grid(r.get("grid"), c.kind);
    c.scheme = grid.scheme;
    const bool on_rd = c.kind == Experiment::rd_study ||
                       c.scheme.kind == SchemeKind::rd_translated_cubes;
    const DomainKind domain = on_rd ? DomainKind::euclidean : DomainKind::unit_cube;
    const int d = c.scheme.dim;

    auto check_dim = [&](int state_dim, const std::string& field) {
        if (state_dim != d) {
            violation(field, "state has dimension " + std::to_string(state_dim) +
                                 " but grid.dim is " + std::to_string(d));
        }
    };

    if (c.kind == Experiment::discretize) {
        c.f = parse_state(r.need("f"), "f", d, domain);
        check_dim(c.f->dim(), "f");
        for (const char* k : {"psi", "rho", "phi"}) {
            if (r.has(k)) {
                violation(k, "discretize takes a single function f");
            }
        }
    } else {
        if (r.has("psi") == r.has("rho")) {
            violation(r.has("psi") ? "rho" : "psi", "give exactly one of psi and rho");
        }
        if (r.has("psi")) {
            c.psi = parse_state(r.need("psi"), "psi", d, domain);
            check_dim(c.psi->dim(), "psi");
        } else {
            c.rho = parse_density(r.need("rho"), "rho", d, domain, c.quadrature);
            check_dim(c.rho->dim(), "rho");
        }
        c.phi = parse_state(r.need("phi"), "phi", d, domain);
        check_dim(c.phi->dim(), "phi");
    }

    switch (c.kind) {
        case Experiment::probability:
        case Experiment::joint:
        case Experiment::discretize:
            c.n = r.int_in("n", 1, 1 << 24);
            break;
        case Experiment::sample:
            c.n = r.int_in("n", 1, 1 << 24);
            c.samples = static_cast<std::size_t>(r.int_in("samples", 1, 100'000'000));
            c.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
            break;
        case Experiment::convergence:
        case Experiment::rd_study:
            c.n_list = parse_n_list(r.need("n_list"), "n_list");
            if (const json* w = r.get("fit_window")) {
                const auto win = Reader::ints(*w, "fit_window");
                if (win.size() != 2 || win[0] > win[1]) {
                    violation("fit_window", "expected [n_min, n_max] with n_min <= n_max");
                }
                c.window = std::pair{win[0], win[1]};
            }
            break;
    }
    if (c.kind == Experiment::rd_study) {
        c.mass_target = r.number("mass_target");
        if (!(c.mass_target > 0.0 && c.mass_target < 1.0)) {
            violation("mass_target", "must lie in (0, 1)");
        }
        c.max_cubes = static_cast<std::size_t>(r.int_in("max_cubes", 1, 1 << 24, 4096));
        if (c.scheme.kind == SchemeKind::custom) {
            violation("grid.scheme", "rd_study needs a uniform or jittered per-cube scheme");
        }
    } else if (on_rd != (c.scheme.kind == SchemeKind::rd_translated_cubes)) {
        violation("grid.scheme", "states on R^d need the rd_translated_cubes scheme");
    }
    if (c.scheme.kind == SchemeKind::custom && c.n &&
        !c.scheme.custom_levels.contains(*c.n)) {
        violation("grid.levels", "no custom level for n = " + std::to_string(*c.n));
    }

    c.stem = experiment_name(c.kind);
    if (const json* o = r.get("output")) {
        Reader out(*o, "output");
        c.output_dir = out.string("dir", c.output_dir);
        c.stem = out.string("stem", c.stem);
        if (c.stem.empty() || c.stem.find('/') != std::string::npos) {
            violation("output.stem", "must be a non-empty file name without '/'");
        }
        const std::string fmt = out.string("format", "both");
        if (fmt == "csv") {
            c.format = OutputFormat::csv;
        } else if (fmt == "json") {
            c.format = OutputFormat::json;
        } else if (fmt == "both") {
            c.format = OutputFormat::both;
        } else {
            violation("output.format", "must be csv, json or both");
        }
        out.finish();
    }
    r.finish();
    return c;
}

}  // namespace szeno::cli
