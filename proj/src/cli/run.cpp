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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config_reader.hpp"
#include "szeno/analysis.hpp"
#include "szeno/cli.hpp"
#include "szeno/discretizer.hpp"
#include "szeno/measurement.hpp"

namespace szeno::cli {

namespace {

using detail::json;

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class Outputs {
public:
    Outputs(const ExperimentConfig& c, const RunOptions& opts)
        : cfg_(c),
          dir_(opts.output_dir.value_or(c.output_dir)),
          format_(opts.format.value_or(c.format)) {}

    bool csv() const { return format_ != OutputFormat::json; }
    bool json_out() const { return format_ != OutputFormat::csv; }

    json header() const {
        json j;
        j["schema"] = kSchemaVersion;
        j["config_hash"] = hash_hex(cfg_.hash);
        j["experiment"] = experiment_name(cfg_.kind);
        j["version"] = kVersion;
        return j;
    }

    std::string csv_preamble() const {
        return "# schema=" + std::string(kSchemaVersion) + " config_hash=" + hash_hex(cfg_.hash) +
               " experiment=" + experiment_name(cfg_.kind) + "\n";
    }

    void write_csv(const std::string& body) { write(".csv", csv_preamble() + body); }
    void write_json(const json& j) { write(".json", j.dump(2) + "\n"); }

    const std::vector<std::string>& files() const { return files_; }

private:
    void write(const std::string& ext, const std::string& content) {
        std::filesystem::create_directories(dir_);
        const std::string path = (std::filesystem::path(dir_) / (cfg_.stem + ext)).string();
        std::ofstream out(path, std::ios::binary);
        out << content;
        out.close();
        if (!out) {
            throw Error(ErrorCode::invalid_parameter, "cannot write " + path);
        }
        files_.push_back(path);
    }

    const ExperimentConfig& cfg_;
    std::string dir_;
    OutputFormat format_;
    std::vector<std::string> files_;
};

DensityState state_of(const ExperimentConfig& c) {
    return c.rho ? *c.rho : DensityState::pure(*c.psi);
}

std::string state_descriptor(const ExperimentConfig& c) {
    if (c.psi) {
        return c.psi->descriptor();
    }
    std::string d = "mixture(";
    for (std::size_t l = 0; l < c.rho->terms().size(); ++l) {
        d += (l ? "; " : "") + g17(c.rho->terms()[l].weight) + " " +
             c.rho->terms()[l].state.descriptor();
    }
    return d + ")";
}

MeasurementOptions measurement_options(const ExperimentConfig& c, const RunOptions& opts) {
    MeasurementOptions m;
    m.quadrature = c.quadrature;
    m.threads = opts.threads;
    return m;
}

void common_json(json& j, const ExperimentConfig& c) {
    j["state"] = state_descriptor(c);
    j["phi"] = c.phi->descriptor();
    j["scheme"] = c.scheme.describe();
    j["dim"] = c.scheme.dim;
}

std::string run_probability(const ExperimentConfig& c, const RunOptions& opts, Outputs& out) {
    MeasurementOptions m = measurement_options(c, opts);
    m.retain = Retention::never;
    const GridLevel level = c.scheme.level(*c.n);
    const MeasurementResult r = c.psi ? prob_y1_pure(*c.psi, *c.phi, level, m)
                                      : prob_y1_mixed(*c.rho, *c.phi, level, m);
    if (out.csv()) {
        out.write_csv(
            "n,N_n,p_y1,error_bound,quadrature_error,spectral_tail_bound,truncation_bound,"
            "norm_fn2,mass_total\n" +
            std::to_string(r.n) + "," + std::to_string(r.bin_count) + "," + g17(r.p_y1) + "," +
            g17(r.p_y1_error_bound) + "," + g17(r.quadrature_error) + "," +
            g17(r.spectral_tail_bound) + "," + g17(r.truncation_bound) + "," + g17(r.norm_fn2) +
            "," + g17(r.mass_total) + "\n");
    }
    if (out.json_out()) {
        json j = out.header();
        common_json(j, c);
        j["n"] = r.n;
        j["bins"] = r.bin_count;
        j["min_bin_volume"] = r.min_bin_volume;
        j["max_bin_volume"] = r.max_bin_volume;
        j["p_y1"] = r.p_y1;
        j["p_y1_unclamped"] = r.p_y1_unclamped;
        j["error_bound"] = r.p_y1_error_bound;
        j["quadrature_error"] = r.quadrature_error;
        j["spectral_tail_bound"] = r.spectral_tail_bound;
        j["truncation_bound"] = r.truncation_bound;
        j["norm_fn2"] = r.norm_fn2;
        j["mass_total"] = r.mass_total;
        j["mass_error"] = r.mass_error;
        j["warnings"] = r.warnings;
        out.write_json(j);
    }
    return "p_y1=" + short_number(r.p_y1);
}

std::string record_csv(const ConvergenceRecord& rec) {
    std::string s = "n,N_n,p_y1,error_bound,nd_p_y1\n";
    for (const ConvergenceRow& row : rec.rows) {
        s += std::to_string(row.n) + "," + std::to_string(row.bins) + "," + g17(row.p_y1) + "," +
             g17(row.error_bound) + "," + g17(row.scaled) + "\n";
    }
    return s;
}

json record_json(const ConvergenceRecord& rec) {
    json rows = json::array();
    for (const ConvergenceRow& row : rec.rows) {
        rows.push_back({{"n", row.n},
                        {"N_n", row.bins},
                        {"p_y1", row.p_y1},
                        {"error_bound", row.error_bound},
                        {"norm_fn2", row.norm_fn2},
                        {"nd_p_y1", row.scaled},
                        {"min_bin_volume", row.min_bin_volume},
                        {"max_bin_volume", row.max_bin_volume}});
    }
    json j;
    j["rows"] = rows;
    j["fitted_rate"] = rec.fit.rate;
    j["fitted_constant"] = rec.fit.constant;
    j["fit_residual"] = rec.fit.residual;
    j["fit_window"] = {rec.fit.n_min, rec.fit.n_max};
    j["fit_rows"] = rec.fit.rows_used;
    j["warnings"] = rec.warnings;
    return j;
}

StudyOptions study_options(const ExperimentConfig& c, const RunOptions& opts) {
    StudyOptions s;
    s.measurement = measurement_options(c, opts);
    s.window = c.window;
    return s;
}

std::string run_convergence(const ExperimentConfig& c, const RunOptions& opts, Outputs& out) {
    const StudyOptions s = study_options(c, opts);
    const ConvergenceRecord rec = c.psi ? convergence_study(*c.psi, *c.phi, c.scheme, c.n_list, s)
                                        : convergence_study(*c.rho, *c.phi, c.scheme, c.n_list, s);
    if (out.csv()) {
        out.write_csv(record_csv(rec));
    }
    if (out.json_out()) {
        json j = out.header();
        common_json(j, c);
        j.update(record_json(rec));
        out.write_json(j);
    }
    return "fitted_rate=" + short_number(rec.fit.rate);
}

std::string run_rd(const ExperimentConfig& c, const RunOptions& opts, Outputs& out) {
    RdOptions ro;
    ro.study = study_options(c, opts);
    ro.max_cubes = c.max_cubes;
    const RdStudy st = c.psi ? rd_study(*c.psi, *c.phi, c.scheme, c.n_list, c.mass_target, ro)
                             : rd_study(*c.rho, *c.phi, c.scheme, c.n_list, c.mass_target, ro);
    if (out.csv()) {
        out.write_csv(record_csv(st.record));
    }
    if (out.json_out()) {
        json j = out.header();
        common_json(j, c);
        j["scheme"] = st.record.scheme;
        j.update(record_json(st.record));
        j["mass_target"] = c.mass_target;
        j["radius"] = st.budget.radius;
        j["cubes"] = st.budget.cubes.size();
        j["captured_mass"] = st.budget.captured_mass;
        j["captured_mass_phi"] = st.budget.captured_mass_phi;
        j["tail_bound"] = st.budget.tail_bound;
        out.write_json(j);
    }
    return "fitted_rate=" + short_number(st.record.fit.rate) +
           " tail_bound=" + short_number(st.budget.tail_bound);
}

std::string run_sample(const ExperimentConfig& c, const RunOptions& opts, Outputs& out) {
    const MeasurementOptions m = measurement_options(c, opts);
    const GridLevel level = c.scheme.level(*c.n);
    const DensityState rho = state_of(c);
    const auto draws = sample_xy(rho, *c.phi, level, c.samples, c.seed, m);
    std::size_t ones = 0;
    std::ostringstream csv;
    csv << "index,bin,y\n";
    for (std::size_t i = 0; i < draws.size(); ++i) {
        ones += draws[i].y == 1;
        csv << i << ',' << draws[i].bin << ',' << draws[i].y << '\n';
    }
    const double empirical = static_cast<double>(ones) / static_cast<double>(draws.size());
    if (out.csv()) {
        out.write_csv(csv.str());
    }
    if (out.json_out()) {
        MeasurementOptions mm = m;
        mm.retain = Retention::never;
        const MeasurementResult r = prob_y1_mixed(rho, *c.phi, level, mm);
        json j = out.header();
        common_json(j, c);
        j["n"] = *c.n;
        j["bins"] = level.bin_count();
        j["samples"] = c.samples;
        j["seed"] = c.seed;
        j["empirical_p_y1"] = empirical;
        j["p_y1"] = r.p_y1;
        j["error_bound"] = r.p_y1_error_bound;
        out.write_json(j);
    }
    return "empirical_p_y1=" + short_number(empirical);
}

std::string run_joint(const ExperimentConfig& c, const RunOptions& opts, Outputs& out) {
    const MeasurementOptions m = measurement_options(c, opts);
    const GridLevel level = c.scheme.level(*c.n);
    const JointDistribution jd = c.psi ? joint_distribution(*c.psi, *c.phi, level, m)
                                       : joint_distribution(*c.rho, *c.phi, level, m);
    const auto px = jd.marginal_x();
    if (out.csv()) {
        std::string s = "bin,p_y1,p_y0,p_x\n";
        for (std::size_t j = 0; j < px.size(); ++j) {
            s += std::to_string(j) + "," + g17(jd.y1[j]) + "," + g17(jd.y0[j]) + "," + g17(px[j]) +
                 "\n";
        }
        out.write_csv(s);
    }
    if (out.json_out()) {
        json j = out.header();
        common_json(j, c);
        j["n"] = *c.n;
        j["bins"] = level.bin_count();
        j["p_y1"] = jd.total_y1;
        j["total"] = jd.total;
        out.write_json(j);
    }
    return "p_y1=" + short_number(jd.total_y1);
}

std::string run_discretize(const ExperimentConfig& c, const RunOptions& opts, Outputs& out) {
    DiscretizeOptions d;
    d.quadrature = c.quadrature;
    d.threads = opts.threads;
    const GridLevel level = c.scheme.level(*c.n);
    const DiscretizedFunction fn = discretize(*c.f, level, d);
    const double err = level.domain_kind() == DomainKind::unit_cube
                           ? l2_distance(c.f->as_field(), fn.as_field(), level, c.quadrature)
                           : NAN;
    if (out.csv()) {
        std::ostringstream s;
        s << "bin";
        for (int k = 0; k < level.dim(); ++k) {
            s << ",lo" << k << ",hi" << k;
        }
        s << ",re,im,error\n";
        for (std::size_t j = 0; j < level.bin_count(); ++j) {
            const Bin b = level.bin(j);
            s << j;
            for (const Interval& e : b.edges()) {
                s << ',' << g17(e.lo()) << ',' << g17(e.hi());
            }
            s << ',' << g17(fn.averages()[j].real()) << ',' << g17(fn.averages()[j].imag()) << ','
              << g17(fn.errors()[j]) << '\n';
        }
        out.write_csv(s.str());
    }
    if (out.json_out()) {
        json j = out.header();
        j["f"] = c.f->descriptor();
        j["scheme"] = c.scheme.describe();
        j["dim"] = c.scheme.dim;
        j["n"] = *c.n;
        j["bins"] = level.bin_count();
        j["linf"] = fn.linf();
        if (std::isfinite(err)) {
            j["l2_error"] = err;
        } else {
            j["l2_error"] = nullptr;
        }
        out.write_json(j);
    }
    return std::isfinite(err) ? "l2_error=" + short_number(err)
                              : "linf=" + short_number(fn.linf());
}

std::string error_object(const std::string& code, int exit_code, const std::string& field,
                         const std::string& message) {
    json j;
    j["error"] = {{"code", code}, {"exit_code", exit_code}, {"message", message}};
    if (!field.empty()) {
        j["error"]["field"] = field;
    }
    return j.dump();
}

RunOutcome failure(const std::exception& e) {
    RunOutcome o;
    std::string field;
    std::string code = "internal";
    o.exit_code = kExitCompute;
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
        field = ce->field();
    }
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        code = std::string(error_code_name(err->code()));
        o.exit_code = exit_code_for(err->code());
    }
    o.error_json = error_object(code, o.exit_code, field, e.what());
    return o;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunOutcome unreadable(const std::string& path) {
    RunOutcome o;
    o.exit_code = kExitConfigParse;
    o.error_json = error_object("config_parse", o.exit_code, "", "cannot read " + path);
    return o;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::config_parse:
            return kExitConfigParse;
        case ErrorCode::schema_violation:
            return kExitSchema;
        default:
            return kExitCompute;
    }
}

RunOutcome validate_config_text(const std::string& text) {
    try {
        const ExperimentConfig c = parse_config(text);
        RunOutcome o;
        o.summary = "valid " + experiment_name(c.kind) + " config_hash=" + hash_hex(c.hash);
        return o;
    } catch (const std::exception& e) {
        return failure(e);
    }
}

RunOutcome validate_config_file(const std::string& path) {
    const auto text = read_file(path);
    return text ? validate_config_text(*text) : unreadable(path);
}

RunOutcome run_config_text(const std::string& text, const RunOptions& opts) {
    std::optional<ExperimentConfig> c;
    try {
        c = parse_config(text);
    } catch (const std::exception& e) {
        return failure(e);
    }
    if (opts.threads < 1) {
        RunOutcome o;
        o.exit_code = kExitUsage;
        o.error_json = error_object("invalid_parameter", o.exit_code, "--threads",
                                    "threads must be >= 1");
        return o;
    }
    try {
        Outputs out(*c, opts);
        std::string key;
        switch (c->kind) {
            case Experiment::probability:
                key = run_probability(*c, opts, out);
                break;
            case Experiment::convergence:
                key = run_convergence(*c, opts, out);
                break;
            case Experiment::sample:
                key = run_sample(*c, opts, out);
                break;
            case Experiment::discretize:
                key = run_discretize(*c, opts, out);
                break;
            case Experiment::joint:
                key = run_joint(*c, opts, out);
                break;
            case Experiment::rd_study:
                key = run_rd(*c, opts, out);
                break;
        }
        RunOutcome o;
        o.files = out.files();
        o.summary = experiment_name(c->kind) + " " + key + " ->";
        for (const std::string& f : o.files) {
            o.summary += " " + f;
        }
        return o;
    } catch (const std::exception& e) {
        RunOutcome o = failure(e);
        if (o.exit_code != kExitCompute) {
            // Errors after a successful schema check are compute failures.
            o.exit_code = kExitCompute;
            json j = json::parse(o.error_json);
            j["error"]["exit_code"] = kExitCompute;
            o.error_json = j.dump();
        }
        return o;
    }
}

RunOutcome run_config_file(const std::string& path, const RunOptions& opts) {
    const auto text = read_file(path);
    return text ? run_config_text(*text, opts) : unreadable(path);
}

std::string capabilities_json() {
    json j;
    j["name"] = "szeno";
    j["version"] = kVersion;
    j["schema_version"] = kSchemaVersion;
    j["catalog"] = catalog::entry_names();
    j["schemes"] = {"uniform", "jittered", "custom", "rd_translated_cubes"};
    j["experiments"] = {"probability", "convergence", "sample", "discretize", "joint", "rd_study"};
    j["formats"] = {"csv", "json", "both"};
    j["exit_codes"] = {{"ok", kExitOk},
                       {"usage", kExitUsage},
                       {"config_parse", kExitConfigParse},
                       {"schema_violation", kExitSchema},
                       {"compute_failure", kExitCompute}};
    return j.dump(2);
}

}  // namespace szeno::cli
