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

// Config-driven experiment runner behind the `szeno` tool.

#ifndef SZENO_CLI_HPP
#define SZENO_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "szeno/analysis.hpp"
#include "szeno/error.hpp"
#include "szeno/grid.hpp"
#include "szeno/quadrature.hpp"
#include "szeno/state.hpp"

namespace szeno::cli {

inline constexpr const char* kSchemaVersion = "szeno-config/1";
inline constexpr const char* kVersion = "0.1.0";

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfigParse = 2;
inline constexpr int kExitSchema = 3;
inline constexpr int kExitCompute = 4;

/// A config problem tied to a field path such as "psi.k" or "n_list[2]".
class ConfigError : public Error {
public:
    ConfigError(ErrorCode code, std::string field, const std::string& message)
        : Error(code, message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class Experiment { probability, convergence, sample, discretize, joint, rd_study };

std::string experiment_name(Experiment e);

enum class OutputFormat { csv, json, both };

struct ExperimentConfig {
    Experiment kind = Experiment::probability;
    /// Exactly one of psi / rho is set, except for discretize, which uses f.
    std::optional<WaveFunction> psi;
    std::optional<DensityState> rho;
    std::optional<WaveFunction> phi;
    std::optional<WaveFunction> f;
    GridScheme scheme;
    std::optional<int> n;
    std::vector<int> n_list;
    QuadratureConfig quadrature;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double mass_target = 0.0;
    std::size_t max_cubes = 4096;
    FitWindow window;
    std::string output_dir = ".";
    std::string stem;
    OutputFormat format = OutputFormat::both;
    /// FNV-1a 64 of the canonical (sorted-key, compact) form of the document.
    std::uint64_t hash = 0;
};

/// Parses and schema-checks a config document. Throws ConfigError with
/// config_parse (malformed text) or schema_violation.
ExperimentConfig parse_config(const std::string& text);

std::string hash_hex(std::uint64_t hash);

struct RunOptions {
    int threads = 1;
    std::optional<std::string> output_dir;
    std::optional<OutputFormat> format;
};

struct RunOutcome {
    int exit_code = kExitOk;
    /// One line: experiment kind, key scalar, output paths.
    std::string summary;
    std::vector<std::string> files;
    /// Machine-readable error object when exit_code != 0.
    std::string error_json;
};

RunOutcome run_config_text(const std::string& text, const RunOptions& opts = {});
RunOutcome run_config_file(const std::string& path, const RunOptions& opts = {});
/// Schema check only; no computation, no files.
RunOutcome validate_config_text(const std::string& text);
RunOutcome validate_config_file(const std::string& path);

/// Catalog entries, scheme kinds, experiments and the schema version as
/// stable JSON.
std::string capabilities_json();

/// Exit code for a library error code.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace szeno::cli

#endif  // SZENO_CLI_HPP
