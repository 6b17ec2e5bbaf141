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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "szeno/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spatial Zeno measurement experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 1;
    std::string output_dir;
    std::string format;
    app.add_option("--threads", threads, "Worker threads (results do not depend on this)")
        ->check(CLI::PositiveNumber);
    app.add_option("--output-dir", output_dir, "Directory for output files");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "both"}));

    std::string config;
    auto* run = app.add_subcommand("run", "Run the experiment in a config file");
    run->add_option("config", config, "Config file")->required();
    auto* validate = app.add_subcommand("validate", "Schema check only");
    validate->add_option("config", config, "Config file")->required();
    auto* caps = app.add_subcommand("capabilities", "Print catalog, schemes and schema version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : szeno::cli::kExitUsage;
    }

    if (caps->parsed()) {
        std::cout << szeno::cli::capabilities_json() << '\n';
        return 0;
    }
    szeno::cli::RunOutcome outcome;
    if (validate->parsed()) {
        outcome = szeno::cli::validate_config_file(config);
    } else {
        szeno::cli::RunOptions opts;
        opts.threads = threads;
        if (!output_dir.empty()) {
            opts.output_dir = output_dir;
        }
        if (format == "csv") {
            opts.format = szeno::cli::OutputFormat::csv;
        } else if (format == "json") {
            opts.format = szeno::cli::OutputFormat::json;
        } else if (format == "both") {
            opts.format = szeno::cli::OutputFormat::both;
        }
        outcome = szeno::cli::run_config_file(config, opts);
    }
    if (outcome.exit_code != 0) {
        std::cerr << outcome.error_json << '\n';
    } else {
        std::cout << outcome.summary << '\n';
    }
    return outcome.exit_code;
}
