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

#ifndef SZENO_CLI_CONFIG_READER_HPP
#define SZENO_CLI_CONFIG_READER_HPP

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "szeno/cli.hpp"

namespace szeno::cli::detail {

using json = nlohmann::json;

// Typed access to one JSON object. Every key read is recorded; finish()
// rejects whatever was not read.
class Reader {
public:
    Reader(const json& j, std::string path);

    std::string field(const std::string& key) const;
    const std::string& path() const noexcept { return path_; }

    const json* get(const std::string& key);
    const json& need(const std::string& key);
    bool has(const std::string& key) const;

    double number(const std::string& key);
    double number(const std::string& key, double fallback);
    long long integer(const std::string& key);
    long long integer(const std::string& key, long long fallback);
    int int_in(const std::string& key, long long lo, long long hi);
    int int_in(const std::string& key, long long lo, long long hi, int fallback);
    std::string string(const std::string& key);
    std::string string(const std::string& key, const std::string& fallback);
    bool boolean(const std::string& key, bool fallback);
    std::vector<double> numbers(const std::string& key);
    std::vector<int> ints(const std::string& key);

    static double number(const json& v, const std::string& field);
    static long long integer(const json& v, const std::string& field);
    static int checked_int(const json& v, const std::string& field, long long lo, long long hi);
    static std::vector<double> numbers(const json& v, const std::string& field);
    static std::vector<int> ints(const json& v, const std::string& field);

    void finish() const;

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

}  // namespace szeno::cli::detail

#endif  // SZENO_CLI_CONFIG_READER_HPP
