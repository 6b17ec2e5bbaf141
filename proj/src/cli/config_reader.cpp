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

#include "config_reader.hpp"

#include <cmath>
#include <limits>

namespace szeno::cli::detail {

Reader::Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
        throw ConfigError(ErrorCode::schema_violation, path_.empty() ? "<root>" : path_,
                          "expected an object");
    }
}

std::string Reader::field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
}

const json* Reader::get(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) {
        return nullptr;
    }
    used_.insert(key);
    return &*it;
}

const json& Reader::need(const std::string& key) {
    const json* v = get(key);
    if (v == nullptr) {
        throw ConfigError(ErrorCode::schema_violation, field(key), "missing required field");
    }
    return *v;
}

bool Reader::has(const std::string& key) const { return j_.contains(key); }

double Reader::number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        throw ConfigError(ErrorCode::schema_violation, field, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(ErrorCode::schema_violation, field, "expected a finite number");
    }
    return x;
}

long long Reader::integer(const json& v, const std::string& field) {
    if (v.is_number_integer()) {
        return v.get<long long>();
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
            return static_cast<long long>(x);
        }
    }
    throw ConfigError(ErrorCode::schema_violation, field, "expected an integer");
}

double Reader::number(const std::string& key) { return number(need(key), field(key)); }

double Reader::number(const std::string& key, double fallback) {
    const json* v = get(key);
    return v ? number(*v, field(key)) : fallback;
}

long long Reader::integer(const std::string& key) { return integer(need(key), field(key)); }

long long Reader::integer(const std::string& key, long long fallback) {
    const json* v = get(key);
    return v ? integer(*v, field(key)) : fallback;
}

int Reader::int_in(const std::string& key, long long lo, long long hi) {
    return checked_int(need(key), field(key), lo, hi);
}

int Reader::int_in(const std::string& key, long long lo, long long hi, int fallback) {
    const json* v = get(key);
    return v ? checked_int(*v, field(key), lo, hi) : fallback;
}

int Reader::checked_int(const json& v, const std::string& field, long long lo, long long hi) {
    const long long x = integer(v, field);
    if (x < lo || x > hi) {
        throw ConfigError(ErrorCode::schema_violation, field,
                          "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
}

std::string Reader::string(const std::string& key) {
    const json& v = need(key);
    if (!v.is_string()) {
        throw ConfigError(ErrorCode::schema_violation, field(key), "expected a string");
    }
    return v.get<std::string>();
}

std::string Reader::string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
}

bool Reader::boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (v == nullptr) {
        return fallback;
    }
    if (!v->is_boolean()) {
        throw ConfigError(ErrorCode::schema_violation, field(key), "expected true or false");
    }
    return v->get<bool>();
}

std::vector<double> Reader::numbers(const json& v, const std::string& field) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(number(v, field));
        return out;
    }
    if (!v.is_array() || v.empty()) {
        throw ConfigError(ErrorCode::schema_violation, field,
                          "expected a number or a non-empty array of numbers");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<double> Reader::numbers(const std::string& key) { return numbers(need(key), field(key)); }

std::vector<int> Reader::ints(const json& v, const std::string& field) {
    std::vector<int> out;
    if (v.is_number()) {
        out.push_back(checked_int(v, field, std::numeric_limits<int>::min(),
                                  std::numeric_limits<int>::max()));
        return out;
    }
    if (!v.is_array() || v.empty()) {
        throw ConfigError(ErrorCode::schema_violation, field,
                          "expected an integer or a non-empty array of integers");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(checked_int(v[i], field + "[" + std::to_string(i) + "]",
                                  std::numeric_limits<int>::min(),
                                  std::numeric_limits<int>::max()));
    }
    return out;
}

std::vector<int> Reader::ints(const std::string& key) { return ints(need(key), field(key)); }

void Reader::finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
        if (!used_.contains(it.key())) {
            throw ConfigError(ErrorCode::schema_violation, field(it.key()), "unknown field");
        }
    }
}

}  // namespace szeno::cli::detail
