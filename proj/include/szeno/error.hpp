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

#ifndef SZENO_ERROR_HPP
#define SZENO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace szeno {

enum class ErrorCode {
    invalid_parameter,
    infeasible_parameters,
    out_of_domain,
    overlapping_cubes,
    domain_mismatch,
    tolerance_not_met,
    zero_mass_bin,
    negative_weight,
    non_orthogonal_terms,
    trace_exceeded,
    insufficient_signal,
    bounded_flag_missing,
    cube_budget_exceeded,
    degenerate_window,
    config_parse,
    schema_violation,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace szeno

#endif  // SZENO_ERROR_HPP
