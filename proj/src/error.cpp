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

#include "szeno/error.hpp"

namespace szeno {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_parameter: return "invalid_parameter";
        case ErrorCode::infeasible_parameters: return "infeasible_parameters";
        case ErrorCode::out_of_domain: return "out_of_domain";
        case ErrorCode::overlapping_cubes: return "overlapping_cubes";
        case ErrorCode::domain_mismatch: return "domain_mismatch";
        case ErrorCode::tolerance_not_met: return "tolerance_not_met";
        case ErrorCode::zero_mass_bin: return "zero_mass_bin";
        case ErrorCode::negative_weight: return "negative_weight";
        case ErrorCode::non_orthogonal_terms: return "non_orthogonal_terms";
        case ErrorCode::trace_exceeded: return "trace_exceeded";
        case ErrorCode::insufficient_signal: return "insufficient_signal";
        case ErrorCode::bounded_flag_missing: return "bounded_flag_missing";
        case ErrorCode::cube_budget_exceeded: return "cube_budget_exceeded";
        case ErrorCode::degenerate_window: return "degenerate_window";
        case ErrorCode::config_parse: return "config_parse";
        case ErrorCode::schema_violation: return "schema_violation";
    }
    return "unknown";
}

}  // namespace szeno
