// SPDX-License-Identifier: Apache-2.0
//
// mwrelay: signal alignment for the symmetric MIMO multiway relay channel
// Copyright (C) 2026 The mwrelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mwrelay/error.hpp"

namespace mwrelay {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidPatternOrder: return "InvalidPatternOrder";
    case ErrorCode::InvalidDeactivation: return "InvalidDeactivation";
    case ErrorCode::SupplyExhausted: return "SupplyExhausted";
    case ErrorCode::AlignmentDegenerate: return "AlignmentDegenerate";
    case ErrorCode::ExtensionOverflow: return "ExtensionOverflow";
    case ErrorCode::InternalPlanError: return "InternalPlanError";
    case ErrorCode::IndependenceViolation: return "IndependenceViolation";
    case ErrorCode::ProjectorCollapse: return "ProjectorCollapse";
    case ErrorCode::InvalidSweep: return "InvalidSweep";
    case ErrorCode::InvalidLemmaParams: return "InvalidLemmaParams";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

} // namespace mwrelay
