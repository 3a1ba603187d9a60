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

#pragma once

#include <stdexcept>
#include <string>

namespace mwrelay {

enum class ErrorCode {
    InvalidArgument,
    InvalidMatrix,
    ShapeMismatch,
    InvalidPatternOrder,
    InvalidDeactivation,
    SupplyExhausted,
    AlignmentDegenerate,
    ExtensionOverflow,
    InternalPlanError,
    IndependenceViolation,
    ProjectorCollapse,
    InvalidSweep,
    InvalidLemmaParams,
};

const char* to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying a
/// stable code; the C API maps the code one-to-one onto mwr_status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace mwrelay
