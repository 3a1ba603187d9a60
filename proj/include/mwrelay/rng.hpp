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

#include "mwrelay/linalg.hpp"

#include <cstdint>
#include <random>

namespace mwrelay {

/// splitmix64 finalizer; derives the seed of sub-stream `index` from `master`.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Portable seeded generator: mt19937_64 (bit-exact by the C++ standard) with
/// our own uniform/Gaussian mappings, so draws agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in (0, 1), 53-bit resolution.
    double uniform();

    /// Circularly-symmetric CN(0, 1) via Box-Muller.
    Complex complex_gaussian();

    ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

    /// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
    ComplexMatrix haar_unitary(Eigen::Index n);

private:
    std::mt19937_64 engine_;
};

} // namespace mwrelay
