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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mwrelay {

enum class LemmaId { Intersection, StackedRank, DirectSum, Scaling };

const char* to_string(LemmaId id) noexcept;

struct LemmaParams {
    std::optional<int> k;
    std::optional<int> t;
    std::optional<int> m;
    std::optional<int> n;
    std::optional<int> sigma;
};

struct LemmaTrialResult {
    LemmaId lemma = LemmaId::Intersection;
    LemmaParams params;
    int trials = 0;
    int failures = 0;
    int expected_value = 0;
    std::map<int, int> observed; // value -> count
    std::vector<std::uint64_t> failing_seeds;   // first few, for replay
    std::vector<ComplexMatrix> first_failure;   // matrices of the first failing trial
};

/// Trial i draws from Rng(split_seed(seed, i)).
LemmaTrialResult check_intersection(int m, int n, int trials, std::uint64_t seed, const Tolerance& tol = {});
LemmaTrialResult check_stacked_rank(int k, int m, int n, int trials, std::uint64_t seed, const Tolerance& tol = {});
/// With sigma > 1 every matrix is block diagonal over sigma independent slots.
LemmaTrialResult check_direct_sum(int k, int t, int m, int n, int trials, std::uint64_t seed, int sigma = 1,
                                  const Tolerance& tol = {});
/// One trial per (m, n, sigma); observed 1 when the scaled DoF scales exactly.
LemmaTrialResult check_scaling(int k, const std::vector<std::pair<int, int>>& grid, const std::vector<int>& sigmas);

struct LemmaBattery {
    std::vector<std::pair<int, int>> intersection;        // (m, n)
    std::vector<std::array<int, 3>> stacked_rank;         // (k, m, n)
    std::vector<std::array<int, 5>> direct_sum;           // (k, t, m, n, sigma)
    std::vector<int> scaling_users{3, 4, 5, 6};
    int scaling_m_max = 8;
    int scaling_n_max = 16;
    std::vector<int> scaling_sigmas{2, 3, 5, 7};
};

LemmaBattery default_lemma_battery();

std::vector<LemmaTrialResult> run_lemma_battery(const LemmaBattery& battery, int trials, std::uint64_t seed,
                                                const Tolerance& tol = {});

} // namespace mwrelay
