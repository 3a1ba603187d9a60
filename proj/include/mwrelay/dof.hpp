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

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace mwrelay {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Parses "p/q", "p" or a finite decimal such as "0.3" exactly.
Rational parse_rational(const std::string& text);

namespace dof {

struct DofResult {
    Rational d_user;
    Rational d_sum;   // k * d_user
    Rational d_relay; // d_sum / n
    bool capacity_tight = false;
};

struct PatternCoefficients {
    int t = 0;
    Rational alpha_t;
    Rational beta_t;
    Rational gamma_t1; // order-t units topped up with order-(t+1) units
    Rational gamma_t2; // relay space filled by order-t units alone
    Rational theta_t;  // corner ratio where the two coincide
    std::optional<Rational> tau_t; // only for t <= k-2
};

/// alpha_t = C(k-1, t-1) (t-1), beta_t = C(k, t) (t-1)^2 for t in [2, k].
std::pair<std::int64_t, std::int64_t> alpha_beta(int k, int t);

/// Same as alpha_beta but also accepts t = k+1, the "no alignment" order whose
/// units carry k(k-1) independent streams: (k-1, k(k-1)).
std::pair<std::int64_t, std::int64_t> alpha_beta_ext(int k, int t);

std::int64_t binomial(int n, int r);

DofResult outer_bound_per_user(const Rational& m, const Rational& n, int k);

/// t with m/n in (1/t, 1/(t-1)]; 2 when m >= n.
int regime_index(const Rational& m, const Rational& n);

/// Lower and upper edges of the ratio ranges on which the scheme is
/// capacity-achieving: (k-1)/(k(k-2)) and 1/(k(k-1)) + 1/2.
Rational capacity_lower_edge(int k);
Rational capacity_upper_edge(int k);

DofResult achievable_basic(const Rational& m, const Rational& n, int k);

PatternCoefficients gamma_theta_tau(const Rational& m, const Rational& n, int k, int t);

/// theta_t depends on (k, t) only.
Rational corner_ratio(int k, int t);
Rational improved_breakpoint(int k, int t);

DofResult achievable_improved(const Rational& m, const Rational& n, int k);

/// d_sum / n as k grows without bound.
Rational asymptotic_dof(const Rational& ratio, bool improved);

bool scaling_check(const Rational& m, const Rational& n, std::int64_t sigma, int k);

} // namespace dof
} // namespace mwrelay
