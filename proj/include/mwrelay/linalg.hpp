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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>

namespace mwrelay {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Thresholds that turn "with probability one" dimension claims into
/// floating-point checks.
struct Tolerance {
    double rank_rel = 1e-10;   // singular value cut, relative to sigma_max * max(rows, cols)
    double leakage_abs = 1e-8; // residual norms and interference coefficients

    /// Throws InvalidArgument unless 0 < rank_rel < 1e-3 and 0 < leakage_abs < 1e-3.
    void validate() const;
};

namespace linalg {

/// Throws InvalidMatrix on NaN/Inf entries.
void require_finite(const ComplexMatrix& a);

std::size_t numerical_rank(const ComplexMatrix& a, const Tolerance& tol);

/// Orthonormal basis of the right nullspace, cols() - rank columns, ordered by
/// ascending singular value. An N x 0 matrix means the trivial subspace.
ComplexMatrix nullspace_basis(const ComplexMatrix& a, const Tolerance& tol);

/// Orthonormal basis of span(a).
ComplexMatrix range_basis(const ComplexMatrix& a, const Tolerance& tol);

/// Orthonormal basis of span(a) ∩ span(b), from the nullspace of [a, -b].
ComplexMatrix intersection_basis(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol);

/// I - Q Q^H with Q an orthonormal basis of span(b). Hermitian, idempotent and
/// annihilates every column of b; falls back gracefully on rank-deficient b.
ComplexMatrix complement_projector(const ComplexMatrix& b, const Tolerance& tol);

/// Horizontal concatenation; all blocks must share a row count.
ComplexMatrix hstack(std::span<const ComplexMatrix> blocks);

std::size_t union_span_dim(std::span<const ComplexMatrix> bases, const Tolerance& tol);

} // namespace linalg
} // namespace mwrelay
