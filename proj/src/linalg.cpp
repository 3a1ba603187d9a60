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

#include "mwrelay/linalg.hpp"

#include "mwrelay/error.hpp"

#include <algorithm>
#include <string>

namespace mwrelay {

void Tolerance::validate() const
{
    if (!(rank_rel > 0.0 && rank_rel < 1e-3))
        throw Error(ErrorCode::InvalidArgument, "rank_rel must lie in (0, 1e-3)");
    if (!(leakage_abs > 0.0 && leakage_abs < 1e-3))
        throw Error(ErrorCode::InvalidArgument, "leakage_abs must lie in (0, 1e-3)");
}

namespace linalg {
namespace {

struct Decomposition {
    Eigen::VectorXd singular_values; // descending
    ComplexMatrix u;                 // full
    ComplexMatrix v;                 // full
    std::size_t rank = 0;
};

std::size_t rank_from(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols, const Tolerance& tol)
{
    if (sv.size() == 0)
        return 0;
    const double cut = tol.rank_rel * sv(0) * static_cast<double>(std::max(rows, cols));
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut)
            ++r;
    return r;
}

Decomposition decompose(const ComplexMatrix& a, const Tolerance& tol)
{
    Decomposition d;
    if (a.rows() == 0 || a.cols() == 0) {
        d.u = ComplexMatrix::Identity(a.rows(), a.rows());
        d.v = ComplexMatrix::Identity(a.cols(), a.cols());
        return d;
    }
    Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    d.singular_values = svd.singularValues();
    d.u = svd.matrixU();
    d.v = svd.matrixV();
    d.rank = rank_from(d.singular_values, a.rows(), a.cols(), tol);
    return d;
}

} // namespace

void require_finite(const ComplexMatrix& a)
{
    if (!a.allFinite())
        throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
}

std::size_t numerical_rank(const ComplexMatrix& a, const Tolerance& tol)
{
    require_finite(a);
    if (a.size() == 0)
        return 0;
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    return rank_from(svd.singularValues(), a.rows(), a.cols(), tol);
}

ComplexMatrix nullspace_basis(const ComplexMatrix& a, const Tolerance& tol)
{
    require_finite(a);
    const auto d = decompose(a, tol);
    const auto cols = a.cols();
    const auto nullity = cols - static_cast<Eigen::Index>(d.rank);
    ComplexMatrix basis(cols, nullity);
    // Trailing columns of V belong to the smallest singular values.
    for (Eigen::Index j = 0; j < nullity; ++j)
        basis.col(j) = d.v.col(cols - 1 - j);
    return basis;
}

ComplexMatrix range_basis(const ComplexMatrix& a, const Tolerance& tol)
{
    require_finite(a);
    const auto d = decompose(a, tol);
    return d.u.leftCols(static_cast<Eigen::Index>(d.rank));
}

ComplexMatrix intersection_basis(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol)
{
    if (a.rows() != b.rows())
        throw Error(ErrorCode::ShapeMismatch, "intersection_basis: row counts differ (" +
                                                  std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
    require_finite(a);
    require_finite(b);
    ComplexMatrix stacked(a.rows(), a.cols() + b.cols());
    stacked << a, -b;
    const ComplexMatrix kernel = nullspace_basis(stacked, tol);
    if (kernel.cols() == 0)
        return ComplexMatrix(a.rows(), 0);
    const ComplexMatrix images = a * kernel.topRows(a.cols());
    // Kernel vectors with a*x = 0 come from null(a) x null(b) and vanish here.
    return range_basis(images, tol);
}

ComplexMatrix complement_projector(const ComplexMatrix& b, const Tolerance& tol)
{
    require_finite(b);
    const auto n = b.rows();
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    if (b.cols() == 0)
        return p;
    const ComplexMatrix q = range_basis(b, tol);
    p.noalias() -= q * q.adjoint();
    return p;
}

ComplexMatrix hstack(std::span<const ComplexMatrix> blocks)
{
    if (blocks.empty())
        return ComplexMatrix(0, 0);
    const auto rows = blocks.front().rows();
    Eigen::Index cols = 0;
    for (const auto& blk : blocks) {
        if (blk.rows() != rows)
            throw Error(ErrorCode::ShapeMismatch, "hstack: blocks have different row counts");
        cols += blk.cols();
    }
    ComplexMatrix out(rows, cols);
    Eigen::Index at = 0;
    for (const auto& blk : blocks) {
        out.middleCols(at, blk.cols()) = blk;
        at += blk.cols();
    }
    return out;
}

std::size_t union_span_dim(std::span<const ComplexMatrix> bases, const Tolerance& tol)
{
    if (bases.empty())
        return 0;
    return numerical_rank(hstack(bases), tol);
}

} // namespace linalg
} // namespace mwrelay
