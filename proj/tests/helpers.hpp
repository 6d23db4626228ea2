// Copyright 2026 The pastq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "pastq/operator_core.hpp"
#include "pastq/retrodiction.hpp"
#include "pastq/rng.hpp"

namespace pastq::testing {

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    return (a.derived() - b.derived()).cwiseAbs().maxCoeff();
}

/** Dense matrix of i.i.d. complex normals (not Hermitian, not normalized). */
inline Matrix random_matrix(Index rows, Index cols, PhiloxStream &rng) {
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            m(r, c) = rng.complex_normal();
        }
    }
    return m;
}

/** Random full-rank positive semidefinite operator, trace-normalized. */
inline SubsystemOperator random_density(const Dims &dims, PhiloxStream &rng) {
    const Index n = total_dim(dims);
    const Matrix g = random_matrix(n, n, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    return SubsystemOperator{dims, std::move(w)};
}

/** Random Hermitian operator with entries of order one (indefinite). */
inline SubsystemOperator random_hermitian(const Dims &dims, PhiloxStream &rng) {
    const Index n = total_dim(dims);
    const Matrix g = random_matrix(n, n, rng);
    return SubsystemOperator{dims, 0.5 * (g + g.adjoint())};
}

/** Random full-rank positive semidefinite operator, not normalized; suitable
 *  as a postselection effect. */
inline SubsystemOperator random_effect(const Dims &dims, PhiloxStream &rng) {
    const Index n = total_dim(dims);
    const Matrix g = random_matrix(n, n, rng);
    return SubsystemOperator{dims, Matrix(g * g.adjoint())};
}

} // namespace pastq::testing
