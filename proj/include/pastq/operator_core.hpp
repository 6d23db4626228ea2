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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pastq/errors.hpp"

namespace pastq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Dims = std::vector<Index>;

/** Hermiticity tolerance, relative to the largest matrix entry. */
inline constexpr double kHermTol = 1e-9;
/** Tolerance for eigendecomposition reconstruction checks. */
inline constexpr double kEigTol = 1e-10;

/** A dense operator on a tensor product of finite-dimensional subsystems.
 *
 *  Index convention (global to the library): entries are stored row-major
 *  over the composite space with the FIRST listed subsystem most
 *  significant, i.e. the basis ordering for dims = [d0, d1] is
 *  |0,0>, |0,1>, ..., |0,d1-1>, |1,0>, ...
 */
struct SubsystemOperator {
    Dims dims;
    Matrix mat;
};

/** Eigensystem of a Hermitian operator. */
struct HermitianSpectrum {
    /** Eigenvalues sorted ascending. */
    RealVector eigenvalues;
    /** Orthonormal eigenvector columns, paired with `eigenvalues`. */
    Matrix eigenvectors;
};

/** Product of subsystem dimensions, guarded against index overflow. */
Index total_dim(const Dims &dims);

/** Validate dims/matrix consistency and wrap them into a SubsystemOperator. */
SubsystemOperator make_operator(Dims dims, Matrix mat);

/** Identity operator on the given subsystem list. */
SubsystemOperator identity_operator(Dims dims);

/** Kronecker product; resulting dims are the concatenation A.dims ++ B.dims. */
SubsystemOperator tensor_product(const SubsystemOperator &a, const SubsystemOperator &b);

/** Trace out the listed subsystems; the kept subsystems retain their order.
 *  Tracing out everything is rejected (use `trace` for the scalar). */
SubsystemOperator partial_trace(const SubsystemOperator &x, const std::vector<std::size_t> &traced);

/** Scalar trace. */
Complex trace(const SubsystemOperator &x);

/** Transpose one subsystem in place, leaving the others untouched. */
SubsystemOperator partial_transpose(const SubsystemOperator &x, std::size_t subsystem);

/** Reorder subsystems: result subsystem i is input subsystem perm[i]. */
SubsystemOperator permute_subsystems(const SubsystemOperator &x, const std::vector<std::size_t> &perm);

/** Largest absolute entry of X - X^dagger. */
double hermiticity_defect(const Matrix &mat);

/** True when the hermiticity defect is at most tol * max|entry|. */
bool is_hermitian(const Matrix &mat, double tol = kHermTol);

/** Eigendecomposition of a Hermitian operator.
 *  Throws NonHermitianInput (carrying the defect) when the input fails the
 *  relative hermiticity check. */
HermitianSpectrum hermitian_eigs(const SubsystemOperator &x);

/** Smallest eigenvalue of a Hermitian operator. */
double min_eigenvalue(const SubsystemOperator &x);

/** Row-major strides of a dims list (stride of the last subsystem is 1). */
std::vector<Index> subsystem_strides(const Dims &dims);

/** Six-significant-digit rendering for diagnostics; keeps tiny magnitudes
 *  readable where fixed-point formatting would print 0.000000. */
std::string format_double(double v);

} // namespace pastq
