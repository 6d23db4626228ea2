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

#include "pastq/operator_core.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

namespace pastq {

namespace {

// Dense storage caps out well before this; the bound exists to turn a
// nonsensical dims list into a clean error instead of a bad_alloc.
constexpr Index kMaxTotalDim = Index(1) << 30;

void check_subsystem_index(const Dims &dims, std::size_t index, const char *what) {
    if (index >= dims.size()) {
        throw DimensionMismatch(std::string(what) + ": subsystem index " + std::to_string(index) +
                                " out of range for " + std::to_string(dims.size()) + " subsystems");
    }
}

} // namespace

Index total_dim(const Dims &dims) {
    if (dims.empty()) {
        throw DimensionMismatch("operator needs at least one subsystem");
    }
    Index total = 1;
    for (Index d : dims) {
        if (d < 1) {
            throw DimensionMismatch("subsystem dimension must be >= 1, got " + std::to_string(d));
        }
        if (total > kMaxTotalDim / d) {
            throw SizeOverflow("total dimension exceeds dense-storage limit");
        }
        total *= d;
    }
    return total;
}

std::vector<Index> subsystem_strides(const Dims &dims) {
    std::vector<Index> strides(dims.size());
    Index acc = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        strides[i] = acc;
        acc *= dims[i];
    }
    return strides;
}

SubsystemOperator make_operator(Dims dims, Matrix mat) {
    const Index total = total_dim(dims);
    if (mat.rows() != mat.cols()) {
        throw DimensionMismatch("operator matrix must be square, got " + std::to_string(mat.rows()) +
                                "x" + std::to_string(mat.cols()));
    }
    if (mat.rows() != total) {
        throw DimensionMismatch("matrix size " + std::to_string(mat.rows()) +
                                " does not match dims product " + std::to_string(total));
    }
    return SubsystemOperator{std::move(dims), std::move(mat)};
}

SubsystemOperator identity_operator(Dims dims) {
    const Index total = total_dim(dims);
    return SubsystemOperator{std::move(dims), Matrix::Identity(total, total)};
}

SubsystemOperator tensor_product(const SubsystemOperator &a, const SubsystemOperator &b) {
    Dims dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    const Index total = total_dim(dims); // overflow check before allocation
    const Index ra = a.mat.rows();
    const Index rb = b.mat.rows();
    Matrix out(total, total);
    for (Index i = 0; i < ra; ++i) {
        for (Index j = 0; j < ra; ++j) {
            out.block(i * rb, j * rb, rb, rb) = a.mat(i, j) * b.mat;
        }
    }
    return SubsystemOperator{std::move(dims), std::move(out)};
}

SubsystemOperator partial_trace(const SubsystemOperator &x, const std::vector<std::size_t> &traced) {
    const std::size_t n = x.dims.size();
    std::vector<bool> is_traced(n, false);
    for (std::size_t t : traced) {
        check_subsystem_index(x.dims, t, "partial_trace");
        if (is_traced[t]) {
            throw DimensionMismatch("partial_trace: subsystem " + std::to_string(t) + " listed twice");
        }
        is_traced[t] = true;
    }
    Dims kept_dims;
    std::vector<std::size_t> kept;
    std::vector<std::size_t> gone;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_traced[i]) {
            gone.push_back(i);
        } else {
            kept.push_back(i);
            kept_dims.push_back(x.dims[i]);
        }
    }
    if (kept.empty()) {
        throw DimensionMismatch("partial_trace: cannot trace out every subsystem; use trace()");
    }

    const std::vector<Index> strides = subsystem_strides(x.dims);
    const Index kept_total = total_dim(kept_dims);
    Index gone_total = 1;
    for (std::size_t g : gone) {
        gone_total *= x.dims[g];
    }

    // Map a linear index over the kept (resp. traced) subsystems to the
    // offset it contributes in the full space.
    auto offsets = [&](const std::vector<std::size_t> &subs, Index count) {
        std::vector<Index> result(count, 0);
        for (Index lin = 0; lin < count; ++lin) {
            Index rem = lin;
            for (std::size_t s = subs.size(); s-- > 0;) {
                const Index d = x.dims[subs[s]];
                result[lin] += (rem % d) * strides[subs[s]];
                rem /= d;
            }
        }
        return result;
    };
    const std::vector<Index> kept_off = offsets(kept, kept_total);
    const std::vector<Index> gone_off = offsets(gone, gone_total);

    Matrix out = Matrix::Zero(kept_total, kept_total);
    for (Index r = 0; r < kept_total; ++r) {
        for (Index c = 0; c < kept_total; ++c) {
            Complex acc(0.0, 0.0);
            for (Index g = 0; g < gone_total; ++g) {
                acc += x.mat(kept_off[r] + gone_off[g], kept_off[c] + gone_off[g]);
            }
            out(r, c) = acc;
        }
    }
    return SubsystemOperator{std::move(kept_dims), std::move(out)};
}

Complex trace(const SubsystemOperator &x) { return x.mat.trace(); }

SubsystemOperator partial_transpose(const SubsystemOperator &x, std::size_t subsystem) {
    check_subsystem_index(x.dims, subsystem, "partial_transpose");
    const std::vector<Index> strides = subsystem_strides(x.dims);
    const Index d = x.dims[subsystem];
    const Index stride = strides[subsystem];
    const Index total = x.mat.rows();

    Matrix out(total, total);
    for (Index r = 0; r < total; ++r) {
        const Index rs = (r / stride) % d;
        const Index rbase = r - rs * stride;
        for (Index c = 0; c < total; ++c) {
            const Index cs = (c / stride) % d;
            const Index cbase = c - cs * stride;
            out(rbase + cs * stride, cbase + rs * stride) = x.mat(r, c);
        }
    }
    return SubsystemOperator{x.dims, std::move(out)};
}

SubsystemOperator permute_subsystems(const SubsystemOperator &x, const std::vector<std::size_t> &perm) {
    const std::size_t n = x.dims.size();
    if (perm.size() != n) {
        throw InvalidPermutation("permutation length " + std::to_string(perm.size()) +
                                 " does not match subsystem count " + std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) {
            throw InvalidPermutation("argument is not a permutation of the subsystem indices");
        }
        seen[p] = true;
    }

    Dims new_dims(n);
    for (std::size_t i = 0; i < n; ++i) {
        new_dims[i] = x.dims[perm[i]];
    }
    const std::vector<Index> old_strides = subsystem_strides(x.dims);
    const Index total = x.mat.rows();

    // index_map[new linear index] = old linear index
    std::vector<Index> index_map(total);
    for (Index lin = 0; lin < total; ++lin) {
        Index rem = lin;
        Index old = 0;
        for (std::size_t i = n; i-- > 0;) {
            const Index d = new_dims[i];
            old += (rem % d) * old_strides[perm[i]];
            rem /= d;
        }
        index_map[lin] = old;
    }

    Matrix out(total, total);
    for (Index r = 0; r < total; ++r) {
        for (Index c = 0; c < total; ++c) {
            out(r, c) = x.mat(index_map[r], index_map[c]);
        }
    }
    return SubsystemOperator{std::move(new_dims), std::move(out)};
}

double hermiticity_defect(const Matrix &mat) {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix &mat, double tol) {
    const double scale = std::max(mat.cwiseAbs().maxCoeff(), 1e-300);
    return hermiticity_defect(mat) <= tol * scale;
}

HermitianSpectrum hermitian_eigs(const SubsystemOperator &x) {
    if (!is_hermitian(x.mat)) {
        throw NonHermitianInput("hermitian_eigs: input is not Hermitian (defect " +
                                    format_double(hermiticity_defect(x.mat)) + ")",
                                hermiticity_defect(x.mat));
    }
    // Symmetrize so solver noise cannot depend on which triangle Eigen reads.
    const Matrix sym = 0.5 * (x.mat + x.mat.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw PastqError("hermitian_eigs: eigensolver failed to converge");
    }
    return HermitianSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const SubsystemOperator &x) { return hermitian_eigs(x).eigenvalues(0); }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace pastq
