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

#include "pastq/retrodiction.hpp"

#include <algorithm>
#include <cmath>

namespace pastq {

namespace {

void check_same_dims(const Dims &a, const Dims &b, const char *what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": subsystem dimension lists differ");
    }
}

// Positive-semidefinite check with a relative slack on the smallest eigenvalue.
void check_positive(const SubsystemOperator &op, const char *what) {
    if (!is_hermitian(op.mat)) {
        throw NonHermitianInput(std::string(what) + " must be Hermitian (defect " +
                                    format_double(hermiticity_defect(op.mat)) + ")",
                                hermiticity_defect(op.mat));
    }
    const HermitianSpectrum spec = hermitian_eigs(op);
    const double largest = std::max(std::abs(spec.eigenvalues(0)),
                                    std::abs(spec.eigenvalues(spec.eigenvalues.size() - 1)));
    if (spec.eigenvalues(0) < -kPosTol * std::max(largest, 1e-300)) {
        throw InvalidArgument(std::string(what) + " has a negative eigenvalue " +
                              format_double(spec.eigenvalues(0)));
    }
}

RealVector normalize_with_floor(RealVector numerators, double floor_scale) {
    double denom = numerators.sum();
    const double floor = kDenomFloorFactor * floor_scale;
    if (!(denom > floor)) {
        throw ImpossiblePostselection("all outcome weights vanish: normalization " +
                                      format_double(denom) + " is at or below the floor " +
                                      format_double(floor));
    }
    return numerators / denom;
}

} // namespace

double povm_completeness_defect(const Povm &povm) {
    if (povm.outcome_ops.empty()) {
        throw DimensionMismatch("POVM must have at least one outcome");
    }
    const Index n = povm.outcome_ops.front().mat.rows();
    Matrix acc = Matrix::Zero(n, n);
    for (const SubsystemOperator &op : povm.outcome_ops) {
        acc += op.mat.adjoint() * op.mat;
    }
    return (acc - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

Povm make_povm(std::string label, std::vector<SubsystemOperator> outcome_ops) {
    if (outcome_ops.empty()) {
        throw DimensionMismatch("POVM must have at least one outcome");
    }
    for (const SubsystemOperator &op : outcome_ops) {
        check_same_dims(op.dims, outcome_ops.front().dims, "make_povm");
    }
    Povm povm{std::move(label), std::move(outcome_ops)};
    const double defect = povm_completeness_defect(povm);
    if (defect > kPovmTol) {
        throw InvalidArgument("POVM '" + povm.label + "' is not complete: defect " +
                              format_double(defect));
    }
    return povm;
}

PastState make_past_state(SubsystemOperator rho, SubsystemOperator effect) {
    check_same_dims(rho.dims, effect.dims, "make_past_state");
    check_positive(rho, "prior state");
    check_positive(effect, "posterior effect");
    if (!(rho.mat.trace().real() > 0.0)) {
        throw InvalidArgument("prior state must have positive trace");
    }
    if (!(effect.mat.cwiseAbs().maxCoeff() > 0.0)) {
        throw InvalidArgument("posterior effect must be nonzero");
    }
    return PastState{std::move(rho), std::move(effect)};
}

RealVector past_probs(const PastState &past, const Povm &povm) {
    check_same_dims(past.rho.dims, povm.outcome_ops.front().dims, "past_probs");
    const std::size_t m_count = povm.outcome_ops.size();
    RealVector numerators(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const Matrix &w = povm.outcome_ops[m].mat;
        numerators(m) = (w * past.rho.mat * w.adjoint() * past.effect.mat).trace().real();
    }
    const double floor_scale = past.rho.mat.trace().real() * past.effect.mat.trace().real();
    return normalize_with_floor(std::move(numerators), floor_scale);
}

RealVector past_probs_local(const PastState &past, const Povm &povm) {
    if (past.rho.dims.size() != 2) {
        throw DimensionMismatch("past_probs_local: past state must be bipartite");
    }
    if (povm.outcome_ops.front().dims != Dims{past.rho.dims[0]}) {
        throw DimensionMismatch("past_probs_local: POVM must act on the first subsystem");
    }
    const SubsystemOperator id_env = identity_operator({past.rho.dims[1]});
    std::vector<SubsystemOperator> extended;
    extended.reserve(povm.outcome_ops.size());
    for (const SubsystemOperator &op : povm.outcome_ops) {
        extended.push_back(tensor_product(op, id_env));
    }
    const std::size_t m_count = extended.size();
    RealVector numerators(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const Matrix &w = extended[m].mat;
        numerators(m) = (w * past.rho.mat * w.adjoint() * past.effect.mat).trace().real();
    }
    const double floor_scale = past.rho.mat.trace().real() * past.effect.mat.trace().real();
    return normalize_with_floor(std::move(numerators), floor_scale);
}

Observable make_observable(SubsystemOperator matrix) {
    const HermitianSpectrum spec = hermitian_eigs(matrix);
    const Index n = spec.eigenvalues.size();
    const double spread = spec.eigenvalues(n - 1) - spec.eigenvalues(0);
    const double gap_tol = kDegenTol * std::max(1.0, spread);

    Observable obs;
    obs.matrix = std::move(matrix);
    Index start = 0;
    while (start < n) {
        Index stop = start + 1;
        while (stop < n && spec.eigenvalues(stop) - spec.eigenvalues(stop - 1) <= gap_tol) {
            ++stop;
        }
        Matrix projector = Matrix::Zero(n, n);
        double value = 0.0;
        for (Index i = start; i < stop; ++i) {
            projector += spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
            value += spec.eigenvalues(i);
        }
        obs.eigenvalues.push_back(value / double(stop - start));
        obs.projectors.push_back(std::move(projector));
        start = stop;
    }
    return obs;
}

Moments past_moments(const PastState &past, const Observable &obs) {
    std::vector<SubsystemOperator> ops;
    ops.reserve(obs.projectors.size());
    for (const Matrix &projector : obs.projectors) {
        ops.push_back(SubsystemOperator{obs.matrix.dims, projector});
    }
    // Projectors of a Hermitian observable form a complete POVM by construction.
    const Povm povm{"observable", std::move(ops)};
    const RealVector probs = past_probs(past, povm);
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t m = 0; m < obs.eigenvalues.size(); ++m) {
        mean += obs.eigenvalues[m] * probs(Index(m));
        second += obs.eigenvalues[m] * obs.eigenvalues[m] * probs(Index(m));
    }
    return Moments{mean, second - mean * mean};
}

PureEnsemble spectral_ensemble(const SubsystemOperator &op) {
    const HermitianSpectrum spec = hermitian_eigs(op);
    const Index n = spec.eigenvalues.size();
    const double scale = std::max(std::abs(spec.eigenvalues(0)), std::abs(spec.eigenvalues(n - 1)));
    PureEnsemble ensemble;
    for (Index i = 0; i < n; ++i) {
        if (spec.eigenvalues(i) > 1e-12 * scale) {
            ensemble.weights.push_back(spec.eigenvalues(i));
            ensemble.vectors.push_back(spec.eigenvectors.col(i));
        }
    }
    return ensemble;
}

QuasiconvexDecomposition quasiconvex_decompose(const PureEnsemble &rho_ensemble,
                                               const PureEnsemble &effect_ensemble,
                                               const Povm &povm) {
    const std::size_t nx = rho_ensemble.vectors.size();
    const std::size_t ny = effect_ensemble.vectors.size();
    if (nx == 0 || ny == 0) {
        throw InvalidArgument("quasiconvex_decompose: empty ensemble");
    }
    const std::size_t m_count = povm.outcome_ops.size();

    // Per-component unnormalized outcome weights n_m(x, y) = |<e_y| W_m |psi_x>|^2
    // and their totals. A vanishing total marks the component as excluded.
    std::vector<std::vector<RealVector>> numerators(nx, std::vector<RealVector>(ny));
    RealMatrix totals = RealMatrix::Zero(Index(nx), Index(ny));
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            RealVector n_m(m_count);
            for (std::size_t m = 0; m < m_count; ++m) {
                const Complex amp =
                    effect_ensemble.vectors[y].adjoint() * povm.outcome_ops[m].mat * rho_ensemble.vectors[x];
                n_m(Index(m)) = std::norm(amp);
            }
            totals(Index(x), Index(y)) = n_m.sum();
            numerators[x][y] = std::move(n_m);
        }
    }

    const double floor = kDenomFloorFactor * totals.maxCoeff();

    QuasiconvexDecomposition out;
    out.rho_weights.assign(nx, 0.0);
    out.effect_weights = RealMatrix::Zero(Index(nx), Index(ny));
    out.component_probs.assign(nx, std::vector<RealVector>(ny));

    // Adjusted preparation weights multiply each original weight by the total
    // retrodiction weight its component carries under the full effect; the
    // effect weights are reweighted the same way within each preparation row.
    double rho_norm = 0.0;
    std::vector<double> row_norm(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        double a_x = 0.0; // sum_y q_y * total(x, y)
        for (std::size_t y = 0; y < ny; ++y) {
            if (totals(Index(x), Index(y)) > floor) {
                const double w = effect_ensemble.weights[y] * totals(Index(x), Index(y));
                out.effect_weights(Index(x), Index(y)) = w;
                a_x += w;
                out.component_probs[x][y] = numerators[x][y] / totals(Index(x), Index(y));
            }
        }
        row_norm[x] = a_x;
        out.rho_weights[x] = rho_ensemble.weights[x] * a_x;
        rho_norm += out.rho_weights[x];
    }
    if (!(rho_norm > 0.0)) {
        throw ImpossiblePostselection(
            "quasiconvex_decompose: every component has vanishing outcome weight");
    }
    for (std::size_t x = 0; x < nx; ++x) {
        out.rho_weights[x] /= rho_norm;
        if (row_norm[x] > 0.0) {
            out.effect_weights.row(Index(x)) /= row_norm[x];
        }
    }

    RealVector reconstruction = RealVector::Zero(Index(m_count));
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            if (out.component_probs[x][y].size() > 0) {
                reconstruction +=
                    out.rho_weights[x] * out.effect_weights(Index(x), Index(y)) * out.component_probs[x][y];
            }
        }
    }
    out.reconstruction = std::move(reconstruction);
    return out;
}

PurePastPair compress_environment(const Vector &psi, const Vector &effect_vec, Index d_system,
                                  Index d_env) {
    if (d_env < d_system) {
        throw DimensionMismatch("compress_environment: environment dimension " +
                                std::to_string(d_env) + " is smaller than the system dimension " +
                                std::to_string(d_system));
    }
    const Index total = d_system * d_env;
    if (psi.size() != total || effect_vec.size() != total) {
        throw DimensionMismatch("compress_environment: vector length does not match dims");
    }

    // Reshape (system index, environment index) row-major.
    auto as_matrix = [&](const Vector &v) {
        Matrix m(d_system, d_env);
        for (Index i = 0; i < d_system; ++i) {
            for (Index j = 0; j < d_env; ++j) {
                m(i, j) = v(i * d_env + j);
            }
        }
        return m;
    };
    const Matrix psi_mat = as_matrix(psi);
    const Matrix eff_mat = as_matrix(effect_vec);

    // Schmidt decompositions: v = sum_c s_c |u_c> (x) |env_c> with
    // env_c = conj(V.col(c)) for the factorization v_mat = U S V^dag.
    Eigen::JacobiSVD<Matrix> svd_psi(psi_mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::JacobiSVD<Matrix> svd_eff(eff_mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Matrix psi_env = svd_psi.matrixV().conjugate(); // columns are the env vectors
    const Matrix eff_env = svd_eff.matrixV().conjugate();

    // Local probabilities depend on the environment only through the overlap
    // matrix of the two Schmidt environment families, so we re-realize it
    // with vectors in C^{d_system}: the state's environment vectors become
    // the computational basis, the effect's become the overlap columns.
    // (Any factorization of the overlap matrix would do equally well.)
    const Matrix overlap = psi_env.adjoint() * eff_env; // d_system x d_system

    Vector psi_small = Vector::Zero(d_system * d_system);
    Vector eff_small = Vector::Zero(d_system * d_system);
    const Index rank = svd_psi.singularValues().size();
    for (Index c = 0; c < rank; ++c) {
        // |u_c> (x) |c>
        for (Index i = 0; i < d_system; ++i) {
            psi_small(i * d_system + c) += svd_psi.singularValues()(c) * svd_psi.matrixU()(i, c);
        }
    }
    for (Index b = 0; b < svd_eff.singularValues().size(); ++b) {
        for (Index i = 0; i < d_system; ++i) {
            for (Index a = 0; a < d_system; ++a) {
                eff_small(i * d_system + a) +=
                    svd_eff.singularValues()(b) * svd_eff.matrixU()(i, b) * overlap(a, b);
            }
        }
    }

    const double psi_norm = psi_small.norm();
    const double eff_norm = eff_small.norm();
    if (psi_norm > 0.0) {
        psi_small /= psi_norm;
    }
    if (eff_norm > 0.0) {
        eff_small /= eff_norm;
    }
    return PurePastPair{std::move(psi_small), std::move(eff_small), Dims{d_system, d_system}};
}

ProbabilityTable past_probs_table_local(const PastState &past, const std::vector<Povm> &povms) {
    if (povms.empty()) {
        throw DimensionMismatch("probability table needs at least one setting");
    }
    const Index outcomes = Index(povms.front().outcome_ops.size());
    RealMatrix table(Index(povms.size()), outcomes);
    for (std::size_t a = 0; a < povms.size(); ++a) {
        if (Index(povms[a].outcome_ops.size()) != outcomes) {
            throw DimensionMismatch("probability table requires equal outcome counts per setting");
        }
        table.row(Index(a)) = past_probs_local(past, povms[a]).transpose();
    }
    return ProbabilityTable{std::move(table)};
}

ProbabilityTable past_probs_table(const PastState &past, const std::vector<Povm> &povms) {
    if (povms.empty()) {
        throw DimensionMismatch("probability table needs at least one setting");
    }
    const Index outcomes = Index(povms.front().outcome_ops.size());
    RealMatrix table(Index(povms.size()), outcomes);
    for (std::size_t a = 0; a < povms.size(); ++a) {
        if (Index(povms[a].outcome_ops.size()) != outcomes) {
            throw DimensionMismatch("probability table requires equal outcome counts per setting");
        }
        table.row(Index(a)) = past_probs(past, povms[a]).transpose();
    }
    return ProbabilityTable{std::move(table)};
}

} // namespace pastq
