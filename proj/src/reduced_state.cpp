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

#include "pastq/reduced_state.hpp"

#include <cmath>

namespace pastq {

namespace {

void require_bipartite(const Dims &dims, const char *what) {
    if (dims.size() != 2) {
        throw DimensionMismatch(std::string(what) + ": operator must have exactly two subsystems");
    }
}

// Hermitian orthonormal basis of d x d matrices under the trace inner
// product: diagonal units, symmetrized off-diagonal pairs, antisymmetrized
// off-diagonal pairs.
std::vector<Matrix> hermitian_basis(Index d) {
    std::vector<Matrix> basis;
    basis.reserve(std::size_t(d) * std::size_t(d));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < d; ++i) {
        Matrix m = Matrix::Zero(d, d);
        m(i, i) = 1.0;
        basis.push_back(std::move(m));
    }
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            Matrix s = Matrix::Zero(d, d);
            s(i, j) = inv_sqrt2;
            s(j, i) = inv_sqrt2;
            basis.push_back(std::move(s));
            Matrix a = Matrix::Zero(d, d);
            a(i, j) = Complex(0.0, inv_sqrt2);
            a(j, i) = Complex(0.0, -inv_sqrt2);
            basis.push_back(std::move(a));
        }
    }
    return basis;
}

struct PositiveSplit {
    Matrix plus;
    Matrix minus;
    bool has_plus;
    bool has_minus;
};

PositiveSplit split_positive(const Matrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Index n = h.rows();
    Matrix plus = Matrix::Zero(n, n);
    Matrix minus = Matrix::Zero(n, n);
    bool has_plus = false;
    bool has_minus = false;
    for (Index i = 0; i < n; ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > 0.0) {
            plus += lambda * solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
            has_plus = true;
        } else if (lambda < 0.0) {
            minus -= lambda * solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
            has_minus = true;
        }
    }
    return PositiveSplit{std::move(plus), std::move(minus), has_plus, has_minus};
}

} // namespace

ReducedPastState xi_from_past(const PastState &past) {
    require_bipartite(past.rho.dims, "xi_from_past");
    const Index da = past.rho.dims[0];
    const Index db = past.rho.dims[1];

    // xi[(x,a),(x',a')] = sum_{b,b'} rho[(x,b),(x',b')] * E[(a,b'),(a',b)]
    // i.e. the environment legs of the prior are closed on the effect with
    // its two subsystems swapped.
    Matrix xi = Matrix::Zero(da * da, da * da);
    for (Index x = 0; x < da; ++x) {
        for (Index xp = 0; xp < da; ++xp) {
            for (Index a = 0; a < da; ++a) {
                for (Index ap = 0; ap < da; ++ap) {
                    Complex acc(0.0, 0.0);
                    for (Index b = 0; b < db; ++b) {
                        for (Index bp = 0; bp < db; ++bp) {
                            acc += past.rho.mat(x * db + b, xp * db + bp) *
                                   past.effect.mat(a * db + bp, ap * db + b);
                        }
                    }
                    xi(x * da + a, xp * da + ap) = acc;
                }
            }
        }
    }
    return ReducedPastState{SubsystemOperator{{da, da}, std::move(xi)}, "contraction"};
}

ProductExpansion product_expansion(const SubsystemOperator &x) {
    require_bipartite(x.dims, "product_expansion");
    if (!is_hermitian(x.mat)) {
        throw NonHermitianInput("product_expansion requires a Hermitian operator (defect " +
                                    format_double(hermiticity_defect(x.mat)) + ")",
                                hermiticity_defect(x.mat));
    }
    const Index da = x.dims[0];
    const Index db = x.dims[1];
    const std::vector<Matrix> basis_a = hermitian_basis(da);
    const std::vector<Matrix> basis_b = hermitian_basis(db);

    std::vector<PositiveSplit> split_a;
    split_a.reserve(basis_a.size());
    for (const Matrix &h : basis_a) {
        split_a.push_back(split_positive(h));
    }
    std::vector<PositiveSplit> split_b;
    split_b.reserve(basis_b.size());
    for (const Matrix &h : basis_b) {
        split_b.push_back(split_positive(h));
    }

    const double scale = std::max(x.mat.cwiseAbs().maxCoeff(), 1e-300);
    ProductExpansion expansion;
    expansion.dims = x.dims;
    for (std::size_t u = 0; u < basis_a.size(); ++u) {
        for (std::size_t v = 0; v < basis_b.size(); ++v) {
            // Coefficient in the orthonormal Hermitian product basis.
            Complex c(0.0, 0.0);
            for (Index i = 0; i < da; ++i) {
                for (Index ip = 0; ip < da; ++ip) {
                    if (basis_a[u](ip, i) == Complex(0.0, 0.0)) {
                        continue;
                    }
                    for (Index j = 0; j < db; ++j) {
                        for (Index jp = 0; jp < db; ++jp) {
                            c += basis_a[u](ip, i) * basis_b[v](jp, j) * x.mat(i * db + j, ip * db + jp);
                        }
                    }
                }
            }
            const double coeff = c.real();
            if (std::abs(coeff) <= 1e-14 * scale) {
                continue;
            }
            // H_u (x) H_v = (P_u+ - P_u-) (x) (P_v+ - P_v-): four sign combos.
            const PositiveSplit &sa = split_a[u];
            const PositiveSplit &sb = split_b[v];
            auto emit = [&](bool plus_a, bool plus_b) {
                const bool have_a = plus_a ? sa.has_plus : sa.has_minus;
                const bool have_b = plus_b ? sb.has_plus : sb.has_minus;
                if (!have_a || !have_b) {
                    return;
                }
                const double sign = (plus_a == plus_b) ? 1.0 : -1.0;
                expansion.terms.push_back(ProductTerm{
                    coeff * sign,
                    SubsystemOperator{{da}, plus_a ? sa.plus : sa.minus},
                    SubsystemOperator{{db}, plus_b ? sb.plus : sb.minus},
                });
            };
            emit(true, true);
            emit(true, false);
            emit(false, true);
            emit(false, false);
        }
    }
    return expansion;
}

ReducedPastState xi_from_expansion(const ProductExpansion &rho_expansion,
                                   const ProductExpansion &effect_expansion) {
    if (rho_expansion.dims != effect_expansion.dims) {
        throw DimensionMismatch("xi_from_expansion: expansions live on different spaces");
    }
    const Index da = rho_expansion.dims[0];
    Matrix xi = Matrix::Zero(da * da, da * da);
    for (const ProductTerm &rho_term : rho_expansion.terms) {
        for (const ProductTerm &eff_term : effect_expansion.terms) {
            const double weight =
                rho_term.coeff * eff_term.coeff * (rho_term.right.mat * eff_term.right.mat).trace().real();
            if (weight == 0.0) {
                continue;
            }
            // left factors live on the two copies of the system space
            for (Index i = 0; i < da; ++i) {
                for (Index ip = 0; ip < da; ++ip) {
                    const Complex r = rho_term.left.mat(i, ip);
                    if (r == Complex(0.0, 0.0)) {
                        continue;
                    }
                    for (Index j = 0; j < da; ++j) {
                        for (Index jp = 0; jp < da; ++jp) {
                            xi(i * da + j, ip * da + jp) += weight * r * eff_term.left.mat(j, jp);
                        }
                    }
                }
            }
        }
    }
    return ReducedPastState{SubsystemOperator{{da, da}, std::move(xi)}, "expansion"};
}

RealVector probs_from_xi(const ReducedPastState &reduced, const Povm &povm) {
    require_bipartite(reduced.xi.dims, "probs_from_xi");
    const Index da = reduced.xi.dims[0];
    if (reduced.xi.dims[1] != da) {
        throw DimensionMismatch("probs_from_xi: reduced operator must have two equal subsystems");
    }
    if (povm.outcome_ops.front().dims != Dims{da}) {
        throw DimensionMismatch("probs_from_xi: POVM dimension does not match");
    }
    const std::size_t m_count = povm.outcome_ops.size();
    RealVector numerators(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const Matrix &w = povm.outcome_ops[m].mat;
        // On product inputs xi = rho (x) E this contraction reduces to
        // Tr(W rho W^dag E); it extends linearly to every reduced operator:
        // n_m = sum_{p,q,r,s} W(p,q) conj(W(s,r)) xi[(q,s),(r,p)].
        Complex acc(0.0, 0.0);
        for (Index p = 0; p < da; ++p) {
            for (Index q = 0; q < da; ++q) {
                const Complex wpq = w(p, q);
                if (wpq == Complex(0.0, 0.0)) {
                    continue;
                }
                for (Index s = 0; s < da; ++s) {
                    for (Index r = 0; r < da; ++r) {
                        acc += wpq * std::conj(w(s, r)) * reduced.xi.mat(q * da + s, r * da + p);
                    }
                }
            }
        }
        numerators(Index(m)) = acc.real();
    }
    const double abs_sum = numerators.cwiseAbs().sum();
    const double denom = numerators.sum();
    if (!(abs_sum > 0.0) || denom <= kDenomFloorFactor * abs_sum) {
        throw ImpossiblePostselection("probs_from_xi: normalization vanishes");
    }
    return numerators / denom;
}

NegativityResult negativity_witness(const ReducedPastState &reduced) {
    const HermitianSpectrum spec = hermitian_eigs(reduced.xi);
    const Index n = spec.eigenvalues.size();
    const double lambda_min = spec.eigenvalues(0);
    const double norm = std::max(std::abs(lambda_min), std::abs(spec.eigenvalues(n - 1)));
    return NegativityResult{lambda_min, lambda_min < -kNegTol * std::max(norm, 1e-300)};
}

MarginalCriteria marginal_criteria(const ReducedPastState &reduced) {
    const SubsystemOperator first = partial_trace(reduced.xi, {1});
    const SubsystemOperator second = partial_trace(reduced.xi, {0});
    return MarginalCriteria{min_eigenvalue(first), min_eigenvalue(second)};
}

ReducedPastState xi_via_effect_ensemble(const SubsystemOperator &rho,
                                        const PureEnsemble &effect_ensemble) {
    require_bipartite(rho.dims, "xi_via_effect_ensemble");
    const Index da = rho.dims[0];
    const Index db = rho.dims[1];
    if (effect_ensemble.vectors.empty()) {
        throw InvalidArgument("xi_via_effect_ensemble: empty effect ensemble");
    }
    for (const Vector &e : effect_ensemble.vectors) {
        if (e.size() != da * db) {
            throw DimensionMismatch("xi_via_effect_ensemble: effect vector length " +
                                    std::to_string(e.size()) + " does not match the prior's space");
        }
    }

    const Matrix rho_pt = partial_transpose(rho, 1).mat;
    Matrix xi = Matrix::Zero(da * da, da * da);
    for (std::size_t x = 0; x < effect_ensemble.vectors.size(); ++x) {
        // Reshape the effect vector into the system-by-environment map M and
        // lift it to identity (x) M, a rectangular (da*da) x (da*db) block map.
        Matrix m(da, db);
        for (Index i = 0; i < da; ++i) {
            for (Index j = 0; j < db; ++j) {
                m(i, j) = effect_ensemble.vectors[x](i * db + j);
            }
        }
        Matrix lift = Matrix::Zero(da * da, da * db);
        for (Index i = 0; i < da; ++i) {
            lift.block(i * da, i * db, da, db) = m;
        }
        xi += effect_ensemble.weights[x] * (lift * rho_pt * lift.adjoint());
    }
    return ReducedPastState{SubsystemOperator{{da, da}, std::move(xi)}, "effect-ensemble"};
}

} // namespace pastq
