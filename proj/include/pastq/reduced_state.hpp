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

#include <string>
#include <vector>

#include "pastq/retrodiction.hpp"

namespace pastq {

/** Cross-constructor agreement tolerance for the reduced operator. */
inline constexpr double kXiTol = 1e-9;
/** Relative negativity threshold separating real negative eigenvalues from
 *  eigensolver noise. */
inline constexpr double kNegTol = 1e-10;
/** Reconstruction tolerance for positive product-operator expansions. */
inline constexpr double kExpandTol = 1e-10;

/** The two-copy operator on (system) x (system) that carries everything the
 *  bipartite pair (rho, E) implies about local retrodiction: the first slot
 *  descends from the prior, the second from the posterior effect. */
struct ReducedPastState {
    SubsystemOperator xi;
    std::string provenance;
};

/** One term of a positive product-operator expansion. */
struct ProductTerm {
    double coeff;
    SubsystemOperator left;  // acts on the first subsystem
    SubsystemOperator right; // acts on the second subsystem
};

/** X = sum_j coeff_j left_j (x) right_j with every component positive
 *  semidefinite; coefficients may be negative (and must be, for entangled
 *  positive X). */
struct ProductExpansion {
    std::vector<ProductTerm> terms;
    Dims dims;
};

struct NegativityResult {
    double lambda_min;
    bool nonseparable;
};

struct MarginalCriteria {
    /** Smallest eigenvalue after tracing out the second (effect-side) slot. */
    double lambda_min_first;
    /** Smallest eigenvalue after tracing out the first (prior-side) slot. */
    double lambda_min_second;
};

/** Expansion-free constructor: contract the environment indices of the prior
 *  against the (subsystem-swapped) effect. */
ReducedPastState xi_from_past(const PastState &past);

/** Expand a Hermitian bipartite operator over a Hermitian product basis and
 *  split every basis factor into its positive and negative parts. */
ProductExpansion product_expansion(const SubsystemOperator &x);

/** Constructor from expansions: pairs the system-side components weighted by
 *  the overlap of the environment-side components. */
ReducedPastState xi_from_expansion(const ProductExpansion &rho_expansion,
                                   const ProductExpansion &effect_expansion);

/** Local retrodicted distribution straight from the reduced operator, via
 *  the fixed four-index contraction with two copies of each POVM element. */
RealVector probs_from_xi(const ReducedPastState &reduced, const Povm &povm);

/** A strictly negative eigenvalue certifies that the prior or the effect is
 *  entangled with the environment; nonnegativity is inconclusive. */
NegativityResult negativity_witness(const ReducedPastState &reduced);

/** Smallest eigenvalues of the two single-slot marginals. */
MarginalCriteria marginal_criteria(const ReducedPastState &reduced);

/** Constructor from a rank-one effect ensemble: each effect vector on
 *  (system) x (environment) is reshaped into the map M_x with
 *  e_x[(i,j)] = M_x(i,j), and the reduced operator is assembled as
 *  sum_x q_x (1 (x) M_x) rho^PT (1 (x) M_x^dag) with the partial transpose
 *  taken on the environment slot. */
ReducedPastState xi_via_effect_ensemble(const SubsystemOperator &rho,
                                        const PureEnsemble &effect_ensemble);

} // namespace pastq
