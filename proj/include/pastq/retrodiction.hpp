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
#include <utility>
#include <vector>

#include "pastq/operator_core.hpp"

namespace pastq {

/** POVM completeness tolerance on the max-norm of sum(W^dag W) - identity. */
inline constexpr double kPovmTol = 1e-9;
/** Relative positivity slack for states and effects. */
inline constexpr double kPosTol = 1e-9;
/** Probability sanity tolerance (small negatives / row-sum slack). */
inline constexpr double kProbTol = 1e-10;
/** Denominator floor factor: postselection counts as impossible when the
 *  normalization falls below this fraction of Tr(rho)*Tr(E). */
inline constexpr double kDenomFloorFactor = 1e-14;
/** Relative eigenvalue gap below which observable eigenvalues are merged. */
inline constexpr double kDegenTol = 1e-8;

/** A generalized measurement: ordered operation elements on a common space. */
struct Povm {
    std::string label;
    std::vector<SubsystemOperator> outcome_ops;
};

/** Max-norm of sum(W^dag W) - identity. */
double povm_completeness_defect(const Povm &povm);

/** Validate completeness and shared dimensions, then wrap into a Povm. */
Povm make_povm(std::string label, std::vector<SubsystemOperator> outcome_ops);

/** Prior density operator paired with a posterior effect operator.
 *  Probabilities derived from the pair are invariant under rescaling either
 *  member by a positive scalar, so neither is required to be normalized. */
struct PastState {
    SubsystemOperator rho;
    SubsystemOperator effect;
};

/** Validate hermiticity, positivity (within kPosTol) and matching dims. */
PastState make_past_state(SubsystemOperator rho, SubsystemOperator effect);

/** Hermitian observable with degenerate eigenvalues merged into shared
 *  projectors, so outcomes are labeled by distinct eigenvalues only. */
struct Observable {
    SubsystemOperator matrix;
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;
};

Observable make_observable(SubsystemOperator matrix);

/** Rows are measurement settings, columns outcome probabilities. */
struct ProbabilityTable {
    RealMatrix p;
};

struct Moments {
    double mean;
    double variance;
};

/** Outcome distribution conditioned on both preparation and postselection:
 *  p(m) proportional to Tr(W_m rho W_m^dag E). */
RealVector past_probs(const PastState &past, const Povm &povm);

/** Same, for a bipartite pair with the measurement acting on the first
 *  subsystem only (each element extended by the identity on the second). */
RealVector past_probs_local(const PastState &past, const Povm &povm);

/** Mean and variance of a projectively measured observable under past_probs. */
Moments past_moments(const PastState &past, const Observable &obs);

/** Weighted rank-one decomposition: op = sum_x weights[x] |v_x><v_x|. */
struct PureEnsemble {
    std::vector<double> weights;
    std::vector<Vector> vectors;
};

/** Default ensemble from the eigendecomposition, dropping ~zero weights. */
PureEnsemble spectral_ensemble(const SubsystemOperator &op);

/** Result of re-expressing mixed-pair retrodiction as a doubly reweighted
 *  mixture over pure components.  rho_weights[x] and effect_weights(x, y)
 *  are the adjusted weights (each family sums to 1); component_probs[x][y]
 *  is empty for components excluded by an impossible postselection. */
struct QuasiconvexDecomposition {
    std::vector<double> rho_weights;
    RealMatrix effect_weights;
    std::vector<std::vector<RealVector>> component_probs;
    RealVector reconstruction;
};

QuasiconvexDecomposition quasiconvex_decompose(const PureEnsemble &rho_ensemble,
                                               const PureEnsemble &effect_ensemble,
                                               const Povm &povm);

/** A pure bipartite preparation/postselection pair. */
struct PurePastPair {
    Vector psi;
    Vector effect_vec;
    Dims dims;
};

/** Replace a large environment by one of the system's own dimension while
 *  reproducing every local measurement table exactly: only the Gram matrix
 *  of Schmidt-environment overlaps enters local probabilities, so it is
 *  re-realized with vectors in the smaller space. */
PurePastPair compress_environment(const Vector &psi, const Vector &effect_vec, Index d_system,
                                  Index d_env);

/** All settings of a suite evaluated on one bipartite past state. */
ProbabilityTable past_probs_table_local(const PastState &past, const std::vector<Povm> &povms);

/** All settings evaluated on a single-system past state. */
ProbabilityTable past_probs_table(const PastState &past, const std::vector<Povm> &povms);

} // namespace pastq
