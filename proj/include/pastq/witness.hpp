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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "pastq/retrodiction.hpp"
#include "pastq/rng.hpp"

namespace pastq {

/** An ordered family of measurement settings on a common system space. */
struct MeasurementSuite {
    std::vector<Povm> povms;
    Index dim_a;
};

/** Convex score functions of a probability table.
 *  PauliAbsSum: sum over settings of |p(first) - p(second)| (two-outcome
 *  settings); MaxProbSum: sum over settings of the largest outcome
 *  probability. */
enum class WitnessKind {
    PauliAbsSum,
    MaxProbSum,
};

double evaluate_witness(WitnessKind kind, const ProbabilityTable &table);

/** Sampling strategy for the brute-force bound estimate: draw both the state
 *  and the effect, or fix the state to the maximally entangled vector and
 *  draw effects only. */
enum class CkStrategy {
    StateAndEffect,
    EffectOnly,
};

const char *strategy_name(CkStrategy strategy);

/** Running-maximum record of a randomized witness optimization. */
struct CkEstimate {
    int k = 0;
    double value = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    CkStrategy strategy = CkStrategy::StateAndEffect;
    std::uint64_t skipped = 0;
    /** (sample index, new maximum) at every improvement, plus the final sample. */
    std::vector<std::pair<std::uint64_t, double>> trace;
    /** Per-sample witness values (NaN for skipped samples); kept only on request. */
    std::vector<double> sample_values;
};

/** Prior/effect pair for a single qubit given by Pauli expansion components. */
struct BlochPastState {
    std::array<double, 3> r{};
    std::array<double, 3> s{};
};

/** Retrodicted Pauli expectation values (r_a + s_a) / (1 + r_a s_a). */
std::array<double, 3> past_bloch(const BlochPastState &bp);

struct C0Result {
    double c0 = 0.0;
    BlochPastState argmax;
    std::array<double, 3> past_components{};
};

struct DetectionGap {
    double p = 0.0;
    double q = 0.0;
    double c0 = 0.0;
    double c2 = 0.0;
    /** c2 - c0 clamped below at zero. */
    double delta = 0.0;
    /** Unclamped difference. */
    double delta_raw = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/** The three projective Pauli settings on a qubit. */
MeasurementSuite pauli_suite();

/** Pauli settings observed through an inefficient detector: outcome 0 fires
 *  with probability p on the +1 eigenstate, outcome 1 with probability q on
 *  the -1 eigenstate, outcome 2 collects the no-click events.  Complete for
 *  every p, q in [0, 1]. */
MeasurementSuite noisy_pauli_povm(double p, double q);

/** The identity basis plus four mutually unbiased partner bases in d=4. */
std::vector<SubsystemOperator> mub_unitaries();

/** Five projective settings from the columns of mub_unitaries(). */
MeasurementSuite mub_suite();

/** Draw a pure prior/effect pair on (system) x (environment of dimension k),
 *  both Haar-distributed unit vectors. */
PurePastPair haar_pure_past(Index d_system, Index k, PhiloxStream &rng);

/** Local probability table of a pure bipartite pair for one suite. */
ProbabilityTable pure_pair_table(const PurePastPair &pair, const MeasurementSuite &suite);

/** Randomized lower-bound estimate of the witness supremum over past states
 *  with an environment of dimension k.  Deterministic for fixed
 *  (seed, samples): sample i draws from stream i of the counter PRNG, so the
 *  result does not depend on the thread count. */
CkEstimate estimate_ck(WitnessKind kind, const MeasurementSuite &suite, Index d_system, int k,
                       std::uint64_t samples, std::uint64_t seed, CkStrategy strategy,
                       unsigned threads = 0, bool keep_sample_values = false);

/** Deterministic maximization of the Pauli witness over environment-free
 *  qubit pairs: coarse grid on the symmetric two-parameter slice, then
 *  coordinate-descent polish over all six components. */
C0Result optimize_c0_pauli();

/** Estimate the certification window c2 - c0 of the inefficient-detector
 *  suite at one (p, q) point. */
DetectionGap detection_gap(double p, double q, std::uint64_t samples, std::uint64_t seed);

/** Max and batch-based standard error of a running-maximum estimate:
 *  the values are split into `batches` contiguous blocks and the spread of
 *  the per-block maxima estimates the fluctuation of the overall maximum. */
struct BatchMaxStats {
    double max;
    double se;
};

BatchMaxStats batch_max_stats(const std::vector<double> &values, int batches = 10);

/** Sample classes for the witness scatter survey. */
enum class ScatterClass {
    MixedLocal,
    PureLocal,
    PureC2,
    PureC4,
};

const char *scatter_class_name(ScatterClass cls);

struct ScatterRow {
    std::uint64_t sample;
    ScatterClass cls;
    double f;
};

/** Pauli-witness values for random past states of the four scatter classes. */
std::vector<ScatterRow> witness_scatter(std::uint64_t samples_per_class, std::uint64_t seed);

} // namespace pastq
