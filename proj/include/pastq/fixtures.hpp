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

#include "pastq/retrodiction.hpp"

namespace pastq {

/** The two-qubit reference pair with all three local Pauli outcomes certain:
 *  the prior is the (unnormalized) maximally entangled projector and the
 *  effect is the rank-one projector onto
 *  (|00> + e^{-i pi/4}|01>/sqrt(2) + e^{+i pi/4}|10>/sqrt(2)) / sqrt(2). */
PastState vaa_pair();

/** The effect vector of vaa_pair (unit norm). */
Vector vaa_effect_vector();

/** sum_{j<k} |j>_A |j>_B on C^{d_system} (x) C^{k}; optionally 1/sqrt(k)
 *  normalized. */
Vector phi_plus_vector(Index d_system, Index k, bool normalized);

/** Projector onto phi_plus_vector(d, d, normalized). */
SubsystemOperator phi_plus_projector(Index d, bool normalized);

/** Projective settings used by randomized cross-checks: the Pauli settings
 *  for d=2, computational + Fourier bases for d=3, the five mutually
 *  unbiased bases for d=4, and a computational basis otherwise. */
std::vector<Povm> fixture_povms(Index d);

} // namespace pastq
