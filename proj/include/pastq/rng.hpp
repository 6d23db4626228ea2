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

#include "pastq/operator_core.hpp"

namespace pastq {

/** Counter-based PRNG in the Philox-4x32-10 style.
 *
 *  State is (key, counter): the key holds the 64-bit seed, the counter holds
 *  a 64-bit stream id and a 64-bit block index.  Each block of four 32-bit
 *  outputs is produced by ten rounds of multiply-high/low mixing.  Because
 *  output depends only on (seed, stream, block), any (seed, stream) pair
 *  names a reproducible, independently addressable random sequence —
 *  Monte-Carlo samples drawn from per-sample streams are identical no matter
 *  how work is split across threads.
 */
class PhiloxStream {
  public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream);

    /** Next raw 32-bit output. */
    std::uint32_t next_u32();

    /** Uniform double in the open interval (0, 1). */
    double uniform01();

    /** Standard normal variate (Box-Muller). */
    double normal();

    /** Complex number with independent standard-normal parts. */
    Complex complex_normal();

    /** Haar-random unit vector: normalized vector of i.i.d. complex normals. */
    Vector haar_vector(Index dim);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /** One 4x32 output block for a given block index (stateless w.r.t. the
     *  buffered position; exposed for regression pinning). */
    std::array<std::uint32_t, 4> block(std::uint64_t block_index) const;

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_normal_ = false;
};

/** Haar-random unitary: QR factorization of a complex Gaussian matrix with
 *  the R-diagonal phases pushed into Q so the distribution is exactly
 *  unitarily invariant. */
SubsystemOperator haar_unitary(Index dim, PhiloxStream &rng);

/** Cheap deterministic 64-bit mixer for deriving sub-seeds. */
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

} // namespace pastq
