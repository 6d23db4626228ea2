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

#include "pastq/rng.hpp"

#include <cmath>

namespace pastq {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kKeyBump0 = 0x9E3779B9u;
constexpr std::uint32_t kKeyBump1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox_round(const std::array<std::uint32_t, 4> &c,
                                                 const std::array<std::uint32_t, 2> &k) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    const auto hi0 = std::uint32_t(p0 >> 32);
    const auto lo0 = std::uint32_t(p0);
    const auto hi1 = std::uint32_t(p1 >> 32);
    const auto lo1 = std::uint32_t(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

std::array<std::uint32_t, 4> PhiloxStream::block(std::uint64_t block_index) const {
    std::array<std::uint32_t, 4> counter = {
        std::uint32_t(block_index),
        std::uint32_t(block_index >> 32),
        std::uint32_t(stream_),
        std::uint32_t(stream_ >> 32),
    };
    std::array<std::uint32_t, 2> key = {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)};
    for (int round = 0; round < 10; ++round) {
        counter = philox_round(counter, key);
        key[0] += kKeyBump0;
        key[1] += kKeyBump1;
    }
    return counter;
}

std::uint32_t PhiloxStream::next_u32() {
    if (buffer_pos_ == 4) {
        buffer_ = block(block_index_++);
        buffer_pos_ = 0;
    }
    return buffer_[buffer_pos_++];
}

double PhiloxStream::uniform01() {
    // (x + 0.5) / 2^32 lies strictly inside (0, 1).
    return (double(next_u32()) + 0.5) * 0x1p-32;
}

double PhiloxStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_normal_ = true;
    return radius * std::cos(angle);
}

Complex PhiloxStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
}

Vector PhiloxStream::haar_vector(Index dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) {
        v(i) = complex_normal();
    }
    // The distribution of a normalized i.i.d. complex Gaussian vector is the
    // unique unitarily invariant (Haar) measure on the unit sphere; it
    // coincides with a column of a Haar-random unitary.
    return v / v.norm();
}

SubsystemOperator haar_unitary(Index dim, PhiloxStream &rng) {
    if (dim < 1) {
        throw InvalidArgument("haar_unitary: dimension must be >= 1");
    }
    Matrix z(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            z(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase gauge: absorb the phases of the R diagonal into Q.
    // Without this step the QR output is not distributed with Haar measure.
    for (Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return SubsystemOperator{{dim}, std::move(q)};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer over seed xor a salted odd constant
    std::uint64_t z = seed + salt * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace pastq
