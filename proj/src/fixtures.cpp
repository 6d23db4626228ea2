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

#include "pastq/fixtures.hpp"

#include <cmath>

#include "pastq/witness.hpp"

namespace pastq {

Vector vaa_effect_vector() {
    Vector e = Vector::Zero(4);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double half_cos = 0.5 * inv_sqrt2; // cos(pi/4) / 2
    e(0) = inv_sqrt2;
    e(1) = Complex(half_cos, -half_cos);
    e(2) = Complex(half_cos, half_cos);
    return e;
}

PastState vaa_pair() {
    Vector psi = Vector::Zero(4);
    psi(0) = 1.0;
    psi(3) = 1.0; // unnormalized maximally entangled vector
    const Vector e = vaa_effect_vector();
    return make_past_state(SubsystemOperator{{2, 2}, psi * psi.adjoint()},
                           SubsystemOperator{{2, 2}, e * e.adjoint()});
}

Vector phi_plus_vector(Index d_system, Index k, bool normalized) {
    if (k < 1 || k > d_system) {
        throw InvalidArgument("phi_plus_vector: need 1 <= k <= system dimension");
    }
    Vector v = Vector::Zero(d_system * k);
    const double amp = normalized ? 1.0 / std::sqrt(double(k)) : 1.0;
    for (Index j = 0; j < k; ++j) {
        v(j * k + j) = amp;
    }
    return v;
}

SubsystemOperator phi_plus_projector(Index d, bool normalized) {
    const Vector v = phi_plus_vector(d, d, normalized);
    return SubsystemOperator{{d, d}, v * v.adjoint()};
}

std::vector<Povm> fixture_povms(Index d) {
    if (d == 2) {
        return pauli_suite().povms;
    }
    if (d == 4) {
        return mub_suite().povms;
    }

    auto basis_povm = [&](const Matrix &u, const std::string &label) {
        std::vector<SubsystemOperator> ops;
        ops.reserve(std::size_t(d));
        for (Index m = 0; m < d; ++m) {
            const Vector col = u.col(m);
            ops.push_back(SubsystemOperator{{d}, col * col.adjoint()});
        }
        return make_povm(label, std::move(ops));
    };

    std::vector<Povm> povms;
    povms.push_back(basis_povm(Matrix::Identity(d, d), "computational"));
    if (d == 3) {
        Matrix fourier(d, d);
        for (Index j = 0; j < d; ++j) {
            for (Index m = 0; m < d; ++m) {
                const double angle = 2.0 * M_PI * double(j) * double(m) / double(d);
                fourier(j, m) = Complex(std::cos(angle), std::sin(angle)) / std::sqrt(double(d));
            }
        }
        povms.push_back(basis_povm(fourier, "fourier"));
    }
    return povms;
}

} // namespace pastq
