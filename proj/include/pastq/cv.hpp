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
//
// Continuous-variable tools on truncated Fock spaces: two-mode squeezed
// vacuum fixtures, diagonal retrodicted operators, phase-space functions
// (Husimi and Wigner) with closed-form references, and homodyne-style
// quadrature distributions of past states.
//
// Quadrature convention: x_hat = a + a^dag, p_hat = -i(a - a^dag), so
// [x_hat, p_hat] = 2i and the vacuum wavefunction is (2 pi)^(-1/4) e^(-x^2/4)
// with <x^2> = 1.  Retrodicted densities weight the quadrature twice (once
// by the state, once by the effect), so the undisturbed vacuum distribution
// is proportional to e^(-x^2) with variance 1/2.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pastq/errors.hpp"
#include "pastq/operator_core.hpp"
#include "pastq/reduced_state.hpp"
#include "pastq/retrodiction.hpp"

namespace pastq {

inline constexpr Index kDefaultNmax = 40;
inline constexpr double kTruncTol = 1e-6;
// Truncation guard for quadrature variances, which need far smaller
// truncation error than phase-space plots.
inline constexpr double kVarianceTruncTol = 1e-10;

struct TmsvParams {
    double s = 0.0;   // squeezing parameter
    double n_bar = 0.0; // mean photon number per mode, sinh(s)^2
};

// A truncated single- or two-mode operator in the Fock basis together with
// bounds on what the truncation discarded.
struct FockOperator {
    Index n_max = 0;
    int modes = 1;
    Matrix entries;     // n_max^modes square matrix
    double tail_abs = 0.0;   // sum of |entries| dropped by the cutoff
    double tail_trace = 0.0; // |trace| dropped by the cutoff
};

struct PhasePointValue {
    double value = 0.0;
    bool trusted = true; // false outside |alpha|^2 <= n_max / 2
};

struct QuadratureDensity {
    RealVector x;
    RealVector density;  // normalized to unit trapezoid mass
    double norm_dev = 0.0; // grid self-consistency estimate
};

enum class XiSign { Alternating, Plain };

// Two-mode squeezed vacuum truncated at n_max photons per mode, as a vector
// on dims {n_max, n_max}.  Coefficients tanh(s)^j / cosh(s) on |j, j>.
// Throws TruncationTooSevere when the discarded weight tanh(s)^(2 n_max)
// exceeds trunc_tol.
Vector tmsv(double s, Index n_max, double trunc_tol = kTruncTol);

TmsvParams tmsv_params(double s);

// Closed-form reduced past operator of the two-mode squeezed pair when the
// retrodicted effect is the squeezed pair with the opposite squeezing sign:
// entries (-1)^(j+k) tanh(s)^(2(j+k)) / cosh(s)^2 linking |j><k| (x) |k><j|.
ReducedPastState xi_tmsv(double s, Index n_max);

// Diagonal single-mode retrodicted operator with mean photon number n_bar.
// Alternating sign gives entries (-n_bar)^j / (1+n_bar)^(j+1); plain sign is
// the thermal state n_bar^j / (1+n_bar)^(j+1).  Tail fields bound what the
// cutoff dropped; no exception is thrown here because phase-space plots
// tolerate modest tails (their comparisons widen accordingly).
FockOperator xi_diag(double n_bar, XiSign sign, Index n_max);

// Outcome weights of rank-one measurement vectors against a diagonal
// retrodicted operator: p(m) proportional to (Re <phi_m| xi |phi_m>)^2.
RealVector rank_one_past_probs_cv(const FockOperator &xi, const std::vector<Vector> &outcomes);

// Coherent-state coefficient vector e^(-|alpha|^2/2) alpha^j / sqrt(j!).
Vector coherent_vector(Complex alpha, Index n_max);

// Displaced parity D(alpha) P D(alpha)^dag evaluated on a padded working
// space (pad_factor * n_max) and truncated back, which keeps the Wigner
// transform accurate near the edge of the retained space.
Matrix displaced_parity(Complex alpha, Index n_max, Index pad_factor = 4);

// Husimi function Re <alpha| op |alpha> / pi.
PhasePointValue husimi(const FockOperator &op, Complex alpha);

// Wigner function (2/pi) Re Tr(op D(alpha) P D(alpha)^dag).
PhasePointValue wigner(const FockOperator &op, Complex alpha);

// Closed-form references for the diagonal operators above.
double husimi_xi_closed(double n_bar, Complex alpha);
double husimi_thermal_closed(double n_bar, Complex alpha);
double wigner_xi_closed(double n_bar, Complex alpha);
double wigner_thermal_closed(double n_bar, Complex alpha);

// Hermite functions h_0..h_{n-1} at x for the recursion
// h_0 = (2 pi)^(-1/4) exp(-x^2/4), h_1 = x h_0,
// h_n = (x h_{n-1} - sqrt(n-1) h_{n-2}) / sqrt(n).
RealVector hermite_functions(double x, Index n);

RealVector default_x_grid();

// Quadrature distribution of a single-mode past state: density proportional
// to Re(v^dag rho v) * Re(v^dag E v) with v_n = e^(i n phi) h_n(x).
QuadratureDensity quadrature_past_prob(const PastState &past, double phi,
                                       const RealVector &grid = default_x_grid());

// Same distribution through a diagonal retrodicted operator: density
// proportional to (Re v^dag xi v)^2.
QuadratureDensity quadrature_past_prob(const FockOperator &xi, double phi,
                                       const RealVector &grid = default_x_grid());

// Same distribution through a two-system reduced past operator: density
// proportional to Re <v (x) v| Xi |v (x) v>.
QuadratureDensity quadrature_past_prob(const ReducedPastState &xi, double phi,
                                       const RealVector &grid = default_x_grid());

// Variance of the retrodicted quadrature distribution of the two-mode
// squeezed pair at squeezing s and phase phi.  Throws TruncationTooSevere
// when tanh(s)^(2 n_max) exceeds kVarianceTruncTol.
double past_quadrature_variance(double s, double phi, Index n_max = kDefaultNmax,
                                const RealVector &grid = default_x_grid());

} // namespace pastq

