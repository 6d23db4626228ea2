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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "pastq/cv.hpp"
#include "pastq/reduced_state.hpp"

using namespace pastq;
using pastq::testing::max_abs_diff;

namespace {

constexpr double kPi = 3.14159265358979323846;

double trapezoid(const RealVector &x, const RealVector &y) {
    double acc = 0.0;
    for (Index i = 0; i + 1 < x.size(); ++i) {
        acc += 0.5 * (x(i + 1) - x(i)) * (y(i) + y(i + 1));
    }
    return acc;
}

RealVector linspace(double lo, double hi, Index n) {
    RealVector x(n);
    for (Index i = 0; i < n; ++i) {
        x(i) = lo + (hi - lo) * double(i) / double(n - 1);
    }
    return x;
}

} // namespace

TEST_CASE("two-mode squeezed amplitudes", "[cv]") {
    SECTION("zero squeezing is the double vacuum") {
        const Vector v = tmsv(0.0, 6);
        REQUIRE(std::abs(v(0) - 1.0) < 1e-15);
        REQUIRE(v.tail(35).norm() < 1e-15);
    }
    SECTION("norm accounts exactly for the truncated tail") {
        const double s = 0.6;
        const Vector v = tmsv(s, 20);
        const double t2 = std::tanh(s) * std::tanh(s);
        REQUIRE(std::abs(v.squaredNorm() - (1.0 - std::pow(t2, 20))) < 1e-14);
    }
    SECTION("amplitudes sit on the diagonal with a geometric profile") {
        const Vector v = tmsv(0.4, 12);
        for (Index j = 0; j < 12; ++j) {
            for (Index k = 0; k < 12; ++k) {
                const Complex a = v(j * 12 + k);
                if (j == k) {
                    const double expected =
                        std::pow(std::tanh(0.4), double(j)) / std::cosh(0.4);
                    REQUIRE(std::abs(a - expected) < 1e-15);
                } else {
                    REQUIRE(std::abs(a) == 0.0);
                }
            }
        }
    }
    SECTION("severe truncation is refused") {
        REQUIRE_THROWS_AS(tmsv(3.0, 4), TruncationTooSevere);
    }
    SECTION("mean occupation") {
        const TmsvParams p = tmsv_params(0.8);
        REQUIRE(std::abs(p.n_bar - std::sinh(0.8) * std::sinh(0.8)) < 1e-14);
    }
}

TEST_CASE("closed-form reduced operator matches the generic contraction", "[cv]") {
    const double s = 0.5;
    const Index n = 12;
    const ReducedPastState xi = xi_tmsv(s, n);
    REQUIRE(xi.xi.dims == Dims{n, n});

    // Same contraction built from the generic bipartite machinery: an
    // unnormalized diagonal prior with amplitudes tanh^j and the projector
    // onto the oppositely squeezed retrodiction vector.
    Vector psi = Vector::Zero(n * n);
    for (Index j = 0; j < n; ++j) {
        psi(j * n + j) = std::pow(std::tanh(s), double(j));
    }
    const Vector phi = tmsv(-s, n);
    const SubsystemOperator rho{{n, n}, psi * psi.adjoint()};
    const SubsystemOperator effect{{n, n}, phi * phi.adjoint()};
    const ReducedPastState generic = xi_from_past(make_past_state(rho, effect));
    REQUIRE(max_abs_diff(xi.xi.mat, generic.xi.mat) < 1e-12);
}

TEST_CASE("diagonal reduced operator in the photon-number basis", "[cv]") {
    const double nbar = 1.5;
    const double x = nbar / (1.0 + nbar);
    const Index n = 30;

    SECTION("alternating signs and exact trace deficit") {
        const FockOperator xi = xi_diag(nbar, XiSign::Alternating, n);
        REQUIRE(std::abs(xi.entries(0, 0).real() - 1.0 / (1.0 + nbar)) < 1e-15);
        REQUIRE(xi.entries(1, 1).real() < 0.0);
        REQUIRE(std::abs(xi.tail_abs - std::pow(x, double(n))) < 1e-15);
        const double trace = xi.entries.trace().real();
        const double full = 1.0 / (1.0 + 2.0 * nbar);
        REQUIRE(std::abs(trace - full) <= xi.tail_trace + 1e-15);
        REQUIRE(std::abs(trace - full) > 0.0);
    }

    SECTION("plain signs give the thermal distribution") {
        const FockOperator th = xi_diag(nbar, XiSign::Plain, n);
        const double trace = th.entries.trace().real();
        REQUIRE(std::abs(trace - (1.0 - std::pow(x, double(n)))) < 1e-14);
        REQUIRE(th.entries(3, 3).real() > 0.0);
    }

    SECTION("rank-one outcome weights follow a squared geometric law") {
        const FockOperator xi = xi_diag(nbar, XiSign::Alternating, n);
        std::vector<Vector> fock;
        for (Index j = 0; j < 4; ++j) {
            Vector v = Vector::Zero(n);
            v(j) = 1.0;
            fock.push_back(v);
        }
        const RealVector p = rank_one_past_probs_cv(xi, fock);
        REQUIRE(std::abs(p.sum() - 1.0) < 1e-12);
        for (Index j = 0; j + 1 < 4; ++j) {
            REQUIRE(std::abs(p(j + 1) / p(j) - x * x) < 1e-12);
        }
    }
}

TEST_CASE("coherent vectors and displaced parity", "[cv]") {
    const Complex alpha(0.8, -0.5);
    const Vector v = coherent_vector(alpha, 40);
    SECTION("normalized and an eigenvector of the lowering map") {
        REQUIRE(std::abs(v.norm() - 1.0) < 1e-12);
        Vector lowered(39);
        for (Index j = 0; j < 39; ++j) {
            lowered(j) = std::sqrt(double(j + 1)) * v(j + 1);
        }
        REQUIRE((lowered - alpha * v.head(39)).norm() < 1e-10);
    }
    SECTION("zero displacement reduces to bare parity") {
        const Matrix m = displaced_parity(Complex(0, 0), 6);
        Matrix parity = Matrix::Zero(6, 6);
        for (Index j = 0; j < 6; ++j) {
            parity(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
        }
        REQUIRE(max_abs_diff(m, parity) < 1e-12);
    }
}

TEST_CASE("phase-space functions against closed forms", "[cv]") {
    SECTION("vacuum values") {
        const FockOperator vac = xi_diag(0.0, XiSign::Plain, 20);
        const PhasePointValue w0 = wigner(vac, Complex(0, 0));
        REQUIRE(w0.trusted);
        REQUIRE(std::abs(w0.value - 2.0 / kPi) < 1e-10);
        const PhasePointValue q0 = husimi(vac, Complex(0, 0));
        REQUIRE(std::abs(q0.value - 1.0 / kPi) < 1e-10);
    }
    SECTION("spot checks at moderate occupation") {
        const double nbar = 1.0;
        const Index n = 40;
        const FockOperator xi = xi_diag(nbar, XiSign::Alternating, n);
        const FockOperator th = xi_diag(nbar, XiSign::Plain, n);
        for (double r : {0.0, 0.9, 2.1}) {
            for (double arg : {0.0, 1.1}) {
                const Complex a = std::polar(r, arg);
                REQUIRE(std::abs(husimi(xi, a).value - husimi_xi_closed(nbar, a)) < 1e-8);
                REQUIRE(std::abs(husimi(th, a).value - husimi_thermal_closed(nbar, a)) < 1e-8);
                REQUIRE(std::abs(wigner(xi, a).value - wigner_xi_closed(nbar, a)) < 1e-4);
                REQUIRE(std::abs(wigner(th, a).value - wigner_thermal_closed(nbar, a)) < 1e-6);
            }
        }
    }
    SECTION("the trusted flag marks over-ambitious displacements") {
        const FockOperator vac = xi_diag(0.0, XiSign::Plain, 8);
        REQUIRE_FALSE(wigner(vac, Complex(5.0, 0.0)).trusted);
        REQUIRE(wigner(vac, Complex(1.0, 0.0)).trusted);
    }
}

TEST_CASE("phase-space marginal reproduces the quadrature density", "[cv]") {
    // Integrating the symmetric-ordered distribution over the conjugate
    // quadrature must give the position diagonal of the operator.
    const Index n = 12;
    const FockOperator op = xi_diag(0.0, XiSign::Plain, n); // vacuum projector
    const double xq = 0.7;
    // The conjugate range stays where the padded displacement is accurate;
    // the discarded tail of the integrand is ~1e-8.
    const RealVector ps = linspace(-6.0, 6.0, 241);
    RealVector w(ps.size());
    for (Index i = 0; i < ps.size(); ++i) {
        const Complex a(0.5 * xq, 0.5 * ps(i));
        w(i) = wigner(op, a).value;
    }
    const double marginal = 0.25 * trapezoid(ps, w);
    const double h0 = hermite_functions(xq, n)(0);
    REQUIRE(std::abs(marginal - h0 * h0) < 1e-6);
}

TEST_CASE("quadrature mode functions", "[cv]") {
    const RealVector grid = default_x_grid();
    SECTION("default grid shape") {
        REQUIRE(grid.size() == 4001);
        REQUIRE(grid(0) == -25.0);
        REQUIRE(grid(4000) == 25.0);
    }
    SECTION("orthonormality on the default grid") {
        RealMatrix h(grid.size(), 6);
        for (Index i = 0; i < grid.size(); ++i) {
            h.row(i) = hermite_functions(grid(i), 6).transpose();
        }
        for (Index a = 0; a < 6; ++a) {
            for (Index b = 0; b < 6; ++b) {
                const double ip =
                    trapezoid(grid, (h.col(a).array() * h.col(b).array()).matrix());
                REQUIRE(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-8);
            }
        }
    }
    SECTION("three-term recursion spot check") {
        for (double xv : {-2.0, -0.5, 0.3, 1.7}) {
            const RealVector h = hermite_functions(xv, 3);
            const double expected = (xv * xv - 1.0) * h(0) / std::sqrt(2.0);
            REQUIRE(std::abs(h(2) - expected) < 1e-12);
        }
    }
}

TEST_CASE("quadrature densities from the three entry points", "[cv]") {
    const RealVector grid = linspace(-12.0, 12.0, 601);

    SECTION("closed-form and generic reduced operators agree") {
        const double s = 0.5;
        const QuadratureDensity via_xi =
            quadrature_past_prob(xi_tmsv(s, 12), 0.3, grid);
        const QuadratureDensity via_diag = quadrature_past_prob(
            xi_diag(std::sinh(s) * std::sinh(s), XiSign::Alternating, 12), 0.3, grid);
        REQUIRE(max_abs_diff(via_xi.density, via_diag.density) < 1e-9);
    }

    SECTION("a vacuum pair matches the zero-squeezing reduced operator") {
        Vector vac = Vector::Zero(10);
        vac(0) = 1.0;
        const SubsystemOperator rho{{10}, vac * vac.adjoint()};
        const PastState past = make_past_state(rho, rho);
        const QuadratureDensity a = quadrature_past_prob(past, 0.0, grid);
        const QuadratureDensity b =
            quadrature_past_prob(xi_diag(0.0, XiSign::Alternating, 10), 0.0, grid);
        REQUIRE(max_abs_diff(a.density, b.density) < 1e-10);
        // Doubly-weighted vacuum: normal density with variance one half.
        Index mid = 300;
        REQUIRE(std::abs(grid(mid)) < 1e-12);
        REQUIRE(std::abs(a.density(mid) - 1.0 / std::sqrt(kPi)) < 1e-8);
    }

    SECTION("bipartite reduced operator entry point agrees") {
        const double s = 0.4;
        const Index n = 12;
        Vector psi = Vector::Zero(n * n);
        for (Index j = 0; j < n; ++j) {
            psi(j * n + j) = std::pow(std::tanh(s), double(j));
        }
        const Vector phi = tmsv(-s, n);
        const ReducedPastState red = xi_from_past(make_past_state(
            SubsystemOperator{{n, n}, psi * psi.adjoint()},
            SubsystemOperator{{n, n}, phi * phi.adjoint()}));
        const QuadratureDensity a = quadrature_past_prob(red, 0.2, grid);
        const QuadratureDensity b = quadrature_past_prob(xi_tmsv(s, n), 0.2, grid);
        REQUIRE(max_abs_diff(a.density, b.density) < 1e-9);
    }

    SECTION("a coarse grid is rejected") {
        const RealVector bad = linspace(-2.0, 2.0, 41);
        REQUIRE_THROWS_AS(
            quadrature_past_prob(xi_diag(4.0, XiSign::Plain, 30), 0.0, bad),
            GridTooCoarse);
    }
}

TEST_CASE("retrodicted quadrature variance ladder", "[cv]") {
    SECTION("frozen values at a deep cutoff") {
        REQUIRE(std::abs(past_quadrature_variance(0.0, 0.0, 80) - 0.5) < 1e-8);
        REQUIRE(std::abs(past_quadrature_variance(0.4, 0.0, 80) - 0.37384995911870922) < 1e-8);
        REQUIRE(std::abs(past_quadrature_variance(0.8, 0.0, 80) - 0.19398909493724459) < 1e-8);
        REQUIRE(std::abs(past_quadrature_variance(1.2, 0.0, 80) - 0.08997746154081733) < 1e-8);
    }
    SECTION("phase independence") {
        const double v0 = past_quadrature_variance(0.8, 0.0, 60);
        for (double phi : {0.7, 1.3, 2.9}) {
            REQUIRE(std::abs(past_quadrature_variance(0.8, phi, 60) - v0) < 1e-10);
        }
    }
    SECTION("insufficient cutoff for strong squeezing is refused") {
        REQUIRE_THROWS_AS(past_quadrature_variance(1.2, 0.0, 40), TruncationTooSevere);
    }
}
