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

#include "pastq/cv.hpp"

#include <cmath>

namespace pastq {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_cutoff(Index n_max) {
    if (n_max < 1) {
        throw InvalidArgument("Fock cutoff must be at least 1");
    }
}

double trapezoid(const RealVector &x, const RealVector &f) {
    double acc = 0.0;
    for (Index i = 0; i + 1 < x.size(); ++i) {
        acc += 0.5 * (x(i + 1) - x(i)) * (f(i) + f(i + 1));
    }
    return acc;
}

void check_grid(const RealVector &grid) {
    if (grid.size() < 5) {
        throw InvalidArgument("quadrature grid needs at least 5 points");
    }
    for (Index i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid(i + 1) > grid(i))) {
            throw InvalidArgument("quadrature grid must be strictly increasing");
        }
    }
}

// Trapezoid mass recomputed on every second grid point; agreement with the
// full-resolution mass is the resolution part of norm_dev.
double coarse_mass(const RealVector &x, const RealVector &f) {
    double acc = 0.0;
    Index i = 0;
    for (; i + 2 < x.size(); i += 2) {
        acc += 0.5 * (x(i + 2) - x(i)) * (f(i) + f(i + 2));
    }
    if (i + 1 < x.size()) {
        acc += 0.5 * (x(x.size() - 1) - x(i)) * (f(i) + f(x.size() - 1));
    }
    return acc;
}

QuadratureDensity finalize_density(const RealVector &grid, RealVector raw) {
    const double mass = trapezoid(grid, raw);
    if (!(mass > 1e-300)) {
        throw ImpossiblePostselection("quadrature distribution has no support on the grid");
    }
    const double dev_half = std::abs(coarse_mass(grid, raw) / mass - 1.0);

    // Mass within the outer 2% of the range, a proxy for clipping.
    const Index n = grid.size();
    const double lo_edge = grid(0) + 0.02 * (grid(n - 1) - grid(0));
    const double hi_edge = grid(n - 1) - 0.02 * (grid(n - 1) - grid(0));
    double edge = 0.0;
    for (Index i = 0; i + 1 < n; ++i) {
        // Any interval overlapping an edge window counts, so the proxy stays
        // sensitive even when the windows are narrower than one spacing.
        if (grid(i) <= lo_edge || grid(i + 1) >= hi_edge) {
            edge += 0.5 * (grid(i + 1) - grid(i)) * (raw(i) + raw(i + 1));
        }
    }

    QuadratureDensity out;
    out.x = grid;
    out.density = raw / mass;
    out.norm_dev = dev_half + edge / mass;
    if (out.norm_dev > 1e-3) {
        throw GridTooCoarse("quadrature grid cannot resolve the distribution (norm_dev " +
                            format_double(out.norm_dev) + ")");
    }
    return out;
}

Vector phase_vector(const RealVector &h, double phi) {
    Vector v(h.size());
    for (Index j = 0; j < h.size(); ++j) {
        v(j) = std::polar(1.0, phi * double(j)) * h(j);
    }
    return v;
}

} // namespace

Vector tmsv(double s, Index n_max, double trunc_tol) {
    check_cutoff(n_max);
    const double t = std::tanh(s);
    const double deficit = std::pow(t * t, double(n_max));
    if (deficit > trunc_tol) {
        throw TruncationTooSevere("two-mode squeezed vacuum loses weight " +
                                  format_double(deficit) + " at this cutoff");
    }
    Vector out = Vector::Zero(n_max * n_max);
    const double c = 1.0 / std::cosh(s);
    double amp = c;
    for (Index j = 0; j < n_max; ++j) {
        out(j * n_max + j) = amp;
        amp *= t;
    }
    return out;
}

TmsvParams tmsv_params(double s) {
    const double sh = std::sinh(s);
    return TmsvParams{s, sh * sh};
}

ReducedPastState xi_tmsv(double s, Index n_max) {
    check_cutoff(n_max);
    const double t2 = std::tanh(s) * std::tanh(s);
    const double c2 = 1.0 / (std::cosh(s) * std::cosh(s));
    Matrix mat = Matrix::Zero(n_max * n_max, n_max * n_max);
    for (Index j = 0; j < n_max; ++j) {
        for (Index k = 0; k < n_max; ++k) {
            const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            mat(j * n_max + k, k * n_max + j) = sign * std::pow(t2, double(j + k)) * c2;
        }
    }
    return ReducedPastState{SubsystemOperator{{n_max, n_max}, std::move(mat)}, "closed-form"};
}

FockOperator xi_diag(double n_bar, XiSign sign, Index n_max) {
    check_cutoff(n_max);
    if (n_bar < 0.0) {
        throw InvalidArgument("mean photon number must be nonnegative");
    }
    const double x = n_bar / (1.0 + n_bar);
    FockOperator op;
    op.n_max = n_max;
    op.modes = 1;
    op.entries = Matrix::Zero(n_max, n_max);
    double mag = 1.0 / (1.0 + n_bar);
    for (Index j = 0; j < n_max; ++j) {
        const bool flip = sign == XiSign::Alternating && j % 2 == 1;
        op.entries(j, j) = flip ? -mag : mag;
        mag *= x;
    }
    // Geometric tails of the discarded entries: sum_{j>=n} x^j / (1+n_bar)
    // equals x^n exactly, and the alternating trace tail shrinks by 1 + x.
    op.tail_abs = std::pow(x, double(n_max));
    op.tail_trace = sign == XiSign::Alternating
                        ? std::pow(x, double(n_max)) / ((1.0 + n_bar) * (1.0 + x))
                        : op.tail_abs;
    return op;
}

RealVector rank_one_past_probs_cv(const FockOperator &xi, const std::vector<Vector> &outcomes) {
    if (xi.modes != 1) {
        throw InvalidArgument("rank_one_past_probs_cv expects a single-mode operator");
    }
    if (outcomes.empty()) {
        throw InvalidArgument("rank_one_past_probs_cv needs at least one outcome vector");
    }
    RealVector p(Index(outcomes.size()));
    for (std::size_t m = 0; m < outcomes.size(); ++m) {
        if (outcomes[m].size() != xi.entries.rows()) {
            throw DimensionMismatch("outcome vector length does not match the Fock cutoff");
        }
        const double u = (outcomes[m].adjoint() * xi.entries * outcomes[m])(0).real();
        p(Index(m)) = u * u;
    }
    const double total = p.sum();
    if (!(total > 1e-300)) {
        throw ImpossiblePostselection("all rank-one outcome weights vanish");
    }
    return p / total;
}

Vector coherent_vector(Complex alpha, Index n_max) {
    check_cutoff(n_max);
    Vector v(n_max);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (Index j = 1; j < n_max; ++j) {
        v(j) = v(j - 1) * alpha / std::sqrt(double(j));
    }
    return v;
}

Matrix displaced_parity(Complex alpha, Index n_max, Index pad_factor) {
    check_cutoff(n_max);
    if (pad_factor < 1) {
        throw InvalidArgument("pad factor must be at least 1");
    }
    const Index big = n_max * pad_factor;
    // H = i (alpha a^dag - conj(alpha) a) is Hermitian and D = e^{-i H}.
    Matrix h = Matrix::Zero(big, big);
    const Complex i(0.0, 1.0);
    for (Index j = 0; j + 1 < big; ++j) {
        const double root = std::sqrt(double(j + 1));
        h(j + 1, j) = i * alpha * root;
        h(j, j + 1) = -i * std::conj(alpha) * root;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Matrix &vecs = solver.eigenvectors();
    Vector phases(big);
    for (Index j = 0; j < big; ++j) {
        phases(j) = std::polar(1.0, -solver.eigenvalues()(j));
    }
    const Matrix displacement = vecs * phases.asDiagonal() * vecs.adjoint();
    Vector parity(big);
    for (Index j = 0; j < big; ++j) {
        parity(j) = (j % 2 == 0) ? 1.0 : -1.0;
    }
    const Matrix full = displacement * parity.asDiagonal() * displacement.adjoint();
    return full.topLeftCorner(n_max, n_max);
}

PhasePointValue husimi(const FockOperator &op, Complex alpha) {
    if (op.modes != 1) {
        throw InvalidArgument("husimi expects a single-mode operator");
    }
    const Vector v = coherent_vector(alpha, op.n_max);
    PhasePointValue out;
    out.value = (v.adjoint() * op.entries * v)(0).real() / kPi;
    out.trusted = std::norm(alpha) <= 0.5 * double(op.n_max);
    return out;
}

PhasePointValue wigner(const FockOperator &op, Complex alpha) {
    if (op.modes != 1) {
        throw InvalidArgument("wigner expects a single-mode operator");
    }
    const Matrix m = displaced_parity(alpha, op.n_max);
    PhasePointValue out;
    out.value = 2.0 / kPi * (op.entries * m).trace().real();
    out.trusted = std::norm(alpha) <= 0.5 * double(op.n_max);
    return out;
}

double husimi_xi_closed(double n_bar, Complex alpha) {
    return std::exp(-(1.0 + 2.0 * n_bar) * std::norm(alpha) / (1.0 + n_bar)) /
           (kPi * (1.0 + n_bar));
}

double husimi_thermal_closed(double n_bar, Complex alpha) {
    return std::exp(-std::norm(alpha) / (1.0 + n_bar)) / (kPi * (1.0 + n_bar));
}

double wigner_xi_closed(double n_bar, Complex alpha) {
    (void)n_bar;
    return 2.0 / kPi * std::exp(-2.0 * (1.0 + 2.0 * n_bar) * std::norm(alpha));
}

double wigner_thermal_closed(double n_bar, Complex alpha) {
    return 2.0 / kPi * std::exp(-2.0 * std::norm(alpha) / (1.0 + 2.0 * n_bar)) /
           (1.0 + 2.0 * n_bar);
}

RealVector hermite_functions(double x, Index n) {
    check_cutoff(n);
    RealVector h(n);
    h(0) = std::pow(2.0 * kPi, -0.25) * std::exp(-0.25 * x * x);
    if (n > 1) {
        h(1) = x * h(0);
    }
    for (Index j = 2; j < n; ++j) {
        h(j) = (x * h(j - 1) - std::sqrt(double(j - 1)) * h(j - 2)) / std::sqrt(double(j));
    }
    return h;
}

RealVector default_x_grid() {
    const Index points = 4001;
    RealVector grid(points);
    for (Index i = 0; i < points; ++i) {
        grid(i) = -25.0 + 50.0 * double(i) / double(points - 1);
    }
    return grid;
}

QuadratureDensity quadrature_past_prob(const PastState &past, double phi, const RealVector &grid) {
    check_grid(grid);
    const Index n = past.rho.mat.rows();
    if (past.rho.dims.size() != 1) {
        throw DimensionMismatch("single-mode quadrature distribution needs a single-system pair");
    }
    RealVector raw(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const Vector v = phase_vector(hermite_functions(grid(i), n), phi);
        const double u_rho = (v.adjoint() * past.rho.mat * v)(0).real();
        const double u_eff = (v.adjoint() * past.effect.mat * v)(0).real();
        raw(i) = u_rho * u_eff;
    }
    return finalize_density(grid, std::move(raw));
}

QuadratureDensity quadrature_past_prob(const FockOperator &xi, double phi,
                                       const RealVector &grid) {
    check_grid(grid);
    if (xi.modes != 1) {
        throw InvalidArgument("diagonal quadrature distribution expects a single-mode operator");
    }
    RealVector raw(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const Vector v = phase_vector(hermite_functions(grid(i), xi.n_max), phi);
        const double u = (v.adjoint() * xi.entries * v)(0).real();
        raw(i) = u * u;
    }
    return finalize_density(grid, std::move(raw));
}

QuadratureDensity quadrature_past_prob(const ReducedPastState &xi, double phi,
                                       const RealVector &grid) {
    check_grid(grid);
    if (xi.xi.dims.size() != 2 || xi.xi.dims[0] != xi.xi.dims[1]) {
        throw DimensionMismatch("reduced-state quadrature needs two equal-dimension factors");
    }
    const Index n = xi.xi.dims[0];
    RealVector raw(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const Vector v = phase_vector(hermite_functions(grid(i), n), phi);
        Vector w(n * n);
        for (Index a = 0; a < n; ++a) {
            for (Index b = 0; b < n; ++b) {
                w(a * n + b) = v(a) * v(b);
            }
        }
        raw(i) = (w.adjoint() * xi.xi.mat * w)(0).real();
    }
    return finalize_density(grid, std::move(raw));
}

double past_quadrature_variance(double s, double phi, Index n_max, const RealVector &grid) {
    check_cutoff(n_max);
    const double deficit = std::pow(std::tanh(s) * std::tanh(s), double(n_max));
    if (deficit > kVarianceTruncTol) {
        throw TruncationTooSevere("quadrature variance needs tanh(s)^(2 n_max) <= " +
                                  format_double(kVarianceTruncTol) + "; raise the cutoff");
    }
    const FockOperator xi = xi_diag(tmsv_params(s).n_bar, XiSign::Alternating, n_max);
    const QuadratureDensity qd = quadrature_past_prob(xi, phi, grid);
    RealVector weighted = qd.density.cwiseProduct(qd.x);
    const double mean = trapezoid(qd.x, weighted);
    weighted = weighted.cwiseProduct(qd.x);
    return trapezoid(qd.x, weighted) - mean * mean;
}

} // namespace pastq
