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

#include "pastq/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "pastq/fixtures.hpp"

namespace pastq {

namespace {

constexpr double kSampleDenomFloor = 1e-14;

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Projectors onto the +1 / -1 eigenvectors of a traceless involution.
std::pair<Matrix, Matrix> eigenprojectors(const Matrix &sigma) {
    const Matrix id = Matrix::Identity(2, 2);
    return {0.5 * (id + sigma), 0.5 * (id - sigma)};
}

Matrix reshape_rows(const Vector &v, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = v(i * cols + j);
        }
    }
    return m;
}

// <e|(W (x) 1)|psi> for the reshaped pair, as a function of G = Psi E^dag.
inline Complex pair_amplitude(const Matrix &w, const Matrix &g) {
    return (w * g).trace();
}

struct SuiteMatrices {
    std::vector<std::vector<Matrix>> omegas;
    std::size_t settings;
};

SuiteMatrices collect_suite(const MeasurementSuite &suite) {
    SuiteMatrices out;
    out.settings = suite.povms.size();
    out.omegas.reserve(out.settings);
    for (const Povm &povm : suite.povms) {
        std::vector<Matrix> mats;
        mats.reserve(povm.outcome_ops.size());
        for (const SubsystemOperator &op : povm.outcome_ops) {
            mats.push_back(op.mat);
        }
        out.omegas.push_back(std::move(mats));
    }
    return out;
}

// Witness value of one pure pair, through the reshaped-amplitude shortcut.
// Returns NaN when any setting's outcome weights all vanish.
double pure_pair_witness(WitnessKind kind, const SuiteMatrices &suite, const Matrix &g) {
    double f = 0.0;
    for (const std::vector<Matrix> &setting : suite.omegas) {
        double total = 0.0;
        double best = 0.0;
        double first = 0.0;
        double second = 0.0;
        for (std::size_t m = 0; m < setting.size(); ++m) {
            const double pm = std::norm(pair_amplitude(setting[m], g));
            total += pm;
            best = std::max(best, pm);
            if (m == 0) {
                first = pm;
            } else if (m == 1) {
                second = pm;
            }
        }
        if (total <= kSampleDenomFloor) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        if (kind == WitnessKind::PauliAbsSum) {
            f += std::abs(first - second) / total;
        } else {
            f += best / total;
        }
    }
    return f;
}

} // namespace

const char *strategy_name(CkStrategy strategy) {
    return strategy == CkStrategy::StateAndEffect ? "state-and-effect" : "effect-only";
}

const char *scatter_class_name(ScatterClass cls) {
    switch (cls) {
    case ScatterClass::MixedLocal:
        return "mixed-local";
    case ScatterClass::PureLocal:
        return "pure-local";
    case ScatterClass::PureC2:
        return "pure-C2";
    default:
        return "pure-C4";
    }
}

MeasurementSuite pauli_suite() {
    std::vector<Povm> povms;
    const char *labels[3] = {"sigma_x", "sigma_y", "sigma_z"};
    const Matrix sigmas[3] = {pauli_x(), pauli_y(), pauli_z()};
    for (int a = 0; a < 3; ++a) {
        auto [plus, minus] = eigenprojectors(sigmas[a]);
        povms.push_back(make_povm(labels[a], {SubsystemOperator{{2}, plus}, SubsystemOperator{{2}, minus}}));
    }
    return MeasurementSuite{std::move(povms), 2};
}

MeasurementSuite noisy_pauli_povm(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
        throw InvalidArgument("noisy_pauli_povm: success probabilities must lie in [0, 1]");
    }
    std::vector<Povm> povms;
    const char *labels[3] = {"sigma_x", "sigma_y", "sigma_z"};
    const Matrix sigmas[3] = {pauli_x(), pauli_y(), pauli_z()};
    for (int a = 0; a < 3; ++a) {
        auto [plus, minus] = eigenprojectors(sigmas[a]);
        std::vector<SubsystemOperator> ops;
        ops.push_back(SubsystemOperator{{2}, std::sqrt(p) * plus});
        ops.push_back(SubsystemOperator{{2}, std::sqrt(q) * minus});
        ops.push_back(SubsystemOperator{{2}, std::sqrt(1.0 - p) * plus + std::sqrt(1.0 - q) * minus});
        povms.push_back(make_povm(labels[a], std::move(ops)));
    }
    return MeasurementSuite{std::move(povms), 2};
}

std::vector<SubsystemOperator> mub_unitaries() {
    const Complex i(0.0, 1.0);
    std::vector<Matrix> mats(5, Matrix(4, 4));
    mats[0] = Matrix::Identity(4, 4);
    mats[1] << 1, 1, 1, 1, //
        1, 1, -1, -1,      //
        1, -1, -1, 1,      //
        1, -1, 1, -1;
    mats[2] << 1, 1, 1, 1, //
        -1, -1, 1, 1,      //
        -i, i, i, -i,      //
        -i, i, -i, i;
    mats[3] << 1, 1, 1, 1, //
        -i, -i, i, i,      //
        -i, i, i, -i,      //
        -1, 1, -1, 1;
    mats[4] << 1, 1, 1, 1, //
        -i, -i, i, i,      //
        -1, 1, -1, 1,      //
        -i, i, i, -i;
    std::vector<SubsystemOperator> out;
    out.reserve(5);
    for (std::size_t a = 0; a < 5; ++a) {
        if (a > 0) {
            mats[a] *= 0.5;
        }
        out.push_back(SubsystemOperator{{4}, std::move(mats[a])});
    }
    return out;
}

MeasurementSuite mub_suite() {
    std::vector<Povm> povms;
    const std::vector<SubsystemOperator> us = mub_unitaries();
    for (std::size_t a = 0; a < us.size(); ++a) {
        std::vector<SubsystemOperator> ops;
        ops.reserve(4);
        for (Index m = 0; m < 4; ++m) {
            const Vector col = us[a].mat.col(m);
            ops.push_back(SubsystemOperator{{4}, col * col.adjoint()});
        }
        povms.push_back(make_povm("basis_" + std::to_string(a), std::move(ops)));
    }
    return MeasurementSuite{std::move(povms), 4};
}

std::array<double, 3> past_bloch(const BlochPastState &bp) {
    std::array<double, 3> out{};
    for (int a = 0; a < 3; ++a) {
        const double denom = 1.0 + bp.r[a] * bp.s[a];
        if (std::abs(denom) < 1e-12) {
            throw SingularDenominator("past_bloch: 1 + r_a * s_a vanishes for component " +
                                      std::to_string(a));
        }
        out[a] = (bp.r[a] + bp.s[a]) / denom;
    }
    return out;
}

double evaluate_witness(WitnessKind kind, const ProbabilityTable &table) {
    const Index settings = table.p.rows();
    double f = 0.0;
    for (Index a = 0; a < settings; ++a) {
        if (kind == WitnessKind::PauliAbsSum) {
            if (table.p.cols() != 2) {
                throw DimensionMismatch("PauliAbsSum witness needs two-outcome settings");
            }
            f += std::abs(table.p(a, 0) - table.p(a, 1));
        } else {
            f += table.p.row(a).maxCoeff();
        }
    }
    return f;
}

PurePastPair haar_pure_past(Index d_system, Index k, PhiloxStream &rng) {
    if (d_system < 1 || k < 1) {
        throw InvalidArgument("haar_pure_past: dimensions must be >= 1");
    }
    Vector psi = rng.haar_vector(d_system * k);
    Vector eff = rng.haar_vector(d_system * k);
    return PurePastPair{std::move(psi), std::move(eff), Dims{d_system, k}};
}

ProbabilityTable pure_pair_table(const PurePastPair &pair, const MeasurementSuite &suite) {
    if (pair.dims.size() != 2 || pair.dims[0] != suite.dim_a) {
        throw DimensionMismatch("pure_pair_table: pair and suite dimensions disagree");
    }
    const Matrix psi_m = reshape_rows(pair.psi, pair.dims[0], pair.dims[1]);
    const Matrix eff_m = reshape_rows(pair.effect_vec, pair.dims[0], pair.dims[1]);
    const Matrix g = psi_m * eff_m.adjoint();

    const Index settings = Index(suite.povms.size());
    const Index outcomes = Index(suite.povms.front().outcome_ops.size());
    RealMatrix table(settings, outcomes);
    for (Index a = 0; a < settings; ++a) {
        double total = 0.0;
        for (Index m = 0; m < outcomes; ++m) {
            const double pm = std::norm(pair_amplitude(suite.povms[a].outcome_ops[m].mat, g));
            table(a, m) = pm;
            total += pm;
        }
        if (total <= kSampleDenomFloor) {
            throw ImpossiblePostselection("pure_pair_table: outcome weights vanish for setting " +
                                          suite.povms[a].label);
        }
        table.row(a) /= total;
    }
    return ProbabilityTable{std::move(table)};
}

CkEstimate estimate_ck(WitnessKind kind, const MeasurementSuite &suite, Index d_system, int k,
                       std::uint64_t samples, std::uint64_t seed, CkStrategy strategy,
                       unsigned threads, bool keep_sample_values) {
    if (k < 1) {
        throw InvalidArgument("estimate_ck: environment dimension must be >= 1");
    }
    if (Index(k) > d_system) {
        throw InvalidArgument("estimate_ck: environments beyond the system dimension are "
                              "redundant; need k <= system dimension");
    }
    if (samples < 1) {
        throw InvalidArgument("estimate_ck: need at least one sample");
    }
    if (suite.dim_a != d_system) {
        throw DimensionMismatch("estimate_ck: suite dimension does not match the system");
    }
    if (kind == WitnessKind::PauliAbsSum) {
        for (const Povm &povm : suite.povms) {
            if (povm.outcome_ops.size() != 2) {
                throw DimensionMismatch("PauliAbsSum witness needs two-outcome settings");
            }
        }
    }

    const SuiteMatrices mats = collect_suite(suite);
    const Matrix psi_fixed =
        reshape_rows(phi_plus_vector(d_system, Index(k), true), d_system, Index(k));

    std::vector<double> values(samples);
    auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            PhiloxStream rng(seed, i);
            Matrix psi_m;
            if (strategy == CkStrategy::StateAndEffect) {
                psi_m = reshape_rows(rng.haar_vector(d_system * Index(k)), d_system, Index(k));
            } else {
                psi_m = psi_fixed;
            }
            const Matrix eff_m =
                reshape_rows(rng.haar_vector(d_system * Index(k)), d_system, Index(k));
            const Matrix g = psi_m * eff_m.adjoint();
            values[i] = pure_pair_witness(kind, mats, g);
        }
    };

    unsigned n_threads = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, 16u);
    if (samples < 4096) {
        n_threads = 1;
    }
    if (n_threads == 1) {
        worker(0, samples);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        const std::uint64_t chunk = (samples + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::uint64_t lo = t * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            if (lo < hi) {
                pool.emplace_back(worker, lo, hi);
            }
        }
        for (std::thread &th : pool) {
            th.join();
        }
    }

    CkEstimate estimate;
    estimate.k = k;
    estimate.samples = samples;
    estimate.seed = seed;
    estimate.strategy = strategy;
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (std::isnan(values[i])) {
            ++estimate.skipped;
            continue;
        }
        if (values[i] > best) {
            best = values[i];
            estimate.trace.emplace_back(i, best);
        }
    }
    estimate.value = std::isinf(best) ? std::numeric_limits<double>::quiet_NaN() : best;
    if (estimate.trace.empty() || estimate.trace.back().first != samples - 1) {
        estimate.trace.emplace_back(samples - 1, estimate.value);
    }
    if (keep_sample_values) {
        estimate.sample_values = std::move(values);
    }
    return estimate;
}

namespace {

double bloch_witness(const std::array<double, 6> &x) {
    double f = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double denom = 1.0 + x[a] * x[a + 3];
        if (std::abs(denom) < 1e-9) {
            return -std::numeric_limits<double>::infinity();
        }
        f += std::abs((x[a] + x[a + 3]) / denom);
    }
    return f;
}

bool bloch_physical(const std::array<double, 6> &x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double s2 = x[3] * x[3] + x[4] * x[4] + x[5] * x[5];
    return r2 <= 1.0 + 1e-12 && s2 <= 1.0 + 1e-12;
}

} // namespace

C0Result optimize_c0_pauli() {
    // Coarse pass on the symmetric slice r = (r,r,r), s = (s,s,s).
    const int grid_points = 201;
    double best = -std::numeric_limits<double>::infinity();
    std::array<double, 6> best_x{};
    for (int ir = 0; ir < grid_points; ++ir) {
        const double r = -1.0 + 2.0 * double(ir) / double(grid_points - 1);
        if (3.0 * r * r > 1.0 + 1e-12) {
            continue;
        }
        for (int is = 0; is < grid_points; ++is) {
            const double s = -1.0 + 2.0 * double(is) / double(grid_points - 1);
            if (3.0 * s * s > 1.0 + 1e-12) {
                continue;
            }
            const std::array<double, 6> x{r, r, r, s, s, s};
            const double f = bloch_witness(x);
            if (f > best) {
                best = f;
                best_x = x;
            }
        }
    }

    // Coordinate-descent polish over all six components.
    const double step = 1e-4;
    bool improved = true;
    int iterations = 0;
    while (improved && iterations < 100000) {
        improved = false;
        ++iterations;
        for (int p = 0; p < 6; ++p) {
            for (const double delta : {step, -step}) {
                std::array<double, 6> cand = best_x;
                cand[p] += delta;
                if (!bloch_physical(cand)) {
                    continue;
                }
                const double f = bloch_witness(cand);
                if (f > best) {
                    best = f;
                    best_x = cand;
                    improved = true;
                }
            }
        }
    }

    BlochPastState argmax;
    argmax.r = {best_x[0], best_x[1], best_x[2]};
    argmax.s = {best_x[3], best_x[4], best_x[5]};
    std::array<double, 3> components = past_bloch(argmax);
    // Canonical sign: the witness is invariant under flipping both vectors,
    // so report the representative with a nonnegative component sum.
    if (components[0] + components[1] + components[2] < 0.0) {
        for (int a = 0; a < 3; ++a) {
            argmax.r[a] = -argmax.r[a];
            argmax.s[a] = -argmax.s[a];
        }
        components = past_bloch(argmax);
    }
    return C0Result{best, argmax, components};
}

DetectionGap detection_gap(double p, double q, std::uint64_t samples, std::uint64_t seed) {
    const MeasurementSuite suite = noisy_pauli_povm(p, q);
    const CkEstimate c0 = estimate_ck(WitnessKind::MaxProbSum, suite, 2, 1, samples,
                                      mix_seed(seed, 1), CkStrategy::StateAndEffect);
    const CkEstimate c2 = estimate_ck(WitnessKind::MaxProbSum, suite, 2, 2, samples,
                                      mix_seed(seed, 2), CkStrategy::EffectOnly);
    DetectionGap gap;
    gap.p = p;
    gap.q = q;
    gap.c0 = c0.value;
    gap.c2 = c2.value;
    gap.delta_raw = c2.value - c0.value;
    gap.delta = std::max(0.0, gap.delta_raw);
    gap.samples = samples;
    gap.seed = seed;
    return gap;
}

BatchMaxStats batch_max_stats(const std::vector<double> &values, int batches) {
    if (batches < 2) {
        throw InvalidArgument("batch_max_stats: need at least two batches");
    }
    std::vector<double> kept;
    kept.reserve(values.size());
    for (double v : values) {
        if (!std::isnan(v)) {
            kept.push_back(v);
        }
    }
    if (kept.size() < std::size_t(batches)) {
        throw InvalidArgument("batch_max_stats: not enough valid values for the batch count");
    }
    const std::size_t per = kept.size() / std::size_t(batches);
    std::vector<double> maxima;
    maxima.reserve(std::size_t(batches));
    for (int b = 0; b < batches; ++b) {
        const std::size_t lo = std::size_t(b) * per;
        const std::size_t hi = (b == batches - 1) ? kept.size() : lo + per;
        maxima.push_back(*std::max_element(kept.begin() + long(lo), kept.begin() + long(hi)));
    }
    double mean = 0.0;
    for (double m : maxima) {
        mean += m;
    }
    mean /= double(batches);
    double var = 0.0;
    for (double m : maxima) {
        var += (m - mean) * (m - mean);
    }
    var /= double(batches - 1);
    const double overall = *std::max_element(kept.begin(), kept.end());
    return BatchMaxStats{overall, std::sqrt(var / double(batches))};
}

std::vector<ScatterRow> witness_scatter(std::uint64_t samples_per_class, std::uint64_t seed) {
    const MeasurementSuite suite = pauli_suite();
    const SuiteMatrices mats = collect_suite(suite);
    std::vector<ScatterRow> rows;
    rows.reserve(4 * samples_per_class);

    const ScatterClass classes[4] = {ScatterClass::MixedLocal, ScatterClass::PureLocal,
                                     ScatterClass::PureC2, ScatterClass::PureC4};
    for (int c = 0; c < 4; ++c) {
        const Index k = (classes[c] == ScatterClass::PureC2) ? 2
                        : (classes[c] == ScatterClass::PureC4) ? 4
                                                               : 1;
        for (std::uint64_t i = 0; i < samples_per_class; ++i) {
            PhiloxStream rng(seed, std::uint64_t(c) * samples_per_class + i);
            double f;
            if (classes[c] == ScatterClass::MixedLocal) {
                // Local mixed states: partial traces of Haar-random pure
                // states on a doubled space.
                const Vector v_rho = rng.haar_vector(4);
                const Vector v_eff = rng.haar_vector(4);
                const SubsystemOperator rho =
                    partial_trace(SubsystemOperator{{2, 2}, v_rho * v_rho.adjoint()}, {1});
                const SubsystemOperator eff =
                    partial_trace(SubsystemOperator{{2, 2}, v_eff * v_eff.adjoint()}, {1});
                double acc = 0.0;
                bool ok = true;
                for (const std::vector<Matrix> &setting : mats.omegas) {
                    double total = 0.0;
                    double first = 0.0;
                    double second = 0.0;
                    for (std::size_t m = 0; m < setting.size(); ++m) {
                        const double pm =
                            (setting[m] * rho.mat * setting[m].adjoint() * eff.mat).trace().real();
                        total += pm;
                        if (m == 0) {
                            first = pm;
                        } else {
                            second = pm;
                        }
                    }
                    if (total <= kSampleDenomFloor) {
                        ok = false;
                        break;
                    }
                    acc += std::abs(first - second) / total;
                }
                if (!ok) {
                    continue;
                }
                f = acc;
            } else {
                const PurePastPair pair = haar_pure_past(2, k, rng);
                const Matrix psi_m = reshape_rows(pair.psi, 2, k);
                const Matrix eff_m = reshape_rows(pair.effect_vec, 2, k);
                f = pure_pair_witness(WitnessKind::PauliAbsSum, mats, psi_m * eff_m.adjoint());
                if (std::isnan(f)) {
                    continue;
                }
            }
            rows.push_back(ScatterRow{i, classes[c], f});
        }
    }
    return rows;
}

} // namespace pastq
