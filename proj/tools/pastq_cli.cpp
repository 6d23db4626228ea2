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
// Command-line surface of the library.  Every run is deterministic for a
// fixed flag set; stochastic subcommands embed seed and sample count in
// their CSV comment header.  Exit codes: 0 success, 2 usage, 3 file/schema,
// 4 non-Hermitian input, 5 impossible postselection, 6 dimension mismatch,
// 7 other domain errors.  Failures print {"error":{"type","message"}} on
// stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pastq/cv.hpp"
#include "pastq/errors.hpp"
#include "pastq/fixtures.hpp"
#include "pastq/json_io.hpp"
#include "pastq/reduced_state.hpp"
#include "pastq/retrodiction.hpp"
#include "pastq/rng.hpp"
#include "pastq/witness.hpp"

namespace {

constexpr const char *kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

// Output sink: --out path when given, stdout otherwise.
class Sink {
  public:
    explicit Sink(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw pastq::SchemaError(path + ": cannot open output file");
            }
            out_ = &file_;
        }
    }
    std::ostream &stream() { return *out_; }

  private:
    std::ofstream file_;
    std::ostream *out_ = &std::cout;
};

struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000;
    std::string out;
    std::string format = "csv";

    // probs / xi inputs
    std::string rho_path;
    std::string effect_path;
    std::string povm_path;
    bool local = false;

    // witness parameters
    int grid = 11;
    int d = 4;
    int kmax = 4;

    // cv parameters
    double nbar = 1.0;
    std::string kind = "wigner";
    std::string which = "xi";
    double rmax = 3.0;
    int points = 61;
    int nmax = int(pastq::kDefaultNmax);
    std::vector<double> s_list{0.0, 0.4, 0.8, 1.2};
    double phi = 0.0;
};

void run_probs(const RunConfig &cfg) {
    const pastq::SubsystemOperator rho = pastq::parse_operator_file(cfg.rho_path);
    const pastq::SubsystemOperator effect = pastq::parse_operator_file(cfg.effect_path);
    const pastq::Povm povm = pastq::parse_povm_file(cfg.povm_path);
    const pastq::PastState past = pastq::make_past_state(rho, effect);
    const pastq::RealVector p =
        cfg.local ? pastq::past_probs_local(past, povm) : pastq::past_probs(past, povm);

    Sink sink(cfg.out);
    if (cfg.format == "json") {
        nlohmann::json j;
        j["version"] = kVersion;
        j["subcommand"] = "probs";
        j["povm"] = povm.label;
        j["local"] = cfg.local;
        j["probs"] = nlohmann::json::array();
        for (pastq::Index m = 0; m < p.size(); ++m) {
            j["probs"].push_back(p(m));
        }
        sink.stream() << j.dump(2) << "\n";
        return;
    }
    sink.stream() << "# pastq v" << kVersion << " probs povm=" << povm.label
                  << " local=" << (cfg.local ? 1 : 0) << "\n"
                  << "outcome,p\n";
    for (pastq::Index m = 0; m < p.size(); ++m) {
        sink.stream() << m << "," << fmt(p(m)) << "\n";
    }
}

void run_xi(const RunConfig &cfg) {
    const pastq::SubsystemOperator rho = pastq::parse_operator_file(cfg.rho_path);
    const pastq::SubsystemOperator effect = pastq::parse_operator_file(cfg.effect_path);
    const pastq::ReducedPastState reduced =
        pastq::xi_from_past(pastq::make_past_state(rho, effect));
    const pastq::NegativityResult neg = pastq::negativity_witness(reduced);
    const pastq::MarginalCriteria marg = pastq::marginal_criteria(reduced);
    const pastq::Complex tr = pastq::trace(reduced.xi);

    nlohmann::json j;
    j["lambda_min"] = neg.lambda_min;
    j["marginal_lambda_mins"] = {marg.lambda_min_first, marg.lambda_min_second};
    j["trace"] = {tr.real(), tr.imag()};
    Sink sink(cfg.out);
    sink.stream() << j.dump(2) << "\n";
}

void run_scatter(const RunConfig &cfg) {
    const std::vector<pastq::ScatterRow> rows = pastq::witness_scatter(cfg.samples, cfg.seed);
    Sink sink(cfg.out);
    sink.stream() << "# pastq v" << kVersion << " witness scatter seed=" << cfg.seed
                  << " samples=" << cfg.samples << "\n"
                  << "class,sample,f\n";
    for (const pastq::ScatterRow &row : rows) {
        sink.stream() << pastq::scatter_class_name(row.cls) << "," << row.sample << ","
                      << fmt(row.f) << "\n";
    }
}

void run_gap(const RunConfig &cfg) {
    if (cfg.grid < 2) {
        throw pastq::InvalidArgument("gap grid needs at least 2 points per axis");
    }
    Sink sink(cfg.out);
    sink.stream() << "# pastq v" << kVersion << " witness gap seed=" << cfg.seed
                  << " samples=" << cfg.samples << " grid=" << cfg.grid << "\n"
                  << "p,q,delta\n";
    // The same base seed at every grid point: paired noise makes the surface
    // smooth in (p, q) and keeps symmetric points exactly symmetric.
    for (int ip = 0; ip < cfg.grid; ++ip) {
        const double p = double(ip) / double(cfg.grid - 1);
        for (int iq = 0; iq < cfg.grid; ++iq) {
            const double q = double(iq) / double(cfg.grid - 1);
            const pastq::DetectionGap gap = pastq::detection_gap(p, q, cfg.samples, cfg.seed);
            sink.stream() << fmt(p) << "," << fmt(q) << "," << fmt(gap.delta) << "\n";
        }
    }
}

void run_ck(const RunConfig &cfg) {
    if (cfg.kmax > cfg.d) {
        throw pastq::InvalidArgument("environments beyond the system dimension are redundant; "
                                     "need kmax <= d");
    }
    const pastq::MeasurementSuite suite = cfg.d == 2 ? pastq::pauli_suite() : pastq::mub_suite();
    const pastq::WitnessKind kind =
        cfg.d == 2 ? pastq::WitnessKind::PauliAbsSum : pastq::WitnessKind::MaxProbSum;
    Sink sink(cfg.out);
    sink.stream() << "# pastq v" << kVersion << " witness ck d=" << cfg.d << " kmax=" << cfg.kmax
                  << " seed=" << cfg.seed << " samples=" << cfg.samples << "\n"
                  << "sample,k,running_max\n";
    for (int k = 1; k <= cfg.kmax; ++k) {
        const pastq::CkEstimate est =
            pastq::estimate_ck(kind, suite, cfg.d, k, cfg.samples, pastq::mix_seed(cfg.seed, k),
                               pastq::CkStrategy::StateAndEffect);
        for (const auto &[sample, running_max] : est.trace) {
            sink.stream() << sample << "," << k << "," << fmt(running_max) << "\n";
        }
    }
}

void run_phase_space(const RunConfig &cfg) {
    if (cfg.points < 2) {
        throw pastq::InvalidArgument("phase-space scan needs at least 2 points");
    }
    const pastq::XiSign sign =
        cfg.which == "xi" ? pastq::XiSign::Alternating : pastq::XiSign::Plain;
    const pastq::FockOperator op = pastq::xi_diag(cfg.nbar, sign, cfg.nmax);

    Sink sink(cfg.out);
    sink.stream() << "# pastq v" << kVersion << " cv phase-space nbar=" << fmt(cfg.nbar)
                  << " kind=" << cfg.kind << " which=" << cfg.which << " nmax=" << cfg.nmax
                  << " rmax=" << fmt(cfg.rmax) << " points=" << cfg.points << "\n"
                  << "radius,value,closed_form,abs_err\n";
    for (int i = 0; i < cfg.points; ++i) {
        const double r = cfg.rmax * double(i) / double(cfg.points - 1);
        const pastq::Complex alpha(r, 0.0);
        double value;
        double closed;
        if (cfg.kind == "husimi") {
            value = pastq::husimi(op, alpha).value;
            closed = cfg.which == "xi" ? pastq::husimi_xi_closed(cfg.nbar, alpha)
                                       : pastq::husimi_thermal_closed(cfg.nbar, alpha);
        } else {
            value = pastq::wigner(op, alpha).value;
            closed = cfg.which == "xi" ? pastq::wigner_xi_closed(cfg.nbar, alpha)
                                       : pastq::wigner_thermal_closed(cfg.nbar, alpha);
        }
        sink.stream() << fmt(r) << "," << fmt(value) << "," << fmt(closed) << ","
                      << fmt(std::abs(value - closed)) << "\n";
    }
}

void run_variance(const RunConfig &cfg) {
    Sink sink(cfg.out);
    sink.stream() << "# pastq v" << kVersion << " cv variance phi=" << fmt(cfg.phi)
                  << " nmax=" << cfg.nmax << "\n"
                  << "s,variance\n";
    for (double s : cfg.s_list) {
        sink.stream() << fmt(s) << "," << fmt(pastq::past_quadrature_variance(s, cfg.phi, cfg.nmax))
                      << "\n";
    }
}

int run_subcommand(const RunConfig &cfg) {
    if (cfg.subcommand == "probs") {
        run_probs(cfg);
    } else if (cfg.subcommand == "xi") {
        run_xi(cfg);
    } else if (cfg.subcommand == "scatter") {
        run_scatter(cfg);
    } else if (cfg.subcommand == "gap") {
        run_gap(cfg);
    } else if (cfg.subcommand == "ck") {
        run_ck(cfg);
    } else if (cfg.subcommand == "phase-space") {
        run_phase_space(cfg);
    } else {
        run_variance(cfg);
    }
    return 0;
}

int error_exit(const pastq::PastqError &e) {
    const char *type = "DomainError";
    int code = 7;
    if (dynamic_cast<const pastq::SchemaError *>(&e)) {
        type = "SchemaError";
        code = 3;
    } else if (dynamic_cast<const pastq::NonHermitianInput *>(&e)) {
        type = "NonHermitianInput";
        code = 4;
    } else if (dynamic_cast<const pastq::ImpossiblePostselection *>(&e)) {
        type = "ImpossiblePostselection";
        code = 5;
    } else if (dynamic_cast<const pastq::DimensionMismatch *>(&e)) {
        type = "DimensionMismatch";
        code = 6;
    } else if (dynamic_cast<const pastq::TruncationTooSevere *>(&e)) {
        type = "TruncationTooSevere";
    } else if (dynamic_cast<const pastq::GridTooCoarse *>(&e)) {
        type = "GridTooCoarse";
    } else if (dynamic_cast<const pastq::SingularDenominator *>(&e)) {
        type = "SingularDenominator";
    } else if (dynamic_cast<const pastq::SizeOverflow *>(&e)) {
        type = "SizeOverflow";
    } else if (dynamic_cast<const pastq::InvalidPermutation *>(&e)) {
        type = "InvalidPermutation";
    } else if (dynamic_cast<const pastq::InvalidArgument *>(&e)) {
        type = "InvalidArgument";
    }
    nlohmann::json j;
    j["error"]["type"] = type;
    j["error"]["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char **argv) {
    RunConfig cfg;
    CLI::App app{"past-state retrodiction toolkit"};
    app.set_version_flag("--version", std::string("pastq v") + kVersion);
    app.require_subcommand(1);

    CLI::App *probs = app.add_subcommand("probs", "retrodicted outcome distribution of one POVM");
    probs->add_option("--rho", cfg.rho_path, "prior operator JSON file")->required();
    probs->add_option("--effect", cfg.effect_path, "effect operator JSON file")->required();
    probs->add_option("--povm", cfg.povm_path, "POVM JSON file")->required();
    probs->add_flag("--local", cfg.local, "measure the first subsystem of a bipartite pair");
    probs->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    probs->add_option("--out", cfg.out, "output path (stdout when omitted)");

    CLI::App *xi = app.add_subcommand("xi", "reduced past operator summary of a bipartite pair");
    xi->add_option("--rho", cfg.rho_path, "prior operator JSON file")->required();
    xi->add_option("--effect", cfg.effect_path, "effect operator JSON file")->required();
    xi->add_option("--out", cfg.out, "output path (stdout when omitted)");

    CLI::App *witness = app.add_subcommand("witness", "randomized witness surveys");
    witness->require_subcommand(1);
    CLI::App *scatter =
        witness->add_subcommand("scatter", "witness values for four past-state classes");
    scatter->add_option("--samples", cfg.samples, "samples per class");
    scatter->add_option("--seed", cfg.seed, "PRNG seed");
    scatter->add_option("--out", cfg.out, "output path (stdout when omitted)");
    CLI::App *gap = witness->add_subcommand("gap", "detection gap over a (p, q) grid");
    gap->add_option("--grid", cfg.grid, "points per axis");
    gap->add_option("--samples", cfg.samples, "samples per run");
    gap->add_option("--seed", cfg.seed, "PRNG seed");
    gap->add_option("--out", cfg.out, "output path (stdout when omitted)");
    CLI::App *ck = witness->add_subcommand("ck", "running-maximum witness estimates per k");
    ck->add_option("--d", cfg.d, "system dimension")->check(CLI::IsMember({2, 4}));
    ck->add_option("--kmax", cfg.kmax, "largest environment dimension")->check(CLI::Range(1, 8));
    ck->add_option("--samples", cfg.samples, "samples per k");
    ck->add_option("--seed", cfg.seed, "PRNG seed");
    ck->add_option("--out", cfg.out, "output path (stdout when omitted)");

    CLI::App *cv = app.add_subcommand("cv", "continuous-variable retrodiction");
    cv->require_subcommand(1);
    CLI::App *phase = cv->add_subcommand("phase-space", "radial phase-space scan vs closed form");
    phase->add_option("--nbar", cfg.nbar, "mean photon number")->check(CLI::NonNegativeNumber);
    phase->add_option("--kind", cfg.kind, "phase-space function")
        ->check(CLI::IsMember({"husimi", "wigner"}));
    phase->add_option("--which", cfg.which, "operator to scan")
        ->check(CLI::IsMember({"xi", "thermal"}));
    phase->add_option("--rmax", cfg.rmax, "largest radius")->check(CLI::PositiveNumber);
    phase->add_option("--points", cfg.points, "number of radii");
    phase->add_option("--nmax", cfg.nmax, "Fock cutoff")->check(CLI::PositiveNumber);
    phase->add_option("--out", cfg.out, "output path (stdout when omitted)");
    CLI::App *variance = cv->add_subcommand("variance", "retrodicted quadrature variances");
    variance->add_option("--s-list", cfg.s_list, "squeezing values")->delimiter(',');
    variance->add_option("--phi", cfg.phi, "quadrature phase");
    variance->add_option("--nmax", cfg.nmax, "Fock cutoff")->check(CLI::PositiveNumber);
    variance->add_option("--out", cfg.out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
        for (const auto *sub :
             {probs, xi, scatter, gap, ck, phase, variance}) {
            if (sub->parsed()) {
                cfg.subcommand = sub->get_name();
            }
        }
        return run_subcommand(cfg);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // help / version
        }
        nlohmann::json j;
        j["error"]["type"] = "UsageError";
        j["error"]["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 2;
    } catch (const pastq::PastqError &e) {
        return error_exit(e);
    } catch (const std::exception &e) {
        nlohmann::json j;
        j["error"]["type"] = "InternalError";
        j["error"]["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 7;
    }
}
