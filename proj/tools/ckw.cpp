// ckw: tangles, three-tangle, monogamy checks and convex-roof bounds for few
// qubits.
//
// Exit codes: 0 success, 1 a checked relation was violated, 2 invalid input
// or usage.

#include "ckw/builtins.hpp"
#include "ckw/convex_roof.hpp"
#include "ckw/io.hpp"
#include "ckw/monogamy.hpp"
#include "ckw/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

struct SourceFlags {
    std::string builtin;
    std::string input;
};

void add_source_flags(CLI::App* cmd, SourceFlags& src) {
    auto* b = cmd->add_option("--builtin", src.builtin, "Named state (ghz, w, singlet, eq15:a,b,c, eof-example, ghz-mixture, werner:p)");
    auto* i = cmd->add_option("--input", src.input, "State file (JSON)");
    b->excludes(i);
    i->excludes(b);
}

ckw::AnyState load_source(const SourceFlags& src) {
    if (!src.builtin.empty()) return ckw::builtin_state(src.builtin);
    if (!src.input.empty()) return ckw::load_state(src.input);
    throw ckw::ParseError("one of --builtin or --input is required");
}

unsigned env_threads() {
    if (const char* v = std::getenv("CKW_THREADS")) {
        try {
            const int n = std::stoi(v);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring invalid CKW_THREADS=" << v << '\n';
    }
    return 0;
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<std::complex<double>> parse_alphas(const std::string& text) {
    std::vector<std::complex<double>> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.emplace_back(v, 0.0);
        } catch (const std::exception&) {
            throw ckw::ParseError("malformed amplitude \"" + tok + "\"");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement monogamy toolkit for few-qubit states"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = 0;
    std::optional<double> tol;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Output path (default stdout; verify appends CSV)");
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
        cmd->add_option("--tol", tol, "Override the checked tolerance");
    };

    // compute
    SourceFlags compute_src;
    auto* compute = app.add_subcommand("compute", "Report every measure for one state");
    add_source_flags(compute, compute_src);
    add_common(compute);

    // verify
    std::string mode_name;
    long long samples = 1000;
    int qubits = 4;
    std::string dump_path = "ckw_violation.json";
    auto* verify = app.add_subcommand("verify", "Check a monogamy relation over random states");
    verify->add_option("--mode", mode_name, "pure3_ckw | perm_invariance | formula_equiv | nqubit")->required();
    verify->add_option("-n,--samples", samples, "Number of samples")->capture_default_str();
    verify->add_option("--qubits", qubits, "Register size for nqubit mode")->capture_default_str();
    verify->add_option("--dump", dump_path, "Where to write the first violating state")->capture_default_str();
    add_common(verify);

    // roof
    SourceFlags roof_src;
    ckw::RoofConfig roof_cfg;
    auto* roof = app.add_subcommand("roof", "Upper-bound the convex roof of tau_A(BC) and check mixed monogamy");
    add_source_flags(roof, roof_src);
    roof->add_option("--components", roof_cfg.components, "Decomposition size (0: rank^2)")->capture_default_str();
    roof->add_option("--restarts", roof_cfg.restarts, "Random restarts")->capture_default_str();
    roof->add_option("--max-evals", roof_cfg.max_evals, "Objective evaluations per restart")->capture_default_str();
    roof->add_option("--step", roof_cfg.initial_step, "Initial step")->capture_default_str();
    roof->add_option("--decay", roof_cfg.step_decay, "Step decay factor")->capture_default_str();
    roof->add_option("--min-step", roof_cfg.min_step, "Stopping step")->capture_default_str();
    add_common(roof);

    // nqubit
    std::string alpha_text;
    bool random_alphas = false;
    auto* nqubit = app.add_subcommand("nqubit", "Check the W-family tangle equality for one amplitude vector");
    nqubit->add_option("--qubits", qubits, "Register size (uniform amplitudes unless --alphas/--random)");
    nqubit->add_option("--alphas", alpha_text, "Comma-separated real amplitudes");
    nqubit->add_flag("--random", random_alphas, "Draw complex Gaussian amplitudes from --seed");
    add_common(nqubit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    const unsigned threads = env_threads();
    try {
        if (*compute) {
            const auto report = ckw::measure_report(load_source(compute_src));
            emit(out_path, format == "json" ? ckw::report_json(report).dump(2) + "\n" : ckw::report_csv(report));
            return kExitOk;
        }

        if (*verify) {
            const auto mode = ckw::parse_verify_mode(mode_name);
            if (!mode) {
                std::cerr << "unknown mode: " << mode_name << '\n';
                return kExitInvalid;
            }
            if (samples < 1) {
                std::cerr << "-n/--samples must be at least 1\n";
                return kExitInvalid;
            }
            ckw::BatchOptions opts;
            opts.qubits = qubits;
            opts.threads = threads;
            opts.tolerance = tol;
            const auto stats = ckw::batch_verify(static_cast<std::size_t>(samples), seed, *mode, opts);
            if (format == "json") {
                emit(out_path, ckw::to_json(stats).dump(2) + "\n");
            } else {
                if (!out_path.empty()) ckw::append_batch_csv(out_path, stats);
                std::cout << ckw::batch_csv_header() << '\n' << ckw::batch_csv_row(stats) << '\n';
            }
            if (stats.violations > 0) {
                ckw::save_state(dump_path, *stats.first_violation);
                std::cerr << stats.violations << " violation(s); first at sample " << *stats.first_violation_index
                          << ", state written to " << dump_path << '\n';
                return kExitViolation;
            }
            return kExitOk;
        }

        if (*roof) {
            const auto state = load_source(roof_src);
            const auto rho = std::holds_alternative<ckw::PureState>(state)
                                 ? ckw::density_from_pure(std::get<ckw::PureState>(state))
                                 : std::get<ckw::DensityMatrix>(state);
            roof_cfg.seed = seed;
            roof_cfg.threads = threads;
            const auto rep = ckw::mixed_monogamy_check(rho, roof_cfg);
            const double margin_tol = tol.value_or(ckw::tol::kMixedMargin);
            auto j = ckw::to_json(rep.roof);
            j["monogamy"] = {{"tau_ab", ckw::round_sig12(rep.tau_ab)},
                             {"tau_ac", ckw::round_sig12(rep.tau_ac)},
                             {"margin", ckw::round_sig12(rep.margin)},
                             {"failed", rep.margin < -margin_tol}};
            emit(out_path, j.dump(2) + "\n");
            if (rep.margin < -margin_tol) {
                std::cerr << "mixed-state monogamy violated: margin " << ckw::format_number(rep.margin) << '\n';
                return kExitViolation;
            }
            return kExitOk;
        }

        if (*nqubit) {
            std::vector<std::complex<double>> alphas;
            if (!alpha_text.empty()) {
                alphas = parse_alphas(alpha_text);
            } else if (random_alphas) {
                alphas = ckw::random_w_amplitudes(qubits, seed, 0);
            } else {
                if (qubits < 2) throw std::invalid_argument("--qubits must be at least 2");
                alphas.assign(static_cast<std::size_t>(qubits), 1 / std::sqrt(static_cast<double>(qubits)));
            }
            const auto r = ckw::nqubit_equality_check(alphas);
            const ckw::MeasureReport report = {{"qubits", static_cast<double>(alphas.size())},
                                               {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}};
            emit(out_path, format == "json" ? ckw::report_json(report).dump(2) + "\n" : ckw::report_csv(report));
            return std::abs(r.gap) > tol.value_or(ckw::tol::kEqualityGap) ? kExitViolation : kExitOk;
        }
    } catch (const ckw::ParseError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
