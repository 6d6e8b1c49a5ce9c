#include "ckw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ckw {

namespace {

using nlohmann::json;

std::complex<double> complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex numbers must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to(std::complex<double> z) { return json::array({round_sig12(z.real()), round_sig12(z.imag())}); }

int qubit_count(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("state file needs an integer \"n\"");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxQubits) throw ParseError("\"n\" must be in [1, 12]");
    return n;
}

}  // namespace

AnyState state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("state file needs a string \"kind\"");
    const auto kind = j["kind"].get<std::string>();
    const int n = qubit_count(j);
    const auto dim = dim_of(n);
    try {
        if (kind == "pure") {
            const auto& a = j.at("amplitudes");
            if (!a.is_array() || a.size() != dim)
                throw ParseError("\"amplitudes\" must hold exactly " + std::to_string(dim) + " entries");
            CVector<double> v(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = complex_from(a[i]);
            return PureState::from_amplitudes(std::move(v), n);
        }
        if (kind == "density") {
            const auto& e = j.at("entries");
            if (!e.is_array() || e.size() != dim)
                throw ParseError("\"entries\" must hold exactly " + std::to_string(dim) + " rows");
            CMatrix<double> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (std::size_t r = 0; r < dim; ++r) {
                if (!e[r].is_array() || e[r].size() != dim)
                    throw ParseError("each density row must hold exactly " + std::to_string(dim) + " entries");
                for (std::size_t c = 0; c < dim; ++c)
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from(e[r][c]);
            }
            return DensityMatrix::from_matrix(std::move(m), n);
        }
    } catch (const json::exception& ex) {
        throw ParseError(ex.what());
    }
    throw ParseError("unknown state kind \"" + kind + "\"");
}

json to_json(const PureState& psi) {
    json amps = json::array();
    for (std::size_t i = 0; i < psi.dim(); ++i) amps.push_back(complex_to(psi[i]));
    return {{"kind", "pure"}, {"n", psi.qubits()}, {"amplitudes", std::move(amps)}};
}

json to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rho.dim(); ++c) row.push_back(complex_to(rho(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"kind", "density"}, {"n", rho.qubits()}, {"entries", std::move(rows)}};
}

AnyState load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ParseError(path.string() + ": " + ex.what());
    }
    return state_from_json(j);
}

void save_state(const std::filesystem::path& path, const AnyState& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::visit([](const auto& s) { return to_json(s); }, state).dump(2) << '\n';
}

std::string format_number(double x) {
    if (x == 0) x = 0;  // drop the sign of -0
    char buf[64];
    const double ax = std::abs(x);
    if (ax > 0 && ax < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.11e", x);
    } else {
        const int magnitude = ax > 0 ? static_cast<int>(std::floor(std::log10(ax))) : 0;
        const int decimals = std::max(0, 11 - magnitude);
        std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
        // Rounding can carry into a new leading digit (9.99.. -> 10.0..).
        const double printed = std::abs(std::strtod(buf, nullptr));
        if (printed > 0 && static_cast<int>(std::floor(std::log10(printed))) > magnitude && decimals > 0)
            std::snprintf(buf, sizeof buf, "%.*f", decimals - 1, x);
    }
    return buf;
}

double round_sig12(double x) {
    if (x == 0 || !std::isfinite(x)) return x == 0 ? 0.0 : x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::strtod(buf, nullptr);
}

json to_json(const RoofResult& result) {
    json comps = json::array();
    for (const auto& c : result.best.components) {
        json amps = json::array();
        for (std::size_t i = 0; i < c.psi.dim(); ++i) amps.push_back(complex_to(c.psi[i]));
        comps.push_back({{"p", round_sig12(c.p)}, {"amplitudes", std::move(amps)}});
    }
    return {{"upper_bound", round_sig12(result.upper_bound)},
            {"bound", "upper"},
            {"components", std::move(comps)},
            {"restarts_used", result.restarts_used},
            {"evaluations", result.evaluations},
            {"rank", result.rank},
            {"components_cap", result.components_cap}};
}

json to_json(const BatchStats& s) {
    json j = {{"mode", std::string(to_string(s.mode))},
              {"n_samples", s.n_samples},
              {"seed", s.seed},
              {"min_slack", round_sig12(s.min_slack)},
              {"max_gap", round_sig12(s.max_gap)},
              {"mean_slack", round_sig12(s.mean_slack)},
              {"violations", s.violations},
              {"histogram", s.histogram}};
    if (s.mode == VerifyMode::kNQubit) j["qubits"] = s.qubits;
    return j;
}

std::string batch_csv_header() { return "mode,n_samples,seed,min_slack,max_gap,mean_slack,violations"; }

std::string batch_csv_row(const BatchStats& s) {
    std::ostringstream os;
    os << to_string(s.mode) << ',' << s.n_samples << ',' << s.seed << ',' << format_number(s.min_slack) << ','
       << format_number(s.max_gap) << ',' << format_number(s.mean_slack) << ',' << s.violations;
    return os.str();
}

void append_batch_csv(const std::filesystem::path& path, const BatchStats& stats) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (fresh) out << batch_csv_header() << '\n';
    out << batch_csv_row(stats) << '\n';
}

}  // namespace ckw
