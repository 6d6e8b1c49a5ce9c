#include "ckw/report.hpp"

#include "ckw/tangle2.hpp"
#include "ckw/three_tangle.hpp"

#include <sstream>
#include <stdexcept>

namespace ckw {

namespace {

constexpr const char* kLabels = "ABC";

std::string pair_name(int a, int b) { return std::string("tau_") + kLabels[a] + kLabels[b]; }

MeasureReport two_qubit_report(const DensityMatrix& rho) {
    const auto s = lambda_spectrum(rho);
    const double tau = tangle_from_spectrum(s);
    return {{"lambda1", s[0]}, {"lambda2", s[1]}, {"lambda3", s[2]}, {"lambda4", s[3]},
            {"tau_AB", tau},   {"C_AB", std::sqrt(tau)}, {"E_AB", eof_from_tangle(tau)}};
}

MeasureReport three_qubit_pure_report(const PureState& psi) {
    const auto rho = density_from_pure(psi);
    const double ab = tangle_mixed(partial_trace(rho, {0, 1}));
    const double ac = tangle_mixed(partial_trace(rho, {0, 2}));
    const double bc = tangle_mixed(partial_trace(rho, {1, 2}));
    const double a_bc = tangle_pure_bipartite(psi, {0});
    const double b_ca = tangle_pure_bipartite(psi, {1});
    const double c_ab = tangle_pure_bipartite(psi, {2});
    return {{"tau_AB", ab},
            {"tau_AC", ac},
            {"tau_BC", bc},
            {"tau_A(BC)", a_bc},
            {"tau_B(CA)", b_ca},
            {"tau_C(AB)", c_ab},
            {"tau_ABC", three_tangle(psi)},
            {"slack_A", a_bc - ab - ac},
            {"E_AB", eof_from_tangle(ab)},
            {"E_AC", eof_from_tangle(ac)},
            {"E_A(BC)", eof_from_tangle(a_bc)}};
}

MeasureReport three_qubit_mixed_report(const DensityMatrix& rho) {
    MeasureReport r;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& p : pairs) r.emplace_back(pair_name(p[0], p[1]), tangle_mixed(partial_trace(rho, {p[0], p[1]})));
    for (std::size_t i = 0; i < 3; ++i) {
        auto name = r[i].first;
        name.replace(0, 3, "E");
        r.emplace_back(name, eof_from_tangle(r[i].second));
    }
    return r;
}

}  // namespace

MeasureReport measure_report(const AnyState& state) {
    if (const auto* psi = std::get_if<PureState>(&state)) {
        if (psi->qubits() == 3) return three_qubit_pure_report(*psi);
        if (psi->qubits() == 2) return two_qubit_report(density_from_pure(*psi));
        throw std::invalid_argument("measures are defined for 2- or 3-qubit inputs");
    }
    const auto& rho = std::get<DensityMatrix>(state);
    if (rho.qubits() == 3) return three_qubit_mixed_report(rho);
    if (rho.qubits() == 2) return two_qubit_report(rho);
    throw std::invalid_argument("measures are defined for 2- or 3-qubit inputs");
}

double report_value(const MeasureReport& report, const std::string& name) {
    for (const auto& [k, v] : report)
        if (k == name) return v;
    throw std::out_of_range("no quantity named " + name);
}

std::string report_csv(const MeasureReport& report) {
    std::ostringstream os;
    os << "quantity,value\n";
    for (const auto& [k, v] : report) os << k << ',' << format_number(v) << '\n';
    return os.str();
}

nlohmann::json report_json(const MeasureReport& report) {
    auto j = nlohmann::json::object();
    for (const auto& [k, v] : report) j[k] = round_sig12(v);
    return j;
}

}  // namespace ckw
