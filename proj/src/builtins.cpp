#include "ckw/builtins.hpp"

#include <charconv>
#include <cmath>

namespace ckw {

PureState ghz_state() {
    const double s = 1 / std::sqrt(2.0);
    return pure_from_amplitudes({s, 0, 0, 0, 0, 0, 0, s}, 3);
}

PureState w_state() {
    const double s = 1 / std::sqrt(3.0);
    return pure_from_amplitudes({0, s, s, 0, s, 0, 0, 0}, 3);
}

PureState singlet_state() {
    const double s = 1 / std::sqrt(2.0);
    return pure_from_amplitudes({0, s, -s, 0}, 2);
}

PureState eq15_state(double a, double b, double c) {
    return pure_from_amplitudes({0, c, b, 0, a, 0, 0, 0}, 3, Normalize::kAlways);
}

PureState eof_example_state() { return eq15_state(1 / std::sqrt(2.0), 0.5, 0.5); }

DensityMatrix ghz_mixture() {
    CMatrix<double> m = CMatrix<double>::Zero(8, 8);
    m(0, 0) = 0.5;
    m(7, 7) = 0.5;
    return DensityMatrix::from_matrix(std::move(m), 3);
}

DensityMatrix werner_state(double p) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("Werner weight must lie in [0, 1]");
    return mix(density_from_pure(singlet_state()), maximally_mixed(2), p);
}

namespace {

std::vector<double> parse_reals(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        double v = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw ParseError("malformed number \"" + std::string(token) + "\"");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

AnyState builtin_state(std::string_view name) {
    if (name == "ghz") return ghz_state();
    if (name == "w") return w_state();
    if (name == "singlet") return singlet_state();
    if (name == "eof-example") return eof_example_state();
    if (name == "ghz-mixture") return ghz_mixture();
    if (name.starts_with("eq15:")) {
        const auto v = parse_reals(name.substr(5));
        if (v.size() != 3) throw ParseError("eq15 needs three coefficients, e.g. eq15:0.5773,0.5773,0.5773");
        try {
            return eq15_state(v[0], v[1], v[2]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (name.starts_with("werner:")) {
        const auto v = parse_reals(name.substr(7));
        if (v.size() != 1) throw ParseError("werner needs one weight, e.g. werner:0.75");
        try {
            return werner_state(v[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown builtin state \"" + std::string(name) + "\"");
}

std::vector<std::string> builtin_names() {
    return {"ghz", "w", "singlet", "eq15:a,b,c", "eof-example", "ghz-mixture", "werner:p"};
}

}  // namespace ckw
