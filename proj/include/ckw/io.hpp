#pragma once

// State files, report serialization and number formatting.
//
// State file schema:
//   {"kind":"pure","n":3,"amplitudes":[[re,im],...]}
//   {"kind":"density","n":3,"entries":[[[re,im],...],...]}   (row-major)

#include "ckw/convex_roof.hpp"
#include "ckw/monogamy.hpp"
#include "ckw/qstate.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

namespace ckw {

using AnyState = std::variant<PureState, DensityMatrix>;

/// Malformed files and schema violations.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

AnyState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);

AnyState load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const AnyState& state);

/// Twelve significant digits; lowercase scientific notation when 0 < |x| < 1e-4.
std::string format_number(double x);

/// x rounded to twelve significant digits, for JSON output.
double round_sig12(double x);

nlohmann::json to_json(const RoofResult& result);
nlohmann::json to_json(const BatchStats& stats);

std::string batch_csv_header();
std::string batch_csv_row(const BatchStats& stats);

/// Appends one row, writing the header first if the file is new or empty.
void append_batch_csv(const std::filesystem::path& path, const BatchStats& stats);

}  // namespace ckw
