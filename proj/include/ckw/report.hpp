#pragma once

#include "ckw/io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ckw {

/// Ordered (name, value) pairs.
using MeasureReport = std::vector<std::pair<std::string, double>>;

/// Every measure defined for the state:
///   3-qubit pure:    pairwise and one-vs-rest tangles, tau_ABC, slack, EoFs
///   3-qubit density: pairwise tangles and their EoFs
///   2-qubit:         lambdas, tangle, concurrence, EoF
/// Other sizes throw std::invalid_argument.
MeasureReport measure_report(const AnyState& state);

double report_value(const MeasureReport& report, const std::string& name);

std::string report_csv(const MeasureReport& report);
nlohmann::json report_json(const MeasureReport& report);

}  // namespace ckw
