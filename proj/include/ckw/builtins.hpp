#pragma once

// Named states: ghz, w, singlet, eq15:a,b,c, eof-example, ghz-mixture,
// werner:p.

#include "ckw/io.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ckw {

PureState ghz_state();
PureState w_state();
PureState singlet_state();

/// a|100> + b|010> + c|001>, normalized.
PureState eq15_state(double a, double b, double c);

/// (1/sqrt 2)|100> + (1/2)|010> + (1/2)|001>.
PureState eof_example_state();

/// (|000><000| + |111><111|) / 2.
DensityMatrix ghz_mixture();

/// p |singlet><singlet| + (1 - p) I/4.
DensityMatrix werner_state(double p);

/// Throws ParseError for unknown names or malformed parameters.
AnyState builtin_state(std::string_view name);

std::vector<std::string> builtin_names();

}  // namespace ckw
