#pragma once

#include <string>

namespace longrun {

/// Shortest decimal that round-trips to the same double; "inf", "-inf", "nan"
/// for the non-finite values.
std::string format_double(double x);

}  // namespace longrun
