#pragma once

#include <string>
#include <vector>

#include "syndsl/trace.hpp"

namespace syndsl {

// CSV dialect: comma-separated, no quoting, lowercase 0x-prefixed hex, LF
// line endings. The header row names the flattened ports (in0,in1,... or
// out0,...); data rows carry one hex value per port per cycle.

std::string trace_to_csv(const Trace& t, const std::string& port_prefix,
                         size_t columns);

// Validates each cell against the port widths; malformed cells are reported
// with their row and column. The header row only fixes the column count.
Trace trace_from_csv(const std::string& text,
                     const std::vector<unsigned>& widths);

}  // namespace syndsl
