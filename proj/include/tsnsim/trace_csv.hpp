#pragma once

#include <iosfwd>
#include <vector>

#include "tsnsim/engine.hpp"

namespace tsnsim {

// Trace CSV: header row then one record per row, fields in TraceRecord
// order, times as integer nanoseconds, booleans as 0/1, absent rx fields
// empty. ASCII, comma-separated, newline-terminated.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records);

// Inverse of write_trace_csv. Throws std::runtime_error on malformed input.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

}  // namespace tsnsim
