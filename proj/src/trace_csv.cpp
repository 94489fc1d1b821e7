#include "tsnsim/trace_csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tsnsim {

namespace {

constexpr const char* kHeader =
    "packet_seq,talker,listener,tx_time,rx_time,rx_phase,priority_at_rx,was_cloned,was_dropped";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

std::int64_t parse_int(const std::string& field, std::size_t line_no, const char* name) {
  try {
    std::size_t used = 0;
    const std::int64_t value = std::stoll(field, &used);
    if (used != field.size()) {
      throw std::invalid_argument(field);
    }
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error("trace csv: line " + std::to_string(line_no) + ": bad " +
                             std::string(name) + " \"" + field + "\"");
  }
}

bool parse_bool(const std::string& field, std::size_t line_no, const char* name) {
  if (field == "0") {
    return false;
  }
  if (field == "1") {
    return true;
  }
  throw std::runtime_error("trace csv: line " + std::to_string(line_no) + ": bad " +
                           std::string(name) + " \"" + field + "\"");
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records) {
  out << kHeader << "\n";
  for (const TraceRecord& r : records) {
    out << r.packet_seq << ',' << r.talker << ',' << r.listener << ',' << r.tx_time << ',';
    if (r.rx_time) {
      out << *r.rx_time;
    }
    out << ',';
    if (r.rx_phase) {
      out << *r.rx_phase;
    }
    out << ',';
    if (r.priority_at_rx) {
      out << *r.priority_at_rx;
    }
    out << ',' << (r.was_cloned ? 1 : 0) << ',' << (r.was_dropped ? 1 : 0) << "\n";
  }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("trace csv: missing or unexpected header row");
  }
  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 9) {
      throw std::runtime_error("trace csv: line " + std::to_string(line_no) +
                               ": expected 9 fields, got " + std::to_string(fields.size()));
    }
    TraceRecord r;
    r.packet_seq = static_cast<std::uint64_t>(parse_int(fields[0], line_no, "packet_seq"));
    r.talker = fields[1];
    r.listener = fields[2];
    r.tx_time = parse_int(fields[3], line_no, "tx_time");
    if (!fields[4].empty()) {
      r.rx_time = parse_int(fields[4], line_no, "rx_time");
    }
    if (!fields[5].empty()) {
      r.rx_phase = parse_int(fields[5], line_no, "rx_phase");
    }
    if (!fields[6].empty()) {
      r.priority_at_rx = static_cast<std::uint32_t>(parse_int(fields[6], line_no, "priority_at_rx"));
    }
    r.was_cloned = parse_bool(fields[7], line_no, "was_cloned");
    r.was_dropped = parse_bool(fields[8], line_no, "was_dropped");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace tsnsim
