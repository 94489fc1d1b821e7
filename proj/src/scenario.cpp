#include "tsnsim/scenario.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace tsnsim {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError("scenario: " + path + ": " + what);
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(path + "." + key, "missing required field");
  }
  return obj[key];
}

Nanos duration_value(const Json& value, const std::string& path) {
  if (value.is_number_unsigned() || value.is_number_integer()) {
    const auto ns = value.get<std::int64_t>();
    if (ns < 0) {
      fail(path, "must be non-negative");
    }
    return ns;
  }
  if (value.is_string()) {
    try {
      return parse_duration(value.get<std::string>());
    } catch (const std::exception& err) {
      fail(path, err.what());
    }
  }
  fail(path, "must be an integer nanosecond count or a suffixed duration string");
}

Nanos duration_member(const Json& obj, const std::string& path, const char* key) {
  return duration_value(member(obj, path, key), path + "." + key);
}

Nanos duration_member_or(const Json& obj, const std::string& path, const char* key,
                         Nanos fallback) {
  if (!obj.is_object() || !obj.contains(key)) {
    return fallback;
  }
  return duration_value(obj[key], path + "." + key);
}

std::uint64_t uint_member(const Json& obj, const std::string& path, const char* key) {
  const Json& value = member(obj, path, key);
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    fail(path + "." + key, "must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

double fraction_member_or(const Json& obj, const std::string& path, const char* key,
                          double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const Json& value = obj[key];
  if (!value.is_number()) {
    fail(path + "." + key, "must be a number in [0, 1]");
  }
  return value.get<double>();
}

std::string string_member(const Json& obj, const std::string& path, const char* key) {
  const Json& value = member(obj, path, key);
  if (!value.is_string()) {
    fail(path + "." + key, "must be a string");
  }
  return value.get<std::string>();
}

bool plain_name(const std::string& name) {
  if (name.empty()) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

}  // namespace

Nanos parse_duration(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos == 0) {
    throw std::invalid_argument("duration \"" + text + "\": must start with digits");
  }
  std::int64_t value = 0;
  try {
    value = std::stoll(text.substr(0, pos));
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("duration \"" + text + "\": out of range");
  }
  const std::string suffix = text.substr(pos);
  std::int64_t scale = 1;
  if (suffix.empty() || suffix == "ns") {
    scale = 1;
  } else if (suffix == "us") {
    scale = 1'000;
  } else if (suffix == "ms") {
    scale = 1'000'000;
  } else if (suffix == "s") {
    scale = 1'000'000'000;
  } else {
    throw std::invalid_argument("duration \"" + text + "\": unknown suffix \"" + suffix +
                                "\" (expected ns, us, ms or s)");
  }
  if (value > std::numeric_limits<std::int64_t>::max() / scale) {
    throw std::invalid_argument("duration \"" + text + "\": out of range");
  }
  return value * scale;
}

void Scenario::validate() const {
  if (duration < 0) {
    throw ScenarioError("scenario: duration: must be non-negative");
  }
  if (talkers.empty()) {
    throw ScenarioError("scenario: talkers: must be non-empty");
  }
  for (std::size_t i = 0; i < talkers.size(); ++i) {
    const TalkerSpec& talker = talkers[i];
    const std::string at = "scenario: talkers[" + std::to_string(i) + "]";
    if (!plain_name(talker.pod)) {
      throw ScenarioError(at + ".pod: must be a non-empty [A-Za-z0-9._-] name");
    }
    if (!plain_name(talker.listener)) {
      throw ScenarioError(at + ".listener: must be a non-empty [A-Za-z0-9._-] name");
    }
    if (talker.period <= 0) {
      throw ScenarioError(at + ".period: must be > 0");
    }
    if (talker.start_offset < 0) {
      throw ScenarioError(at + ".startOffset: must be non-negative");
    }
  }
  if (host_path.clone_probability < 0.0 || host_path.clone_probability > 1.0) {
    throw ScenarioError("scenario: hostPath.cloneProbability: must be in [0, 1]");
  }
  if (host_path.drop_probability < 0.0 || host_path.drop_probability > 1.0) {
    throw ScenarioError("scenario: hostPath.dropProbability: must be in [0, 1]");
  }
  if (host_path.forward_delay < 0) {
    throw ScenarioError("scenario: hostPath.forwardDelay: must be non-negative");
  }
  if (gc.interval <= 0) {
    throw ScenarioError("scenario: gc.interval: must be > 0");
  }
  if (gc.max_age < 0) {
    throw ScenarioError("scenario: gc.maxAge: must be non-negative");
  }
  if (serialization_time < 0) {
    throw ScenarioError("scenario: serializationTime: must be non-negative");
  }
  try {
    gcl.validate();
  } catch (const std::invalid_argument& err) {
    throw ScenarioError(std::string("scenario: ") + err.what());
  }
  for (const TalkerSpec& talker : talkers) {
    if (talker.start_offset < gcl.base_time) {
      throw ScenarioError(
          "scenario: gcl.baseTime: must not exceed the earliest talker startOffset");
    }
  }
}

Scenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw ScenarioError("scenario: top-level value must be an object");
  }
  Scenario scenario;
  if (doc.contains("name")) {
    scenario.name = string_member(doc, "", "name");
  }
  scenario.duration = duration_member(doc, "", "duration");
  if (doc.contains("seed")) {
    scenario.seed = uint_member(doc, "", "seed");
  }
  if (doc.contains("proxyEnabled")) {
    if (!doc["proxyEnabled"].is_boolean()) {
      throw ScenarioError("scenario: proxyEnabled: must be a boolean");
    }
    scenario.proxy_enabled = doc["proxyEnabled"].get<bool>();
  }
  if (doc.contains("strategy")) {
    const std::string text = string_member(doc, "", "strategy");
    const auto strategy = key_strategy_from_string(text);
    if (!strategy) {
      throw ScenarioError("scenario: strategy: expected \"buffer-address\" or \"data-address\"");
    }
    scenario.strategy = *strategy;
  }
  scenario.serialization_time = duration_member_or(doc, "", "serializationTime", 0);

  const Json& talkers = member(doc, "", "talkers");
  if (!talkers.is_array()) {
    throw ScenarioError("scenario: talkers: must be an array");
  }
  for (std::size_t i = 0; i < talkers.size(); ++i) {
    const Json& entry = talkers[i];
    const std::string at = "talkers[" + std::to_string(i) + "]";
    TalkerSpec talker;
    talker.pod = string_member(entry, at, "pod");
    talker.priority = static_cast<std::uint32_t>(uint_member(entry, at, "priority"));
    talker.period = duration_member(entry, at, "period");
    talker.start_offset = duration_member_or(entry, at, "startOffset", 0);
    talker.payload_size = static_cast<std::size_t>(uint_member(entry, at, "payloadSize"));
    if (entry.contains("count")) {
      talker.count = uint_member(entry, at, "count");
    }
    talker.listener = string_member(entry, at, "listener");
    scenario.talkers.push_back(std::move(talker));
  }

  if (doc.contains("hostPath")) {
    const Json& host = doc["hostPath"];
    scenario.host_path.clone_probability =
        fraction_member_or(host, "hostPath", "cloneProbability", 0.0);
    scenario.host_path.drop_probability =
        fraction_member_or(host, "hostPath", "dropProbability", 0.0);
    scenario.host_path.forward_delay =
        duration_member_or(host, "hostPath", "forwardDelay", 0);
  }

  const Json& gcl = member(doc, "", "gcl");
  scenario.gcl.cycle_time = duration_member(gcl, "gcl", "cycleTime");
  scenario.gcl.base_time = duration_member_or(gcl, "gcl", "baseTime", 0);
  const Json& windows = member(gcl, "gcl", "windows");
  if (!windows.is_array()) {
    throw ScenarioError("scenario: gcl.windows: must be an array");
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const Json& entry = windows[i];
    const std::string at = "gcl.windows[" + std::to_string(i) + "]";
    GateWindow window;
    window.start_offset = duration_member(entry, at, "start");
    window.end_offset = duration_member(entry, at, "end");
    const Json& priorities = member(entry, at, "priorities");
    if (!priorities.is_array()) {
      throw ScenarioError("scenario: " + at + ".priorities: must be an array");
    }
    for (const Json& p : priorities) {
      if (!p.is_number_unsigned() && !(p.is_number_integer() && p.get<std::int64_t>() >= 0)) {
        throw ScenarioError("scenario: " + at + ".priorities: entries must be non-negative integers");
      }
      window.open_priorities.push_back(p.get<std::uint32_t>());
    }
    scenario.gcl.windows.push_back(std::move(window));
  }

  if (doc.contains("gc")) {
    const Json& gc = doc["gc"];
    scenario.gc.interval = duration_member_or(gc, "gc", "interval", scenario.gc.interval);
    scenario.gc.max_age = duration_member_or(gc, "gc", "maxAge", scenario.gc.max_age);
  }

  scenario.validate();
  return scenario;
}

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ScenarioError(std::string("scenario: ") + err.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream input(path);
  if (!input) {
    throw ScenarioError("scenario: cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return parse_scenario(buffer.str());
}

}  // namespace tsnsim
