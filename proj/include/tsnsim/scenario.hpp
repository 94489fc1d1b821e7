#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsnsim/cni.hpp"
#include "tsnsim/taprio.hpp"

namespace tsnsim {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One periodic traffic source living in a pod, streaming to one listener
// outside the node.
struct TalkerSpec {
  std::string pod;
  std::uint32_t priority = 0;
  Nanos period = 0;
  Nanos start_offset = 0;
  std::size_t payload_size = 0;
  std::optional<std::uint64_t> count;
  std::string listener;
};

// What happens to a packet between the pod's veth and the TSN NIC.
struct HostPathSpec {
  double clone_probability = 0.0;
  double drop_probability = 0.0;
  Nanos forward_delay = 0;
};

struct GcSpec {
  Nanos interval = 2'000'000'000;  // 2 s
  Nanos max_age = 5'000'000'000;   // 5 s
};

// Declarative experiment input. A (seed, scenario) pair fully determines the
// run.
struct Scenario {
  std::string name;
  Nanos duration = 0;
  std::uint64_t seed = 0;
  bool proxy_enabled = true;
  std::vector<TalkerSpec> talkers;
  HostPathSpec host_path;
  GateControlList gcl;
  GcSpec gc;
  KeyStrategy strategy = KeyStrategy::BufferAddress;
  Nanos serialization_time = 0;

  // Throws ScenarioError naming the offending field.
  void validate() const;
};

// "1500" or 1500 means nanoseconds; "40us", "3ms", "2s" are scaled. Value
// must be a non-negative integer.
Nanos parse_duration(const std::string& text);

Scenario scenario_from_json(const Json& doc);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace tsnsim
