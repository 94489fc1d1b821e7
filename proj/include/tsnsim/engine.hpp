#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsnsim/metadata_store.hpp"
#include "tsnsim/scenario.hpp"

namespace tsnsim {

// One packet as observed by its listener. Dropped packets keep their send
// side fields; the rx fields stay empty.
struct TraceRecord {
  std::uint64_t packet_seq = 0;
  std::string talker;
  std::string listener;
  Nanos tx_time = 0;
  std::optional<Nanos> rx_time;
  std::optional<Nanos> rx_phase;
  std::optional<std::uint32_t> priority_at_rx;
  bool was_cloned = false;
  bool was_dropped = false;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// Store state right after one GC pass.
struct GcObservation {
  Nanos time = 0;
  std::size_t removed = 0;
  std::size_t size_after = 0;
  std::optional<Nanos> oldest_age_after;
};

struct DeliveredPayload {
  std::string talker;
  std::uint64_t packet_seq = 0;
  Bytes payload;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  StoreStats stats;
  std::vector<GcObservation> gc_log;
  std::vector<Nanos> store_times;  // times the pod-egress hook fired
  std::size_t final_store_size = 0;
  std::vector<DeliveredPayload> delivered_payloads;
};

// Knobs that live outside the scenario file: the CLI's --proxy switch and
// the clone-probe kill switch used to show the tracking hook matters.
struct RunOverrides {
  std::optional<bool> proxy;
  bool clone_probe = true;
};

// Runs the full egress pipeline for every talker packet: control messages,
// pod-egress store hook, veth scrub+forward, host-path clone/drop, NIC
// restore hook, gate scheduling, wire transmit. Identical (seed, scenario)
// inputs produce identical results.
RunResult run_scenario(const Scenario& scenario, const RunOverrides& overrides = {});

// Runs the scenario twice and compares the traces.
bool replay_check(const Scenario& scenario);

// Deterministic payload fill for talker packets; independent of the
// scenario seed so payload identity can be compared across runs.
Bytes talker_payload(std::size_t talker_index, std::uint64_t seq, std::size_t size);

}  // namespace tsnsim
