#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "tsnsim/packet.hpp"

namespace tsnsim {

// One timeslot of the cycle: [start_offset, end_offset) is open for the
// listed priorities and closed for everything else.
struct GateWindow {
  Nanos start_offset = 0;
  Nanos end_offset = 0;
  std::vector<std::uint32_t> open_priorities;

  bool opens(std::uint32_t priority) const;
};

// 802.1Qbv gate schedule: a repeating cycle tiled by gate windows, anchored
// at base_time. Methods other than validate() assume a validated list.
struct GateControlList {
  Nanos cycle_time = 0;
  std::vector<GateWindow> windows;
  Nanos base_time = 0;

  // Checks that the windows tile [0, cycle_time) in order with no overlap or
  // gap, and that some window opens priority 0 so the best-effort fallback
  // always has a slot. Throws std::invalid_argument otherwise.
  void validate() const;

  // Offset of t within its cycle. Throws std::invalid_argument for
  // t < base_time.
  Nanos phase_in_cycle(Nanos t) const;

  // Priorities listed in no window fall back to priority 0, mirroring
  // taprio's default traffic-class mapping.
  std::uint32_t effective_priority(std::uint32_t priority) const;

  const GateWindow& window_at(Nanos phase) const;

  // Whether a window open for `priority` (no remapping) covers this phase.
  bool open_at(std::uint32_t priority, Nanos phase) const;

  // Earliest t >= now whose phase falls in a window open for the (remapped)
  // priority; now itself when already inside such a window.
  Nanos next_transmit_time(std::uint32_t priority, Nanos now) const;
};

struct QueuedPacket {
  PacketBuffer pkt;
  Nanos enqueue_time = 0;
  Nanos transmit_time = 0;
};

// Time-aware scheduler state: per-traffic-class FIFO queues over a gate
// control list. Packets wait for their gate; a class's backlog transmits
// back-to-back from the gate-open instant, each transmission occupying
// serialization_time on the wire. Gates close by schedule only: a packet
// whose serialization crosses its gate's end still transmits as long as it
// starts inside the gate.
class Taprio {
 public:
  explicit Taprio(GateControlList gcl, Nanos serialization_time = 0);

  // Appends the packet to its class queue and fixes its wire-transmit time:
  // the earliest gate admission at or after max(now, class backlog tail,
  // packet txtime). Returns the transmit time.
  Nanos enqueue(PacketBuffer pkt, Nanos now);

  QueuedPacket dequeue_front(std::uint32_t traffic_class);

  const GateControlList& gcl() const { return gcl_; }
  Nanos serialization_time() const { return serialization_time_; }
  std::uint32_t traffic_class(std::uint32_t priority) const;
  std::size_t queued(std::uint32_t traffic_class) const;
  std::size_t total_queued() const;

 private:
  GateControlList gcl_;
  Nanos serialization_time_;
  std::map<std::uint32_t, std::deque<QueuedPacket>> queues_;
  std::map<std::uint32_t, Nanos> backlog_tail_;  // next free start per class
};

}  // namespace tsnsim
