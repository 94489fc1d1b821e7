#include "tsnsim/taprio.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tsnsim {

bool GateWindow::opens(std::uint32_t priority) const {
  return std::find(open_priorities.begin(), open_priorities.end(), priority) !=
         open_priorities.end();
}

void GateControlList::validate() const {
  if (cycle_time <= 0) {
    throw std::invalid_argument("gcl: cycle_time must be > 0");
  }
  if (windows.empty()) {
    throw std::invalid_argument("gcl: windows must be non-empty");
  }
  Nanos expected_start = 0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const GateWindow& w = windows[i];
    const std::string at = "gcl: windows[" + std::to_string(i) + "]";
    if (w.start_offset != expected_start) {
      throw std::invalid_argument(at + ": windows must tile the cycle without gap or overlap");
    }
    if (w.start_offset >= w.end_offset) {
      throw std::invalid_argument(at + ": start_offset must be < end_offset");
    }
    if (w.end_offset > cycle_time) {
      throw std::invalid_argument(at + ": end_offset exceeds cycle_time");
    }
    expected_start = w.end_offset;
  }
  if (expected_start != cycle_time) {
    throw std::invalid_argument("gcl: windows do not cover the full cycle");
  }
  bool best_effort_slot = false;
  for (const GateWindow& w : windows) {
    best_effort_slot = best_effort_slot || w.opens(0);
  }
  if (!best_effort_slot) {
    throw std::invalid_argument("gcl: no window opens priority 0; unlisted priorities would have no slot");
  }
}

Nanos GateControlList::phase_in_cycle(Nanos t) const {
  if (t < base_time) {
    throw std::invalid_argument("phase_in_cycle: time precedes gcl base_time");
  }
  return (t - base_time) % cycle_time;
}

std::uint32_t GateControlList::effective_priority(std::uint32_t priority) const {
  for (const GateWindow& w : windows) {
    if (w.opens(priority)) {
      return priority;
    }
  }
  return 0;
}

const GateWindow& GateControlList::window_at(Nanos phase) const {
  for (const GateWindow& w : windows) {
    if (phase >= w.start_offset && phase < w.end_offset) {
      return w;
    }
  }
  throw std::invalid_argument("window_at: phase outside cycle");
}

bool GateControlList::open_at(std::uint32_t priority, Nanos phase) const {
  return window_at(phase).opens(priority);
}

Nanos GateControlList::next_transmit_time(std::uint32_t priority, Nanos now) const {
  const std::uint32_t p = effective_priority(priority);
  const Nanos phase = phase_in_cycle(now);
  const Nanos cycle_start = now - phase;

  std::size_t index = 0;
  while (!(phase >= windows[index].start_offset && phase < windows[index].end_offset)) {
    ++index;
  }
  if (windows[index].opens(p)) {
    return now;
  }
  for (std::size_t step = 1; step <= windows.size(); ++step) {
    const std::size_t j = (index + step) % windows.size();
    const bool wrapped = index + step >= windows.size();
    if (windows[j].opens(p)) {
      return cycle_start + windows[j].start_offset + (wrapped ? cycle_time : 0);
    }
  }
  throw std::logic_error("next_transmit_time: no open window for priority");
}

Taprio::Taprio(GateControlList gcl, Nanos serialization_time)
    : gcl_(std::move(gcl)), serialization_time_(serialization_time) {
  gcl_.validate();
  if (serialization_time_ < 0) {
    throw std::invalid_argument("taprio: serialization_time must be >= 0");
  }
}

std::uint32_t Taprio::traffic_class(std::uint32_t priority) const {
  return gcl_.effective_priority(priority);
}

Nanos Taprio::enqueue(PacketBuffer pkt, Nanos now) {
  const std::uint32_t cls = traffic_class(pkt.priority);
  Nanos candidate = now;
  auto tail = backlog_tail_.find(cls);
  if (tail != backlog_tail_.end()) {
    candidate = std::max(candidate, tail->second);
  }
  if (pkt.txtime) {
    candidate = std::max(candidate, *pkt.txtime);
  }
  const Nanos transmit_at = gcl_.next_transmit_time(cls, candidate);
  backlog_tail_[cls] = transmit_at + serialization_time_;
  queues_[cls].push_back(QueuedPacket{std::move(pkt), now, transmit_at});
  return transmit_at;
}

QueuedPacket Taprio::dequeue_front(std::uint32_t traffic_class) {
  auto it = queues_.find(traffic_class);
  if (it == queues_.end() || it->second.empty()) {
    throw std::logic_error("dequeue_front: empty traffic class queue");
  }
  QueuedPacket front = std::move(it->second.front());
  it->second.pop_front();
  return front;
}

std::size_t Taprio::queued(std::uint32_t traffic_class) const {
  auto it = queues_.find(traffic_class);
  return it == queues_.end() ? 0 : it->second.size();
}

std::size_t Taprio::total_queued() const {
  std::size_t total = 0;
  for (const auto& [cls, queue] : queues_) {
    total += queue.size();
  }
  return total;
}

}  // namespace tsnsim
