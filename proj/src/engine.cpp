#include "tsnsim/engine.hpp"

#include <queue>
#include <random>
#include <unordered_map>
#include <variant>

#include "tsnsim/taprio.hpp"

namespace tsnsim {

namespace {

struct SendEvent {
  std::size_t talker = 0;
  std::uint64_t seq = 0;
};

// Packet identity carried alongside the buffer between pipeline stages.
struct PendingInfo {
  std::size_t talker = 0;
  std::uint64_t seq = 0;
  Nanos tx_time = 0;
  bool was_cloned = false;
};

struct NicArrivalEvent {
  PacketBuffer pkt;
  PendingInfo info;
};

struct TransmitEvent {
  std::uint32_t traffic_class = 0;
};

struct GcEvent {};

struct Event {
  Nanos time = 0;
  std::uint64_t order = 0;  // tie-break: insertion order
  std::variant<SendEvent, NicArrivalEvent, TransmitEvent, GcEvent> payload;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) {
      return a.time > b.time;
    }
    return a.order > b.order;
  }
};

class Engine {
 public:
  Engine(const Scenario& scenario, const RunOverrides& overrides)
      : scenario_(scenario),
        proxy_on_(overrides.proxy.value_or(scenario.proxy_enabled)),
        rng_(scenario.seed),
        taprio_(scenario.gcl, scenario.serialization_time),
        host_ns_{"host", true} {
    if (proxy_on_) {
      node_.emplace();
      NodeInitOptions options;
      options.nic = "eth0";
      options.gc_interval = scenario.gc.interval;
      options.max_age = scenario.gc.max_age;
      options.strategy = scenario.strategy;
      node_->init(options);
      if (!overrides.clone_probe) {
        node_->detach_clone_probe();
      }
    }
    // kubelet side: one namespace per pod, TSA exactly when a talker names it
    for (const TalkerSpec& talker : scenario.talkers) {
      if (pod_ns_.count(talker.pod) == 0) {
        pod_ns_[talker.pod] =
            proxy_on_ ? node_->init_pod(talker.pod, true) : NamespaceId{talker.pod, false};
      }
    }
  }

  RunResult run() {
    for (std::size_t i = 0; i < scenario_.talkers.size(); ++i) {
      const TalkerSpec& talker = scenario_.talkers[i];
      const bool any = talker.start_offset < scenario_.duration &&
                       (!talker.count || *talker.count > 0);
      if (any) {
        push(talker.start_offset, SendEvent{i, 0});
      }
    }
    if (proxy_on_ && scenario_.gc.interval <= scenario_.duration) {
      push(scenario_.gc.interval, GcEvent{});
    }

    while (!events_.empty()) {
      Event event = events_.top();
      events_.pop();
      now_ = event.time;
      std::visit([&](auto& payload) { handle(payload); }, event.payload);
    }

    if (proxy_on_) {
      result_.stats = node_->store().stats();
      result_.final_store_size = node_->store().size();
    }
    return std::move(result_);
  }

 private:
  void push(Nanos time, std::variant<SendEvent, NicArrivalEvent, TransmitEvent, GcEvent> payload) {
    events_.push(Event{time, next_order_++, std::move(payload)});
  }

  // [0, 1) with a fully specified mapping from the mt19937_64 stream.
  double draw() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  void handle(SendEvent& event) {
    const TalkerSpec& talker = scenario_.talkers[event.talker];

    PacketBuffer pkt = make_packet(
        ids_, talker_payload(event.talker, event.seq, talker.payload_size),
        pod_ns_[talker.pod]);
    pkt = apply_control_messages(pkt, talker.priority, std::nullopt);

    if (proxy_on_ && node_->pod_hook_attached(talker.pod)) {
      node_->store().store(pkt, now_);
      result_.store_times.push_back(now_);
    }

    // veth hop into the host namespace
    pkt = scrub_packet(std::move(pkt), true);
    pkt = forward_to_device(std::move(pkt), host_ns_);

    bool was_cloned = false;
    if (scenario_.host_path.clone_probability > 0.0 &&
        draw() < scenario_.host_path.clone_probability) {
      PacketBuffer clone = clone_packet(ids_, pkt);
      if (proxy_on_ && node_->clone_probe_attached()) {
        node_->store().track_clone(pkt, clone);
      }
      pkt = std::move(clone);
      was_cloned = true;
    }

    bool dropped = false;
    if (scenario_.host_path.drop_probability > 0.0 &&
        draw() < scenario_.host_path.drop_probability) {
      dropped = true;
    }

    PendingInfo info{event.talker, event.seq, now_, was_cloned};
    if (dropped) {
      record_drop(info);
    } else {
      push(now_ + scenario_.host_path.forward_delay,
           NicArrivalEvent{std::move(pkt), info});
    }

    const Nanos next_time = now_ + talker.period;
    const std::uint64_t next_seq = event.seq + 1;
    if (next_time < scenario_.duration && (!talker.count || next_seq < *talker.count)) {
      push(next_time, SendEvent{event.talker, next_seq});
    }
  }

  void handle(NicArrivalEvent& event) {
    PacketBuffer pkt = std::move(event.pkt);
    if (proxy_on_) {
      pkt = node_->store().restore(std::move(pkt));
    }
    const std::uint32_t cls = taprio_.traffic_class(pkt.priority);
    pending_[pkt.buffer_id] = event.info;
    const Nanos transmit_at = taprio_.enqueue(std::move(pkt), now_);
    push(transmit_at, TransmitEvent{cls});
  }

  void handle(TransmitEvent& event) {
    QueuedPacket queued = taprio_.dequeue_front(event.traffic_class);
    if (queued.transmit_time != now_) {
      throw std::logic_error("engine: transmit event out of order with its class queue");
    }
    auto it = pending_.find(queued.pkt.buffer_id);
    const PendingInfo info = it->second;
    pending_.erase(it);
    const TalkerSpec& talker = scenario_.talkers[info.talker];

    TraceRecord record;
    record.packet_seq = info.seq;
    record.talker = talker.pod;
    record.listener = talker.listener;
    record.tx_time = info.tx_time;
    record.rx_time = now_;
    record.rx_phase = scenario_.gcl.phase_in_cycle(now_);
    record.priority_at_rx = queued.pkt.priority;
    record.was_cloned = info.was_cloned;
    result_.trace.push_back(std::move(record));
    result_.delivered_payloads.push_back(
        DeliveredPayload{talker.pod, info.seq, queued.pkt.payload_bytes()});
  }

  void handle(GcEvent&) {
    MetadataStore& store = node_->store();
    const std::size_t removed = store.collect_expired(now_);
    result_.gc_log.push_back(
        GcObservation{now_, removed, store.size(), store.oldest_age(now_)});
    const Nanos next_time = now_ + scenario_.gc.interval;
    if (next_time <= scenario_.duration) {
      push(next_time, GcEvent{});
    }
  }

  void record_drop(const PendingInfo& info) {
    const TalkerSpec& talker = scenario_.talkers[info.talker];
    TraceRecord record;
    record.packet_seq = info.seq;
    record.talker = talker.pod;
    record.listener = talker.listener;
    record.tx_time = info.tx_time;
    record.was_cloned = info.was_cloned;
    record.was_dropped = true;
    result_.trace.push_back(std::move(record));
  }

  const Scenario& scenario_;
  bool proxy_on_;
  std::mt19937_64 rng_;
  IdAllocator ids_;
  Taprio taprio_;
  NamespaceId host_ns_;
  std::optional<Node> node_;
  std::unordered_map<std::string, NamespaceId> pod_ns_;
  std::unordered_map<std::uint64_t, PendingInfo> pending_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t next_order_ = 0;
  Nanos now_ = 0;
  RunResult result_;
};

}  // namespace

Bytes talker_payload(std::size_t talker_index, std::uint64_t seq, std::size_t size) {
  Bytes payload(size);
  std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(talker_index) << 32) ^ seq;
  for (std::size_t i = 0; i < size; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    payload[i] = static_cast<std::uint8_t>(state >> 56);
  }
  return payload;
}

RunResult run_scenario(const Scenario& scenario, const RunOverrides& overrides) {
  scenario.validate();
  Engine engine(scenario, overrides);
  return engine.run();
}

bool replay_check(const Scenario& scenario) {
  const RunResult first = run_scenario(scenario);
  const RunResult second = run_scenario(scenario);
  return first.trace == second.trace;
}

}  // namespace tsnsim
