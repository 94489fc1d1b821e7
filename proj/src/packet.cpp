#include "tsnsim/packet.hpp"

#include <utility>

namespace tsnsim {

const Bytes& PacketBuffer::payload_bytes() const {
  static const Bytes empty;
  return payload ? *payload : empty;
}

PacketBuffer make_packet(IdAllocator& ids, Bytes payload, NamespaceId ns) {
  PacketBuffer pkt;
  pkt.buffer_id = ids.next_buffer_id();
  pkt.data_id = ids.next_data_id();
  pkt.payload = std::make_shared<const Bytes>(std::move(payload));
  pkt.ns = std::move(ns);
  return pkt;
}

PacketBuffer apply_control_messages(PacketBuffer pkt,
                                    std::optional<std::uint32_t> priority,
                                    std::optional<Nanos> txtime) {
  if (priority) {
    pkt.priority = *priority;
  }
  if (txtime) {
    pkt.txtime = *txtime;
  }
  return pkt;
}

PacketBuffer scrub_packet(PacketBuffer pkt, bool crossing_namespace) {
  if (crossing_namespace) {
    pkt.txtime.reset();
    pkt.mark = 0;
  }
  return pkt;
}

PacketBuffer forward_to_device(PacketBuffer pkt, NamespaceId dest) {
  pkt.priority = 0;
  pkt.ns = std::move(dest);
  return pkt;
}

PacketBuffer clone_packet(IdAllocator& ids, const PacketBuffer& pkt) {
  PacketBuffer copy = pkt;
  copy.buffer_id = ids.next_buffer_id();
  return copy;
}

}  // namespace tsnsim
