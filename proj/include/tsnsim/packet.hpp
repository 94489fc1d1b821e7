#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsnsim {

using Nanos = std::int64_t;
using Bytes = std::vector<std::uint8_t>;

// Network namespace identity. Exactly one namespace per node is the host
// (default) namespace.
struct NamespaceId {
  std::string name;
  bool is_host = false;

  friend bool operator==(const NamespaceId&, const NamespaceId&) = default;
};

// In-node packet representation: opaque payload plus the metadata fields TSN
// qdiscs schedule on. buffer_id identifies one live buffer; data_id is shared
// by every clone of the same payload. A txtime of 0 ns is a real launch time,
// distinct from "no txtime set".
struct PacketBuffer {
  std::uint64_t buffer_id = 0;
  std::uint64_t data_id = 0;
  std::shared_ptr<const Bytes> payload;
  std::uint32_t priority = 0;
  std::optional<Nanos> txtime;
  std::uint32_t mark = 0;
  NamespaceId ns;

  const Bytes& payload_bytes() const;
};

// Hands out buffer/data identifiers, monotonically. Ids are never reused
// within a run, so a stale store entry can never collide with a live buffer.
class IdAllocator {
 public:
  std::uint64_t next_buffer_id() { return next_buffer_id_++; }
  std::uint64_t next_data_id() { return next_data_id_++; }

 private:
  std::uint64_t next_buffer_id_ = 1;
  std::uint64_t next_data_id_ = 1;
};

// Socket send: allocates a fresh buffer with default metadata.
PacketBuffer make_packet(IdAllocator& ids, Bytes payload, NamespaceId ns);

// SO_PRIORITY / SO_TXTIME control messages. Unset parameters leave the prior
// value in place.
PacketBuffer apply_control_messages(PacketBuffer pkt,
                                    std::optional<std::uint32_t> priority,
                                    std::optional<Nanos> txtime);

// Namespace-crossing scrub: deletes txtime and mark. Without a crossing
// nothing is deleted. Never touches priority.
PacketBuffer scrub_packet(PacketBuffer pkt, bool crossing_namespace);

// Interface-to-interface forward: zeroes priority and moves the buffer into
// the destination namespace. Applies on every veth hop, crossing or not.
PacketBuffer forward_to_device(PacketBuffer pkt, NamespaceId dest);

// Buffer copy: fresh buffer_id, same data_id, identical metadata, shared
// payload bytes. The original stays valid.
PacketBuffer clone_packet(IdAllocator& ids, const PacketBuffer& pkt);

}  // namespace tsnsim
