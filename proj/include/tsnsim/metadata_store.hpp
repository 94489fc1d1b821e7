#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>

#include "tsnsim/packet.hpp"

namespace tsnsim {

// Which packet identifier keys the store. BufferAddress needs the clone
// tracker to re-key copies; DataAddress survives clones by construction
// because the data identifier is shared. Fixed per node for a whole run.
enum class KeyStrategy { BufferAddress, DataAddress };

const char* to_string(KeyStrategy strategy);
std::optional<KeyStrategy> key_strategy_from_string(std::string_view name);

std::uint64_t key_of(const PacketBuffer& pkt, KeyStrategy strategy);

// The proxied fields: 4-byte priority plus 8-byte txtime, and the insertion
// time the garbage collector ages against.
struct MetadataRecord {
  std::uint32_t priority = 0;
  std::optional<Nanos> txtime;
  Nanos inserted_at = 0;

  friend bool operator==(const MetadataRecord&, const MetadataRecord&) = default;
};

struct StoreStats {
  std::uint64_t stored = 0;
  std::uint64_t restored = 0;
  std::uint64_t cloned_retagged = 0;
  std::uint64_t collected = 0;
  std::uint64_t misses = 0;

  friend bool operator==(const StoreStats&, const StoreStats&) = default;
};

// Node-wide keyed store of TSN metadata, the eBPF-hashmap analog. At most one
// record per key; a successful restore consumes its entry.
//
// The reference event loop is single-threaded. A concurrent implementation
// must keep insert, lookup+delete and the expiry scan atomic per key; nothing
// here requires a lock held across the whole map while a restore runs.
class MetadataStore {
 public:
  MetadataStore(KeyStrategy strategy, Nanos max_age);

  // Pod tc-egress hook: capture priority and txtime before the namespace
  // crossing scrubs them. Overwrites any prior record at the key. The
  // payload is never copied or touched.
  void store(const PacketBuffer& pkt, Nanos now);

  // Clone-probe hook, fired right after clone_packet. Under BufferAddress,
  // re-adds the original's record under the clone's key; the original entry
  // stays, since the original buffer may still be transmitted. Under
  // DataAddress the keys coincide and this is a no-op.
  void track_clone(const PacketBuffer& original, const PacketBuffer& clone);

  // NIC tc-egress hook: on a hit, writes the record back into the packet and
  // deletes the entry. A miss is ordinary non-TSA traffic, counted and
  // passed through unchanged.
  PacketBuffer restore(PacketBuffer pkt);

  // Removes every entry older than max_age. Returns the number removed.
  std::size_t collect_expired(Nanos now);

  KeyStrategy strategy() const { return strategy_; }
  Nanos max_age() const { return max_age_; }
  const StoreStats& stats() const { return stats_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::uint64_t key) const { return entries_.count(key) != 0; }
  std::optional<MetadataRecord> lookup(std::uint64_t key) const;

  // Age of the oldest entry, or nothing when empty.
  std::optional<Nanos> oldest_age(Nanos now) const;

 private:
  std::unordered_map<std::uint64_t, MetadataRecord> entries_;
  KeyStrategy strategy_;
  Nanos max_age_;
  StoreStats stats_;
};

}  // namespace tsnsim
