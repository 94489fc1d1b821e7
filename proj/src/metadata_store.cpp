#include "tsnsim/metadata_store.hpp"

#include <algorithm>

namespace tsnsim {

const char* to_string(KeyStrategy strategy) {
  switch (strategy) {
    case KeyStrategy::BufferAddress:
      return "buffer-address";
    case KeyStrategy::DataAddress:
      return "data-address";
  }
  return "unknown";
}

std::optional<KeyStrategy> key_strategy_from_string(std::string_view name) {
  if (name == "buffer-address") {
    return KeyStrategy::BufferAddress;
  }
  if (name == "data-address") {
    return KeyStrategy::DataAddress;
  }
  return std::nullopt;
}

std::uint64_t key_of(const PacketBuffer& pkt, KeyStrategy strategy) {
  return strategy == KeyStrategy::BufferAddress ? pkt.buffer_id : pkt.data_id;
}

MetadataStore::MetadataStore(KeyStrategy strategy, Nanos max_age)
    : strategy_(strategy), max_age_(max_age) {}

void MetadataStore::store(const PacketBuffer& pkt, Nanos now) {
  entries_[key_of(pkt, strategy_)] = MetadataRecord{pkt.priority, pkt.txtime, now};
  ++stats_.stored;
}

void MetadataStore::track_clone(const PacketBuffer& original, const PacketBuffer& clone) {
  if (strategy_ != KeyStrategy::BufferAddress) {
    return;  // clone shares the data identifier, nothing to re-key
  }
  auto it = entries_.find(original.buffer_id);
  if (it == entries_.end()) {
    return;
  }
  entries_[clone.buffer_id] = it->second;
  ++stats_.cloned_retagged;
}

PacketBuffer MetadataStore::restore(PacketBuffer pkt) {
  auto it = entries_.find(key_of(pkt, strategy_));
  if (it == entries_.end()) {
    ++stats_.misses;
    return pkt;
  }
  pkt.priority = it->second.priority;
  pkt.txtime = it->second.txtime;
  entries_.erase(it);
  ++stats_.restored;
  return pkt;
}

std::size_t MetadataStore::collect_expired(Nanos now) {
  std::size_t removed = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (now - it->second.inserted_at > max_age_) {
      it = entries_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  stats_.collected += removed;
  return removed;
}

std::optional<MetadataRecord> MetadataStore::lookup(std::uint64_t key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<Nanos> MetadataStore::oldest_age(Nanos now) const {
  if (entries_.empty()) {
    return std::nullopt;
  }
  Nanos oldest = 0;
  for (const auto& [key, record] : entries_) {
    oldest = std::max(oldest, now - record.inserted_at);
  }
  return oldest;
}

}  // namespace tsnsim
