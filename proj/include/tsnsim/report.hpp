#pragma once

#include <string>
#include <vector>

#include "tsnsim/engine.hpp"

namespace tsnsim {

struct ListenerHistogram {
  std::string listener;
  Nanos bin_width = 0;
  std::vector<std::uint64_t> bins;  // rx_phase / bin_width, over [0, cycle_time)
  std::uint64_t total = 0;
};

// Fraction of a configured priority's delivered packets whose rx phase fell
// in a window open for that priority.
struct SlotHitRatio {
  std::uint32_t priority = 0;
  std::uint64_t hits = 0;
  std::uint64_t delivered = 0;

  double ratio() const { return delivered == 0 ? 0.0 : static_cast<double>(hits) / delivered; }
};

struct RunReport {
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t cloned = 0;
  std::vector<ListenerHistogram> histograms;  // ordered by listener name
  std::vector<SlotHitRatio> slot_hits;        // ordered by priority
  StoreStats stats;
};

RunReport build_report(const Scenario& scenario, const RunResult& result,
                       Nanos bin_width = 1000);

std::string format_report(const Scenario& scenario, const RunReport& report);

}  // namespace tsnsim
