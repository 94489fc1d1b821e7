#include "tsnsim/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tsnsim {

RunReport build_report(const Scenario& scenario, const RunResult& result, Nanos bin_width) {
  if (bin_width <= 0) {
    throw std::invalid_argument("report: bin width must be > 0");
  }
  RunReport report;
  const Nanos cycle = scenario.gcl.cycle_time;
  const std::size_t bin_count = static_cast<std::size_t>((cycle + bin_width - 1) / bin_width);

  std::map<std::string, ListenerHistogram> histograms;
  std::map<std::uint32_t, SlotHitRatio> slot_hits;
  std::map<std::string, std::uint32_t> talker_priority;
  for (const TalkerSpec& talker : scenario.talkers) {
    talker_priority[talker.pod] = talker.priority;
  }

  for (const TraceRecord& record : result.trace) {
    if (record.was_cloned) {
      ++report.cloned;
    }
    if (record.was_dropped) {
      ++report.dropped;
      continue;
    }
    ++report.delivered;

    ListenerHistogram& histogram = histograms[record.listener];
    if (histogram.bins.empty()) {
      histogram.listener = record.listener;
      histogram.bin_width = bin_width;
      histogram.bins.assign(bin_count, 0);
    }
    ++histogram.bins[static_cast<std::size_t>(*record.rx_phase / bin_width)];
    ++histogram.total;

    const std::uint32_t configured = talker_priority.at(record.talker);
    SlotHitRatio& slot = slot_hits[configured];
    slot.priority = configured;
    ++slot.delivered;
    if (scenario.gcl.open_at(configured, *record.rx_phase)) {
      ++slot.hits;
    }
  }

  for (auto& [name, histogram] : histograms) {
    report.histograms.push_back(std::move(histogram));
  }
  for (auto& [priority, slot] : slot_hits) {
    report.slot_hits.push_back(slot);
  }
  report.stats = result.stats;
  return report;
}

std::string format_report(const Scenario& scenario, const RunReport& report) {
  std::ostringstream out;
  out << "run: " << (scenario.name.empty() ? "(unnamed)" : scenario.name) << "\n";
  out << "seed: " << scenario.seed << "  strategy: " << to_string(scenario.strategy)
      << "  cycle: " << scenario.gcl.cycle_time << "ns\n";
  out << "packets: delivered=" << report.delivered << " dropped=" << report.dropped
      << " cloned=" << report.cloned << "\n";

  out << "slot-hit ratio by configured priority:\n";
  if (report.slot_hits.empty()) {
    out << "  (no delivered packets)\n";
  }
  for (const SlotHitRatio& slot : report.slot_hits) {
    out << "  prio " << slot.priority << ": " << std::fixed << std::setprecision(3)
        << slot.ratio() << " (" << slot.hits << "/" << slot.delivered << ")\n";
  }

  for (const ListenerHistogram& histogram : report.histograms) {
    out << "rx-phase histogram for " << histogram.listener << " (bin "
        << histogram.bin_width << "ns, " << histogram.total << " packets):\n";
    for (std::size_t i = 0; i < histogram.bins.size(); ++i) {
      if (histogram.bins[i] == 0) {
        continue;
      }
      const Nanos lo = static_cast<Nanos>(i) * histogram.bin_width;
      const Nanos hi = std::min<Nanos>(lo + histogram.bin_width, scenario.gcl.cycle_time);
      out << "  [" << std::setw(8) << lo << ", " << std::setw(8) << hi << ") "
          << histogram.bins[i] << "\n";
    }
  }

  out << "proxy stats: stored=" << report.stats.stored << " restored=" << report.stats.restored
      << " retagged=" << report.stats.cloned_retagged << " collected=" << report.stats.collected
      << " misses=" << report.stats.misses << "\n";
  return out.str();
}

}  // namespace tsnsim
