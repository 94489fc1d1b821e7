#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "tsnsim/cni.hpp"
#include "tsnsim/engine.hpp"
#include "tsnsim/report.hpp"
#include "tsnsim/trace_csv.hpp"

namespace py = pybind11;

namespace {

using namespace tsnsim;

py::dict record_to_dict(const TraceRecord& r) {
  py::dict d;
  d["packet_seq"] = r.packet_seq;
  d["talker"] = r.talker;
  d["listener"] = r.listener;
  d["tx_time"] = r.tx_time;
  d["rx_time"] = r.rx_time ? py::cast(*r.rx_time) : py::none();
  d["rx_phase"] = r.rx_phase ? py::cast(*r.rx_phase) : py::none();
  d["priority_at_rx"] = r.priority_at_rx ? py::cast(*r.priority_at_rx) : py::none();
  d["was_cloned"] = r.was_cloned;
  d["was_dropped"] = r.was_dropped;
  return d;
}

py::dict stats_to_dict(const StoreStats& s) {
  py::dict d;
  d["stored"] = s.stored;
  d["restored"] = s.restored;
  d["cloned_retagged"] = s.cloned_retagged;
  d["collected"] = s.collected;
  d["misses"] = s.misses;
  return d;
}

py::dict run(const Scenario& scenario, std::optional<bool> proxy, bool clone_probe) {
  RunOverrides overrides;
  overrides.proxy = proxy;
  overrides.clone_probe = clone_probe;
  const RunResult result = run_scenario(scenario, overrides);

  py::list records;
  for (const TraceRecord& r : result.trace) {
    records.append(record_to_dict(r));
  }
  py::dict out;
  out["records"] = records;
  out["stats"] = stats_to_dict(result.stats);
  out["final_store_size"] = result.final_store_size;
  out["gc_passes"] = result.gc_log.size();
  return out;
}

std::string run_csv(const Scenario& scenario, std::optional<bool> proxy) {
  RunOverrides overrides;
  overrides.proxy = proxy;
  const RunResult result = run_scenario(scenario, overrides);
  std::ostringstream out;
  write_trace_csv(out, result.trace);
  return out.str();
}

std::string rewrite_conflist(const std::string& text) {
  return insert_proxy_plugin(PluginChainConfig::parse(text)).dump(2) + "\n";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "TSN metadata proxy node simulator";

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("duration", &Scenario::duration)
      .def_readwrite("seed", &Scenario::seed)
      .def_readonly("proxy_enabled", &Scenario::proxy_enabled);

  m.def("load_scenario", &load_scenario, py::arg("path"),
        "Load and validate a scenario file.");
  m.def("parse_scenario", &parse_scenario, py::arg("text"),
        "Parse and validate a scenario from a JSON string.");
  m.def("run", &run, py::arg("scenario"), py::arg("proxy") = std::nullopt,
        py::arg("clone_probe") = true,
        "Run a scenario; returns records, proxy stats and store state.");
  m.def("run_csv", &run_csv, py::arg("scenario"), py::arg("proxy") = std::nullopt,
        "Run a scenario and return the trace as CSV text.");
  m.def("replay_check", &replay_check, py::arg("scenario"),
        "Run the scenario twice and compare traces.");
  m.def("insert_proxy_plugin", &rewrite_conflist, py::arg("conflist_json"),
        "Append the tsn-proxy entry to a CNI conflist document.");
  m.def("parse_duration", &parse_duration, py::arg("text"),
        "Parse '1500', '40us', '2s' style durations to nanoseconds.");
}
