#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsnsim/metadata_store.hpp"

namespace tsnsim {

// Insertion-ordered JSON keeps plugin entries and unknown fields exactly
// where the operator wrote them.
using Json = nlohmann::ordered_json;

inline constexpr const char* kProxyPluginType = "tsn-proxy";

struct ConflistError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parsed CNI conflist. The whole document is carried so fields this
// simulator does not interpret survive a rewrite untouched.
class PluginChainConfig {
 public:
  static PluginChainConfig parse(const std::string& text);
  static PluginChainConfig from_json(Json document);

  const Json& document() const { return doc_; }
  std::string dump(int indent = 2) const { return doc_.dump(indent); }

  std::string name() const;
  std::string cni_version() const;
  std::size_t plugin_count() const;
  std::vector<std::string> plugin_types() const;
  bool has_proxy_plugin() const;

  friend bool operator==(const PluginChainConfig& a, const PluginChainConfig& b) {
    return a.doc_ == b.doc_;
  }

 private:
  PluginChainConfig() = default;
  Json doc_;
};

// Config keys the proxy plugin entry carries in the conflist (artifact
// convention: nic, gcIntervalSeconds, maxAgeSeconds, keyStrategy).
struct ProxyPluginSettings {
  std::string nic = "eth0";
  double gc_interval_seconds = 2.0;
  double max_age_seconds = 5.0;
  KeyStrategy strategy = KeyStrategy::BufferAddress;
};

// Appends a tsn-proxy entry as the last plugin, so it runs once the primary
// plugin is done. Idempotent: a conflist that already has one is returned
// unchanged. All other entries keep their order and content.
PluginChainConfig insert_proxy_plugin(const PluginChainConfig& conflist,
                                      const ProxyPluginSettings& settings = {});

// Minimal flannel-style conflist, the default primary-plugin document.
PluginChainConfig default_conflist();

struct PodState {
  NamespaceId ns;
  bool is_tsa = false;
  bool veth_created = false;
  bool veth_hook_attached = false;  // pod-side tc-egress store hook
};

struct NodeInitOptions {
  std::string nic = "eth0";
  Nanos gc_interval = 2'000'000'000;  // 2 s
  Nanos max_age = 5'000'000'000;      // 5 s
  KeyStrategy strategy = KeyStrategy::BufferAddress;
};

// The proxy's view of one node: the metadata store, the hook/probe/GC
// flags set up by node initialization, the rewritten conflist, and the pods
// whose chains have run.
class Node {
 public:
  explicit Node(PluginChainConfig conflist = default_conflist(),
                std::vector<std::string> nic_names = {"eth0"});

  // Node initialization: creates the store, installs the proxy binaries
  // (modeled as a flag), rewrites the conflist, attaches the NIC restore
  // hook, registers the clone probe, and starts the GC, in that order.
  // Throws on a second call or an unknown NIC name.
  void init(const NodeInitOptions& options = {});

  // Pod initialization: creates the pod's network namespace, runs the
  // plugin chain in conflist order (the primary plugin sets up the veth
  // pair; the tsn-proxy plugin, last, attaches the store hook, but only
  // for TSA pods). Requires init() to have completed.
  NamespaceId init_pod(const std::string& pod_name, bool is_tsa);

  bool initialized() const;
  bool binaries_installed() const { return binaries_installed_; }
  bool nic_hook_attached() const { return nic_hook_attached_; }
  bool clone_probe_attached() const { return clone_probe_attached_; }
  bool gc_running() const { return gc_running_; }
  Nanos gc_interval() const { return options_.gc_interval; }
  const std::string& nic() const { return options_.nic; }

  // Models unregistering the fexit probe; restore keeps running.
  void detach_clone_probe() { clone_probe_attached_ = false; }

  MetadataStore& store();
  const MetadataStore& store() const;
  const PluginChainConfig& conflist() const { return conflist_; }
  const std::map<std::string, PodState>& pods() const { return pods_; }
  bool pod_hook_attached(const std::string& pod_name) const;

 private:
  PluginChainConfig conflist_;
  std::vector<std::string> nic_names_;
  NodeInitOptions options_;
  std::optional<MetadataStore> store_;
  bool binaries_installed_ = false;
  bool nic_hook_attached_ = false;
  bool clone_probe_attached_ = false;
  bool gc_running_ = false;
  std::map<std::string, PodState> pods_;
};

}  // namespace tsnsim
