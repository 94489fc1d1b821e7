#include "tsnsim/cni.hpp"

#include <algorithm>

namespace tsnsim {

namespace {

void validate_conflist(const Json& doc) {
  if (!doc.is_object()) {
    throw ConflistError("conflist: top-level value must be an object");
  }
  if (!doc.contains("name") || !doc["name"].is_string()) {
    throw ConflistError("conflist: \"name\" must be a string");
  }
  if (!doc.contains("cniVersion") || !doc["cniVersion"].is_string()) {
    throw ConflistError("conflist: \"cniVersion\" must be a string");
  }
  if (!doc.contains("plugins") || !doc["plugins"].is_array()) {
    throw ConflistError("conflist: \"plugins\" must be an array");
  }
  const Json& plugins = doc["plugins"];
  if (plugins.empty()) {
    throw ConflistError("conflist: \"plugins\" must be non-empty");
  }
  std::size_t proxy_entries = 0;
  for (std::size_t i = 0; i < plugins.size(); ++i) {
    const Json& entry = plugins[i];
    const std::string at = "conflist: plugins[" + std::to_string(i) + "]";
    if (!entry.is_object()) {
      throw ConflistError(at + ": must be an object");
    }
    if (!entry.contains("type") || !entry["type"].is_string()) {
      throw ConflistError(at + ": \"type\" must be a string");
    }
    if (entry["type"].get<std::string>() == kProxyPluginType) {
      ++proxy_entries;
    }
  }
  if (proxy_entries > 1) {
    throw ConflistError("conflist: more than one tsn-proxy plugin entry");
  }
}

}  // namespace

PluginChainConfig PluginChainConfig::parse(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    // err.byte is the offset of the offending token
    throw ConflistError(std::string("conflist: ") + err.what());
  }
  return from_json(std::move(doc));
}

PluginChainConfig PluginChainConfig::from_json(Json document) {
  validate_conflist(document);
  PluginChainConfig config;
  config.doc_ = std::move(document);
  return config;
}

std::string PluginChainConfig::name() const {
  return doc_["name"].get<std::string>();
}

std::string PluginChainConfig::cni_version() const {
  return doc_["cniVersion"].get<std::string>();
}

std::size_t PluginChainConfig::plugin_count() const {
  return doc_["plugins"].size();
}

std::vector<std::string> PluginChainConfig::plugin_types() const {
  std::vector<std::string> types;
  for (const Json& entry : doc_["plugins"]) {
    types.push_back(entry["type"].get<std::string>());
  }
  return types;
}

bool PluginChainConfig::has_proxy_plugin() const {
  const auto types = plugin_types();
  return std::find(types.begin(), types.end(), kProxyPluginType) != types.end();
}

PluginChainConfig insert_proxy_plugin(const PluginChainConfig& conflist,
                                      const ProxyPluginSettings& settings) {
  if (conflist.has_proxy_plugin()) {
    return conflist;
  }
  Json doc = conflist.document();
  Json entry = Json::object();
  entry["type"] = kProxyPluginType;
  entry["nic"] = settings.nic;
  entry["gcIntervalSeconds"] = settings.gc_interval_seconds;
  entry["maxAgeSeconds"] = settings.max_age_seconds;
  entry["keyStrategy"] = to_string(settings.strategy);
  doc["plugins"].push_back(std::move(entry));
  return PluginChainConfig::from_json(std::move(doc));
}

PluginChainConfig default_conflist() {
  Json doc = Json::object();
  doc["name"] = "cbr0";
  doc["cniVersion"] = "0.3.1";
  doc["plugins"] = Json::array();
  Json flannel = Json::object();
  flannel["type"] = "flannel";
  flannel["delegate"] = Json::object({{"hairpinMode", true}, {"isDefaultGateway", true}});
  doc["plugins"].push_back(std::move(flannel));
  return PluginChainConfig::from_json(std::move(doc));
}

Node::Node(PluginChainConfig conflist, std::vector<std::string> nic_names)
    : conflist_(std::move(conflist)), nic_names_(std::move(nic_names)) {}

bool Node::initialized() const {
  return store_.has_value() && nic_hook_attached_ && gc_running_;
}

void Node::init(const NodeInitOptions& options) {
  if (initialized()) {
    throw std::runtime_error("node: already initialized");
  }
  if (std::find(nic_names_.begin(), nic_names_.end(), options.nic) == nic_names_.end()) {
    throw std::runtime_error("node: unknown NIC \"" + options.nic + "\"");
  }
  options_ = options;
  // step 1: node-wide metadata store
  store_.emplace(options.strategy, options.max_age);
  // step 2: binary installation, a no-op here
  binaries_installed_ = true;
  // step 3: conflist rewrite
  ProxyPluginSettings settings;
  settings.nic = options.nic;
  settings.gc_interval_seconds = static_cast<double>(options.gc_interval) / 1e9;
  settings.max_age_seconds = static_cast<double>(options.max_age) / 1e9;
  settings.strategy = options.strategy;
  conflist_ = insert_proxy_plugin(conflist_, settings);
  // step 4: restore hook on the TSN NIC, host namespace
  nic_hook_attached_ = true;
  // step 5: clone probe
  clone_probe_attached_ = true;
  // step 6: garbage collector
  gc_running_ = true;
}

NamespaceId Node::init_pod(const std::string& pod_name, bool is_tsa) {
  if (!initialized()) {
    throw std::runtime_error("node: init_pod before node initialization");
  }
  if (pods_.count(pod_name) != 0) {
    throw std::runtime_error("node: duplicate pod \"" + pod_name + "\"");
  }
  PodState pod;
  pod.ns = NamespaceId{pod_name, false};
  pod.is_tsa = is_tsa;
  const auto types = conflist_.plugin_types();
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i == 0) {
      pod.veth_created = true;  // the primary plugin sets up the veth pair
    }
    if (types[i] == kProxyPluginType && is_tsa) {
      pod.veth_hook_attached = true;
    }
  }
  pods_[pod_name] = pod;
  return pod.ns;
}

MetadataStore& Node::store() {
  if (!store_) {
    throw std::runtime_error("node: store accessed before initialization");
  }
  return *store_;
}

const MetadataStore& Node::store() const {
  if (!store_) {
    throw std::runtime_error("node: store accessed before initialization");
  }
  return *store_;
}

bool Node::pod_hook_attached(const std::string& pod_name) const {
  auto it = pods_.find(pod_name);
  return it != pods_.end() && it->second.veth_hook_attached;
}

}  // namespace tsnsim
