#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "tsnsim/cni.hpp"

using namespace tsnsim;

namespace {

const char* kFlannelConflist = R"({
  "name": "cbr0",
  "cniVersion": "0.3.1",
  "plugins": [
    { "type": "flannel", "delegate": { "hairpinMode": true, "isDefaultGateway": true } }
  ]
})";

}  // namespace

TEST_SUITE("cni") {

TEST_CASE("a flannel conflist gains a trailing tsn-proxy entry") {
  const PluginChainConfig parsed = PluginChainConfig::parse(kFlannelConflist);
  CHECK(parsed.plugin_types() == std::vector<std::string>{"flannel"});

  const PluginChainConfig rewritten = insert_proxy_plugin(parsed);
  CHECK(rewritten.plugin_types() == std::vector<std::string>{"flannel", "tsn-proxy"});
  CHECK(rewritten.name() == "cbr0");
  CHECK(rewritten.cni_version() == "0.3.1");
}

TEST_CASE("insertion is idempotent") {
  const PluginChainConfig once = insert_proxy_plugin(PluginChainConfig::parse(kFlannelConflist));
  const PluginChainConfig twice = insert_proxy_plugin(once);
  CHECK(once == twice);
}

TEST_CASE("a conflist that already has the proxy anywhere is left alone") {
  const PluginChainConfig config = PluginChainConfig::parse(
      R"({"name":"x","cniVersion":"1.0.0",
          "plugins":[{"type":"flannel"},{"type":"tsn-proxy","nic":"eno2"},{"type":"portmap"}]})");
  CHECK(insert_proxy_plugin(config) == config);
}

TEST_CASE("a multi-plugin conflist keeps its entries in order") {
  Json doc = Json::object();
  doc["name"] = "multi";
  doc["cniVersion"] = "1.0.0";
  doc["plugins"] = Json::array({
      Json::object({{"type", "calico"}, {"mtu", 1440}}),
      Json::object({{"type", "bandwidth"}, {"ingressRate", 1000}}),
  });
  const PluginChainConfig rewritten = insert_proxy_plugin(PluginChainConfig::from_json(doc));

  // hand-constructed expectation: original two entries untouched, proxy appended
  CHECK(rewritten.plugin_types() ==
        std::vector<std::string>{"calico", "bandwidth", "tsn-proxy"});
  CHECK(rewritten.document()["plugins"][0] == doc["plugins"][0]);
  CHECK(rewritten.document()["plugins"][1] == doc["plugins"][1]);
  CHECK(rewritten.document()["plugins"][2]["type"] == "tsn-proxy");
}

TEST_CASE("the proxy entry carries the artifact config keys") {
  ProxyPluginSettings settings;
  settings.nic = "ens1f0";
  settings.gc_interval_seconds = 3.0;
  settings.max_age_seconds = 9.0;
  settings.strategy = KeyStrategy::DataAddress;
  const PluginChainConfig rewritten =
      insert_proxy_plugin(PluginChainConfig::parse(kFlannelConflist), settings);
  const Json& entry = rewritten.document()["plugins"].back();
  CHECK(entry["nic"] == "ens1f0");
  CHECK(entry["gcIntervalSeconds"] == 3.0);
  CHECK(entry["maxAgeSeconds"] == 9.0);
  CHECK(entry["keyStrategy"] == "data-address");
}

TEST_CASE("parse then emit round-trips a document unchanged") {
  const PluginChainConfig parsed = PluginChainConfig::parse(kFlannelConflist);
  const PluginChainConfig reparsed = PluginChainConfig::parse(parsed.dump());
  CHECK(parsed == reparsed);
}

TEST_CASE("parse failures carry a location diagnostic") {
  CHECK_THROWS_WITH_AS(PluginChainConfig::parse("{ not json"),
                       doctest::Contains("conflist:"), ConflistError);
  CHECK_THROWS_AS(PluginChainConfig::parse("{\"cniVersion\": \"1.0.0\", \"plugins\": []}"),
                  ConflistError);
  CHECK_THROWS_WITH_AS(
      PluginChainConfig::parse(
          R"({"name":"x","cniVersion":"1.0.0","plugins":[{"type":"a"},{"notype":1}]})"),
      doctest::Contains("plugins[1]"), ConflistError);
}

TEST_CASE("two proxy entries are rejected") {
  CHECK_THROWS_AS(PluginChainConfig::parse(
                      R"({"name":"x","cniVersion":"1.0.0",
                          "plugins":[{"type":"tsn-proxy"},{"type":"tsn-proxy"}]})"),
                  ConflistError);
}

TEST_CASE("generated conflists: insertion is idempotent, order-preserving, round-trip-safe") {
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 100; ++round) {
    Json doc = testgen::random_conflist(rng);
    const PluginChainConfig original = PluginChainConfig::from_json(doc);

    // round trip without modification
    CHECK(PluginChainConfig::parse(original.dump()) == original);

    const PluginChainConfig inserted = insert_proxy_plugin(original);
    CHECK(insert_proxy_plugin(inserted) == inserted);

    const auto before = original.plugin_types();
    const auto after = inserted.plugin_types();
    REQUIRE(after.size() == before.size() + 1);
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(after[i] == before[i]);
      CHECK(inserted.document()["plugins"][i] == original.document()["plugins"][i]);
    }
    CHECK(after.back() == "tsn-proxy");

    // unknown fields outside the plugins array survive untouched
    Json stripped = inserted.document();
    stripped.erase("plugins");
    Json expected = original.document();
    expected.erase("plugins");
    CHECK(stripped == expected);
  }
}

TEST_CASE("node init runs the six steps and refuses to run twice") {
  Node node;
  CHECK_FALSE(node.initialized());
  node.init();
  CHECK(node.initialized());
  CHECK(node.binaries_installed());
  CHECK(node.nic_hook_attached());
  CHECK(node.clone_probe_attached());
  CHECK(node.gc_running());
  CHECK(node.conflist().plugin_types().back() == "tsn-proxy");
  CHECK(node.store().empty());
  CHECK(node.store().strategy() == KeyStrategy::BufferAddress);
  CHECK(node.store().max_age() == 5'000'000'000);

  CHECK_THROWS_AS(node.init(), std::runtime_error);
}

TEST_CASE("node init rejects an unknown nic") {
  Node node(default_conflist(), {"eth0", "ens1f0"});
  NodeInitOptions options;
  options.nic = "wlan0";
  CHECK_THROWS_WITH_AS(node.init(options), doctest::Contains("wlan0"), std::runtime_error);

  options.nic = "ens1f0";
  CHECK_NOTHROW(node.init(options));
  CHECK(node.nic() == "ens1f0");
}

TEST_CASE("node init options land in the store and the conflist entry") {
  Node node;
  NodeInitOptions options;
  options.gc_interval = 1'000'000'000;
  options.max_age = 3'000'000'000;
  options.strategy = KeyStrategy::DataAddress;
  node.init(options);
  CHECK(node.store().strategy() == KeyStrategy::DataAddress);
  CHECK(node.store().max_age() == 3'000'000'000);
  CHECK(node.gc_interval() == 1'000'000'000);
  const Json& entry = node.conflist().document()["plugins"].back();
  CHECK(entry["keyStrategy"] == "data-address");
  CHECK(entry["maxAgeSeconds"] == 3.0);
}

TEST_CASE("pod init attaches the store hook only for TSA pods") {
  Node node;
  node.init();

  const NamespaceId talker_ns = node.init_pod("talker1", true);
  CHECK(talker_ns.name == "talker1");
  CHECK_FALSE(talker_ns.is_host);
  CHECK(node.pod_hook_attached("talker1"));
  CHECK(node.pods().at("talker1").veth_created);

  node.init_pod("web", false);
  CHECK_FALSE(node.pod_hook_attached("web"));
  CHECK(node.pods().at("web").veth_created);
}

TEST_CASE("pod init rejects duplicates and uninitialized nodes") {
  Node uninitialized;
  CHECK_THROWS_AS(uninitialized.init_pod("talker1", true), std::runtime_error);

  Node node;
  node.init();
  node.init_pod("talker1", true);
  CHECK_THROWS_AS(node.init_pod("talker1", true), std::runtime_error);
}

TEST_CASE("the clone probe can be detached after init") {
  Node node;
  node.init();
  CHECK(node.clone_probe_attached());
  node.detach_clone_probe();
  CHECK_FALSE(node.clone_probe_attached());
  CHECK(node.initialized());  // restore hook and GC still in place
}

}  // TEST_SUITE
