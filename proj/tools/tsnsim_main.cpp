#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tsnsim/engine.hpp"
#include "tsnsim/report.hpp"
#include "tsnsim/trace_csv.hpp"

namespace {

using namespace tsnsim;

int run_command(const std::string& scenario_path, const std::string& proxy,
                const std::string& out_path, const std::string& format,
                const std::string& bin_width_text) {
  Scenario scenario = load_scenario(scenario_path);

  if (const char* seed_env = std::getenv("TSN_SIM_SEED")) {
    try {
      std::size_t used = 0;
      scenario.seed = std::stoull(seed_env, &used);
      if (used != std::string(seed_env).size()) {
        throw std::invalid_argument(seed_env);
      }
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("TSN_SIM_SEED: not an unsigned integer: \"") +
                               seed_env + "\"");
    }
  }

  RunOverrides overrides;
  if (proxy == "on") {
    overrides.proxy = true;
  } else if (proxy == "off") {
    overrides.proxy = false;
  }

  const RunResult result = run_scenario(scenario, overrides);

  std::ostringstream body;
  if (format == "csv") {
    write_trace_csv(body, result.trace);
  } else {
    const Nanos bin_width = parse_duration(bin_width_text);
    body << format_report(scenario, build_report(scenario, result, bin_width));
  }

  if (out_path.empty()) {
    std::cout << body.str();
    if (!std::cout) {
      throw std::runtime_error("write to stdout failed");
    }
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw std::runtime_error("cannot open output file \"" + out_path + "\"");
    }
    out << body.str();
    out.flush();
    if (!out) {
      throw std::runtime_error("write to \"" + out_path + "\" failed");
    }
  }
  return 0;
}

int conflist_command(const std::string& in_path, bool in_place) {
  std::ifstream input(in_path);
  if (!input) {
    throw std::runtime_error("cannot open conflist \"" + in_path + "\"");
  }
  std::ostringstream buffer;
  buffer << input.rdbuf();
  input.close();

  const PluginChainConfig parsed = PluginChainConfig::parse(buffer.str());
  const PluginChainConfig rewritten = insert_proxy_plugin(parsed);
  const std::string text = rewritten.dump(2) + "\n";

  if (in_place) {
    std::ofstream out(in_path, std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot rewrite \"" + in_path + "\"");
    }
    out << text;
    out.flush();
    if (!out) {
      throw std::runtime_error("write to \"" + in_path + "\" failed");
    }
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TSN metadata proxy node simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string proxy = "scenario";
  std::string out_path;
  std::string format = "summary";
  std::string bin_width = "1us";

  CLI::App* run = app.add_subcommand("run", "run a scenario and emit a trace or summary");
  run->add_option("--scenario", scenario_path, "scenario file (JSON)")->required();
  run->add_option("--proxy", proxy, "override the scenario's proxyEnabled flag")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--out", out_path, "output file (default: stdout)");
  run->add_option("--format", format, "trace csv or human-readable summary")
      ->check(CLI::IsMember({"csv", "summary"}));
  run->add_option("--bin-width", bin_width, "summary histogram bin width (e.g. 1us)");

  std::string conflist_path;
  bool in_place = false;

  CLI::App* conflist = app.add_subcommand("conflist", "insert the tsn-proxy plugin into a CNI conflist");
  conflist->add_option("--in", conflist_path, "conflist file (JSON)")->required();
  conflist->add_flag("--in-place", in_place, "rewrite the input file instead of printing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(scenario_path, proxy, out_path, format, bin_width);
    }
    return conflist_command(conflist_path, in_place);
  } catch (const std::exception& err) {
    std::cerr << "tsnsim: " << err.what() << "\n";
    return 1;
  }
}
