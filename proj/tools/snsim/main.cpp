#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "campaign.hpp"
#include "config.hpp"
#include "snewton/error.hpp"
#include "snewton/version.hpp"

namespace {

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schroedinger-Newton double-slit simulator"};
  app.set_version_flag("--version", std::string("snsim ") + snewton::version_string);

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);

  const auto& keys = snsim::config_keys();
  std::map<std::string, std::string> raw;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : keys) {
    if (key.is_flag) {
      options[key.name] = app.add_flag(flag_name(key.name), switches[key.name], key.help);
    } else {
      options[key.name] = app.add_option(flag_name(key.name), raw[key.name], key.help);
    }
  }
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    snsim::RunConfig config;
    if (!config_path.empty()) snsim::apply_config_file(config, config_path);

    std::map<std::string, std::string> overrides;
    for (const auto& key : keys) {
      if (options[key.name]->count() == 0) continue;
      overrides[key.name] = key.is_flag ? (switches[key.name] ? "on" : "off") : raw[key.name];
    }
    snsim::apply_overrides(config, overrides);

    const auto summary = snsim::run_campaign(config, quiet ? nullptr : &std::cerr);
    if (!quiet) {
      std::cerr << "wrote " << summary.files.size() << " files to " << config.outdir.string()
                << '\n';
    }
    if (summary.scan) {
      for (const auto& row : summary.scan->rows) {
        std::cout << "m=" << snsim::format_number(row.m_tilde)
                  << " w_free=" << (row.w_free ? snsim::format_number(*row.w_free) : "none")
                  << " w_sn=" << (row.w_sn ? snsim::format_number(*row.w_sn) : "none") << '\n';
      }
    }
    for (const auto& report : summary.feasibility) {
      std::cout << "mass_u=" << snsim::format_number(snewton::units::u_from_kg(report.mass))
                << " sigma_r=" << snsim::format_number(report.sigma_r)
                << " m slit=" << snsim::format_number(report.slit_separation)
                << " m time=" << snsim::format_number(report.evolution_time) << " s\n";
    }
    return 0;
  } catch (const snewton::Error& e) {
    std::cerr << "snsim: " << snewton::to_string(e.category()) << ": " << e.what() << '\n';
    return snsim::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "snsim: unexpected error: " << e.what() << '\n';
    return 1;
  }
}
