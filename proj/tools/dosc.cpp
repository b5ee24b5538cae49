// Command-line front end: reproduces spin time series, density maps and
// decompositions for circular wave packets in the Dirac oscillator.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dosc/cli/config.hpp"
#include "dosc/cli/scenarios.hpp"

namespace {

using namespace dosc::cli;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;

struct CommonOptions {
  std::string config_path;
  std::string output = "-";
  std::string format = "csv";
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-c,--config", o.config_path, "Config file (key = value lines)");
  cmd->add_option("-o,--output", o.output, "Output file, '-' for stdout (density: file prefix)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  for (const auto& key : config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&o, key](const std::string& v) { o.overrides[key] = v; },
        "Override config key '" + key + "'");
  }
}

ScenarioConfig resolve_config(const CommonOptions& o) {
  ScenarioConfig c;
  if (!o.config_path.empty()) load_config_file(c, o.config_path);
  for (const auto& [k, v] : o.overrides) apply_setting(c, k, v);
  resolve(c);
  return c;
}

void emit(const Table& t, const CommonOptions& o) {
  const Format fmt = parse_format(o.format);
  if (o.output == "-") {
    write_table(t, std::cout, fmt);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
  } else {
    write_table_file(t, o.output, fmt);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular wave packets in the 3+1 dimensional Dirac oscillator"};
  app.require_subcommand(1);

  CommonOptions spins_o, density_o, decompose_o, compare_o, oracle_o;
  auto* spins = app.add_subcommand("spins", "Spin, L_z, J_z and energy-sector weights vs time");
  add_common(spins, spins_o);
  auto* density = app.add_subcommand("density", "|Psi|^2 maps on a sphere, one file per (time, kind)");
  add_common(density, density_o);
  auto* decompose = app.add_subcommand("decompose", "Equatorial phi profiles by component and energy sector");
  add_common(decompose, decompose_o);
  auto* compare = app.add_subcommand("compare-representations", "Spin series in Dirac, FW and nonrel");
  add_common(compare, compare_o);
  auto* oracle = app.add_subcommand("oracle-check", "Closed-form vs matrix propagation");
  add_common(oracle, oracle_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*spins) {
      emit(run_spins(resolve_config(spins_o)), spins_o);
    } else if (*compare) {
      emit(run_compare_representations(resolve_config(compare_o)), compare_o);
    } else if (*decompose) {
      emit(run_decompose(resolve_config(decompose_o)), decompose_o);
    } else if (*density) {
      const auto c = resolve_config(density_o);
      const Format fmt = parse_format(density_o.format);
      const std::string prefix = density_o.output == "-" ? "density" : density_o.output;
      const std::string ext = fmt == Format::json ? ".json" : ".csv";
      for (const auto& [suffix, table] : run_density(c)) {
        const std::string path = prefix + "_" + suffix + ext;
        write_table_file(table, path, fmt);
        std::cerr << "wrote " << path << '\n';
      }
    } else if (*oracle) {
      const auto report = run_oracle_check(resolve_config(oracle_o));
      emit(report.table, oracle_o);
      if (!report.passed()) {
        std::cerr << "oracle deviation " << report.max_deviation << " exceeds " << oracle_tolerance << '\n';
        return exit_numerical;
      }
    }
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const dosc::truncation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}
