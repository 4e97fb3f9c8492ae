#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "prophet/errors.hpp"
#include "prophet_lab/commands.hpp"

namespace {

using namespace prophet::lab;

constexpr int kExitFailedChecks = 1;
constexpr int kExitConfigError = 2;

void emit(const RunConfig& config, const std::string& text) {
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) throw prophet::ConfigurationError("cannot write output file '" + *config.output_path + "'");
    out << text;
  } else {
    std::cout << text << std::flush;
  }
}

int run(const RunConfig& config) {
  std::ostringstream out;
  if (config.command == Command::Verify) {
    const VerifyReport report = cmd_verify(config);
    if (config.format == Format::Json) {
      out << report.to_json().dump(2) << '\n';
    } else {
      write_csv(out, report.to_table());
    }
    emit(config, out.str());
    for (const auto& c : report.checks) {
      if (!c.passed) std::cerr << "FAILED " << c.name << ": measured " << c.measured << ", tolerance " << c.tolerance
                               << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    }
    return report.failures() == 0 ? 0 : kExitFailedChecks;
  }

  Table table;
  switch (config.command) {
    case Command::Table1: table = cmd_table1(config); break;
    case Command::Heatmap: table = cmd_heatmap(config); break;
    case Command::Regret: table = cmd_regret(config); break;
    case Command::Convergence: table = cmd_convergence(config); break;
    case Command::Competition: table = cmd_competition(config); break;
    case Command::Simulate: table = cmd_simulate(config); break;
    case Command::Verify: break;
  }
  if (config.format == Format::Json) {
    out << table_to_json(to_string(config.command), table).dump(2) << '\n';
  } else {
    write_csv(out, table);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
  }
  emit(config, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-unit prophet inequality experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::string format;
  std::string dump_path;

  const std::pair<const char*, const char*> subcommands[] = {
      {"table1", "Worst-case asymptotic ratios over a gamma grid"},
      {"heatmap", "Asymptotic CE/DP ratio over (k, gamma)"},
      {"regret", "Finite-n DP vs CE gap for k = alpha n (Pareto)"},
      {"convergence", "Finite-n values against their asymptotic limits"},
      {"competition", "Competition complexity for DP and CE"},
      {"simulate", "Monte Carlo policy values against exact recursions"},
      {"verify", "Built-in numerical self-checks"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Write output here instead of stdout");
    sub->add_option("--seed", seed, "Seed for Monte Carlo runs");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (std::string(name) == "simulate") {
      sub->add_option("--dump", dump_path, "Per-replication CSV (policy, k, replication, value)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    const Command command = command_from_string(sub->get_name());
    Overrides overrides;
    if (sub->count("--out")) overrides.output_path = out_path;
    if (sub->count("--seed")) overrides.seed = seed;
    if (sub->count("--format")) overrides.format = format_from_string(format);
    if (!dump_path.empty()) overrides.dump_path = dump_path;
    const nlohmann::json document = config_path.empty() ? nlohmann::json() : load_config_file(config_path);
    return run(resolve_config(command, document, overrides));
  } catch (const prophet::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const prophet::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
