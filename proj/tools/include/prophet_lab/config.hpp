#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prophet/distributions.hpp"

namespace prophet::lab {

enum class Command { Table1, Heatmap, Regret, Convergence, Competition, Simulate, Verify };
enum class Format { Csv, Json };

Command command_from_string(const std::string& name);
std::string to_string(Command command);
Format format_from_string(const std::string& name);

struct DistributionSpec {
  Family family = Family::Pareto;
  double gamma = 0.5;
  double endpoint = 1.0;

  [[nodiscard]] DistributionModel model() const;
};

struct GammaGrid {
  std::vector<double> values;
  // Largest spacing between neighbouring points; 0 for a single point.
  double max_step = 0.0;
};

// A fully resolved run description. Every field carries its default until a
// config document or a command-line flag overrides it.
struct RunConfig {
  Command command = Command::Verify;
  DistributionSpec distribution;
  std::size_t n = 50;
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> k_list;
  std::vector<double> alpha;
  GammaGrid gamma_grid;
  std::size_t reps = 100000;
  std::uint64_t seed = 20240601;
  std::optional<std::string> output_path;
  Format format = Format::Csv;
  double tolerance_scale = 1.0;
  std::optional<std::string> dump_path;
};

// Flags given on the command line; each set field wins over the document.
struct Overrides {
  std::optional<std::string> output_path;
  std::optional<std::uint64_t> seed;
  std::optional<Format> format;
  std::optional<std::string> dump_path;
};

// "start:stop:step", inclusive of stop up to rounding; or an explicit array.
GammaGrid parse_gamma_grid(const std::string& spec);
// "start:stop:factor" geometric with integer terms, inclusive of stop.
std::vector<std::size_t> parse_n_grid(const std::string& spec);

RunConfig default_config(Command command);

// Applies a config document to the defaults for `command`. Errors are
// ConfigurationError naming the offending field.
RunConfig resolve_config(Command command, const nlohmann::json& document, const Overrides& overrides);

// Reads and parses a JSON file. Syntax errors report the line.
nlohmann::json load_config_file(const std::string& path);

}  // namespace prophet::lab
