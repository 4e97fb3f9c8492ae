#include "prophet_lab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "prophet/errors.hpp"

namespace prophet::lab {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ConfigurationError("config field '" + field + "': " + message);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    field_error(field, "'" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(x)) field_error(field, "'" + text + "' is not a number");
  return x;
}

std::size_t parse_count(const std::string& text, const std::string& field) {
  const double x = parse_double(text, field);
  if (x < 1.0 || x != std::floor(x) || x > 1e15) {
    field_error(field, "'" + text + "' is not a positive integer");
  }
  return static_cast<std::size_t>(x);
}

double round12(double x) { return std::round(x * 1e12) / 1e12; }

double number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) field_error(field, "expected a finite number");
  return x;
}

std::size_t count(const json& j, const std::string& field) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() > 0)) {
    const auto x = j.get<unsigned long long>();
    if (x == 0) field_error(field, "expected a positive integer");
    return static_cast<std::size_t>(x);
  }
  if (j.is_number_float() && j.get<double>() >= 1.0 && j.get<double>() == std::floor(j.get<double>())) {
    return static_cast<std::size_t>(j.get<double>());
  }
  field_error(field, "expected a positive integer");
}

std::vector<std::size_t> count_list(const json& j, const std::string& field) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(count(j[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(count(j, field));
  }
  if (out.empty()) field_error(field, "must not be empty");
  return out;
}

GammaGrid grid_from_values(std::vector<double> values) {
  GammaGrid g;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) g.max_step = std::max(g.max_step, values[i] - values[i - 1]);
  g.values = std::move(values);
  return g;
}

DistributionSpec parse_distribution(const json& j) {
  if (!j.is_object()) field_error("distribution", "expected an object with family and gamma");
  DistributionSpec spec;
  bool has_gamma = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "family") {
      if (!value.is_string()) field_error("distribution.family", "expected a string");
      try {
        spec.family = family_from_string(value.get<std::string>());
      } catch (const ConfigurationError& e) {
        field_error("distribution.family", e.what());
      }
      if (value.get<std::string>() == "uniform") {
        spec.gamma = -1.0;
        has_gamma = true;
      }
    } else if (key == "gamma") {
      spec.gamma = number(value, "distribution.gamma");
      has_gamma = true;
    } else if (key == "endpoint") {
      spec.endpoint = number(value, "distribution.endpoint");
    } else {
      field_error("distribution." + key, "unknown field");
    }
  }
  if (!j.contains("family")) field_error("distribution.family", "missing");
  if (spec.family == Family::Exponential) {
    spec.gamma = 0.0;
    has_gamma = true;
  }
  if (!has_gamma) field_error("distribution.gamma", "missing");
  try {
    (void)spec.model();
  } catch (const std::exception& e) {
    field_error("distribution", e.what());
  }
  return spec;
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "table1") return Command::Table1;
  if (name == "heatmap") return Command::Heatmap;
  if (name == "regret") return Command::Regret;
  if (name == "convergence") return Command::Convergence;
  if (name == "competition") return Command::Competition;
  if (name == "simulate") return Command::Simulate;
  if (name == "verify") return Command::Verify;
  throw ConfigurationError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Table1: return "table1";
    case Command::Heatmap: return "heatmap";
    case Command::Regret: return "regret";
    case Command::Convergence: return "convergence";
    case Command::Competition: return "competition";
    case Command::Simulate: return "simulate";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ConfigurationError("unknown format '" + name + "' (expected csv or json)");
}

DistributionModel DistributionSpec::model() const {
  switch (family) {
    case Family::Pareto: return DistributionModel::pareto(gamma);
    case Family::Frechet: return DistributionModel::frechet(gamma);
    case Family::BoundedPower: return DistributionModel::bounded_power(gamma, endpoint);
    case Family::Exponential: return DistributionModel::exponential();
  }
  throw ConfigurationError("unknown family");
}

GammaGrid parse_gamma_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) field_error("gamma_grid", "expected \"start:stop:step\", got '" + spec + "'");
  const double start = parse_double(parts[0], "gamma_grid");
  const double stop = parse_double(parts[1], "gamma_grid");
  const double step = parse_double(parts[2], "gamma_grid");
  if (step <= 0.0) field_error("gamma_grid", "step must be positive");
  if (stop < start) field_error("gamma_grid", "stop lies below start");
  const auto points = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (points > 10000000) field_error("gamma_grid", "more than 1e7 points");
  std::vector<double> values;
  values.reserve(points);
  for (std::size_t i = 0; i < points; ++i) values.push_back(round12(start + static_cast<double>(i) * step));
  GammaGrid g = grid_from_values(std::move(values));
  if (points == 1) g.max_step = 0.0;
  return g;
}

std::vector<std::size_t> parse_n_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) field_error("n_grid", "expected \"start:stop:factor\", got '" + spec + "'");
  const std::size_t start = parse_count(parts[0], "n_grid");
  const std::size_t stop = parse_count(parts[1], "n_grid");
  const double factor = parse_double(parts[2], "n_grid");
  if (factor <= 1.0) field_error("n_grid", "factor must exceed 1");
  if (stop < start) field_error("n_grid", "stop lies below start");
  std::vector<std::size_t> out;
  for (double x = static_cast<double>(start); x <= static_cast<double>(stop) * (1 + 1e-12); x *= factor) {
    const auto n = static_cast<std::size_t>(std::llround(x));
    if (out.empty() || out.back() != n) out.push_back(n);
  }
  return out;
}

RunConfig default_config(Command command) {
  RunConfig c;
  c.command = command;
  const std::vector<std::size_t> table_ks{1, 2, 3, 5, 10, 20, 50, 100, 200};
  switch (command) {
    case Command::Table1:
      c.k_list = table_ks;
      c.gamma_grid = parse_gamma_grid("0.001:0.999:0.001");
      break;
    case Command::Heatmap:
      c.k_list = table_ks;
      c.gamma_grid = parse_gamma_grid("0.01:0.99:0.01");
      break;
    case Command::Regret:
      c.distribution = {Family::Pareto, 0.7, 1.0};
      c.alpha = {0.4, 0.6, 0.8};
      c.n_grid = parse_n_grid("1024:131072:2");
      break;
    case Command::Convergence:
      c.distribution = {Family::Pareto, 0.5, 1.0};
      c.k_list = {1};
      c.n_grid = parse_n_grid("100:100000:10");
      break;
    case Command::Competition:
      c.k_list = {1, 2, 5, 10, 50, 200};
      c.gamma_grid = parse_gamma_grid("-0.5:0.9:0.1");
      break;
    case Command::Simulate:
      c.distribution = {Family::Pareto, 0.3, 1.0};
      c.n = 50;
      c.k_list = {5};
      c.reps = 100000;
      break;
    case Command::Verify:
      c.format = Format::Json;
      break;
  }
  return c;
}

RunConfig resolve_config(Command command, const json& document, const Overrides& overrides) {
  RunConfig c = default_config(command);
  if (!document.is_null() && !document.is_object()) {
    throw ConfigurationError("config document must be a JSON object");
  }
  const json doc = document.is_null() ? json::object() : document;
  if (doc.contains("k") && doc.contains("k_list")) field_error("k", "give either k or k_list, not both");
  if (doc.contains("reps") && !doc.contains("seed") && !overrides.seed) {
    field_error("seed", "required when reps is given");
  }

  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      if (!value.is_string()) field_error(key, "expected a string");
      if (value.get<std::string>() != to_string(command)) {
        field_error(key, "document is for '" + value.get<std::string>() + "', not '" + to_string(command) + "'");
      }
    } else if (key == "distribution") {
      c.distribution = parse_distribution(value);
    } else if (key == "n") {
      c.n = count(value, key);
    } else if (key == "n_grid") {
      if (value.is_string()) {
        c.n_grid = parse_n_grid(value.get<std::string>());
      } else {
        c.n_grid = count_list(value, key);
        std::sort(c.n_grid.begin(), c.n_grid.end());
        c.n_grid.erase(std::unique(c.n_grid.begin(), c.n_grid.end()), c.n_grid.end());
      }
    } else if (key == "k" || key == "k_list") {
      c.k_list = count_list(value, key);
    } else if (key == "alpha") {
      c.alpha.clear();
      const json list = value.is_array() ? value : json::array({value});
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string f = "alpha[" + std::to_string(i) + "]";
        const double a = number(list[i], f);
        if (!(a > 0.0 && a <= 1.0)) field_error(f, "must lie in (0, 1] (1 means k = n)");
        c.alpha.push_back(a);
      }
      if (c.alpha.empty()) field_error(key, "must not be empty");
    } else if (key == "gamma_grid") {
      if (value.is_string()) {
        c.gamma_grid = parse_gamma_grid(value.get<std::string>());
      } else if (value.is_array() || value.is_number()) {
        const json list = value.is_array() ? value : json::array({value});
        std::vector<double> values;
        for (std::size_t i = 0; i < list.size(); ++i) {
          values.push_back(number(list[i], "gamma_grid[" + std::to_string(i) + "]"));
        }
        if (values.empty()) field_error(key, "must not be empty");
        c.gamma_grid = grid_from_values(std::move(values));
      } else {
        field_error(key, "expected \"start:stop:step\" or an array of numbers");
      }
    } else if (key == "reps") {
      c.reps = count(value, key);
      if (c.reps < 2) field_error(key, "at least 2 replications are needed");
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        field_error(key, "expected a non-negative integer");
      }
      c.seed = value.get<std::uint64_t>();
    } else if (key == "output_path") {
      if (!value.is_string()) field_error(key, "expected a string");
      c.output_path = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) field_error(key, "expected a string");
      try {
        c.format = format_from_string(value.get<std::string>());
      } catch (const ConfigurationError& e) {
        field_error(key, e.what());
      }
    } else if (key == "tolerance_scale") {
      c.tolerance_scale = number(value, key);
      if (c.tolerance_scale <= 0.0) field_error(key, "must be positive");
    } else if (key == "dump_path") {
      if (!value.is_string()) field_error(key, "expected a string");
      c.dump_path = value.get<std::string>();
    } else {
      field_error(key, "unknown field");
    }
  }

  if (overrides.output_path) c.output_path = overrides.output_path;
  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.format) c.format = *overrides.format;
  if (overrides.dump_path) c.dump_path = overrides.dump_path;

  const bool needs_k = command != Command::Regret && command != Command::Verify;
  if (needs_k && c.k_list.empty()) field_error("k_list", "must not be empty");
  const bool needs_gamma = command == Command::Table1 || command == Command::Heatmap ||
                           command == Command::Competition;
  if (needs_gamma && c.gamma_grid.values.empty()) field_error("gamma_grid", "must not be empty");
  if ((command == Command::Regret || command == Command::Convergence) && c.n_grid.empty()) {
    field_error("n_grid", "must not be empty");
  }
  if (command == Command::Regret && c.alpha.empty()) field_error("alpha", "must not be empty");
  if (command == Command::Simulate) {
    for (std::size_t k : c.k_list) {
      if (k > c.n) field_error("k", "must not exceed n = " + std::to_string(c.n));
    }
  }
  return c;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError("config file '" + path + "': " + e.what());
  }
}

}  // namespace prophet::lab
