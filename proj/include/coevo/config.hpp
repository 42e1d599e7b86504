#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coevo/engine.hpp"
#include "coevo/harness.hpp"
#include "coevo/strategies.hpp"

namespace coevo {

/// Everything a CLI invocation can configure. Defaults follow the standard
/// experimental setup: n=25, l=100, S=5, tournament 2, m=0.005, 1000 generations.
struct RunSpec {
  EngineConfig engine;
  StrategyConfig strategy;
  std::vector<StrategyKind> strategies{StrategyKind::canonical};
  std::size_t trials = 50;
  double grid_step = 0.1;
  bool host_favoured = false;
  std::size_t threads = 0;
  std::filesystem::path out_dir = ".";
};

using Settings = std::vector<std::pair<std::string, std::string>>;

/// Applies one key=value setting. Keys match the long CLI flags without the
/// leading dashes. Bad values and unknown keys throw ConfigError naming the key.
void apply_setting(RunSpec& spec, std::string_view key, std::string_view value);

void apply_settings(RunSpec& spec, const Settings& settings);

/// Reads a plain key=value file. Blank lines and lines starting with '#' are
/// skipped. Throws IoError if unreadable, ConfigError on a malformed line.
Settings read_config_file(const std::filesystem::path& path);

enum class Command { run, sweep, validate };

/// Full validation; run additionally requires exactly one strategy.
void validate(const RunSpec& spec, Command command);

/// Normalized effective configuration as key=value lines (readable back by
/// read_config_file).
std::string describe(const RunSpec& spec);

SweepConfig to_sweep_config(const RunSpec& spec);

} // namespace coevo
