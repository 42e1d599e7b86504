#include "coevo/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "coevo/errors.hpp"
#include "coevo/report.hpp"

namespace coevo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T> T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes")
    return true;
  if (text == "0" || text == "false" || text == "no")
    return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

std::vector<StrategyKind> parse_strategy_list(std::string_view text) {
  std::vector<StrategyKind> kinds;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(',', start);
    if (pos == std::string_view::npos)
      pos = text.size();
    const auto item = trim(text.substr(start, pos - start));
    if (!item.empty())
      kinds.push_back(parse_strategy_kind(item));
    start = pos + 1;
  }
  if (kinds.empty())
    throw ConfigError("strategy: list must not be empty");
  return kinds;
}

using Setter = std::function<void(RunSpec&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"strategy", [](RunSpec& s, auto, auto v) { s.strategies = parse_strategy_list(v); }},
      {"beta-h", [](RunSpec& s, auto k, auto v) { s.engine.bias_host = parse_number<double>(k, v); }},
      {"beta-p",
       [](RunSpec& s, auto k, auto v) { s.engine.bias_parasite = parse_number<double>(k, v); }},
      {"seed", [](RunSpec& s, auto k, auto v) { s.engine.seed = parse_number<std::uint64_t>(k, v); }},
      {"trials", [](RunSpec& s, auto k, auto v) { s.trials = parse_number<std::size_t>(k, v); }},
      {"generations",
       [](RunSpec& s, auto k, auto v) { s.engine.generations = parse_number<std::size_t>(k, v); }},
      {"pop-size",
       [](RunSpec& s, auto k, auto v) { s.engine.population_size = parse_number<std::size_t>(k, v); }},
      {"genome-length",
       [](RunSpec& s, auto k, auto v) { s.engine.genome_length = parse_number<std::size_t>(k, v); }},
      {"sample-size",
       [](RunSpec& s, auto k, auto v) { s.engine.sample_size = parse_number<std::size_t>(k, v); }},
      {"mutation-rate",
       [](RunSpec& s, auto k, auto v) { s.engine.mutation_rate = parse_number<double>(k, v); }},
      {"tournament-size",
       [](RunSpec& s, auto k, auto v) { s.engine.tournament_size = parse_number<std::size_t>(k, v); }},
      {"rv-upsilon-host",
       [](RunSpec& s, auto k, auto v) { s.strategy.rv_virulence_host = parse_number<double>(k, v); }},
      {"rv-upsilon-par",
       [](RunSpec& s, auto k, auto v) { s.strategy.rv_virulence_parasite = parse_number<double>(k, v); }},
      {"ava-alpha",
       [](RunSpec& s, auto k, auto v) { s.strategy.ava.learning_rate = parse_number<double>(k, v); }},
      {"ava-mu", [](RunSpec& s, auto k, auto v) { s.strategy.ava.momentum = parse_number<double>(k, v); }},
      {"ava-tau", [](RunSpec& s, auto k, auto v) { s.strategy.ava.target = parse_number<double>(k, v); }},
      {"sf-substitution",
       [](RunSpec& s, auto, auto v) { s.strategy.sf_substitution = parse_sf_substitution(trim(v)); }},
      {"grid-step", [](RunSpec& s, auto k, auto v) { s.grid_step = parse_number<double>(k, v); }},
      {"out-dir", [](RunSpec& s, auto, auto v) { s.out_dir = std::string(trim(v)); }},
      {"threads", [](RunSpec& s, auto k, auto v) { s.threads = parse_number<std::size_t>(k, v); }},
      {"host-favoured", [](RunSpec& s, auto k, auto v) { s.host_favoured = parse_bool(k, v); }},
  };
  return table;
}

} // namespace

void apply_setting(RunSpec& spec, std::string_view key, std::string_view value) {
  const auto it = setters().find(key);
  if (it == setters().end())
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  it->second(spec, key, value);
}

void apply_settings(RunSpec& spec, const Settings& settings) {
  for (const auto& [key, value] : settings)
    apply_setting(spec, key, value);
}

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file)
    throw IoError("cannot read config file '" + path.string() + "'");
  Settings settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#')
      continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    settings.emplace_back(std::string(trim(text.substr(0, eq))),
                          std::string(trim(text.substr(eq + 1))));
  }
  return settings;
}

void validate(const RunSpec& spec, Command command) {
  spec.engine.validate();
  spec.strategy.validate();
  if (spec.strategies.empty())
    throw ConfigError("strategy: list must not be empty");
  if (spec.trials < 1)
    throw ConfigError("trials must be at least 1");
  if (!(spec.grid_step > 0.0 && spec.grid_step <= 1.0))
    throw ConfigError("grid-step must lie in (0,1], got " + std::to_string(spec.grid_step));
  if (command == Command::run && spec.strategies.size() != 1)
    throw ConfigError("strategy: run takes exactly one strategy");
}

std::string describe(const RunSpec& spec) {
  std::ostringstream out;
  std::string kinds;
  for (auto kind : spec.strategies) {
    if (!kinds.empty())
      kinds += ',';
    kinds += to_string(kind);
  }
  const auto& e = spec.engine;
  out << "strategy=" << kinds << '\n'
      << "beta-h=" << format_fixed(e.bias_host) << '\n'
      << "beta-p=" << format_fixed(e.bias_parasite) << '\n'
      << "seed=" << e.seed << '\n'
      << "trials=" << spec.trials << '\n'
      << "generations=" << e.generations << '\n'
      << "pop-size=" << e.population_size << '\n'
      << "genome-length=" << e.genome_length << '\n'
      << "sample-size=" << e.sample_size << '\n'
      << "mutation-rate=" << format_fixed(e.mutation_rate) << '\n'
      << "tournament-size=" << e.tournament_size << '\n'
      << "rv-upsilon-host=" << format_fixed(spec.strategy.rv_virulence_host) << '\n'
      << "rv-upsilon-par=" << format_fixed(spec.strategy.rv_virulence_parasite) << '\n'
      << "ava-alpha=" << format_fixed(spec.strategy.ava.learning_rate) << '\n'
      << "ava-mu=" << format_fixed(spec.strategy.ava.momentum) << '\n'
      << "ava-tau=" << format_fixed(spec.strategy.ava.target) << '\n'
      << "sf-substitution=" << to_string(spec.strategy.sf_substitution) << '\n'
      << "grid-step=" << format_fixed(spec.grid_step) << '\n'
      << "host-favoured=" << (spec.host_favoured ? "true" : "false") << '\n'
      << "threads=" << spec.threads << '\n'
      << "out-dir=" << spec.out_dir.string() << '\n';
  return out.str();
}

SweepConfig to_sweep_config(const RunSpec& spec) {
  SweepConfig sweep;
  sweep.grid_step = spec.grid_step;
  sweep.trials = spec.trials;
  sweep.strategies = spec.strategies;
  sweep.base = spec.engine;
  sweep.params = spec.strategy;
  sweep.include_host_favoured = spec.host_favoured;
  sweep.threads = spec.threads;
  return sweep;
}

} // namespace coevo
