#include "coevo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "coevo/errors.hpp"

namespace coevo {

std::optional<std::size_t> detect_disengagement(const RunTrace& trace) {
  for (const auto& record : trace) {
    if (record.delta >= 1.0)
      return record.generation;
  }
  return std::nullopt;
}

TrialResult summarize_trace(const RunTrace& trace, std::size_t genome_length) {
  TrialResult result;
  result.first_disengagement = detect_disengagement(trace);
  result.engaged_full_run = !result.first_disengagement.has_value();
  for (const auto& record : trace)
    result.best_host_ones = std::max(result.best_host_ones, record.host.max);
  result.reached_optimum = result.best_host_ones == genome_length;
  return result;
}

TrialResult run_trial(const Cell& cell, std::size_t trial, std::uint64_t seed,
                      const EngineConfig& base, const StrategyConfig& params) {
  EngineConfig config = base;
  config.bias_host = cell.bias_host;
  config.bias_parasite = cell.bias_parasite;
  config.seed = seed;
  StrategyConfig strategy = params;
  strategy.kind = cell.strategy;

  TrialResult result = summarize_trace(run(config, strategy), config.genome_length);
  result.cell = cell;
  result.trial = trial;
  result.seed = seed;
  return result;
}

CellSummary summarize_cell(const Cell& cell, std::span<const TrialResult> trials) {
  CellSummary summary;
  summary.cell = cell;
  summary.trials = trials.size();
  double total_best = 0.0;
  for (const auto& t : trials) {
    summary.engaged_count += t.engaged_full_run ? 1 : 0;
    summary.optimum_count += t.reached_optimum ? 1 : 0;
    total_best += static_cast<double>(t.best_host_ones);
  }
  summary.mean_best_ones = trials.empty() ? 0.0 : total_best / static_cast<double>(trials.size());
  return summary;
}

void SweepConfig::validate() const {
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    throw ConfigError("grid-step must lie in (0,1], got " + std::to_string(grid_step));
  if (trials < 1)
    throw ConfigError("trials must be at least 1");
  if (strategies.empty())
    throw ConfigError("strategy list must not be empty");
  base.validate();
  params.validate();
}

std::vector<double> bias_grid(double step) {
  if (!(step > 0.0 && step <= 1.0))
    throw ConfigError("grid-step must lie in (0,1], got " + std::to_string(step));
  std::vector<double> values;
  for (std::size_t k = 1;; ++k) {
    const double v = static_cast<double>(k) * step;
    if (v > 1.0 + 1e-9)
      break;
    // Snap to 1e-9 so 3*0.1 prints and compares as 0.3.
    values.push_back(std::round(v * 1e9) / 1e9);
  }
  return values;
}

std::vector<Cell> sweep_cells(const SweepConfig& config) {
  auto kinds = config.strategies;
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  const auto grid = bias_grid(config.grid_step);

  std::vector<Cell> cells;
  for (auto kind : kinds) {
    for (double bh : grid) {
      for (double bp : grid) {
        if (bp >= bh || config.include_host_favoured)
          cells.push_back(Cell{kind, bh, bp});
      }
    }
  }
  return cells;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell_index, std::size_t trials,
                         std::size_t trial) {
  return base_seed + static_cast<std::uint64_t>(cell_index) * trials + trial;
}

SweepResult run_sweep(const SweepConfig& config, const TrialRunner& runner) {
  config.validate();
  const auto cells = sweep_cells(config);
  const std::size_t total = cells.size() * config.trials;

  SweepResult result;
  result.trials.resize(total);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t failed_job = total;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total)
        return;
      const std::size_t c = job / config.trials;
      const std::size_t t = job % config.trials;
      try {
        result.trials[job] = runner(cells[c], t, trial_seed(config.base.seed, c, config.trials, t),
                                       config.base, config.params);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (job < failed_job) {
          failed_job = job;
          std::ostringstream msg;
          msg << "sweep failed at cell (" << to_string(cells[c].strategy)
              << ", beta_h=" << cells[c].bias_host << ", beta_p=" << cells[c].bias_parasite
              << ") trial " << t << ": " << e.what();
          failure = msg.str();
        }
        next.store(total);
        return;
      }
    }
  };

  std::size_t threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(total, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i)
      pool.emplace_back(worker);
  }
  if (failed_job != total)
    throw std::runtime_error(failure);

  result.cells.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::span<const TrialResult> slice(result.trials.data() + c * config.trials, config.trials);
    result.cells.push_back(summarize_cell(cells[c], slice));
  }
  return result;
}

} // namespace coevo
