#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "coevo/engine.hpp"
#include "coevo/strategies.hpp"

namespace coevo {

/// First generation whose record has delta == 1 (one population wins every
/// game), or nullopt if the run stayed engaged.
std::optional<std::size_t> detect_disengagement(const RunTrace& trace);

/// One point of the bias grid under one strategy.
struct Cell {
  StrategyKind strategy = StrategyKind::canonical;
  double bias_host = 0.5;
  double bias_parasite = 0.5;
};

struct TrialResult {
  Cell cell;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool engaged_full_run = true;
  bool reached_optimum = false;
  std::size_t best_host_ones = 0; ///< run maximum of the best host's ones count
  std::optional<std::size_t> first_disengagement;
};

/// Trial metrics from a finished trace. Cell, trial and seed are left default.
TrialResult summarize_trace(const RunTrace& trace, std::size_t genome_length);

/// Runs one trial of a cell. base supplies everything except the biases and
/// seed; params supplies strategy parameters (its kind is overridden by the cell).
TrialResult run_trial(const Cell& cell, std::size_t trial, std::uint64_t seed,
                      const EngineConfig& base, const StrategyConfig& params);

struct CellSummary {
  Cell cell;
  std::size_t trials = 0;
  std::size_t engaged_count = 0;
  std::size_t optimum_count = 0;
  double mean_best_ones = 0.0;
};

CellSummary summarize_cell(const Cell& cell, std::span<const TrialResult> trials);

struct SweepConfig {
  double grid_step = 0.1;
  std::size_t trials = 50;
  std::vector<StrategyKind> strategies{StrategyKind::sf, StrategyKind::ava};
  EngineConfig base;            ///< base.seed is the sweep's base seed
  StrategyConfig params;        ///< strategy parameters shared by all cells
  bool include_host_favoured = false; ///< also run cells with beta_h > beta_p
  std::size_t threads = 0;      ///< 0 = hardware concurrency

  void validate() const;
};

/// Grid values step, 2*step, ... up to 1.0 (inclusive, within rounding).
std::vector<double> bias_grid(double step);

/// Cells ordered by strategy (enum order, duplicates removed), then beta_h,
/// then beta_p. Only beta_p >= beta_h unless host-favoured cells are enabled.
std::vector<Cell> sweep_cells(const SweepConfig& config);

/// Seed of a trial: base seed + cell_index * trials + trial.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell_index, std::size_t trials,
                         std::size_t trial);

struct SweepResult {
  std::vector<TrialResult> trials; ///< cell order, then trial order
  std::vector<CellSummary> cells;
};

using TrialRunner = std::function<TrialResult(const Cell&, std::size_t trial, std::uint64_t seed,
                                              const EngineConfig&, const StrategyConfig&)>;

/// Runs every trial of every cell, in parallel when threads allow. Output is
/// independent of scheduling. Any failing trial aborts the sweep with a
/// std::runtime_error naming the cell and trial.
SweepResult run_sweep(const SweepConfig& config, const TrialRunner& runner = run_trial);

} // namespace coevo
