#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "coevo/engine.hpp"
#include "coevo/harness.hpp"

namespace coevo {

inline constexpr std::string_view kTraceHeader =
    "generation,host_min_ones,host_mean_ones,host_max_ones,par_min_ones,par_mean_ones,"
    "par_max_ones,sigma_host,sigma_par,delta,sf_triggered,kappa,upsilon_host,upsilon_par";

inline constexpr std::string_view kTrialsHeader =
    "strategy,beta_h,beta_p,trial,seed,engaged_full_run,reached_optimum,best_host_ones,"
    "first_disengagement_generation";

inline constexpr std::string_view kCellsHeader =
    "strategy,beta_h,beta_p,trials,engaged_count,optimum_count,mean_best_ones";

/// Fixed notation with six decimals, independent of locale.
std::string format_fixed(double value);

/// CSV with kTraceHeader and one newline-terminated row per record.
std::string format_trace(const RunTrace& trace);

/// Parses text produced by format_trace. Throws std::invalid_argument on a
/// malformed header or row. Reals come back rounded to six decimals.
RunTrace parse_trace(std::string_view csv);

/// One row per trial. A run that never disengaged leaves the last column empty.
std::string format_trials(std::span<const TrialResult> trials);

std::string format_cells(std::span<const CellSummary> cells);

/// Replaces the file's contents. Throws IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

} // namespace coevo
