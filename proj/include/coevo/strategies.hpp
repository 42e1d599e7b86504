#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace coevo {

inline constexpr double kMinVirulence = 0.5;
inline constexpr double kMaxVirulence = 1.0;

// ---------------------------------------------------------------------------
// Reduced virulence

/// Selection fitness 2x/v - x^2/v^2 for a score x in [0,1] and virulence v in
/// [0.5,1], clamped to [0,1]. Peaks at 1 when x == v. v outside its range is a
/// ConfigError.
double rv_transform(double score, double virulence);

// ---------------------------------------------------------------------------
// Autonomous virulence adaptation

struct AvaParams {
  double learning_rate = 0.0125;
  double momentum = 0.3;
  double target = 0.56;

  void validate() const;
};

struct AvaState {
  double virulence = 0.75;
  double last_step = 0.0;
};

/// Generations t < kAvaBootstrapGenerations use the step (0.5 - mean)/t.
inline constexpr int kAvaBootstrapGenerations = 5;

/// One virulence update from the population's mean score at generation t >= 1.
/// The new virulence is clamped to [0.5, 1].
AvaState ava_update(const AvaState& state, const AvaParams& params, double mean_score, int t);

// ---------------------------------------------------------------------------
// Substitution of the fittest

struct SfState {
  double previous_delta = 0.0;
};

/// Number of aptitudes substituted for a population of n at disengagement
/// level delta in (0,1]: n * delta^(1/delta) rounded to the nearest integer,
/// kept within [1, n].
std::size_t sf_kappa(std::size_t n, double delta);

enum class MirrorSide {
  punish_leader, ///< top kappa ranks take the mirrored values of the bottom ranks
  boost_trailer, ///< bottom kappa ranks take the mirrored values of the top ranks
};

/// Rank position each of n ranked positions reads from after mirror
/// substitution: identity outside the affected range, n-1-i inside it.
std::vector<std::size_t> sf_mirror_sources(std::size_t n, std::size_t kappa, MirrorSide side);

/// Mirror substitution over aptitudes already sorted descending. Position i
/// in the affected range takes the value at position n-1-i; other positions
/// are left untouched. kappa > n throws std::invalid_argument.
std::vector<double> sf_mirror_substitute(std::span<const double> ranked, std::size_t kappa,
                                         MirrorSide side);

enum class ShiftDirection { up, down };

/// Adds (up) or subtracts (down) delta from every value, clamped to [0,1].
std::vector<double> sf_shift(std::span<const double> aptitudes, double delta,
                             ShiftDirection direction);

struct SfOutcome {
  std::vector<double> host;
  std::vector<double> parasite;
  /// Slot i now holds the (pre-shift) aptitude of individual source[i]. Identity when not triggered.
  std::vector<std::size_t> host_source;
  std::vector<std::size_t> parasite_source;
  double delta = 0.0;
  bool triggered = false;
  std::size_t kappa = 0;
};

/// Applies SF to raw host and parasite aptitudes (in population order).
///
/// SF triggers when delta rises above state.previous_delta. The leading
/// population (higher mean) is ranked, its top kappa punished by mirror
/// substitution, then shifted down by delta; the trailing population gets the
/// boost mirror and is shifted up by delta. Ranking uses a stable descending
/// sort, and results are written back to each individual's own slot.
/// state.previous_delta is updated to delta in every case.
SfOutcome sf_apply(std::span<const double> host, std::span<const double> parasite, SfState& state);

// ---------------------------------------------------------------------------
// Dispatch

/// What SF substitution moves. aptitude rewrites selection values only and
/// never touches genomes. individual moves whole individuals: a slot that
/// takes another's aptitude also takes its genome.
enum class SfSubstitution { aptitude, individual };

std::string_view to_string(SfSubstitution mode);
SfSubstitution parse_sf_substitution(std::string_view name);

enum class StrategyKind { canonical, reduced_virulence, ava, sf };

std::string_view to_string(StrategyKind kind);
/// Accepts "canonical", "rv", "ava", "sf". Anything else is a ConfigError.
StrategyKind parse_strategy_kind(std::string_view name);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::canonical;
  double rv_virulence_host = 1.0;
  double rv_virulence_parasite = 0.75;
  AvaParams ava;
  SfSubstitution sf_substitution = SfSubstitution::aptitude;

  void validate() const;
};

/// Per-generation values recorded alongside the population statistics.
/// Strategies that do not use a field leave it at its neutral value.
struct StrategyDiagnostics {
  bool sf_triggered = false;
  std::size_t kappa = 0;
  double virulence_host = 1.0;
  double virulence_parasite = 1.0;
};

struct StrategyResult {
  StrategyDiagnostics diagnostics;
  /// Set only by SF with individual substitution: slot i must take the genome
  /// of individual source[i]. Empty means genomes stay where they are.
  std::vector<std::size_t> host_source;
  std::vector<std::size_t> parasite_source;
};

/// Mutable strategy state owned by one run.
class StrategyState {
public:
  explicit StrategyState(StrategyConfig config);

  const StrategyConfig& config() const { return config_; }
  const AvaState& ava_host() const { return ava_host_; }
  const AvaState& ava_parasite() const { return ava_parasite_; }
  const SfState& sf() const { return sf_; }

  /// Writes selection fitness for both populations from their raw aptitudes.
  /// t is the 1-based generation number (used by AVA's bootstrap).
  StrategyResult apply(std::span<const double> host_raw, std::span<const double> parasite_raw,
                       std::span<double> host_fitness, std::span<double> parasite_fitness, int t);

private:
  StrategyConfig config_;
  AvaState ava_host_;
  AvaState ava_parasite_;
  SfState sf_;
};

} // namespace coevo
