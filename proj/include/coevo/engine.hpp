#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "coevo/bitstring.hpp"
#include "coevo/random.hpp"
#include "coevo/strategies.hpp"

namespace coevo {

struct Individual {
  Genome genome;
  double raw_aptitude = 0.0;      ///< mean game score over the sampled opponents
  double selection_fitness = 0.0; ///< raw_aptitude after the strategy transform
};

enum class Role { host, parasite };

std::string_view to_string(Role role);

struct Population {
  std::vector<Individual> individuals;
  MutationParams mutation;
  Role role = Role::host;

  std::size_t size() const { return individuals.size(); }
  std::vector<double> raw_aptitudes() const;
};

/// n all-zero individuals of length l.
Population initial_population(std::size_t n, std::size_t length, MutationParams mutation, Role role);

struct EngineConfig {
  std::size_t population_size = 25;
  std::size_t genome_length = 100;
  std::size_t sample_size = 5;
  std::size_t tournament_size = 2;
  double mutation_rate = 0.005;
  std::size_t generations = 1000;
  std::uint64_t seed = 1;
  double bias_host = 0.5;
  double bias_parasite = 0.5;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

struct OnesStats {
  std::size_t min = 0;
  double mean = 0.0;
  std::size_t max = 0;

  bool operator==(const OnesStats&) const = default;
};

OnesStats ones_stats(const Population& pop);

struct GenerationRecord {
  std::size_t generation = 0;
  OnesStats host;
  OnesStats parasite;
  double sigma_host = 0.0;
  double sigma_parasite = 0.0;
  double delta = 0.0;
  bool sf_triggered = false;
  std::size_t kappa = 0;
  double virulence_host = 1.0;
  double virulence_parasite = 1.0;

  bool operator==(const GenerationRecord&) const = default;
};

using RunTrace = std::vector<GenerationRecord>;

/// Sets raw_aptitude (and selection_fitness to the same value) for every
/// individual of both populations. Each individual plays sample_size distinct
/// opponents drawn uniformly from the other population; a's individuals are
/// scored first, then b's. Only the player's own score is recorded.
void evaluate(Population& a, Population& b, std::size_t sample_size, Rng& rng);

double mean_aptitude(const Population& pop);

/// Index of the winner of a size-k tournament drawn with replacement, compared
/// on selection_fitness. Ties go to a uniformly random contestant.
std::size_t tournament_select(const Population& pop, std::size_t k, Rng& rng);

/// Runs the strategy on evaluated populations: writes selection_fitness and,
/// for SF with individual substitution, moves individuals between slots.
/// t is the 1-based generation number.
StrategyDiagnostics apply_strategy(StrategyState& strategy, Population& host, Population& parasite,
                                   int t);

/// One generation: evaluate, measure, transform, record, then replace both
/// populations with mutated tournament winners. generation is 0-based.
GenerationRecord step_generation(Population& host, Population& parasite, StrategyState& strategy,
                                 const EngineConfig& config, std::size_t generation, Rng& rng);

/// Full run from all-zero populations; one record per generation.
RunTrace run(const EngineConfig& config, const StrategyConfig& strategy);

} // namespace coevo
