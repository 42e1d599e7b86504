#include "coevo/engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "coevo/aptitude.hpp"
#include "coevo/errors.hpp"

namespace coevo {

std::string_view to_string(Role role) { return role == Role::host ? "host" : "parasite"; }

std::vector<double> Population::raw_aptitudes() const {
  std::vector<double> out(individuals.size());
  std::transform(individuals.begin(), individuals.end(), out.begin(),
                 [](const Individual& ind) { return ind.raw_aptitude; });
  return out;
}

Population initial_population(std::size_t n, std::size_t length, MutationParams mutation, Role role) {
  Population pop;
  pop.mutation = mutation;
  pop.role = role;
  pop.individuals.assign(n, Individual{new_genome(length)});
  return pop;
}

void EngineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (population_size < 1)
    fail("pop-size must be at least 1");
  if (genome_length < 1)
    fail("genome-length must be at least 1");
  if (sample_size < 1 || sample_size > population_size)
    fail("sample-size must lie in [1, pop-size], got " + std::to_string(sample_size));
  if (tournament_size < 1)
    fail("tournament-size must be at least 1");
  if (generations < 1)
    fail("generations must be at least 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    fail("mutation-rate must lie in [0,1], got " + std::to_string(mutation_rate));
  if (!(bias_host >= 0.0 && bias_host <= 1.0))
    fail("beta-h must lie in [0,1], got " + std::to_string(bias_host));
  if (!(bias_parasite >= 0.0 && bias_parasite <= 1.0))
    fail("beta-p must lie in [0,1], got " + std::to_string(bias_parasite));
}

OnesStats ones_stats(const Population& pop) {
  OnesStats stats;
  if (pop.individuals.empty())
    return stats;
  stats.min = pop.individuals.front().genome.ones();
  std::size_t total = 0;
  for (const auto& ind : pop.individuals) {
    const std::size_t ones = ind.genome.ones();
    stats.min = std::min(stats.min, ones);
    stats.max = std::max(stats.max, ones);
    total += ones;
  }
  stats.mean = static_cast<double>(total) / static_cast<double>(pop.size());
  return stats;
}

namespace {

void score_against(Population& players, const Population& opponents, std::size_t sample_size,
                   Rng& rng, std::vector<std::size_t>& pool) {
  const std::size_t m = opponents.size();
  for (auto& player : players.individuals) {
    pool.resize(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    int half_points = 0;
    // Partial Fisher-Yates: the first sample_size slots form the sample.
    for (std::size_t j = 0; j < sample_size; ++j) {
      const std::size_t pick = j + rng.below(m - j);
      std::swap(pool[j], pool[pick]);
      half_points += game_half_points(player.genome.ones(), opponents.individuals[pool[j]].genome.ones());
    }
    player.raw_aptitude = static_cast<double>(half_points) / static_cast<double>(2 * sample_size);
    player.selection_fitness = player.raw_aptitude;
  }
}

} // namespace

void evaluate(Population& a, Population& b, std::size_t sample_size, Rng& rng) {
  if (a.individuals.empty() || b.individuals.empty())
    throw std::invalid_argument("evaluate: populations must be non-empty");
  if (sample_size < 1 || sample_size > a.size() || sample_size > b.size())
    throw std::invalid_argument("evaluate: sample size exceeds opposing population size");
  if (a.individuals.front().genome.length() != b.individuals.front().genome.length())
    throw std::invalid_argument("evaluate: genome lengths differ between populations");
  std::vector<std::size_t> pool;
  score_against(a, b, sample_size, rng, pool);
  score_against(b, a, sample_size, rng, pool);
}

double mean_aptitude(const Population& pop) { return mean_aptitude(pop.raw_aptitudes()); }

std::size_t tournament_select(const Population& pop, std::size_t k, Rng& rng) {
  if (pop.individuals.empty())
    throw std::invalid_argument("tournament_select: empty population");
  if (k < 1)
    throw std::invalid_argument("tournament_select: tournament size must be at least 1");
  const std::size_t n = pop.size();
  std::size_t best = rng.below(n);
  std::size_t ties = 1;
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t challenger = rng.below(n);
    const double cf = pop.individuals[challenger].selection_fitness;
    const double bf = pop.individuals[best].selection_fitness;
    if (cf > bf) {
      best = challenger;
      ties = 1;
    } else if (cf == bf) {
      // Reservoir choice keeps every tied contestant equally likely.
      ++ties;
      if (rng.below(ties) == 0)
        best = challenger;
    }
  }
  return best;
}

namespace {

void apply_transform(Population& pop, std::span<const double> fitness,
                     std::span<const std::size_t> source) {
  if (!source.empty()) {
    const auto before = pop.individuals;
    for (std::size_t i = 0; i < pop.size(); ++i)
      pop.individuals[i] = before[source[i]];
  }
  for (std::size_t i = 0; i < pop.size(); ++i)
    pop.individuals[i].selection_fitness = fitness[i];
}

Population next_generation(const Population& pop, std::size_t tournament_size, Rng& rng) {
  Population next;
  next.mutation = pop.mutation;
  next.role = pop.role;
  next.individuals.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const auto& parent = pop.individuals[tournament_select(pop, tournament_size, rng)];
    next.individuals.push_back(Individual{mutate(parent.genome, pop.mutation, rng)});
  }
  return next;
}

} // namespace

StrategyDiagnostics apply_strategy(StrategyState& strategy, Population& host, Population& parasite,
                                   int t) {
  const auto host_raw = host.raw_aptitudes();
  const auto parasite_raw = parasite.raw_aptitudes();
  std::vector<double> host_fitness(host.size());
  std::vector<double> parasite_fitness(parasite.size());
  const auto result = strategy.apply(host_raw, parasite_raw, host_fitness, parasite_fitness, t);
  apply_transform(host, host_fitness, result.host_source);
  apply_transform(parasite, parasite_fitness, result.parasite_source);
  return result.diagnostics;
}

GenerationRecord step_generation(Population& host, Population& parasite, StrategyState& strategy,
                                 const EngineConfig& config, std::size_t generation, Rng& rng) {
  evaluate(host, parasite, config.sample_size, rng);

  const auto host_raw = host.raw_aptitudes();
  const auto parasite_raw = parasite.raw_aptitudes();

  GenerationRecord record;
  record.generation = generation;
  record.host = ones_stats(host);
  record.parasite = ones_stats(parasite);
  record.sigma_host = mean_aptitude(host_raw);
  record.sigma_parasite = mean_aptitude(parasite_raw);
  record.delta = disengagement_delta(record.sigma_host, record.sigma_parasite);

  const auto diag = apply_strategy(strategy, host, parasite, static_cast<int>(generation + 1));

  record.sf_triggered = diag.sf_triggered;
  record.kappa = diag.kappa;
  record.virulence_host = diag.virulence_host;
  record.virulence_parasite = diag.virulence_parasite;

  host = next_generation(host, config.tournament_size, rng);
  parasite = next_generation(parasite, config.tournament_size, rng);
  return record;
}

RunTrace run(const EngineConfig& config, const StrategyConfig& strategy_config) {
  config.validate();
  StrategyState strategy(strategy_config);
  Rng rng(config.seed);
  auto host = initial_population(config.population_size, config.genome_length,
                                 {config.mutation_rate, config.bias_host}, Role::host);
  auto parasite = initial_population(config.population_size, config.genome_length,
                                     {config.mutation_rate, config.bias_parasite}, Role::parasite);
  RunTrace trace;
  trace.reserve(config.generations);
  for (std::size_t t = 0; t < config.generations; ++t)
    trace.push_back(step_generation(host, parasite, strategy, config, t, rng));
  return trace;
}

} // namespace coevo
