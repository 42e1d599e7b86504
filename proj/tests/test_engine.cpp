#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coevo/aptitude.hpp"
#include "coevo/engine.hpp"
#include "coevo/errors.hpp"

using namespace coevo;

namespace {

Genome genome_with_ones(std::size_t length, std::size_t ones) {
  std::vector<std::uint8_t> bits(length, 0);
  std::fill_n(bits.begin(), ones, 1);
  return Genome(bits);
}

Population population_of(std::initializer_list<std::size_t> ones, std::size_t length, Role role) {
  Population pop;
  pop.role = role;
  for (auto k : ones)
    pop.individuals.push_back(Individual{genome_with_ones(length, k)});
  return pop;
}

Population random_population(std::size_t n, std::size_t length, Rng& rng) {
  Population pop;
  for (std::size_t i = 0; i < n; ++i)
    pop.individuals.push_back(Individual{genome_with_ones(length, rng.below(length + 1))});
  return pop;
}

// Mean score against every member of the other population.
std::vector<double> exhaustive_scores(const Population& players, const Population& opponents) {
  std::vector<double> out;
  for (const auto& p : players.individuals) {
    double total = 0;
    for (const auto& o : opponents.individuals)
      total += play_game(p.genome, o.genome);
    out.push_back(total / static_cast<double>(opponents.size()));
  }
  return out;
}

} // namespace

TEST_CASE("evaluate: total domination and all draws") {
  Rng rng(1);
  auto a = population_of({100, 100, 100, 100}, 100, Role::host);
  auto b = population_of({0, 0, 0, 0}, 100, Role::parasite);
  evaluate(a, b, 3, rng);
  for (const auto& ind : a.individuals)
    CHECK(ind.raw_aptitude == 1.0);
  for (const auto& ind : b.individuals)
    CHECK(ind.raw_aptitude == 0.0);

  auto c = population_of({7, 7, 7}, 10, Role::host);
  auto d = population_of({7, 7, 7}, 10, Role::parasite);
  evaluate(c, d, 2, rng);
  for (const auto& ind : c.individuals) {
    CHECK(ind.raw_aptitude == 0.5);
    CHECK(ind.selection_fitness == 0.5);
  }
}

TEST_CASE("evaluate with an exhaustive sample matches brute force") {
  Rng rng(2);
  auto a = population_of({3, 1}, 5, Role::host);
  auto b = population_of({2, 2}, 5, Role::parasite);
  evaluate(a, b, 2, rng);
  CHECK(a.raw_aptitudes() == std::vector<double>{1.0, 0.0});
  CHECK(b.raw_aptitudes() == std::vector<double>{0.5, 0.5});

  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng.below(8);
    auto x = random_population(n, 12, rng);
    auto y = random_population(n, 12, rng);
    const auto want_x = exhaustive_scores(x, y);
    const auto want_y = exhaustive_scores(y, x);
    evaluate(x, y, n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(x.individuals[i].raw_aptitude == doctest::Approx(want_x[i]).epsilon(1e-12));
      CHECK(y.individuals[i].raw_aptitude == doctest::Approx(want_y[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate aptitudes are multiples of 1/(2S)") {
  Rng rng(3);
  for (std::size_t s : {1u, 3u, 5u}) {
    auto a = random_population(10, 20, rng);
    auto b = random_population(10, 20, rng);
    evaluate(a, b, s, rng);
    for (const auto* pop : {&a, &b})
      for (const auto& ind : pop->individuals) {
        const double scaled = ind.raw_aptitude * 2.0 * static_cast<double>(s);
        CHECK(scaled == std::round(scaled));
        CHECK(ind.raw_aptitude >= 0.0);
        CHECK(ind.raw_aptitude <= 1.0);
      }
  }
}

TEST_CASE("evaluate rejects oversized samples") {
  Rng rng(4);
  auto a = population_of({1, 2, 3}, 5, Role::host);
  auto b = population_of({1, 2}, 5, Role::parasite);
  CHECK_THROWS(evaluate(a, b, 3, rng));
  CHECK_THROWS(evaluate(a, b, 0, rng));
}

TEST_CASE("mean_aptitude and disengagement_delta") {
  const std::vector<double> ones{1, 1, 1};
  CHECK(mean_aptitude(ones) == 1.0);
  const std::vector<double> worked{0.8, 0.6, 0.4, 0.2, 0.1, 0.0};
  CHECK(mean_aptitude(worked) == doctest::Approx(0.35).epsilon(1e-12));
  const std::vector<double> zeros{0, 0};
  CHECK(mean_aptitude(zeros) == 0.0);

  CHECK(disengagement_delta(1.0, 0.0) == 1.0);
  CHECK(disengagement_delta(0.0, 1.0) == 1.0);
  CHECK(disengagement_delta(0.5, 0.5) == 0.0);
  CHECK(disengagement_delta(0.9, 0.09) == doctest::Approx(0.81).epsilon(1e-12));
}

TEST_CASE("tournament_select") {
  Rng rng(5);
  auto pop = population_of({1, 2}, 5, Role::host);
  pop.individuals[0].selection_fitness = 1.0;
  pop.individuals[1].selection_fitness = 0.0;

  SUBCASE("k = 2 favours the fitter with probability 3/4") {
    int wins = 0;
    for (int i = 0; i < 1000; ++i)
      wins += tournament_select(pop, 2, rng) == 0 ? 1 : 0;
    CHECK(wins >= 700);
    CHECK(wins <= 800);
  }
  SUBCASE("k = 1 is uniform") {
    int first = 0;
    for (int i = 0; i < 10000; ++i)
      first += tournament_select(pop, 1, rng) == 0 ? 1 : 0;
    CHECK(std::abs(first - 5000) < 250);
  }
  SUBCASE("equal fitness reduces to uniform drift") {
    auto flat = population_of({0, 1, 2, 3}, 5, Role::host);
    std::vector<int> counts(4, 0);
    for (int i = 0; i < 10000; ++i)
      ++counts[tournament_select(flat, 2, rng)];
    for (int c : counts)
      CHECK(std::abs(c - 2500) < 200);
  }
  CHECK_THROWS(tournament_select(pop, 0, rng));
}

TEST_CASE("EngineConfig validation") {
  EngineConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.sample_size = 26;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.generations = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.bias_parasite = 1.2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.tournament_size = 0;
  CHECK_THROWS_AS(run(bad, StrategyConfig{}), ConfigError);
}

TEST_CASE("step_generation with single individuals and no mutation clones") {
  EngineConfig c;
  c.population_size = 1;
  c.sample_size = 1;
  c.genome_length = 8;
  c.mutation_rate = 0.0;
  Rng rng(6);
  StrategyState strategy(StrategyConfig{});
  auto host = population_of({5}, 8, Role::host);
  auto parasite = population_of({2}, 8, Role::parasite);
  const auto record = step_generation(host, parasite, strategy, c, 0, rng);
  CHECK(record.sigma_host == 1.0);
  CHECK(record.sigma_parasite == 0.0);
  CHECK(record.delta == 1.0);
  CHECK(host.individuals[0].genome.ones() == 5);
  CHECK(parasite.individuals[0].genome.ones() == 2);
}

TEST_CASE("run keeps sizes and records consistent deltas") {
  EngineConfig c;
  c.generations = 200;
  c.seed = 77;
  for (auto kind : {StrategyKind::canonical, StrategyKind::ava, StrategyKind::sf}) {
    const auto trace = run(c, StrategyConfig{kind});
    REQUIRE(trace.size() == 200);
    for (std::size_t t = 0; t < trace.size(); ++t) {
      const auto& r = trace[t];
      CHECK(r.generation == t);
      CHECK(r.delta == std::abs(r.sigma_host - r.sigma_parasite));
      CHECK(r.host.max <= c.genome_length);
      CHECK(r.host.min <= r.host.max);
      CHECK(r.parasite.mean >= static_cast<double>(r.parasite.min));
    }
  }
}

TEST_CASE("step_generation keeps population size and genome length") {
  EngineConfig c;
  c.population_size = 7;
  c.sample_size = 3;
  c.genome_length = 30;
  c.mutation_rate = 0.05;
  Rng rng(8);
  StrategyConfig sc{StrategyKind::sf};
  sc.sf_substitution = SfSubstitution::individual;
  StrategyState strategy(sc);
  auto host = initial_population(7, 30, {0.05, 0.4}, Role::host);
  auto parasite = initial_population(7, 30, {0.05, 0.9}, Role::parasite);
  for (std::size_t t = 0; t < 100; ++t) {
    step_generation(host, parasite, strategy, c, t, rng);
    REQUIRE(host.size() == 7);
    REQUIRE(parasite.size() == 7);
    for (const auto* pop : {&host, &parasite})
      for (const auto& ind : pop->individuals)
        REQUIRE(ind.genome.length() == 30);
  }
}

TEST_CASE("run is deterministic") {
  EngineConfig c;
  c.generations = 150;
  c.seed = 2024;
  c.bias_host = 0.3;
  c.bias_parasite = 0.8;
  for (auto kind : {StrategyKind::canonical, StrategyKind::reduced_virulence, StrategyKind::ava,
                    StrategyKind::sf}) {
    CHECK(run(c, StrategyConfig{kind}) == run(c, StrategyConfig{kind}));
  }
  auto other = c;
  other.seed = 2025;
  CHECK(run(c, StrategyConfig{}) != run(other, StrategyConfig{}));
}

TEST_CASE("run with one generation records the initial populations") {
  EngineConfig c;
  c.generations = 1;
  const auto trace = run(c, StrategyConfig{});
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].host.max == 0);
  CHECK(trace[0].delta == 0.0);
  CHECK(trace[0].sigma_host == 0.5);
}

TEST_CASE("equal bias gives an engaged arms race") {
  EngineConfig c;
  c.generations = 101;
  c.seed = 1;
  const auto trace = run(c, StrategyConfig{});
  int rising = 0;
  for (std::size_t t = 1; t <= 100; ++t) {
    if (trace[t].host.mean > trace[t - 1].host.mean &&
        trace[t].parasite.mean > trace[t - 1].parasite.mean)
      ++rising;
  }
  CHECK(rising >= 80);
}

TEST_CASE("apply_strategy under SF") {
  Rng rng(10);
  auto host = population_of({9, 8, 7, 6, 5, 4}, 10, Role::host);
  auto parasite = population_of({1, 1, 2, 0, 3, 0}, 10, Role::parasite);
  evaluate(host, parasite, 6, rng);

  SUBCASE("aptitude mode keeps genomes in place") {
    const auto before = host;
    StrategyState s(StrategyConfig{StrategyKind::sf});
    const auto diag = apply_strategy(s, host, parasite, 1);
    CHECK(diag.sf_triggered);
    for (std::size_t i = 0; i < host.size(); ++i)
      CHECK(host.individuals[i].genome == before.individuals[i].genome);
  }
  SUBCASE("individual mode moves genomes with their aptitudes") {
    StrategyConfig cfg{StrategyKind::sf};
    cfg.sf_substitution = SfSubstitution::individual;
    StrategyState s(cfg);
    const auto diag = apply_strategy(s, host, parasite, 1);
    CHECK(diag.sf_triggered);
    CHECK(diag.kappa == 6); // every host beats every parasite: delta = 1
    // kappa == n: the population is only permuted.
    std::vector<std::size_t> ones;
    for (const auto& ind : host.individuals)
      ones.push_back(ind.genome.ones());
    std::sort(ones.begin(), ones.end());
    CHECK(ones == std::vector<std::size_t>{4, 5, 6, 7, 8, 9});
  }
}
