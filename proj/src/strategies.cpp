#include "coevo/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "coevo/aptitude.hpp"
#include "coevo/errors.hpp"

namespace coevo {

namespace {

void require_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ConfigError(std::string(name) + " must lie in [0,1], got " + std::to_string(value));
}

void require_virulence(double value, const char* name) {
  if (!(value >= kMinVirulence && value <= kMaxVirulence))
    throw ConfigError(std::string(name) + " must lie in [0.5,1], got " + std::to_string(value));
}

} // namespace

double rv_transform(double score, double virulence) {
  require_virulence(virulence, "virulence");
  const double r = score / virulence;
  return std::clamp(2.0 * r - r * r, 0.0, 1.0);
}

void AvaParams::validate() const {
  require_unit(learning_rate, "ava-alpha");
  require_unit(momentum, "ava-mu");
  require_unit(target, "ava-tau");
}

AvaState ava_update(const AvaState& state, const AvaParams& params, double mean_score, int t) {
  if (t < 1)
    throw std::invalid_argument("ava_update: generation must be >= 1");
  double step = 0.0;
  if (t < kAvaBootstrapGenerations)
    step = (0.5 - mean_score) / t;
  else
    step = params.momentum * state.last_step +
           params.learning_rate * (1.0 - params.momentum) * (params.target - mean_score);
  return AvaState{std::clamp(state.virulence + step, kMinVirulence, kMaxVirulence), step};
}

std::size_t sf_kappa(std::size_t n, double delta) {
  if (n == 0)
    throw std::invalid_argument("sf_kappa: population size must be positive");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("sf_kappa: delta must lie in (0,1]");
  const double raw = static_cast<double>(n) * std::pow(delta, 1.0 / delta);
  const auto rounded = static_cast<std::size_t>(std::floor(raw + 0.5));
  return std::clamp<std::size_t>(rounded, 1, n);
}

std::vector<std::size_t> sf_mirror_sources(std::size_t n, std::size_t kappa, MirrorSide side) {
  if (kappa > n)
    throw std::invalid_argument("sf_mirror_substitute: kappa exceeds population size");
  std::vector<std::size_t> source(n);
  std::iota(source.begin(), source.end(), std::size_t{0});
  const std::size_t first = side == MirrorSide::punish_leader ? 0 : n - kappa;
  const std::size_t last = side == MirrorSide::punish_leader ? kappa : n;
  for (std::size_t i = first; i < last; ++i)
    source[i] = n - 1 - i;
  return source;
}

std::vector<double> sf_mirror_substitute(std::span<const double> ranked, std::size_t kappa,
                                         MirrorSide side) {
  const auto source = sf_mirror_sources(ranked.size(), kappa, side);
  std::vector<double> out(ranked.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ranked[source[i]];
  return out;
}

std::vector<double> sf_shift(std::span<const double> aptitudes, double delta,
                             ShiftDirection direction) {
  std::vector<double> out(aptitudes.size());
  std::transform(aptitudes.begin(), aptitudes.end(), out.begin(), [&](double x) {
    return direction == ShiftDirection::up ? std::min(x + delta, 1.0) : std::max(x - delta, 0.0);
  });
  return out;
}

namespace {

struct Substituted {
  std::vector<double> fitness;
  std::vector<std::size_t> source;
};

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Ranks descending (stable), applies mirror + shift, and scatters the result
// back to population order.
Substituted substitute_population(std::span<const double> raw, std::size_t kappa, double delta,
                                  bool leader) {
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
  std::vector<double> ranked(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    ranked[i] = raw[order[i]];

  const auto side = leader ? MirrorSide::punish_leader : MirrorSide::boost_trailer;
  const auto rank_source = sf_mirror_sources(raw.size(), kappa, side);
  const auto mirrored = sf_mirror_substitute(ranked, kappa, side);
  const auto shifted =
      sf_shift(mirrored, delta, leader ? ShiftDirection::down : ShiftDirection::up);

  Substituted out{std::vector<double>(raw.size()), std::vector<std::size_t>(raw.size())};
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.fitness[order[i]] = shifted[i];
    out.source[order[i]] = order[rank_source[i]];
  }
  return out;
}

} // namespace

SfOutcome sf_apply(std::span<const double> host, std::span<const double> parasite, SfState& state) {
  if (host.empty() || parasite.empty())
    throw std::invalid_argument("sf_apply: populations must be non-empty");
  const double sigma_host = mean_aptitude(host);
  const double sigma_parasite = mean_aptitude(parasite);

  SfOutcome outcome;
  outcome.delta = disengagement_delta(sigma_host, sigma_parasite);
  outcome.host.assign(host.begin(), host.end());
  outcome.parasite.assign(parasite.begin(), parasite.end());
  outcome.host_source = identity(host.size());
  outcome.parasite_source = identity(parasite.size());

  if (outcome.delta > state.previous_delta) {
    outcome.triggered = true;
    // Host and parasite populations may differ in size; kappa is per population.
    const bool host_leads = sigma_host > sigma_parasite;
    outcome.kappa = sf_kappa(host.size(), outcome.delta);
    auto h = substitute_population(host, outcome.kappa, outcome.delta, host_leads);
    auto p = substitute_population(parasite, sf_kappa(parasite.size(), outcome.delta),
                                   outcome.delta, !host_leads);
    outcome.host = std::move(h.fitness);
    outcome.host_source = std::move(h.source);
    outcome.parasite = std::move(p.fitness);
    outcome.parasite_source = std::move(p.source);
  }
  state.previous_delta = outcome.delta;
  return outcome;
}

std::string_view to_string(SfSubstitution mode) {
  return mode == SfSubstitution::aptitude ? "aptitude" : "individual";
}

SfSubstitution parse_sf_substitution(std::string_view name) {
  if (name == "aptitude")
    return SfSubstitution::aptitude;
  if (name == "individual")
    return SfSubstitution::individual;
  throw ConfigError("sf-substitution must be aptitude or individual, got '" + std::string(name) +
                    "'");
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
  case StrategyKind::canonical:
    return "canonical";
  case StrategyKind::reduced_virulence:
    return "rv";
  case StrategyKind::ava:
    return "ava";
  case StrategyKind::sf:
    return "sf";
  }
  return "unknown";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  for (auto kind : {StrategyKind::canonical, StrategyKind::reduced_virulence, StrategyKind::ava,
                    StrategyKind::sf}) {
    if (name == to_string(kind))
      return kind;
  }
  throw ConfigError("strategy must be one of canonical|rv|ava|sf, got '" + std::string(name) + "'");
}

void StrategyConfig::validate() const {
  require_virulence(rv_virulence_host, "rv-upsilon-host");
  require_virulence(rv_virulence_parasite, "rv-upsilon-par");
  ava.validate();
}

StrategyState::StrategyState(StrategyConfig config) : config_(config) { config_.validate(); }

StrategyResult StrategyState::apply(std::span<const double> host_raw,
                                    std::span<const double> parasite_raw,
                                    std::span<double> host_fitness,
                                    std::span<double> parasite_fitness, int t) {
  if (host_raw.size() != host_fitness.size() || parasite_raw.size() != parasite_fitness.size())
    throw std::invalid_argument("StrategyState::apply: span sizes differ");

  StrategyResult result;
  auto& diag = result.diagnostics;
  auto transform_rv = [](std::span<const double> in, std::span<double> out, double virulence) {
    std::transform(in.begin(), in.end(), out.begin(),
                   [virulence](double x) { return rv_transform(x, virulence); });
  };

  switch (config_.kind) {
  case StrategyKind::canonical:
    std::copy(host_raw.begin(), host_raw.end(), host_fitness.begin());
    std::copy(parasite_raw.begin(), parasite_raw.end(), parasite_fitness.begin());
    break;
  case StrategyKind::reduced_virulence:
    transform_rv(host_raw, host_fitness, config_.rv_virulence_host);
    transform_rv(parasite_raw, parasite_fitness, config_.rv_virulence_parasite);
    diag.virulence_host = config_.rv_virulence_host;
    diag.virulence_parasite = config_.rv_virulence_parasite;
    break;
  case StrategyKind::ava:
    // Fitness uses the current virulence; the update then sets next generation's.
    transform_rv(host_raw, host_fitness, ava_host_.virulence);
    transform_rv(parasite_raw, parasite_fitness, ava_parasite_.virulence);
    diag.virulence_host = ava_host_.virulence;
    diag.virulence_parasite = ava_parasite_.virulence;
    ava_host_ = ava_update(ava_host_, config_.ava, mean_aptitude(host_raw), t);
    ava_parasite_ = ava_update(ava_parasite_, config_.ava, mean_aptitude(parasite_raw), t);
    break;
  case StrategyKind::sf: {
    auto outcome = sf_apply(host_raw, parasite_raw, sf_);
    std::copy(outcome.host.begin(), outcome.host.end(), host_fitness.begin());
    std::copy(outcome.parasite.begin(), outcome.parasite.end(), parasite_fitness.begin());
    diag.sf_triggered = outcome.triggered;
    diag.kappa = outcome.kappa;
    if (outcome.triggered && config_.sf_substitution == SfSubstitution::individual) {
      result.host_source = std::move(outcome.host_source);
      result.parasite_source = std::move(outcome.parasite_source);
    }
    break;
  }
  }
  return result;
}

} // namespace coevo
