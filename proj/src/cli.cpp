#include "coevo/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>

#include "coevo/config.hpp"
#include "coevo/errors.hpp"
#include "coevo/harness.hpp"
#include "coevo/report.hpp"

namespace coevo {

namespace {

struct Invocation {
  Settings settings;
  std::string config_path;
};

void add_spec_options(CLI::App& sub, Invocation& inv) {
  const std::pair<const char*, const char*> options[] = {
      {"strategy", "canonical|rv|ava|sf (comma-separated list for sweep)"},
      {"beta-h", "host mutation bias"},
      {"beta-p", "parasite mutation bias"},
      {"seed", "base random seed"},
      {"trials", "trials per sweep cell"},
      {"generations", "generations per run"},
      {"pop-size", "individuals per population"},
      {"genome-length", "bits per genome"},
      {"sample-size", "opponents sampled per evaluation"},
      {"mutation-rate", "per-bit mutation probability"},
      {"tournament-size", "tournament size for selection"},
      {"rv-upsilon-host", "fixed host virulence for rv"},
      {"rv-upsilon-par", "fixed parasite virulence for rv"},
      {"ava-alpha", "AVA learning rate"},
      {"ava-mu", "AVA momentum"},
      {"ava-tau", "AVA target score"},
      {"sf-substitution", "SF substitution: aptitude|individual"},
      {"grid-step", "bias grid step for sweep"},
      {"out-dir", "output directory"},
      {"threads", "sweep worker threads (0 = all cores)"},
  };
  for (const auto& [name, help] : options) {
    const std::string key = name;
    sub.add_option_function<std::string>(
        "--" + key, [&inv, key](const std::string& value) { inv.settings.emplace_back(key, value); },
        help);
  }
  sub.add_flag_callback(
      "--host-favoured", [&inv] { inv.settings.emplace_back("host-favoured", "true"); },
      "also sweep cells with beta_h > beta_p");
  sub.add_option("--config", inv.config_path, "key=value configuration file (flags override)");
}

RunSpec resolve(const Invocation& inv, Command command) {
  RunSpec spec;
  if (!inv.config_path.empty())
    apply_settings(spec, read_config_file(inv.config_path));
  apply_settings(spec, inv.settings);
  validate(spec, command);
  return spec;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "'");
}

int cmd_run(const RunSpec& spec, std::ostream& out) {
  StrategyConfig strategy = spec.strategy;
  strategy.kind = spec.strategies.front();
  const auto trace = run(spec.engine, strategy);
  ensure_dir(spec.out_dir);
  const auto path = spec.out_dir / "trace.csv";
  write_text_file(path, format_trace(trace));
  out << "wrote " << path.string() << " (" << trace.size() << " generations)\n";
  return kExitOk;
}

int cmd_sweep(const RunSpec& spec, std::ostream& out) {
  const auto result = run_sweep(to_sweep_config(spec));
  ensure_dir(spec.out_dir);
  const auto trials_path = spec.out_dir / "trials.csv";
  const auto cells_path = spec.out_dir / "cells.csv";
  write_text_file(trials_path, format_trials(result.trials));
  write_text_file(cells_path, format_cells(result.cells));
  out << "wrote " << trials_path.string() << " (" << result.trials.size() << " trials)\n"
      << "wrote " << cells_path.string() << " (" << result.cells.size() << " cells)\n";
  return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-population competitive coevolution on the greater-than game"};
  app.name("coevo");
  app.require_subcommand(1);

  Invocation run_inv, sweep_inv, validate_inv;
  auto* run_cmd = app.add_subcommand("run", "run one coevolution and write trace.csv");
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep the bias grid and write trials.csv and cells.csv");
  auto* validate_cmd = app.add_subcommand("validate", "print the effective configuration");
  add_spec_options(*run_cmd, run_inv);
  add_spec_options(*sweep_cmd, sweep_inv);
  add_spec_options(*validate_cmd, validate_inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(resolve(run_inv, Command::run), out);
    if (sweep_cmd->parsed())
      return cmd_sweep(resolve(sweep_inv, Command::sweep), out);
    out << describe(resolve(validate_inv, Command::validate));
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

} // namespace coevo
