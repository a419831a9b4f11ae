// levyaf: desk-scale experiments on additive functionals of symmetric Lévy
// processes. See README.md for the config schema and examples.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levyaf/commands.hpp"
#include "levyaf/config.hpp"

namespace {

struct Overrides {
  std::string config;
  std::uint64_t seed = 0;
  int threads = -1;
  std::string out;
  std::string format;
  std::string functional;
  bool dump_paths = false;
  bool summary = false;
  std::string inject_failure;
};

levyaf::ExperimentConfig resolve(const Overrides& o, const CLI::App& app) {
  auto cfg = o.config.empty() ? levyaf::ExperimentConfig{} : levyaf::load_config(o.config);
  if (app.count("--seed")) cfg.seed = o.seed;
  if (o.threads >= 0) cfg.threads = o.threads;
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.format.empty()) cfg.format = levyaf::parse_format(o.format);
  if (!o.functional.empty()) cfg.functional = levyaf::parse_functional(o.functional);
  if (o.dump_paths) cfg.simulate.dump_paths = true;
  if (o.summary) cfg.decompose.summary = true;
  if (!o.inject_failure.empty()) cfg.verify.inject_failure = o.inject_failure;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levyaf - additive functionals of symmetric Levy processes"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "RNG seed (overrides config)");
  app.add_option("--threads", o.threads, "OpenMP threads, 0 = default")->check(CLI::NonNegativeNumber);
  app.add_option("--out", o.out, "output file (default: stdout)");
  app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  const char* commands[][2] = {
      {"classify", "condition report for the model"},
      {"density", "transition densities p_t(x) by Fourier inversion"},
      {"simulate", "increment-law check, or raw paths with --dump-paths"},
      {"moments", "Monte-Carlo moments against the limit and the uniform bound"},
      {"decompose", "per-path three-way decomposition of I_n"},
      {"verify", "geometry and sampling property suite"},
  };
  for (auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (std::string(name) == "moments") {
      sub->add_option("--functional", o.functional, "i2 (band) | in (additive)")
          ->check(CLI::IsMember({"i2", "in"}));
    } else if (std::string(name) == "simulate") {
      sub->add_flag("--dump-paths", o.dump_paths, "write path_index, step_index, t, x rows");
    } else if (std::string(name) == "decompose") {
      sub->add_flag("--summary", o.summary, "per-n remainder summary instead of per-path rows");
    } else if (std::string(name) == "verify") {
      sub->add_option("--inject-failure", o.inject_failure, "force the named check to fail");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : levyaf::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  levyaf::ExperimentConfig cfg;
  try {
    cfg = resolve(o, app);
  } catch (const levyaf::Error& e) {
    std::cerr << "levyaf: " << e.what() << "\n";
    return levyaf::exit_code_for(e.kind());
  }

  const auto result = levyaf::run_command(command, cfg);
  if (result.exit_code >= levyaf::kExitConfig) {
    std::cerr << "levyaf: " << result.text;
    return result.exit_code;
  }
  if (cfg.out.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!(f << result.text)) {
      std::cerr << "levyaf: cannot write '" << cfg.out << "'\n";
      return levyaf::kExitConfig;
    }
  }
  return result.exit_code;
}
