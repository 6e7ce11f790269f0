#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "gaussdense/gaussdense.h"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian dictionaries in weighted time-frequency spaces"};
  app.set_version_flag("--version", std::string(gd_version()));
  app.require_subcommand(1);

  std::string config;
  std::string out;
  bool force = false;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  const char* commands[][2] = {
      {"check-weights", "Check non-degeneracy and regularity of both weights"},
      {"transform", "Transform the target signal and report Parseval and round-trip errors"},
      {"mollify", "Composite approximate-identity errors and mollifier norm certificates"},
      {"approximate", "Fit the target with a Gaussian dictionary (least squares or greedy)"},
      {"witness", "Completeness witness curves over the alpha schedule"},
      {"check-window", "Check the conditions on a general window"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides the config)");
    sub->add_flag("--force", force, "Run even if a weight fails validation");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed for probe vectors");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  int code = 1;
  const gd_status st = gd_experiment_run(config.c_str(), name.c_str(), out.empty() ? nullptr : out.c_str(), force ? 1 : 0,
                                         threads, seed, &code);
  if (st != GD_OK) {
    std::fprintf(stderr, "error: %s\n", gd_last_error());
    return 1;
  }
  const char* msg = gd_experiment_message();
  if (code != 0) {
    std::fprintf(stderr, "%s\n", msg);
  } else {
    std::printf("%s: ok\n", name.c_str());
  }
  return code;
}
