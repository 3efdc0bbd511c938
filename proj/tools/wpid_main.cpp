// wpid: simulate scenes, match traces to phones, sweep the TS gate.
#include <iostream>

#include "CLI11.hpp"
#include "wpid/commands.hpp"

using namespace wpid;

int main(int argc, char** argv) {
  CLI::App app{"Walking person identification from video traces and phone accelerometers"};
  app.require_subcommand(1);
  CommandOptions opt;

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic scene with ground truth");
  simulate->add_option("--config", opt.config, "Scenario config (JSON); default 3-person scene if omitted");
  simulate->add_option("--seed", opt.seed, "Override the scenario seed");
  simulate->add_option("--out", opt.out, "Output directory")->required();

  auto* match = app.add_subcommand("match", "Pair traces with sensors frame by frame");
  auto* sweep = app.add_subcommand("sweep", "R_cd over a list of TS gates");
  for (auto* cmd : {match, sweep}) {
    cmd->add_option("--config", opt.config, "Run config (JSON)");
    cmd->add_option("--input", opt.input, "Directory written by 'simulate'");
    cmd->add_option("--stage", opt.stage, "raw, refined or both");
    cmd->add_option("--ts", opt.ts, "TS gate in seconds (comma separated for sweep)")->delimiter(',');
    cmd->add_option("--seed", opt.seed, "Seed recorded with the results");
    cmd->add_option("--out", opt.out, "Output directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt, std::cout, std::cerr);
    if (match->parsed()) return cmd_match(opt, std::cout, std::cerr);
    if (sweep->parsed()) return cmd_sweep(opt, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
