#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "floatauth/explore.hpp"

int main(int argc, char** argv) {
  CLI::App app{"floatauth: parse, check and explore processes with floating authorizations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  bool json_mode = false;
  std::size_t budget = 0;
  app.add_flag("--json", json_mode, "Print one JSON report instead of text");
  app.add_option("--budget", budget, "State budget for exploration (default FLOATAUTH_BUDGET or 10000)")
      ->check(CLI::PositiveNumber);

  std::string file;
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "Input file, - for stdin")->required();
    sub->fallthrough();
    return sub;
  };

  auto* parse = with_file(app.add_subcommand("parse", "Parse and pretty-print a file"));
  auto* check = with_file(app.add_subcommand("check", "Type-check the process under its assumptions"));

  cli::ReduceOptions red;
  std::size_t steps = 0;
  auto* reduce = with_file(app.add_subcommand("reduce", "Reduction steps: successors, a trace, or the state space"));
  auto* steps_opt = reduce->add_option("--steps", steps, "Follow the first enabled redex up to N times");
  auto* all_opt = reduce->add_flag("--all", red.all, "Explore every reachable state breadth-first");
  steps_opt->excludes(all_opt);

  cli::StepOptions st;
  auto* step = with_file(app.add_subcommand("step", "Interactive stepping through redexes"));
  step->add_option("--transcript", st.transcript, "Write the session to this file");

  std::vector<std::string> universe;
  auto* lts = with_file(app.add_subcommand("lts", "List labelled transitions"));
  auto* uni_opt = lts->add_option("--universe", universe, "Names offered to free inputs (default: free names)")
                      ->delimiter(',');

  bool errors_all = false;
  auto* errors = with_file(app.add_subcommand("errors", "Report redexes that lack authorizations"));
  errors->add_flag("--all", errors_all, "Search every reachable state");

  cli::HarmonyOptions harm;
  std::string harm_path;
  auto* harmony = app.add_subcommand("harmony", "Compare reduction with silent transitions");
  harmony->fallthrough();
  harmony->add_option("PATH", harm_path, "A .fa file or a directory of them");
  harmony->add_option("--random", harm.random, "Also check N generated processes");
  harmony->add_option("--size", harm.size, "Largest generated process, in AST nodes")->check(CLI::PositiveNumber);
  harmony->add_option("--seed", harm.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (budget == 0) budget = floatauth::default_budget();
  cli::Report report;
  try {
    if (*parse) {
      report = cli::cmd_parse(file);
    } else if (*check) {
      report = cli::cmd_check(file);
    } else if (*reduce) {
      if (*steps_opt) red.steps = steps;
      red.budget = budget;
      report = cli::cmd_reduce(file, red);
    } else if (*step) {
      report = cli::cmd_step(file, st, json_mode);
    } else if (*lts) {
      std::optional<std::vector<std::string>> u;
      if (*uni_opt) u = universe;
      report = cli::cmd_lts(file, u);
    } else if (*errors) {
      report = cli::cmd_errors(file, errors_all, budget);
    } else if (*harmony) {
      if (!harm_path.empty()) harm.path = harm_path;
      report = cli::cmd_harmony(harm);
    }
  } catch (const std::exception& e) {
    std::cerr << "floatauth: " << e.what() << "\n";
    return 2;
  }

  if (json_mode) {
    std::cout << report.to_json() << "\n";
  } else {
    std::string out = report.to_human();
    (report.exit_code == 2 ? std::cerr : std::cout) << out;
  }
  return report.exit_code;
}
