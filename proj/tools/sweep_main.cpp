#include "sweep/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for sweeping processes"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::string suite;

  auto add_common = [&](CLI::App* cmd, bool with_seed, bool with_n) {
    cmd->add_option("--scenario", scenario, "scenario JSON file")->required();
    cmd->add_option("--out", out, "output directory (default: out)");
    if (with_seed) cmd->add_option("--seed", seed, "override the scenario seed");
    if (with_n) cmd->add_option("--n", n, "override the scenario step count");
  };

  CLI::App* run = app.add_subcommand("run", "integrate a scenario and audit the trajectory");
  add_common(run, true, true);
  CLI::App* converge = app.add_subcommand("converge", "order study over the scenario's n_list");
  add_common(converge, true, false);
  CLI::App* crowd = app.add_subcommand("crowd", "crowd run with the sweeping and velocity schemes");
  add_common(crowd, true, true);
  CLI::App* field = app.add_subcommand("field", "solve the scenario room's arrival-time field");
  add_common(field, false, false);

  std::string suites;
  for (const std::string& s : sweep::verify_suites()) suites += (suites.empty() ? "" : ", ") + s;
  CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
  verify->add_option("suite", suite, "one of: " + suites)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) return sweep::cmd_run(scenario, out, seed, n, std::cout);
  if (converge->parsed()) return sweep::cmd_converge(scenario, out, seed, std::cout);
  if (crowd->parsed()) return sweep::cmd_crowd(scenario, out, seed, n, std::cout);
  if (field->parsed()) return sweep::cmd_field(scenario, out, std::cout);
  if (verify->parsed()) return sweep::cmd_verify(suite, std::cout);
  return 1;
}
