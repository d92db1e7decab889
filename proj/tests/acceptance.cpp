#include <CLI11.hpp>

#include <iostream>

#include "dcomp/acceptance.hpp"

int main(int argc, char** argv) {
  dcomp::acceptance::Options opt;
  CLI::App app{"Acceptance checks, one line per check"};
  app.add_option("--criterion", opt.criterion, "Run a single criterion (1-10); 0 runs all")->check(CLI::Range(0, 10));
  app.add_option("--scale", opt.drop_scale, "Multiplier on Monte Carlo sample counts")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--window", opt.window_side, "Simulation window side");
  app.add_option("--workers", opt.workers, "Worker threads (0: hardware concurrency)");
  app.add_flag("--quick", opt.quick, "Analytic criteria only");
  CLI11_PARSE(app, argc, argv);

  opt.on_check = [](const dcomp::acceptance::Check& c) { std::cout << dcomp::acceptance::format(c) << std::endl; };
  const auto checks = dcomp::acceptance::run(opt);
  int failed = 0;
  for (const auto& c : checks) failed += !c.informational && !c.passed;
  std::cout << checks.size() << " checks, " << failed << " failed" << std::endl;
  return failed == 0 ? 0 : 1;
}
