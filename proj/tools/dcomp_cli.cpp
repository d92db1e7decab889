#include <CLI11.hpp>

#include <iostream>

#include "dcomp/acceptance.hpp"
#include "dcomp/cli.hpp"

namespace {

dcomp::cli::ExperimentSpec load(const std::string& config, const std::vector<std::string>& sets,
                                const std::optional<std::string>& figure) {
  std::vector<std::string> all;
  if (figure) all.push_back("figure=" + *figure);
  all.insert(all.end(), sets.begin(), sets.end());
  return dcomp::cli::parse_config(config.empty() ? std::nullopt : std::optional<std::string>(config), all);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delaunay CoMP coverage and spectral efficiency toolkit"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> sets;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config, "key=value configuration file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", sets, "Override one key, e.g. --set alpha=3.5 (repeatable)");
  };

  auto* show = app.add_subcommand("config", "Print the resolved configuration with the source of every value");
  add_common(show);

  std::string figure;
  auto* run = app.add_subcommand("run", "Reproduce one figure (fig4..fig11) or headline-se as CSV");
  run->add_option("figure", figure, "Figure id")->required()->check(CLI::IsMember(dcomp::cli::figure_ids()));
  add_common(run);

  dcomp::acceptance::Options vopt;
  vopt.drop_scale = 0.1;
  double omega_perturb = 0.0;
  auto* val = app.add_subcommand("validate", "Run the acceptance checks at reduced sample counts");
  val->add_flag("--quick", vopt.quick, "Analytic checks only (under a minute)");
  val->add_option("--scale", vopt.drop_scale, "Multiplier on Monte Carlo sample counts")->capture_default_str();
  val->add_option("--criterion", vopt.criterion, "Run one criterion (1-10)")->check(CLI::Range(0, 10));
  val->add_option("--seed", vopt.seed, "Master seed")->capture_default_str();
  val->add_option("--window", vopt.window_side, "Simulation window side")->capture_default_str();
  val->add_option("--workers", vopt.workers, "Worker threads (0: hardware concurrency)");
  val->add_option("--perturb-omega", omega_perturb, "Relative Omega perturbation for the headline JT check, e.g. 0.1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*show) {
      std::cout << dcomp::cli::echo(load(config, sets, std::nullopt));
      return 0;
    }
    if (*run) {
      const auto spec = load(config, sets, figure);
      std::cerr << dcomp::cli::echo(spec);
      const auto out = dcomp::cli::run_experiment(spec);
      for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
      std::cout << out.summary;
      return 0;
    }
    vopt.omega_scale = 1.0 + omega_perturb;
    vopt.on_check = [](const dcomp::acceptance::Check& c) { std::cout << dcomp::acceptance::format(c) << std::endl; };
    const auto checks = dcomp::acceptance::run(vopt);
    const bool ok = dcomp::acceptance::all_passed(checks);
    std::cout << (ok ? "all checks passed" : "some checks failed") << std::endl;
    return ok ? 0 : 1;
  } catch (const dcomp::ConfigError& e) {
    std::cerr << "configuration error [" << e.key() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
