// Headline spectral efficiencies for single-antenna BSs, analytic next to a short simulation.
//
//   headline_demo [drops]

#include <cstdio>
#include <cstdlib>

#include "dcomp/analytic.hpp"
#include "dcomp/montecarlo.hpp"

using namespace dcomp;

int main(int argc, char** argv) {
  const long drops = argc > 1 ? std::atol(argv[1]) : 20000;

  ModelParams p;
  const auto mm = analytic::moment_match(p);
  std::printf("lambda=%g alpha=%g  moment match: Omega=%.4f m=%d\n\n", p.lambda, p.alpha, mm.omega, mm.m);
  std::printf("%-4s %8s %10s %10s %22s\n", "", "target", "exact", "approx", "simulated (95% CI)");

  const struct {
    SchemeId s;
    double target;
  } rows[] = {{SchemeId::JT, 2.24}, {SchemeId::OPS, 1.03}, {SchemeId::RPS, 0.27}};
  for (const auto& r : rows) {
    mc::SimConfig c;
    c.scheme = r.s;
    c.window_side = 500.0;
    c.drops = 1000;
    c.realizations = static_cast<int>((drops + c.drops - 1) / c.drops);
    c.gamma_grid = {1.0};
    const auto sim = mc::estimate_se(c);
    std::printf("%-4s %8.2f %10.4f %10.4f %8.4f [%.4f, %.4f]\n", to_string(r.s), r.target,
                analytic::spectral_efficiency(r.s, p, analytic::SeMode::exact),
                analytic::spectral_efficiency(r.s, p, analytic::SeMode::approx), sim.se_mean, sim.se_ci_lo, sim.se_ci_hi);
  }
  std::printf("\nnats/s/Hz; coverage at 0 dB: JT %.4f, OPS %.4f, RPS %.4f\n",
              analytic::coverage(SchemeId::JT, 1.0, p).value, analytic::coverage(SchemeId::OPS, 1.0, p).value,
              analytic::coverage(SchemeId::RPS, 1.0, p).value);
  return 0;
}
