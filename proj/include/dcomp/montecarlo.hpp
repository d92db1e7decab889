#pragma once

// Drop-based simulator: fresh PPP per realization, many UE drops per realization.
//
// Every realization and drop has its own RNG stream derived from the master seed,
// and per-drop results are stored by index, so the output does not depend on the
// number of worker threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dcomp/channel.hpp"
#include "dcomp/errors.hpp"
#include "dcomp/geometry.hpp"
#include "dcomp/params.hpp"
#include "dcomp/stats.hpp"

namespace dcomp::mc {

using geometry::NetworkRealization;
using geometry::Point2D;
using geometry::UeType;

struct SimConfig {
  ModelParams params;
  double window_side = 1e4;
  int drops = 100;          // UE drops per realization
  int realizations = 100;
  SchemeId scheme = SchemeId::JT;
  std::optional<InterferenceMode> interference_mode;  // scheme default when unset
  UeType ue_type = UeType::TypeI;
  std::vector<double> gamma_grid;  // linear SIR thresholds
  std::uint64_t master_seed = 42;
  double guard_factor = 5.0;       // guard band = guard_factor / sqrt(lambda)
  double partition_radius_factor = 20.0;  // grouping radius for the grouped modes, in units of 1/sqrt(lambda)
  int workers = 0;                 // 0: hardware concurrency

  double guard_margin() const { return guard_factor / std::sqrt(params.lambda); }
  std::size_t total_drops() const { return static_cast<std::size_t>(drops) * static_cast<std::size_t>(realizations); }
};

// JT-style schemes use the grouped interference model their analysis is built on;
// single-transmitter schemes see per-BS fading.
inline InterferenceMode default_mode(SchemeId s) {
  return (s == SchemeId::JT || s == SchemeId::PV_Dyn3) ? InterferenceMode::Grouped19 : InterferenceMode::PerBS;
}

inline InterferenceMode resolved_mode(const SimConfig& c) { return c.interference_mode.value_or(default_mode(c.scheme)); }

inline void validate(const SimConfig& c) {
  try {
    c.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string(e.what()).find("path-loss") != std::string::npos ? "alpha" : "params", e.what());
  }
  if (c.drops < 1) throw ConfigError("drops", "drops must be >= 1");
  if (c.realizations < 1) throw ConfigError("realizations", "realizations must be >= 1");
  if (!(c.window_side > 0.0)) throw ConfigError("window_side", "window side must be positive");
  // Need room for at least a few cells inside the guard band.
  if (c.window_side - 2.0 * c.guard_margin() < 4.0 / std::sqrt(c.params.lambda))
    throw ConfigError("window_side", "guard band leaves no usable interior; enlarge window_side");
  for (double g : c.gamma_grid)
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("gamma_grid", "thresholds must be finite and >= 0");
}

inline std::string describe(const SimConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "lambda=" << c.params.lambda << " alpha=" << c.params.alpha << " M=" << c.params.antennas
     << " mu=" << c.params.mu << " lambda_group=" << c.params.lambda_prime() << " window_side=" << c.window_side
     << " drops=" << c.drops << " realizations=" << c.realizations << " scheme=" << to_string(c.scheme)
     << " interference_mode=" << to_string(resolved_mode(c)) << " ue_type=" << geometry::to_string(c.ue_type)
     << " guard_factor=" << c.guard_factor << " partition_radius_factor=" << c.partition_radius_factor
     << " master_seed=" << c.master_seed;
  return os.str();
}

struct SimResult {
  std::vector<double> gamma;
  std::vector<double> coverage;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
  double se_mean = 0.0;
  double se_ci_lo = 0.0;
  double se_ci_hi = 0.0;
  std::size_t drops = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string config;
  std::vector<double> sir;  // per-drop SIR in (realization, drop) order

  double coverage_half_width(std::size_t i) const { return 0.5 * (ci_hi[i] - ci_lo[i]); }
};

enum class Quantity { SumT, I_exact18, I_grouped19, S1_origin, S1_typical, S2_origin, S2_typical };

inline const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::SumT: return "SumT";
    case Quantity::I_exact18: return "I_exact18";
    case Quantity::I_grouped19: return "I_grouped19";
    case Quantity::S1_origin: return "S1_origin";
    case Quantity::S1_typical: return "S1_typical";
    case Quantity::S2_origin: return "S2_origin";
    case Quantity::S2_typical: return "S2_typical";
  }
  return "?";
}

struct HistogramOptions {
  std::optional<int> bins;  // Freedman-Diaconis when unset
  std::optional<double> lo, hi;
  int max_bins = 400;
};

struct Histogram {
  std::vector<double> edges;    // bins + 1 entries
  std::vector<double> density;  // normalised by the total sample count
  std::vector<double> samples;  // raw samples in drop order
  std::string bin_rule;

  std::vector<double> centers() const {
    std::vector<double> c(density.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (edges[i] + edges[i + 1]);
    return c;
  }
};

namespace detail {

inline constexpr std::uint64_t kStreamNetwork = 1;
inline constexpr std::uint64_t kStreamDrop = 2;

inline int resolve_workers(int w) {
  if (w > 0) return w;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

// Runs work(i) for i in [0, n) on a small pool; the first exception is rethrown.
template <class Work>
void parallel_for(std::size_t n, int workers, Work&& work) {
  const int nw = std::min<int>(resolve_workers(workers), static_cast<int>(std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  if (nw <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

inline NetworkRealization build_network(const SimConfig& c, std::size_t r) {
  const auto w = geometry::Rect::centered_square(c.window_side);
  auto pts = geometry::sample_ppp(c.params.lambda, w, stats::derive_seed(c.master_seed, kStreamNetwork, r));
  return geometry::make_network(std::move(pts), w, c.guard_margin());
}

inline std::mt19937_64 drop_rng(const SimConfig& c, std::size_t r, std::size_t i) {
  return std::mt19937_64(stats::derive_seed(c.master_seed, kStreamDrop, r * static_cast<std::size_t>(c.drops) + i));
}

// Visits every (realization, drop) with its own network reference and RNG.
template <class DropFn>
void for_each_drop(const SimConfig& c, DropFn&& fn) {
  parallel_for(static_cast<std::size_t>(c.realizations), c.workers, [&](std::size_t r) {
    const NetworkRealization net = build_network(c, r);
    for (std::size_t i = 0; i < static_cast<std::size_t>(c.drops); ++i) {
      auto rng = drop_rng(c, r, i);
      fn(net, r * static_cast<std::size_t>(c.drops) + i, rng);
    }
  });
}

inline double aggregate_power(const NetworkRealization& net, Point2D ue, double alpha, std::mt19937_64& rng,
                              const std::array<int, 3>* skip) {
  std::exponential_distribution<double> g(1.0);
  double s = 0.0;
  for (std::size_t k = 0; k < net.bs_points.size(); ++k) {
    if (skip && std::find(skip->begin(), skip->end(), static_cast<int>(k)) != skip->end()) continue;
    s += channel::path_gain_d2(geometry::dist2(ue, net.bs_points[k]), alpha) * g(rng);
  }
  return s;
}

inline Point2D uniform_interior_point(const NetworkRealization& net, std::mt19937_64& rng) {
  const auto in = net.interior();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {in.x0 + u(rng) * in.width(), in.y0 + u(rng) * in.height()};
}

}  // namespace detail

// One SIR sample for the configured scheme.
inline double drop_sir(const SimConfig& c, const NetworkRealization& net, std::mt19937_64& rng) {
  const auto mode = resolved_mode(c);
  channel::InterferenceOptions io;
  io.partition_radius = c.partition_radius_factor / std::sqrt(c.params.lambda);
  switch (c.scheme) {
    case SchemeId::JT:
    case SchemeId::OPS:
    case SchemeId::RPS: {
      const auto pl = geometry::place_typical_ue(net, c.ue_type, rng);
      int serving = 0;
      if (c.scheme == SchemeId::RPS) serving = std::uniform_int_distribution<int>(0, 2)(rng);
      return channel::sir_sample(c.scheme, pl.ue, net, pl.coop, c.params, rng, mode, serving, io).sir;
    }
    case SchemeId::PV_NoCoMP: {
      const Point2D ue = geometry::place_voronoi_ue(net, c.ue_type, rng);
      const auto n = geometry::nearest_k(net, ue, 3);
      const auto coop = geometry::make_coop(net, ue, {n[0], n[1], n[2]});
      return channel::sir_sample(c.scheme, ue, net, coop, c.params, rng, mode, 0, io).sir;
    }
    case SchemeId::PV_Dyn3: {
      const auto pl = geometry::place_typical_ue(net, c.ue_type, rng);
      const auto n = geometry::nearest_k(net, pl.ue, 3);
      const auto coop = geometry::make_coop(net, pl.ue, {n[0], n[1], n[2]});
      return channel::sir_sample(c.scheme, pl.ue, net, coop, c.params, rng, mode, 0, io).sir;
    }
  }
  return 0.0;
}

inline std::vector<double> simulate_sir(const SimConfig& c) {
  validate(c);
  std::vector<double> sir(c.total_drops());
  detail::for_each_drop(c, [&](const NetworkRealization& net, std::size_t idx, std::mt19937_64& rng) {
    sir[idx] = drop_sir(c, net, rng);
  });
  return sir;
}

// Coverage per threshold and mean ln(1 + SIR), with 95% normal-approximation intervals.
inline SimResult summarize(const SimConfig& c, std::vector<double> sir, double wall_seconds) {
  SimResult r;
  r.gamma = c.gamma_grid;
  r.drops = sir.size();
  r.seed = c.master_seed;
  r.config = describe(c);
  r.wall_seconds = wall_seconds;
  if (sir.empty()) throw ConfigError("drops", "no drop survived the guard band");
  const double n = static_cast<double>(sir.size());
  constexpr double z = 1.959963984540054;
  for (double g : c.gamma_grid) {
    const double p = static_cast<double>(std::count_if(sir.begin(), sir.end(), [g](double s) { return s > g; })) / n;
    const double hw = z * std::sqrt(p * (1.0 - p) / n);
    r.coverage.push_back(p);
    r.ci_lo.push_back(std::max(0.0, p - hw));
    r.ci_hi.push_back(std::min(1.0, p + hw));
  }
  std::vector<double> se(sir.size());
  for (std::size_t i = 0; i < sir.size(); ++i) se[i] = std::log1p(sir[i]);
  r.se_mean = stats::mean(se);
  const double hw = z * std::sqrt(stats::variance(se) / n);
  r.se_ci_lo = r.se_mean - hw;
  r.se_ci_hi = r.se_mean + hw;
  r.sir = std::move(sir);
  return r;
}

inline SimResult estimate_coverage(const SimConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  auto sir = simulate_sir(c);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return summarize(c, std::move(sir), wall);
}

inline SimResult estimate_se(const SimConfig& c) { return estimate_coverage(c); }

inline SimResult run_baseline(const SimConfig& c) {
  if (c.scheme != SchemeId::PV_NoCoMP && c.scheme != SchemeId::PV_Dyn3)
    throw ConfigError("scheme", "run_baseline expects PV_NoCoMP or PV_Dyn3");
  return estimate_coverage(c);
}

inline Histogram make_histogram(std::vector<double> samples, const HistogramOptions& opt = {}) {
  Histogram h;
  if (samples.empty()) return h;
  std::vector<double> s = samples;
  std::sort(s.begin(), s.end());
  const double lo = opt.lo.value_or(s.front());
  const double hi = opt.hi.value_or(s.back());
  if (!(hi > lo)) throw DomainError("make_histogram: empty range");
  int bins = 0;
  if (opt.bins) {
    bins = *opt.bins;
    h.bin_rule = "fixed";
  } else {
    const auto q = [&](double p) { return s[static_cast<std::size_t>(p * (s.size() - 1))]; };
    const double iqr = q(0.75) - q(0.25);
    const double width = 2.0 * iqr * std::pow(static_cast<double>(s.size()), -1.0 / 3.0);
    bins = width > 0.0 ? static_cast<int>(std::ceil((hi - lo) / width)) : 1;
    h.bin_rule = "freedman-diaconis";
  }
  bins = std::clamp(bins, 1, opt.max_bins);
  const double w = (hi - lo) / bins;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + w * i;
  h.density.assign(bins, 0.0);
  const double unit = 1.0 / (static_cast<double>(samples.size()) * w);
  for (double v : samples) {
    if (v < lo || v > hi) continue;
    const int b = std::min(bins - 1, static_cast<int>((v - lo) / w));
    h.density[b] += unit;
  }
  h.samples = std::move(samples);
  return h;
}

inline std::vector<double> sample_quantity(Quantity q, const SimConfig& c) {
  validate(c);
  std::vector<double> out(c.total_drops());
  const double alpha = c.params.alpha;
  if (q == Quantity::SumT) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::mt19937_64 rng(stats::derive_seed(c.master_seed, detail::kStreamDrop, i));
      double t = 0.0;
      for (int k = 0; k < 3; ++k) t += std::sqrt(channel::norm2(channel::draw_channel(c.params.antennas, rng)));
      out[i] = t;
    }
    return out;
  }
  channel::InterferenceOptions io;
  io.partition_radius = c.partition_radius_factor / std::sqrt(c.params.lambda);
  detail::for_each_drop(c, [&](const NetworkRealization& net, std::size_t idx, std::mt19937_64& rng) {
    switch (q) {
      case Quantity::I_exact18:
      case Quantity::I_grouped19: {
        const auto pl = geometry::place_typical_ue(net, UeType::TypeI, rng);
        const auto mode = q == Quantity::I_exact18 ? InterferenceMode::Exact18 : InterferenceMode::Grouped19;
        out[idx] = channel::interference_power(mode, SchemeId::JT, pl.ue, net, pl.coop, alpha, rng, 0, io);
        break;
      }
      case Quantity::S1_origin:
      case Quantity::S2_origin: {
        const Point2D ue = detail::uniform_interior_point(net, rng);
        if (q == Quantity::S1_origin) {
          out[idx] = detail::aggregate_power(net, ue, alpha, rng, nullptr);
        } else {
          const auto cs = geometry::coop_set_for(ue, net);
          out[idx] = detail::aggregate_power(net, ue, alpha, rng, &cs.bs_indices);
        }
        break;
      }
      case Quantity::S1_typical:
      case Quantity::S2_typical: {
        const auto pl = geometry::place_typical_ue(net, UeType::TypeI, rng);
        out[idx] = detail::aggregate_power(net, pl.ue, alpha, rng, q == Quantity::S2_typical ? &pl.coop.bs_indices : nullptr);
        break;
      }
      case Quantity::SumT:
        break;
    }
  });
  return out;
}

inline Histogram empirical_pdf(Quantity q, const SimConfig& c, const HistogramOptions& opt = {}) {
  return make_histogram(sample_quantity(q, c), opt);
}

}  // namespace dcomp::mc
