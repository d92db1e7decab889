#pragma once

// Fading, precoding and per-drop SIR evaluation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "dcomp/errors.hpp"
#include "dcomp/geometry.hpp"
#include "dcomp/params.hpp"

namespace dcomp::channel {

using geometry::CoopSet;
using geometry::NetworkRealization;
using geometry::Point2D;
using ChannelVector = std::vector<std::complex<double>>;

inline double norm2(const ChannelVector& h) {
  double s = 0.0;
  for (const auto& c : h) s += std::norm(c);
  return s;
}

template <class Rng>
std::complex<double> standard_complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

template <class Rng>
ChannelVector draw_channel(int M, Rng& rng) {
  if (M < 1) throw DomainError("draw_channel: M must be >= 1");
  ChannelVector h(static_cast<std::size_t>(M));
  for (auto& c : h) c = standard_complex_gaussian(rng);
  return h;
}

inline ChannelVector draw_channel(int M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_channel(M, rng);
}

// h_{k,0}^H w_k collapses to a single CN(0,1) scalar because w_k is independent of h_{k,0}.
template <class Rng>
std::complex<double> effective_interference_coefficient(Rng& rng) {
  return standard_complex_gaussian(rng);
}

inline std::complex<double> effective_interference_coefficient(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return effective_interference_coefficient(rng);
}

// Same quantity with the M-vectors materialised: h0^H (hk/|hk|).
template <class Rng>
std::complex<double> projected_interference_coefficient(int M, Rng& rng) {
  const ChannelVector h0 = draw_channel(M, rng);
  const ChannelVector hk = draw_channel(M, rng);
  const double nk = std::sqrt(norm2(hk));
  std::complex<double> s = 0.0;
  for (int i = 0; i < M; ++i) s += std::conj(h0[i]) * hk[i] / nk;
  return s;
}

inline double path_gain(double d, double alpha) {
  if (alpha == 4.0) {
    const double d2 = d * d;
    return 1.0 / (d2 * d2);
  }
  return std::pow(d, -alpha);
}

inline double path_gain_d2(double d2, double alpha) {
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}

// Index in the cooperation set of the BS an OPS scheme would pick.
inline int ops_select(const CoopSet& coop, std::span<const ChannelVector> channels, double alpha) {
  int best = 0;
  double bv = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double v = path_gain(coop.distances[i], alpha) * norm2(channels[i]);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

// serving: cooperation-set index of the single transmitter (RPS, PV_NoCoMP).
inline double desired_power(SchemeId scheme, const CoopSet& coop, std::span<const ChannelVector> channels,
                            double alpha, int serving = 0) {
  if (channels.size() != 3) throw DomainError("desired_power: need three channel vectors");
  for (double d : coop.distances)
    if (!(d > 0.0)) throw DomainError("desired_power: UE co-located with a BS (zero distance)");
  switch (scheme) {
    case SchemeId::JT:
    case SchemeId::PV_Dyn3: {
      double amp = 0.0;
      for (int i = 0; i < 3; ++i) amp += std::pow(coop.distances[i], -0.5 * alpha) * std::sqrt(norm2(channels[i]));
      return amp * amp;
    }
    case SchemeId::OPS: {
      const int i = ops_select(coop, channels, alpha);
      return path_gain(coop.distances[i], alpha) * norm2(channels[i]);
    }
    case SchemeId::RPS:
    case SchemeId::PV_NoCoMP:
      return path_gain(coop.distances[serving], alpha) * norm2(channels[serving]);
  }
  return 0.0;
}

struct InterferenceOptions {
  // Triangles with centroid beyond this distance are not grouped (their BSs stay singletons).
  double partition_radius = std::numeric_limits<double>::infinity();
};

// BSs that do not interfere with the UE for the given scheme.
inline std::vector<int> excluded_set(SchemeId scheme, const CoopSet& coop, int serving) {
  switch (scheme) {
    case SchemeId::JT:
    case SchemeId::OPS:
    case SchemeId::PV_Dyn3:
      return {coop.bs_indices[0], coop.bs_indices[1], coop.bs_indices[2]};
    case SchemeId::RPS:
    case SchemeId::PV_NoCoMP:
      return {coop.bs_indices[serving]};
  }
  return {};
}

// One interfering group, coherent sum over its members: |sum_k d_k^{-alpha/2} c_k|^2.
inline double exact_group_power(const std::array<double, 3>& d, const std::array<std::complex<double>, 3>& c,
                                double alpha) {
  std::complex<double> s = 0.0;
  for (int i = 0; i < 3; ++i) s += std::pow(d[i], -0.5 * alpha) * c[i];
  return std::norm(s);
}

// Same group collapsed onto one representative distance.
inline double grouped_group_power(double d, const std::array<std::complex<double>, 3>& c, double alpha) {
  return path_gain(d, alpha) * std::norm(c[0] + c[1] + c[2]);
}

template <class Rng>
double interference_power(InterferenceMode mode, SchemeId scheme, Point2D ue, const NetworkRealization& net,
                          const CoopSet& coop, double alpha, Rng& rng, int serving = 0,
                          const InterferenceOptions& opt = {}) {
  const std::vector<int> excluded = excluded_set(scheme, coop, serving);
  const auto& P = net.bs_points;
  double total = 0.0;
  if (mode == InterferenceMode::PerBS) {
    std::exponential_distribution<double> g(1.0);
    for (std::size_t k = 0; k < P.size(); ++k) {
      if (std::find(excluded.begin(), excluded.end(), static_cast<int>(k)) != excluded.end()) continue;
      total += path_gain_d2(geometry::dist2(ue, P[k]), alpha) * g(rng);
    }
    return total;
  }
  const auto groups = geometry::partition_interferers(net, ue, excluded, opt.partition_radius);
  for (const auto& tr : groups.triples) {
    std::array<std::complex<double>, 3> c;
    for (auto& v : c) v = effective_interference_coefficient(rng);
    if (mode == InterferenceMode::Exact18) {
      total += exact_group_power({geometry::dist(ue, P[tr[0]]), geometry::dist(ue, P[tr[1]]), geometry::dist(ue, P[tr[2]])},
                                 c, alpha);
    } else {
      const Point2D cen{(P[tr[0]].x + P[tr[1]].x + P[tr[2]].x) / 3.0, (P[tr[0]].y + P[tr[1]].y + P[tr[2]].y) / 3.0};
      total += grouped_group_power(geometry::dist(ue, cen), c, alpha);
    }
  }
  for (int k : groups.singles)
    total += path_gain_d2(geometry::dist2(ue, P[k]), alpha) * std::norm(effective_interference_coefficient(rng));
  return total;
}

struct SirDraw {
  double sir = 0.0;
  double desired = 0.0;
  double interference = 0.0;
  int serving = -1;
};

// One SIR draw: channels to the cooperation set, then interference. For RPS and
// PV_NoCoMP the serving index must be fixed by the caller.
template <class Rng>
SirDraw sir_sample(SchemeId scheme, Point2D ue, const NetworkRealization& net, const CoopSet& coop,
                   const ModelParams& params, Rng& rng, InterferenceMode mode, int serving = 0,
                   const InterferenceOptions& opt = {}) {
  std::array<ChannelVector, 3> h;
  for (auto& v : h) v = draw_channel(params.antennas, rng);
  SirDraw out;
  out.desired = desired_power(scheme, coop, h, params.alpha, serving);
  out.serving = scheme == SchemeId::OPS ? ops_select(coop, h, params.alpha) : serving;
  out.interference = interference_power(mode, scheme, ue, net, coop, params.alpha, rng, serving, opt);
  if (!(out.interference > 0.0)) throw DomainError("sir_sample: no interferer (guard band too small?)");
  out.sir = out.desired / out.interference;
  return out;
}

}  // namespace dcomp::channel
