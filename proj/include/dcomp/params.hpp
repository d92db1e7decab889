#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "dcomp/errors.hpp"

namespace dcomp {

// Network and channel parameters shared by the analytic and simulation paths.
struct ModelParams {
  double lambda = 0.02;      // BS intensity per m^2
  double alpha = 4.0;        // path-loss exponent
  int antennas = 1;          // M
  double mu = 3.0;           // mean aggregated gain of an interfering group
  std::optional<double> lambda_group;  // thinned group intensity; lambda/3 when unset
  std::optional<double> omega_override;  // replaces the moment-matched Omega when set

  double lambda_prime() const { return lambda_group.value_or(lambda / 3.0); }
  double delta() const { return 2.0 / alpha; }

  void validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("intensity must be positive");
    if (!(alpha > 2.0) || !std::isfinite(alpha)) throw DomainError("path-loss exponent must exceed 2");
    if (antennas < 1) throw DomainError("antenna count must be >= 1");
    if (!(mu > 0.0)) throw DomainError("mu must be positive");
    const double lp = lambda_prime();
    if (!(lp > 0.0 && lp <= lambda)) throw DomainError("group intensity must lie in (0, lambda]");
  }
};

enum class SchemeId { JT, OPS, RPS, PV_NoCoMP, PV_Dyn3 };
enum class InterferenceMode { Exact18, Grouped19, PerBS };

inline const char* to_string(SchemeId s) {
  switch (s) {
    case SchemeId::JT: return "JT";
    case SchemeId::OPS: return "OPS";
    case SchemeId::RPS: return "RPS";
    case SchemeId::PV_NoCoMP: return "PV_NoCoMP";
    case SchemeId::PV_Dyn3: return "PV_Dyn3";
  }
  return "?";
}

inline const char* to_string(InterferenceMode m) {
  switch (m) {
    case InterferenceMode::Exact18: return "Exact18";
    case InterferenceMode::Grouped19: return "Grouped19";
    case InterferenceMode::PerBS: return "PerBS";
  }
  return "?";
}

inline SchemeId parse_scheme(const std::string& s) {
  if (s == "JT") return SchemeId::JT;
  if (s == "OPS") return SchemeId::OPS;
  if (s == "RPS") return SchemeId::RPS;
  if (s == "PV_NoCoMP") return SchemeId::PV_NoCoMP;
  if (s == "PV_Dyn3") return SchemeId::PV_Dyn3;
  throw ConfigError("scheme", "unknown scheme '" + s + "'");
}

inline InterferenceMode parse_mode(const std::string& s) {
  if (s == "Exact18") return InterferenceMode::Exact18;
  if (s == "Grouped19") return InterferenceMode::Grouped19;
  if (s == "PerBS") return InterferenceMode::PerBS;
  throw ConfigError("interference_mode", "unknown interference mode '" + s + "'");
}

}  // namespace dcomp
