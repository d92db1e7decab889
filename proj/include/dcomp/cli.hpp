#pragma once

// Experiment configuration and figure reproduction as CSV.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dcomp/analytic.hpp"
#include "dcomp/montecarlo.hpp"

namespace dcomp::cli {

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "headline-se"};
  return ids;
}

enum class Source { Default, Environment, File, Flag };

inline const char* to_string(Source s) {
  switch (s) {
    case Source::Default: return "default";
    case Source::Environment: return "env";
    case Source::File: return "config file";
    case Source::Flag: return "override";
  }
  return "?";
}

struct ExperimentSpec {
  std::string figure = "headline-se";
  ModelParams params;
  double window_side = 1e4;
  int drops = 100;         // per realization
  int realizations = 100;
  std::uint64_t seed = 42;
  int workers = 0;
  double guard_factor = 5.0;
  double partition_radius_factor = 20.0;
  std::optional<InterferenceMode> interference_mode;
  double gamma_db_min = -10.0;
  double gamma_db_max = 20.0;
  int gamma_points = 31;
  int max_antennas = 4;
  std::optional<int> bins;
  std::string output_dir = "out";
  std::map<std::string, Source> provenance;

  std::vector<double> gamma_db() const {
    std::vector<double> g(gamma_points);
    for (int i = 0; i < gamma_points; ++i)
      g[i] = gamma_points == 1 ? gamma_db_min : gamma_db_min + (gamma_db_max - gamma_db_min) * i / (gamma_points - 1);
    return g;
  }

  mc::SimConfig sim(SchemeId scheme, int antennas, geometry::UeType ue = geometry::UeType::TypeI) const {
    mc::SimConfig c;
    c.params = params;
    c.params.antennas = antennas;
    c.window_side = window_side;
    c.drops = drops;
    c.realizations = realizations;
    c.scheme = scheme;
    c.interference_mode = interference_mode;
    c.ue_type = ue;
    c.master_seed = seed;
    c.guard_factor = guard_factor;
    c.partition_radius_factor = partition_radius_factor;
    c.workers = workers;
    for (double db : gamma_db()) c.gamma_grid.push_back(std::pow(10.0, db / 10.0));
    return c;
  }
};

namespace detail {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* b = text.data();
  const char* e = b + text.size();
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ConfigError(key, "expected a number, got '" + text + "'");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
  return v;
}

struct Key {
  std::string name;
  std::function<void(ExperimentSpec&, const std::string&)> set;
  std::function<std::string(const ExperimentSpec&)> get;
};

inline const std::vector<Key>& keys() {
  using S = ExperimentSpec;
  auto dbl = [](const char* k, double S::*f) {
    return Key{k, [k, f](S& s, const std::string& v) { s.*f = parse_number<double>(k, v); },
               [f](const S& s) { return fmt(s.*f); }};
  };
  auto integer = [](const char* k, int S::*f) {
    return Key{k, [k, f](S& s, const std::string& v) { s.*f = parse_number<int>(k, v); },
               [f](const S& s) { return std::to_string(s.*f); }};
  };
  static const std::vector<Key> table{
      {"figure",
       [](S& s, const std::string& v) {
         if (std::find(figure_ids().begin(), figure_ids().end(), v) == figure_ids().end())
           throw ConfigError("figure", "unknown figure id '" + v + "'");
         s.figure = v;
       },
       [](const S& s) { return s.figure; }},
      {"lambda", [](S& s, const std::string& v) { s.params.lambda = parse_number<double>("lambda", v); },
       [](const S& s) { return fmt(s.params.lambda); }},
      {"alpha", [](S& s, const std::string& v) { s.params.alpha = parse_number<double>("alpha", v); },
       [](const S& s) { return fmt(s.params.alpha); }},
      {"antennas", [](S& s, const std::string& v) { s.params.antennas = parse_number<int>("antennas", v); },
       [](const S& s) { return std::to_string(s.params.antennas); }},
      {"mu", [](S& s, const std::string& v) { s.params.mu = parse_number<double>("mu", v); },
       [](const S& s) { return fmt(s.params.mu); }},
      {"lambda_group",
       [](S& s, const std::string& v) {
         if (v == "auto") s.params.lambda_group.reset();
         else s.params.lambda_group = parse_number<double>("lambda_group", v);
       },
       [](const S& s) { return s.params.lambda_group ? fmt(*s.params.lambda_group) : std::string("auto"); }},
      {"omega",
       [](S& s, const std::string& v) {
         if (v == "auto") s.params.omega_override.reset();
         else s.params.omega_override = parse_number<double>("omega", v);
       },
       [](const S& s) { return s.params.omega_override ? fmt(*s.params.omega_override) : std::string("auto"); }},
      dbl("window_side", &S::window_side),
      integer("drops", &S::drops),
      integer("realizations", &S::realizations),
      {"seed", [](S& s, const std::string& v) { s.seed = parse_number<std::uint64_t>("seed", v); },
       [](const S& s) { return std::to_string(s.seed); }},
      integer("workers", &S::workers),
      dbl("guard_factor", &S::guard_factor),
      dbl("partition_radius_factor", &S::partition_radius_factor),
      {"interference_mode",
       [](S& s, const std::string& v) {
         if (v == "auto") s.interference_mode.reset();
         else s.interference_mode = parse_mode(v);
       },
       [](const S& s) { return s.interference_mode ? std::string(dcomp::to_string(*s.interference_mode)) : "auto"; }},
      dbl("gamma_db_min", &S::gamma_db_min),
      dbl("gamma_db_max", &S::gamma_db_max),
      integer("gamma_points", &S::gamma_points),
      integer("max_antennas", &S::max_antennas),
      {"bins",
       [](S& s, const std::string& v) {
         if (v == "auto") s.bins.reset();
         else s.bins = parse_number<int>("bins", v);
       },
       [](const S& s) { return s.bins ? std::to_string(*s.bins) : std::string("auto"); }},
      {"output_dir", [](S& s, const std::string& v) { s.output_dir = v; }, [](const S& s) { return s.output_dir; }},
  };
  return table;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace detail

inline void set_value(ExperimentSpec& spec, const std::string& key, const std::string& value, Source src) {
  for (const auto& k : detail::keys())
    if (k.name == key) {
      k.set(spec, value);
      spec.provenance[key] = src;
      return;
    }
  throw ConfigError(key, "unknown configuration key");
}

// "key=value"
inline void apply_assignment(ExperimentSpec& spec, const std::string& line, Source src) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError(detail::trim(line), "expected key=value");
  set_value(spec, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)), src);
}

inline void validate(const ExperimentSpec& s) {
  if (!(s.params.alpha > 2.0)) throw ConfigError("alpha", "path-loss exponent must exceed 2");
  if (!(s.params.lambda > 0.0)) throw ConfigError("lambda", "intensity must be positive");
  if (s.params.antennas < 1) throw ConfigError("antennas", "antenna count must be >= 1");
  if (!(s.params.mu > 0.0)) throw ConfigError("mu", "must be positive");
  if (s.params.lambda_group && !(*s.params.lambda_group > 0.0 && *s.params.lambda_group <= s.params.lambda))
    throw ConfigError("lambda_group", "group intensity must lie in (0, lambda]");
  if (s.params.omega_override && !(*s.params.omega_override > 0.0)) throw ConfigError("omega", "must be positive");
  if (s.gamma_points < 1) throw ConfigError("gamma_points", "must be >= 1");
  if (!(s.gamma_db_max >= s.gamma_db_min)) throw ConfigError("gamma_db_max", "must not be below gamma_db_min");
  if (s.max_antennas < 1) throw ConfigError("max_antennas", "must be >= 1");
  if (s.bins && *s.bins < 1) throw ConfigError("bins", "must be >= 1");
  if (s.workers < 0) throw ConfigError("workers", "must be >= 0");
  if (!(s.guard_factor >= 0.0)) throw ConfigError("guard_factor", "must be >= 0");
  if (!(s.partition_radius_factor > 0.0)) throw ConfigError("partition_radius_factor", "must be positive");
  mc::validate(s.sim(SchemeId::JT, s.params.antennas));
}

inline ExperimentSpec default_spec() {
  ExperimentSpec s;
  for (const auto& k : detail::keys()) s.provenance[k.name] = Source::Default;
  if (const char* env = std::getenv("DCOMP_OUTPUT_DIR"); env && *env) {
    s.output_dir = env;
    s.provenance["output_dir"] = Source::Environment;
  }
  return s;
}

// Reads key=value lines; '#' starts a comment.
inline void read_config(ExperimentSpec& spec, std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (detail::trim(line).empty()) continue;
    apply_assignment(spec, line, Source::File);
  }
}

inline ExperimentSpec parse_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides = {}) {
  ExperimentSpec spec = default_spec();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("config", "cannot read '" + *path + "'");
    read_config(spec, in);
  }
  for (const auto& o : overrides) apply_assignment(spec, o, Source::Flag);
  validate(spec);
  return spec;
}

// One line per key: "key = value  (default|override|...)".
inline std::string echo(const ExperimentSpec& s) {
  std::ostringstream os;
  for (const auto& k : detail::keys()) {
    const auto it = s.provenance.find(k.name);
    os << k.name << " = " << k.get(s) << "  (" << to_string(it == s.provenance.end() ? Source::Default : it->second) << ")\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

struct ExperimentOutcome {
  std::vector<std::string> files;
  std::string summary;
};

namespace detail {

inline std::string header(const ExperimentSpec& s, const std::string& series, const std::string& sim_config) {
  std::ostringstream os;
  os << "# figure=" << s.figure << " series=" << series << "\n";
  // Results do not depend on the worker count, so it is left out.
  for (const auto& k : keys())
    if (k.name != "workers") os << "# " << k.name << "=" << k.get(s) << "\n";
  if (!sim_config.empty()) os << "# simulation: " << sim_config << "\n";
  os << "# gamma_lin = 10^(gamma_db/10)\n";
  return os.str();
}

class Writer {
 public:
  explicit Writer(const ExperimentSpec& s) : spec_(s) { std::filesystem::create_directories(s.output_dir); }

  void write(const std::string& name, const std::string& series, const std::string& sim_config, const std::string& columns,
             const std::vector<std::vector<double>>& rows, const std::vector<std::string>& labels = {}) {
    const auto path = (std::filesystem::path(spec_.output_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output_dir", "cannot write '" + path + "'");
    out << header(spec_, series, sim_config) << columns << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::string line;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (c) line += ',';
        // Label columns are spliced in after the first numeric column.
        if (c == 1 && r < labels.size()) line += labels[r] + ',';
        line += fmt(rows[r][c]);
      }
      out << line << "\n";
    }
    outcome.files.push_back(path);
  }

  ExperimentOutcome outcome;

 private:
  const ExperimentSpec& spec_;
};

inline std::string coverage_name(const std::string& fig, SchemeId s, int M, std::optional<geometry::UeType> t = std::nullopt) {
  std::string n = fig + "_" + dcomp::to_string(s) + "_M" + std::to_string(M);
  if (t) n += std::string("_") + geometry::to_string(*t);
  return n + ".csv";
}

inline void coverage_series(Writer& w, const ExperimentSpec& spec, const std::string& fig, SchemeId s, int M,
                            std::optional<geometry::UeType> t, bool analytic) {
  const auto cfg = spec.sim(s, M, t.value_or(geometry::UeType::TypeI));
  const auto r = mc::estimate_coverage(cfg);
  const auto db = spec.gamma_db();
  ModelParams p = cfg.params;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < db.size(); ++i) {
    const double a = analytic ? analytic::coverage(s, cfg.gamma_grid[i], p).value : NAN;
    rows.push_back({db[i], a, r.coverage[i], r.ci_lo[i], r.ci_hi[i]});
  }
  std::string series = std::string(dcomp::to_string(s)) + " M=" + std::to_string(M);
  if (t) series += std::string(" ") + geometry::to_string(*t);
  w.write(coverage_name(fig, s, M, t), series, r.config, "gamma_db,analytic,mc_mean,mc_ci_lo,mc_ci_hi", rows);
}

// Edges shared by every series of one density figure.
inline mc::HistogramOptions shared_bins(const std::vector<std::vector<double>>& series, const ExperimentSpec& spec,
                                        double upper_quantile, std::optional<double> lo = std::nullopt) {
  std::vector<double> pooled;
  for (const auto& s : series) pooled.insert(pooled.end(), s.begin(), s.end());
  std::sort(pooled.begin(), pooled.end());
  mc::HistogramOptions o;
  o.lo = lo.value_or(pooled.front());
  o.hi = pooled[static_cast<std::size_t>(upper_quantile * (pooled.size() - 1))];
  o.bins = spec.bins;
  if (!o.bins) o.bins = static_cast<int>(mc::make_histogram(pooled, o).density.size());
  return o;
}

inline void density_series(Writer& w, const std::string& name, const std::string& series, const std::string& sim_config,
                           const std::vector<double>& samples, const mc::HistogramOptions& bins,
                           const std::function<double(double)>& analytic_pdf) {
  const auto h = mc::make_histogram(samples, bins);
  const auto c = h.centers();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < c.size(); ++i) rows.push_back({c[i], h.density[i], analytic_pdf ? analytic_pdf(c[i]) : NAN});
  w.write(name, series + " bins=" + std::to_string(c.size()) + " samples=" + std::to_string(samples.size()), sim_config,
          "bin_center,density_mc,density_analytic", rows);
}

constexpr SchemeId kCompSchemes[] = {SchemeId::JT, SchemeId::OPS, SchemeId::RPS};
constexpr geometry::UeType kUeTypes[] = {geometry::UeType::TypeI, geometry::UeType::TypeII, geometry::UeType::TypeIII};

inline void se_table(Writer& w, const ExperimentSpec& spec, const std::string& name, int max_m, std::ostringstream& summary) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::string sim_config;
  for (int M = 1; M <= max_m; ++M)
    for (auto s : kCompSchemes) {
      ModelParams p = spec.params;
      p.antennas = M;
      const double ex = analytic::spectral_efficiency(s, p, analytic::SeMode::exact);
      const double ap = analytic::spectral_efficiency(s, p, analytic::SeMode::approx);
      const auto r = mc::estimate_se(spec.sim(s, M));
      if (sim_config.empty()) sim_config = r.config;
      rows.push_back({static_cast<double>(M), ex, ap, r.se_mean, r.se_ci_lo, r.se_ci_hi});
      labels.push_back(dcomp::to_string(s));
      summary << "M=" << M << " " << dcomp::to_string(s) << ": exact " << fmt(ex) << ", approx " << fmt(ap) << ", MC "
              << fmt(r.se_mean) << " [" << fmt(r.se_ci_lo) << ", " << fmt(r.se_ci_hi) << "]\n";
    }
  w.write(name, "spectral efficiency (nats/s/Hz)", sim_config, "M,scheme,exact,approx,mc_mean,mc_ci_lo,mc_ci_hi", rows,
          labels);
}

}  // namespace detail

inline ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  using namespace detail;
  Writer w(spec);
  std::ostringstream summary;
  const std::string& f = spec.figure;
  const int M = spec.params.antennas;

  if (f == "fig4") {
    for (int m : {1, 2}) {
      auto cfg = spec.sim(SchemeId::JT, m);
      const auto t = mc::sample_quantity(mc::Quantity::SumT, cfg);
      const auto bins = shared_bins({t}, spec, 1.0, 0.0);
      const auto mm = analytic::moment_match(m);
      for (auto mode : {analytic::PdfMode::exact, analytic::PdfMode::approx}) {
        const std::string tag = mode == analytic::PdfMode::exact ? "exact" : "approx";
        density_series(w, "fig4_sumT_M" + std::to_string(m) + "_" + tag + ".csv", "T M=" + std::to_string(m) + " " + tag,
                       describe(cfg), t, bins, [&](double x) { return analytic::sum_pdf(m, x, mode, &mm); });
      }
    }
  } else if (f == "fig5") {
    for (int m : {2, 4}) {
      auto cfg = spec.sim(SchemeId::JT, m);
      const auto a = mc::sample_quantity(mc::Quantity::I_exact18, cfg);
      const auto b = mc::sample_quantity(mc::Quantity::I_grouped19, cfg);
      const auto bins = shared_bins({a, b}, spec, 0.99, 0.0);
      density_series(w, "fig5_M" + std::to_string(m) + "_exact18.csv", "I Exact18 M=" + std::to_string(m), describe(cfg), a,
                     bins, nullptr);
      density_series(w, "fig5_M" + std::to_string(m) + "_grouped19.csv", "I Grouped19 M=" + std::to_string(m),
                     describe(cfg), b, bins, nullptr);
      summary << "M=" << m << ": KS(Exact18, Grouped19) = " << fmt(stats::ks_two_sample(a, b)) << "\n";
    }
  } else if (f == "fig6") {
    for (auto s : kCompSchemes) coverage_series(w, spec, f, s, M, std::nullopt, true);
  } else if (f == "fig7" || f == "fig8") {
    const bool s1 = f == "fig7";
    const auto cfg = spec.sim(SchemeId::JT, M);
    const auto o = mc::sample_quantity(s1 ? mc::Quantity::S1_origin : mc::Quantity::S2_origin, cfg);
    const auto t = mc::sample_quantity(s1 ? mc::Quantity::S1_typical : mc::Quantity::S2_typical, cfg);
    const auto bins = shared_bins({o, t}, spec, 0.99, 0.0);
    const std::string q = s1 ? "s1" : "s2";
    std::function<double(double)> levy;
    if (s1) levy = [&](double x) { return analytic::levy_pdf(spec.params.lambda, x); };
    density_series(w, f + "_" + q + "_origin.csv", q + " at a uniform point", describe(cfg), o, bins, levy);
    density_series(w, f + "_" + q + "_typical.csv", q + " at a Type I point", describe(cfg), t, bins, nullptr);
    summary << "excess kurtosis: uniform point " << fmt(stats::excess_kurtosis(o)) << ", Type I point "
            << fmt(stats::excess_kurtosis(t)) << "\n";
    if (s1)
      summary << "KS(uniform point, Levy) = "
              << fmt(stats::ks_one_sample(o, [&](double x) { return analytic::levy_cdf(spec.params.lambda, x); })) << "\n";
  } else if (f == "fig9") {
    se_table(w, spec, "fig9_se.csv", spec.max_antennas, summary);
  } else if (f == "fig10" || f == "fig11") {
    const SchemeId base = f == "fig10" ? SchemeId::PV_NoCoMP : SchemeId::PV_Dyn3;
    for (auto t : kUeTypes) {
      coverage_series(w, spec, f, SchemeId::JT, M, t, t == geometry::UeType::TypeI);
      coverage_series(w, spec, f, base, M, t, false);
    }
    if (f == "fig11") {
      ModelParams p = spec.params;
      p.antennas = 1;
      const auto c = analytic::pv_dyn3_se_comparison(p);
      summary << "Type I SE from the MGF comparison: Delaunay " << fmt(c.se_delaunay) << ", PV_Dyn3 " << fmt(c.se_pv) << "\n";
    }
  } else if (f == "headline-se") {
    std::ostringstream detail;
    se_table(w, spec, "headline_se.csv", 1, detail);
    ModelParams p = spec.params;
    p.antennas = 1;
    summary << "headline SE (nats/s/Hz), target vs computed exact:";
    const std::pair<SchemeId, const char*> targets[] = {{SchemeId::JT, "2.24"}, {SchemeId::OPS, "1.03"}, {SchemeId::RPS, "0.27"}};
    for (const auto& [s, target] : targets)
      summary << "  " << dcomp::to_string(s) << " " << target << " vs "
              << fmt(analytic::spectral_efficiency(s, p, analytic::SeMode::exact));
    summary << "\n" << detail.str();
  }
  w.outcome.summary = summary.str();
  return w.outcome;
}

}  // namespace dcomp::cli
