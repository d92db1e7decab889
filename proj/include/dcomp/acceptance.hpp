#pragma once

// Numbered acceptance checks shared by the acceptance test binary and `dcomp_cli validate`.
// Each check reports what it measured and the tolerance it was held to.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <deque>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcomp/analytic.hpp"
#include "dcomp/channel.hpp"
#include "dcomp/geometry.hpp"
#include "dcomp/montecarlo.hpp"
#include "dcomp/specfun.hpp"
#include "dcomp/stats.hpp"

namespace dcomp::acceptance {

struct Check {
  std::string id;
  std::string name;
  bool passed = false;
  bool informational = false;  // reported, never gating
  std::string measured;
  std::string tolerance;
  double seconds = 0.0;
};

struct Options {
  int criterion = 0;           // 0: all
  double drop_scale = 1.0;     // multiplies every Monte Carlo sample count
  bool quick = false;          // analytic criteria 1-5 only
  double omega_scale = 1.0;    // perturbs the matched Omega in the headline JT check
  std::uint64_t seed = 42;
  double window_side = 500.0;
  int workers = 0;
  std::function<void(const Check&)> on_check;
};

inline std::string format(const Check& c) {
  std::ostringstream os;
  os << (c.informational ? "[INFO]" : (c.passed ? "[PASS]" : "[FAIL]")) << " " << std::left << std::setw(4) << c.id << " "
     << c.name << ": " << c.measured << " (tolerance: " << c.tolerance << ") [" << std::fixed << std::setprecision(1)
     << c.seconds << " s]";
  return os.str();
}

namespace detail {

constexpr SchemeId kSchemes[] = {SchemeId::JT, SchemeId::OPS, SchemeId::RPS};

inline std::string num(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

inline std::vector<double> gamma_grid_db(double lo = -10.0, double hi = 20.0, int n = 31) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

inline std::vector<double> to_linear(const std::vector<double>& db) {
  std::vector<double> g(db.size());
  for (std::size_t i = 0; i < db.size(); ++i) g[i] = std::pow(10.0, db[i] / 10.0);
  return g;
}

class Runner {
 public:
  explicit Runner(const Options& o) : opt_(o) {}

  bool wants(int criterion) const {
    if (opt_.criterion != 0 && opt_.criterion != criterion) return false;
    return !opt_.quick || criterion <= 5;
  }

  template <class F>
  void run(const std::string& id, const std::string& name, F&& body, bool informational = false) {
    Check c;
    c.id = id;
    c.name = name;
    c.informational = informational;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.passed = false;
      c.measured = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opt_.on_check) opt_.on_check(c);
    checks_.push_back(std::move(c));
  }

  int drops(int full) const { return std::max(1, static_cast<int>(std::lround(full * opt_.drop_scale))); }

  mc::SimConfig sim(SchemeId s, int M, long total_drops, geometry::UeType t = geometry::UeType::TypeI) const {
    mc::SimConfig c;
    c.params.antennas = M;
    c.window_side = opt_.window_side;
    c.scheme = s;
    c.ue_type = t;
    c.master_seed = opt_.seed;
    c.workers = opt_.workers;
    const long n = std::max(1L, std::lround(total_drops * opt_.drop_scale));
    c.drops = static_cast<int>(std::min<long>(1000, n));
    c.realizations = static_cast<int>((n + c.drops - 1) / c.drops);
    c.gamma_grid = to_linear(gamma_grid_db());
    return c;
  }

  // Coverage runs shared between criteria 1, 9 and 10.
  const mc::SimResult& coverage_run(SchemeId s, int M, geometry::UeType t = geometry::UeType::TypeI,
                                    std::optional<InterferenceMode> mode = std::nullopt) {
    for (auto& [key, res] : cache_)
      if (key.s == s && key.M == M && key.t == t && key.mode == mode) return res;
    auto c = sim(s, M, 100000, t);
    c.interference_mode = mode;
    cache_.push_back({Key{s, M, t, mode}, mc::estimate_coverage(c)});
    return cache_.back().second;
  }

  const Options& options() const { return opt_; }
  std::vector<Check>& checks() { return checks_; }

 private:
  struct Key {
    SchemeId s;
    int M;
    geometry::UeType t;
    std::optional<InterferenceMode> mode;
  };
  Options opt_;
  std::vector<Check> checks_;
  std::deque<std::pair<Key, mc::SimResult>> cache_;  // references handed out must stay valid
};

// 95% interval [lo, hi] touching the band target +- tol.
inline bool interval_meets(double lo, double hi, double target, double tol) { return hi >= target - tol && lo <= target + tol; }

// ---------------------------------------------------------------------------

inline void criterion1(Runner& R) {
  struct Target {
    SchemeId s;
    double value, tol;
  };
  const Target targets[] = {{SchemeId::JT, 2.24, 0.03}, {SchemeId::OPS, 1.03, 0.03}, {SchemeId::RPS, 0.27, 0.02}};
  const char* sub[] = {"1a", "1b", "1c"};
  for (int i = 0; i < 3; ++i) {
    const auto& t = targets[i];
    R.run(sub[i], std::string("analytic exact SE ") + to_string(t.s) + ", M=1", [&](Check& c) {
      ModelParams p;
      if (t.s == SchemeId::JT && R.options().omega_scale != 1.0)
        p.omega_override = analytic::moment_match(1).omega * R.options().omega_scale;
      const auto t0 = std::chrono::steady_clock::now();
      const double v = analytic::spectral_efficiency(t.s, p, analytic::SeMode::exact);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      c.passed = std::abs(v - t.value) <= t.tol && secs < 60.0;
      c.measured = num(v) + " nats/s/Hz in " + num(secs, 2) + " s";
      if (p.omega_override) c.measured += " (Omega perturbed to " + num(*p.omega_override, 3) + ")";
      c.tolerance = num(t.value, 2) + " +- " + num(t.tol, 2) + ", < 60 s";
    });
  }
  R.run("1d", "analytic exact SE JT, M=1, Omega=3", [&](Check& c) {
    ModelParams p;
    p.omega_override = 3.0;
    const double v3 = analytic::spectral_efficiency(SchemeId::JT, p, analytic::SeMode::exact);
    const double vm = analytic::spectral_efficiency(SchemeId::JT, ModelParams{}, analytic::SeMode::exact);
    c.measured = "Omega=3 gives " + num(v3) + ", Omega=" + num(analytic::moment_match(1).omega, 3) + " gives " + num(vm) +
                 "; 2.24 reproduced by " + (std::abs(vm - 2.24) < std::abs(v3 - 2.24) ? "the matched Omega" : "Omega=3");
    c.tolerance = "both values recorded";
    c.passed = true;
  }, true);
  if (R.options().quick) return;
  const char* msub[] = {"1e", "1f", "1g"};
  for (int i = 0; i < 3; ++i) {
    const auto& t = targets[i];
    R.run(msub[i], std::string("MC SE ") + to_string(t.s) + ", M=1", [&](Check& c) {
      const auto& r = R.coverage_run(t.s, 1);
      c.passed = interval_meets(r.se_ci_lo, r.se_ci_hi, t.value, t.tol) && r.wall_seconds <= 600.0;
      c.measured = num(r.se_mean) + " CI [" + num(r.se_ci_lo) + ", " + num(r.se_ci_hi) + "], " +
                   std::to_string(r.drops) + " drops in " + num(r.wall_seconds, 1) + " s";
      c.tolerance = "CI meets " + num(t.value, 2) + " +- " + num(t.tol, 2) + ", <= 600 s";
    });
  }
}

inline void criterion2(Runner& R) {
  R.run("2", "moment matching", [&](Check& c) {
    const auto a = analytic::moment_match(1), b = analytic::moment_match(2);
    c.passed = a.omega >= 7.65 && a.omega <= 7.75 && a.m == 3 && b.m_raw >= 5.7 && b.m_raw <= 5.9 && b.m == 6 &&
               b.omega >= 16.5 && b.omega <= 16.7;
    c.measured = "M=1: Omega=" + num(a.omega) + " m=" + std::to_string(a.m) + "; M=2: m_raw=" + num(b.m_raw) +
                 " m=" + std::to_string(b.m) + " Omega=" + num(b.omega);
    c.tolerance = "Omega1 in [7.65,7.75], m1=3, m_raw2 in [5.7,5.9], m2=6, Omega2 in [16.5,16.7]";
  });
}

inline void criterion3(Runner& R) {
  R.run("3", "lambda-invariance of M=1 coverage", [&](Check& c) {
    double worst = 0.0;
    for (auto s : kSchemes)
      for (double g : to_linear(gamma_grid_db())) {
        std::vector<double> v;
        for (double lambda : {0.005, 0.02, 0.08}) {
          ModelParams p;
          p.lambda = lambda;
          v.push_back(analytic::coverage(s, g, p).value);
        }
        worst = std::max({worst, std::abs(v[0] - v[1]), std::abs(v[2] - v[1])});
      }
    c.passed = worst <= 1e-6;
    c.measured = "max deviation " + sci(worst);
    c.tolerance = "<= 1e-6";
  });
}

inline void criterion4(Runner& R) {
  R.run("4", "closed form vs general Toeplitz path, M=1", [&](Check& c) {
    double worst = 0.0;
    ModelParams p;
    for (auto s : kSchemes)
      for (double g : to_linear(gamma_grid_db()))
        worst = std::max(worst, std::abs(analytic::coverage_closed_form_m1(s, g, p) - analytic::coverage(s, g, p).value));
    c.passed = worst <= 1e-6;
    c.measured = "max deviation " + sci(worst) + " over 3 x 31 points";
    c.tolerance = "<= 1e-6";
  });
}

inline void criterion5(Runner& R) {
  R.run("5a", "ltt_exp vs dense matrix exponential, 6x6", [&](Check& c) {
    std::mt19937_64 rng(R.options().seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> col(6);
      for (auto& v : col) v = u(rng);
      const specfun::ToeplitzFirstColumn t(col);
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(6, 6);
      for (int r = 0; r < 6; ++r)
        for (int k = 0; k <= r; ++k) A(r, k) = col[r - k];
      const Eigen::MatrixXd E = A.exp();
      const auto q = specfun::ltt_exp(t);
      for (int r = 0; r < 6; ++r) worst = std::max(worst, std::abs(q[r] - E(r, 0)) / std::max(1.0, std::abs(E(r, 0))));
    }
    c.passed = worst <= 1e-10;
    c.measured = "max deviation " + sci(worst) + " over 50 random columns";
    c.tolerance = "<= 1e-10";
  });
  R.run("5b", "recursive Laplace derivatives vs finite differences, k<=3", [&](Check& c) {
    ModelParams p;
    double worst = 0.0;
    for (auto scheme : kSchemes)
      for (double d : {3.0, 6.0, 12.0})
        for (double s : {30.0, 1000.0, 20000.0}) {
          const auto q = specfun::ltt_exp(analytic::laplace_log_column(scheme, s, d, p, 4));
          auto L = [&](double x) { return analytic::laplace_interference(scheme, x, d, p); };
          // Central stencils at h and h/2, Richardson-combined.
          auto stencil = [&](double h, double* o) {
            const double f[7] = {L(s - 3 * h), L(s - 2 * h), L(s - h), L(s), L(s + h), L(s + 2 * h), L(s + 3 * h)};
            o[0] = (-f[0] + 9 * f[1] - 45 * f[2] + 45 * f[4] - 9 * f[5] + f[6]) / (60 * h);
            o[1] = (2 * f[0] - 27 * f[1] + 270 * f[2] - 490 * f[3] + 270 * f[4] - 27 * f[5] + 2 * f[6]) / (180 * h * h);
            o[2] = (f[0] - 8 * f[1] + 13 * f[2] - 13 * f[4] + 8 * f[5] - f[6]) / (8 * h * h * h);
          };
          double a[3], b[3];
          stencil(0.02 * s, a);
          stencil(0.01 * s, b);
          const double d1 = (64 * b[0] - a[0]) / 63, d2 = (64 * b[1] - a[1]) / 63, d3 = (16 * b[2] - a[2]) / 15;
          const double fd[4] = {L(s), -s * d1, s * s / 2 * d2, -s * s * s / 6 * d3};
          for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(q[k] - fd[k]) / std::abs(fd[k]));
        }
    c.passed = worst <= 1e-4;
    c.measured = "max relative deviation " + sci(worst) + " (JT, OPS, RPS)";
    c.tolerance = "<= 1e-4";
  });
}

inline void criterion6(Runner& R) {
  R.run("6a", "empty circumcircle, 20 random 100-point sets", [&](Check& c) {
    std::mt19937_64 rng(R.options().seed);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::size_t violations = 0, triangles = 0;
    for (int set = 0; set < 20; ++set) {
      std::vector<geometry::Point2D> pts(100);
      for (auto& q : pts) q = {u(rng), u(rng)};
      const auto net = geometry::delaunay_triangulate(pts);
      for (const auto& t : net.triangles) {
        ++triangles;
        for (const auto& q : net.bs_points)
          violations += geometry::predicates::incircle(pts[t[0]], pts[t[1]], pts[t[2]], q) > 0;
      }
    }
    c.passed = violations == 0;
    c.measured = std::to_string(violations) + " violations over " + std::to_string(triangles) + " triangles";
    c.tolerance = "0";
  });
  R.run("6b", "Voronoi vertex duality (nearest three BSs)", [&](Check& c) {
    const auto w = geometry::Rect::centered_square(R.options().window_side);
    const auto net = geometry::make_network(geometry::sample_ppp(0.02, w, R.options().seed), w, 5.0 / std::sqrt(0.02));
    std::size_t bad = 0;
    for (int t : net.eligible_triangles) {
      auto n = geometry::nearest_k(net, net.circumcenters[t], 3);
      std::set<int> a(n.begin(), n.end()), b(net.triangles[t].begin(), net.triangles[t].end());
      bad += a != b;
    }
    c.passed = bad == 0;
    c.measured = std::to_string(bad) + " mismatches over " + std::to_string(net.eligible_triangles.size()) + " vertices";
    c.tolerance = "0";
  });
  R.run("6c", "Type I distance law, KS", [&](Check& c) {
    auto cfg = R.sim(SchemeId::JT, 1, 100000);
    std::vector<double> d(cfg.total_drops());
    mc::detail::for_each_drop(cfg, [&](const geometry::NetworkRealization& net, std::size_t i, std::mt19937_64& rng) {
      d[i] = geometry::place_typical_ue(net, geometry::UeType::TypeI, rng).coop.distances[0];
    });
    const double lp = cfg.params.lambda * std::numbers::pi;
    const double ks = stats::ks_one_sample(d, [&](double x) { return 1.0 - std::exp(-lp * x * x) * (1.0 + lp * x * x); });
    c.passed = ks < 0.02;
    c.measured = "KS " + num(ks) + " at " + std::to_string(d.size()) + " samples";
    c.tolerance = "< 0.02";
  });
}

inline void criterion7(Runner& R) {
  for (int M : {2, 4}) {
    R.run(M == 2 ? "7a" : "7b", "Exact18 vs Grouped19 interference law, M=" + std::to_string(M), [&](Check& c) {
      auto cfg = R.sim(SchemeId::JT, M, 20000);
      cfg.master_seed = stats::derive_seed(R.options().seed, 7, M);
      const auto a = mc::sample_quantity(mc::Quantity::I_exact18, cfg);
      const auto b = mc::sample_quantity(mc::Quantity::I_grouped19, cfg);
      const double ks = stats::ks_two_sample(a, b);
      c.passed = ks < 0.03;
      c.measured = "KS " + num(ks) + " (means " + sci(stats::mean(a)) + " vs " + sci(stats::mean(b)) + ", " +
                   std::to_string(a.size()) + " samples each)";
      c.tolerance = "< 0.03";
    });
  }
  R.run("7c", "effective coefficient independent of M (2 vs 8)", [&](Check& c) {
    std::mt19937_64 rng(R.options().seed);
    const std::size_t n = static_cast<std::size_t>(R.drops(20000));
    std::vector<double> a(n), b(n);
    for (auto& v : a) v = std::norm(channel::projected_interference_coefficient(2, rng));
    for (auto& v : b) v = std::norm(channel::projected_interference_coefficient(8, rng));
    const double ks = stats::ks_two_sample(a, b), crit = stats::ks_critical(0.01, n, n);
    c.passed = ks < crit;
    c.measured = "KS " + num(ks) + " at " + std::to_string(n) + " draws each";
    c.tolerance = "< " + num(crit) + " (1% critical value)";
  });
}

inline void criterion8(Runner& R) {
  auto cfg = R.sim(SchemeId::JT, 1, 50000);
  std::vector<double> origin;
  R.run("8a", "aggregate power at a uniform point vs Levy law", [&](Check& c) {
    origin = mc::sample_quantity(mc::Quantity::S1_origin, cfg);
    const double ks = stats::ks_one_sample(origin, [&](double x) { return analytic::levy_cdf(cfg.params.lambda, x); });
    c.passed = ks < 0.03;
    c.measured = "KS " + num(ks) + " at " + std::to_string(origin.size()) + " samples";
    c.tolerance = "< 0.03";
  });
  R.run("8b", "excess kurtosis at Type I point above uniform point", [&](Check& c) {
    if (origin.empty()) origin = mc::sample_quantity(mc::Quantity::S1_origin, cfg);
    const auto typical = mc::sample_quantity(mc::Quantity::S1_typical, cfg);
    const double ko = stats::excess_kurtosis(origin), kt = stats::excess_kurtosis(typical);
    c.passed = kt > ko;
    c.measured = "Type I " + num(kt, 1) + " vs uniform " + num(ko, 1);
    c.tolerance = "Type I strictly larger";
  });
}

inline void criterion9(Runner& R) {
  const auto db = gamma_grid_db();
  const auto lin = to_linear(db);
  for (int M : {1, 2})
    for (auto s : kSchemes) {
      const std::string id = std::string("9") + char('a' + (M - 1) * 3 + (s == SchemeId::JT ? 0 : s == SchemeId::OPS ? 1 : 2));
      R.run(id, std::string("MC vs analytic coverage ") + to_string(s) + ", M=" + std::to_string(M), [&](Check& c) {
        const auto& r = R.coverage_run(s, M);
        ModelParams p;
        p.antennas = M;
        double gap = -1.0, an_at = 0.0, mc_at = 0.0, db_at = 0.0;
        for (std::size_t i = 0; i < lin.size(); ++i) {
          const double a = analytic::coverage(s, lin[i], p).value;
          if (std::abs(r.coverage[i] - a) > gap) {
            gap = std::abs(r.coverage[i] - a);
            an_at = a;
            mc_at = r.coverage[i];
            db_at = db[i];
          }
        }
        c.passed = gap <= 0.05 && an_at <= mc_at;
        c.measured = "max gap " + num(gap) + " at " + num(db_at, 0) + " dB (analytic " + num(an_at) + ", MC " + num(mc_at) +
                     "), " + std::to_string(r.drops) + " drops, " + to_string(mc::default_mode(s));
        c.tolerance = "<= 0.05 with analytic <= MC at the max gap";
      });
    }
  R.run("9g", "JT M=1 MC with Exact18 interference vs analytic", [&](Check& c) {
    const auto& r = R.coverage_run(SchemeId::JT, 1, geometry::UeType::TypeI, InterferenceMode::Exact18);
    double gap = 0.0, at = 0.0;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      const double d = r.coverage[i] - analytic::coverage(SchemeId::JT, lin[i], ModelParams{}).value;
      if (std::abs(d) > std::abs(gap)) {
        gap = d;
        at = db[i];
      }
    }
    c.measured = "signed gap MC - analytic " + num(gap) + " at " + num(at, 0) + " dB, SE " + num(r.se_mean);
    c.tolerance = "reported only";
    c.passed = true;
  }, true);
}

inline void criterion10(Runner& R) {
  using geometry::UeType;
  R.run("10a", "coverage and SE ordering JT > OPS > RPS, M=1", [&](Check& c) {
    const auto& jt = R.coverage_run(SchemeId::JT, 1);
    const auto& ops = R.coverage_run(SchemeId::OPS, 1);
    const auto& rps = R.coverage_run(SchemeId::RPS, 1);
    auto se = [](const mc::SimResult& r, std::size_t i) {
      const double p = r.coverage[i];
      return std::sqrt(p * (1.0 - p) / r.drops);
    };
    // Smallest margin in standard errors; exact ties with zero spread only need to hold as >=.
    double worst = std::numeric_limits<double>::infinity();
    bool ties_ok = true;
    auto margin = [&](double a, double b, double sa, double sb) {
      const double sd = std::hypot(sa, sb);
      if (sd == 0.0) ties_ok = ties_ok && a >= b;
      else worst = std::min(worst, (a - b) / sd);
    };
    for (std::size_t i = 0; i < jt.gamma.size(); ++i) {
      margin(jt.coverage[i], ops.coverage[i], se(jt, i), se(ops, i));
      margin(ops.coverage[i], rps.coverage[i], se(ops, i), se(rps, i));
    }
    auto se_se = [](const mc::SimResult& r) { return (r.se_ci_hi - r.se_ci_lo) / (2 * 1.959963984540054); };
    const double s1 = (jt.se_mean - ops.se_mean) / std::hypot(se_se(jt), se_se(ops));
    const double s2 = (ops.se_mean - rps.se_mean) / std::hypot(se_se(ops), se_se(rps));
    c.passed = ties_ok && worst > 3.0 && s1 > 3.0 && s2 > 3.0;
    c.measured = "smallest coverage margin " + num(worst, 1) + " SE; SE margins " + num(s1, 1) + ", " + num(s2, 1) + " SE";
    c.tolerance = "> 3 standard errors everywhere";
  });
  const UeType types[] = {UeType::TypeI, UeType::TypeII, UeType::TypeIII};
  R.run("10b", "PV_NoCoMP coverage Type I < Type II < Type III", [&](Check& c) {
    const auto& a = R.coverage_run(SchemeId::PV_NoCoMP, 1, UeType::TypeI);
    const auto& b = R.coverage_run(SchemeId::PV_NoCoMP, 1, UeType::TypeII);
    const auto& d = R.coverage_run(SchemeId::PV_NoCoMP, 1, UeType::TypeIII);
    int bad = 0;
    for (std::size_t i = 0; i < a.gamma.size(); ++i) bad += !(a.coverage[i] < b.coverage[i] && b.coverage[i] < d.coverage[i]);
    c.passed = bad == 0;
    c.measured = std::to_string(bad) + " violating thresholds of " + std::to_string(a.gamma.size()) + "; at 0 dB: " +
                 num(a.coverage[10]) + " < " + num(b.coverage[10]) + " < " + num(d.coverage[10]);
    c.tolerance = "strict at every threshold";
  });
  R.run("10c", "Delaunay JT above PV_NoCoMP for all UE types", [&](Check& c) {
    int bad = 0;
    std::string detail;
    for (auto t : types) {
      const auto& j = R.coverage_run(SchemeId::JT, 1, t);
      const auto& n = R.coverage_run(SchemeId::PV_NoCoMP, 1, t);
      for (std::size_t i = 0; i < j.gamma.size(); ++i) bad += !(j.coverage[i] > n.coverage[i]);
      detail += std::string(" ") + geometry::to_string(t) + " " + num(j.coverage[10], 3) + "/" + num(n.coverage[10], 3);
    }
    c.passed = bad == 0;
    c.measured = std::to_string(bad) + " violations; JT/NoCoMP at 0 dB:" + detail;
    c.tolerance = "strict at every threshold";
  });
  R.run("10d", "MGF comparison: Delaunay SE above PV_Dyn3 SE (Type I)", [&](Check& c) {
    const auto r = analytic::pv_dyn3_se_comparison(ModelParams{});
    c.passed = r.se_delaunay > r.se_pv;
    c.measured = "Delaunay " + num(r.se_delaunay) + " vs PV " + num(r.se_pv);
    c.tolerance = "strictly larger";
  });
  R.run("10e", "MC: PV_Dyn3 SE >= Delaunay SE for Type II and III", [&](Check& c) {
    bool ok = true;
    std::string detail;
    for (auto t : {UeType::TypeII, UeType::TypeIII}) {
      const auto& j = R.coverage_run(SchemeId::JT, 1, t);
      const auto& d = R.coverage_run(SchemeId::PV_Dyn3, 1, t);
      ok = ok && d.se_mean >= j.se_mean;
      detail += std::string(geometry::to_string(t)) + " " + num(d.se_mean) + " vs " + num(j.se_mean) + "; ";
    }
    c.passed = ok;
    c.measured = detail + "Type I identical by construction";
    c.tolerance = "PV_Dyn3 >= Delaunay";
  });
}

}  // namespace detail

inline std::vector<Check> run(const Options& opt) {
  detail::Runner R(opt);
  if (R.wants(1)) detail::criterion1(R);
  if (R.wants(2)) detail::criterion2(R);
  if (R.wants(3)) detail::criterion3(R);
  if (R.wants(4)) detail::criterion4(R);
  if (R.wants(5)) detail::criterion5(R);
  if (R.wants(6)) detail::criterion6(R);
  if (R.wants(7)) detail::criterion7(R);
  if (R.wants(8)) detail::criterion8(R);
  if (R.wants(9)) detail::criterion9(R);
  if (R.wants(10)) detail::criterion10(R);
  return std::move(R.checks());
}

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.informational && !c.passed) return false;
  return true;
}

}  // namespace dcomp::acceptance
