#pragma once

// Coverage probability and spectral efficiency of the Delaunay cooperation
// schemes at a Type I (Voronoi-vertex) UE.
//
// All distance averages use u = lambda*pi*d^2, under which the typical-UE
// distance law becomes Gamma(2, 1) and every M=1 result is free of lambda.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "dcomp/errors.hpp"
#include "dcomp/params.hpp"
#include "dcomp/quadrature.hpp"
#include "dcomp/specfun.hpp"

namespace dcomp::analytic {

using specfun::ToeplitzFirstColumn;

struct MomentMatch {
  double omega = 0.0;
  double m_raw = 0.0;
  int m = 1;
};

enum class CoverageMethod { toeplitz_general, closed_form_m1, alzer_bound };

inline const char* to_string(CoverageMethod m) {
  switch (m) {
    case CoverageMethod::toeplitz_general: return "toeplitz_general";
    case CoverageMethod::closed_form_m1: return "closed_form_m1";
    case CoverageMethod::alzer_bound: return "alzer_bound";
  }
  return "?";
}

struct CoverageResult {
  double value = 0.0;
  CoverageMethod method = CoverageMethod::toeplitz_general;
  double error = 0.0;
  std::size_t evaluations = 0;
};

enum class SeMode { exact, approx };
enum class PdfMode { exact, approx };

// ---------------------------------------------------------------------------
// Moments of T = sum of three i.i.d. Nakagami(M, M) amplitudes.

// E[|h|^n] for |h|^2 ~ Gamma(M, 1).
inline double nakagami_moment(int M, int n) {
  if (M < 1 || n < 0) throw DomainError("nakagami_moment: need M >= 1, n >= 0");
  return std::exp(std::lgamma(M + 0.5 * n) - std::lgamma(static_cast<double>(M)));
}

inline double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

inline double sum_moment(int M, int n) {
  if (M < 1 || n < 0) throw DomainError("sum_moment: need M >= 1, n >= 0");
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    double inner = 0.0;
    for (int j = 0; j <= n - k; ++j)
      inner += binomial(n - k, j) * nakagami_moment(M, j) * nakagami_moment(M, n - k - j);
    s += binomial(n, k) * nakagami_moment(M, k) * inner;
  }
  return s;
}

inline MomentMatch moment_match(int M) {
  if (M < 1) throw DomainError("moment_match: M must be >= 1");
  MomentMatch mm;
  mm.omega = sum_moment(M, 2);
  mm.m_raw = mm.omega * mm.omega / (sum_moment(M, 4) - mm.omega * mm.omega);
  mm.m = std::max(1, static_cast<int>(std::lround(mm.m_raw)));
  return mm;
}

inline MomentMatch moment_match(const ModelParams& p) {
  MomentMatch mm = moment_match(p.antennas);
  if (p.omega_override) mm.omega = *p.omega_override;
  return mm;
}

// ---------------------------------------------------------------------------
// Densities.

// Nakagami(m, Omega) approximation, or the exact series for T.
inline double sum_pdf(int M, double x, PdfMode mode, const MomentMatch* mm_in = nullptr) {
  if (x < 0.0) throw DomainError("sum_pdf: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (mode == PdfMode::approx) {
    const MomentMatch mm = mm_in ? *mm_in : moment_match(M);
    const double m = mm.m, om = mm.omega;
    return std::exp(std::log(2.0) + m * std::log(m / om) - std::lgamma(m) + (2.0 * m - 1.0) * std::log(x) - m * x * x / om);
  }
  const double Md = M;
  const double log_pre = std::log(8.0 * std::sqrt(std::numbers::pi)) + std::lgamma(2.0 * Md) - 3.0 * std::lgamma(Md) -
                         (4.0 * Md - 1.0) * std::log(2.0) - x * x;
  double sum = 0.0;
  double peak = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double nd = n;
    const double lt = std::lgamma(2 * Md + nd) + std::lgamma(4 * Md + 2 * nd) + (2 * (3 * Md + nd) - 1) * std::log(x) -
                      std::lgamma(2 * Md + nd + 0.5) - std::lgamma(6 * Md + 2 * nd) - std::lgamma(nd + 1) -
                      nd * std::log(2.0);
    const double f = specfun::hyp_pfq({2 * Md, 4 * Md + 2 * nd}, {3 * Md + nd + 0.5, 3 * Md + nd}, 0.5 * x * x);
    const double term = std::exp(log_pre + lt + std::log(f));
    sum += term;
    peak = std::max(peak, term);
    if (n > 4 && term < 1e-10 * sum && term < peak) return sum;
    if (!std::isfinite(sum)) break;
  }
  throw NumericalError("sum_pdf: exact series did not converge");
}

// Distance from a Type I UE to its cooperating BSs.
inline double distance_pdf(double lambda, double x) {
  if (!(lambda > 0.0) || x < 0.0) throw DomainError("distance_pdf: need lambda > 0, x >= 0");
  const double lp = lambda * std::numbers::pi;
  return 2.0 * lp * lp * x * x * x * std::exp(-lp * x * x);
}

// U = T^2 under the Nakagami approximation: Gamma(m, Omega/m).
inline double pdf_U(double x, const MomentMatch& mm) {
  if (x < 0.0) return 0.0;
  const double m = mm.m, b = m / mm.omega;
  if (x == 0.0) return mm.m == 1 ? b : 0.0;
  return std::exp(m * std::log(b) + (m - 1.0) * std::log(x) - b * x - std::lgamma(m));
}

inline double ccdf_U(double x, const MomentMatch& mm) {
  if (x <= 0.0) return 1.0;
  const double y = mm.m * x / mm.omega;
  double term = 1.0, s = 1.0;
  for (int k = 1; k < mm.m; ++k) {
    term *= y / k;
    s += term;
  }
  return std::exp(-y) * s;
}

// ---------------------------------------------------------------------------
// Laplace transforms of the interference.

// V4(x) = (2x/(alpha-2)) 2F1(1, 1-2/alpha; 2-2/alpha; -x)
inline double V4(double x, double alpha) {
  if (x == 0.0) return 0.0;
  const double d = 2.0 / alpha;
  return 2.0 * x / (alpha - 2.0) * specfun::hyp_2f1(1.0, 1.0 - d, 2.0 - d, -x);
}

namespace detail {

struct SchemeScale {
  double intensity;  // lambda or lambda'
  double gain;       // mean interferer gain: mu for grouped JT, 1 otherwise
  bool near_pair;    // RPS: two unmuted cooperation-set BSs at distance d
};

inline SchemeScale scale_for(SchemeId scheme, const ModelParams& p) {
  switch (scheme) {
    case SchemeId::JT: return {p.lambda_prime(), p.mu, false};
    case SchemeId::OPS: return {p.lambda, 1.0, false};
    case SchemeId::RPS: return {p.lambda, 1.0, true};
    default: throw DomainError("analytic: scheme has no Laplace transform model");
  }
}

inline void require_alpha(double alpha) {
  if (!(alpha > 2.0)) throw DomainError("path-loss exponent must exceed 2");
}

}  // namespace detail

inline double laplace_interference(SchemeId scheme, double s, double d, const ModelParams& p) {
  detail::require_alpha(p.alpha);
  if (s < 0.0 || !(d > 0.0)) throw DomainError("laplace_interference: need s >= 0, d > 0");
  const auto sc = detail::scale_for(scheme, p);
  const double x = sc.gain * s * std::pow(d, -p.alpha);
  const double area = sc.intensity * std::numbers::pi * d * d;
  double v = std::exp(-area * V4(x, p.alpha));
  if (sc.near_pair) v *= std::pow(1.0 + x, -2.0);
  return v;
}

// Taylor coefficients of ln L in the (-s)^n/n! normalisation, at argument x = gain*s*d^-alpha.
// column(A) = A * per_area + fixed, where A = intensity*pi*d^2.
struct LogLaplaceSeries {
  std::vector<double> per_area;
  std::vector<double> fixed;

  ToeplitzFirstColumn column(double area) const {
    std::vector<double> c(per_area.size());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = area * per_area[n] + fixed[n];
    return ToeplitzFirstColumn(std::move(c));
  }
};

inline LogLaplaceSeries log_laplace_series(double x, std::size_t length, double alpha, bool near_pair) {
  detail::require_alpha(alpha);
  if (length < 1) throw DomainError("log_laplace_series: length must be >= 1");
  const double d = 2.0 / alpha;
  LogLaplaceSeries s;
  s.per_area.assign(length, 0.0);
  s.fixed.assign(length, 0.0);
  s.per_area[0] = -V4(x, alpha);
  if (x > 0.0) {
    for (std::size_t n = 1; n < length; ++n) {
      const double nd = static_cast<double>(n);
      const double f = specfun::hyp_2f1(nd + 1.0, nd - d, nd + 1.0 - d, -x);
      s.per_area[n] = 2.0 / (nd * alpha - 2.0) * std::exp(nd * std::log(x) + std::log(f));
    }
  }
  if (near_pair) {
    s.fixed[0] = -2.0 * std::log1p(x);
    const double r = x / (1.0 + x);
    for (std::size_t n = 1; n < length; ++n) s.fixed[n] = 2.0 / n * std::pow(r, static_cast<double>(n));
  }
  return s;
}

// Column at Laplace argument s for distance d; ltt_exp of it gives (-s)^n/n! L^(n)(s).
inline ToeplitzFirstColumn laplace_log_column(SchemeId scheme, double s, double d, const ModelParams& p,
                                              std::size_t length) {
  const auto sc = detail::scale_for(scheme, p);
  const double x = sc.gain * s * std::pow(d, -p.alpha);
  return log_laplace_series(x, length, p.alpha, sc.near_pair).column(sc.intensity * std::numbers::pi * d * d);
}

// Laplace argument used by the coverage expression at threshold gamma.
inline double coverage_laplace_argument(SchemeId scheme, double gamma, double d, const ModelParams& p,
                                        const MomentMatch& mm) {
  const double da = std::pow(d, p.alpha);
  return scheme == SchemeId::JT ? mm.m * gamma * da / mm.omega : gamma * da;
}

inline ToeplitzFirstColumn toeplitz_coverage_column(SchemeId scheme, double gamma, double d, const ModelParams& p,
                                                    const MomentMatch& mm) {
  if (!(gamma > 0.0)) throw DomainError("toeplitz_coverage_column: gamma must be positive");
  const std::size_t len = scheme == SchemeId::JT ? static_cast<std::size_t>(mm.m) : static_cast<std::size_t>(p.antennas);
  return laplace_log_column(scheme, coverage_laplace_argument(scheme, gamma, d, p, mm), d, p, len);
}

// ---------------------------------------------------------------------------
// Coverage.

namespace detail {

// Coefficients of (sum_{k<M} x^k/k!)^n.
inline std::vector<double> truncated_exp_power(int M, int n) {
  std::vector<double> base(static_cast<std::size_t>(M));
  double f = 1.0;
  for (int k = 0; k < M; ++k) {
    if (k > 0) f *= k;
    base[k] = 1.0 / f;
  }
  std::vector<double> out{1.0};
  for (int i = 0; i < n; ++i) {
    std::vector<double> next(out.size() + base.size() - 1, 0.0);
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += out[a] * base[b];
    out.swap(next);
  }
  return out;
}

inline double clamp01(double v) {
  if (v < -1e-8 || v > 1.0 + 1e-8) throw NumericalError("coverage: value outside [0,1] beyond round-off");
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace detail

inline CoverageResult coverage_alzer_bound(double gamma, const ModelParams& p) {
  const int M = p.antennas;
  const double beta = std::pow(std::tgamma(M + 1.0), -1.0 / M);
  double v = 0.0;
  for (int k = 1; k <= M; ++k) {
    const double g = k * beta * gamma;
    const double term = binomial(M, k) * std::pow(1.0 + g, -2.0) * std::pow(1.0 + V4(g, p.alpha), -2.0);
    v += (k % 2 == 1 ? term : -term);
  }
  return {detail::clamp01(v), CoverageMethod::alzer_bound, 0.0, 0};
}

inline CoverageResult coverage_toeplitz(SchemeId scheme, double gamma, const ModelParams& p,
                                        const quad::QuadOptions& qopt = {}) {
  p.validate();
  if (gamma < 0.0) throw DomainError("coverage: gamma must be nonnegative");
  if (gamma == 0.0) return {1.0, CoverageMethod::toeplitz_general, 0.0, 0};
  const double area_ratio = scheme == SchemeId::JT ? p.lambda_prime() / p.lambda : 1.0;
  quad::QuadResult q;
  switch (scheme) {
    case SchemeId::JT: {
      const MomentMatch mm = moment_match(p);
      const double x = p.mu * mm.m * gamma / mm.omega;
      const auto ser = log_laplace_series(x, static_cast<std::size_t>(mm.m), p.alpha, false);
      q = quad::gamma2_expectation(
          [&](double u) { return specfun::first_column_sum(specfun::ltt_exp(ser.column(area_ratio * u))); }, qopt);
      break;
    }
    case SchemeId::RPS: {
      const auto ser = log_laplace_series(gamma, static_cast<std::size_t>(p.antennas), p.alpha, true);
      q = quad::gamma2_expectation([&](double u) { return specfun::first_column_sum(specfun::ltt_exp(ser.column(u))); },
                                   qopt);
      break;
    }
    case SchemeId::OPS: {
      const int M = p.antennas;
      struct Power {
        std::vector<double> weight;  // a_{n,j} j!/n^j
        LogLaplaceSeries ser;
      };
      std::vector<Power> pw;
      for (int n = 1; n <= 3; ++n) {
        Power w;
        const auto a = detail::truncated_exp_power(M, n);
        w.weight.resize(a.size());
        double fact = 1.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
          if (j > 0) fact *= static_cast<double>(j);
          w.weight[j] = a[j] * fact / std::pow(static_cast<double>(n), static_cast<double>(j));
        }
        w.ser = log_laplace_series(n * gamma, a.size(), p.alpha, false);
        pw.push_back(std::move(w));
      }
      auto moment = [&](const Power& w, double u) {
        const auto col = specfun::ltt_exp(w.ser.column(u));
        double s = 0.0;
        for (std::size_t j = 0; j < w.weight.size(); ++j) s += w.weight[j] * col[j];
        return s;
      };
      q = quad::gamma2_expectation(
          [&](double u) { return 3.0 * moment(pw[0], u) - 3.0 * moment(pw[1], u) + moment(pw[2], u); }, qopt);
      break;
    }
    default:
      throw DomainError("coverage: analytic model covers JT, OPS and RPS only");
  }
  return {detail::clamp01(q.value), CoverageMethod::toeplitz_general, q.error, q.evaluations};
}

// Single-antenna closed forms; the distance average is done analytically.
inline double coverage_closed_form_m1(SchemeId scheme, double gamma, const ModelParams& p) {
  const double a = p.alpha;
  detail::require_alpha(a);
  if (gamma < 0.0) throw DomainError("coverage_closed_form_m1: gamma must be nonnegative");
  if (gamma == 0.0) return 1.0;
  switch (scheme) {
    case SchemeId::RPS:
      return std::pow((1.0 + gamma) * (1.0 + V4(gamma, a)), -2.0);
    case SchemeId::OPS:
      return 3.0 * std::pow(1.0 + V4(gamma, a), -2.0) - 3.0 * std::pow(1.0 + V4(2.0 * gamma, a), -2.0) +
             std::pow(1.0 + V4(3.0 * gamma, a), -2.0);
    case SchemeId::JT: {
      ModelParams q = p;
      q.antennas = 1;
      const MomentMatch mm = moment_match(q);
      if (mm.m != 3) throw DomainError("coverage_closed_form_m1: closed form assumes m = 3");
      const double d = 2.0 / a;
      const double r = p.lambda_prime() / p.lambda;
      const double k = mm.m * gamma / mm.omega;
      const double x = p.mu * k;
      const double v1 = V4(x, a);
      const double v2 = -2.0 * p.mu / (a - 2.0) * specfun::hyp_2f1(2.0, 1.0 - d, 2.0 - d, -x);
      const double v3 = 2.0 * p.mu * p.mu / (a - 1.0) * specfun::hyp_2f1(3.0, 2.0 - d, 3.0 - d, -x);
      const double A = 1.0 + r * v1;
      return 1.0 / (A * A) + (-k * v2 + 0.5 * k * k * v3) * 2.0 * r / (A * A * A) +
             0.5 * k * k * v2 * v2 * 6.0 * r * r / (A * A * A * A);
    }
    default:
      throw DomainError("coverage_closed_form_m1: scheme not supported");
  }
}

inline CoverageResult coverage(SchemeId scheme, double gamma, const ModelParams& p,
                               CoverageMethod method = CoverageMethod::toeplitz_general) {
  switch (method) {
    case CoverageMethod::toeplitz_general:
      return coverage_toeplitz(scheme, gamma, p);
    case CoverageMethod::closed_form_m1:
      if (p.antennas != 1) throw DomainError("coverage: closed form needs M = 1");
      return {detail::clamp01(coverage_closed_form_m1(scheme, gamma, p)), method, 0.0, 0};
    case CoverageMethod::alzer_bound:
      if (scheme != SchemeId::RPS) throw DomainError("coverage: Alzer bound applies to RPS only");
      return coverage_alzer_bound(gamma, p);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Spectral efficiency (nats/s/Hz).

namespace detail {

// e^{-s} + s^delta * lower_gamma(1 - delta, s)
inline double hamdi_D(double s, double delta) {
  if (s == 0.0) return 1.0;
  return std::exp(-s) + std::pow(s, delta) * std::tgamma(1.0 - delta) * specfun::gamma_p(1.0 - delta, s);
}

// Mean of the largest of three Gamma(M, 1) gains: integral of 3u^2 F^-1(u) over (0, 1),
// taken in w = -ln(1 - u) so the logarithmic growth of F^-1 near u = 1 is resolved.
inline double ops_max_gain_mean(int M) {
  quad::QuadOptions o;
  o.rel_tol = 1e-9;
  auto f = [M](double w) {
    const double q = std::exp(-w);
    const double u = -std::expm1(-w);
    return 3.0 * u * u * specfun::gamma_q_inverse(M, q, 1e-12) * q;
  };
  return quad::integrate(f, 0.0, 10.0, o).value + quad::integrate(f, 10.0, 60.0, o).value;
}

// Integral of f over (0, inf) in the variable v = ln s; the integrands here decay like 1/s^2.
template <class F>
double integrate_log_scale(F&& f, const quad::QuadOptions& o) {
  auto g = [&](double v) {
    const double s = std::exp(v);
    return s * f(s);
  };
  double total = 0.0;
  for (auto [a, b] : {std::pair{-40.0, -5.0}, {-5.0, 5.0}, {5.0, 60.0}}) total += quad::integrate(g, a, b, o).value;
  return total;
}

}  // namespace detail

inline double spectral_efficiency(SchemeId scheme, const ModelParams& p, SeMode mode) {
  p.validate();
  const double delta = p.delta();
  quad::QuadOptions o;
  o.rel_tol = 1e-9;
  o.abs_tol = 1e-10;
  if (mode == SeMode::exact) {
    auto integrand = [&](double t) {
      const double g = std::expm1(t);
      if (!std::isfinite(g)) return 0.0;
      return coverage_toeplitz(scheme, g, p).value;
    };
    double v = 0.0;
    for (auto [a, b] : {std::pair{0.0, 4.0}, {4.0, 15.0}, {15.0, 40.0}, {40.0, 90.0}})
      v += quad::integrate(integrand, a, b, o).value;
    return v;
  }
  std::function<double(double)> f;
  switch (scheme) {
    case SchemeId::JT: {
      const MomentMatch mm = moment_match(p);
      const double r = p.lambda_prime() / p.lambda;
      const double k = mm.omega / p.mu;
      f = [=](double s) {
        const double D = detail::hamdi_D(s, delta);
        return -std::expm1(-s * k) / s * std::pow(1.0 + r * (D - 1.0), -2.0);
      };
      break;
    }
    case SchemeId::OPS: {
      const double N = detail::ops_max_gain_mean(p.antennas);
      f = [=](double s) { return -std::expm1(-s * N) / s * std::pow(detail::hamdi_D(s, delta), -2.0); };
      break;
    }
    case SchemeId::RPS: {
      const double M = p.antennas;
      f = [=](double s) {
        return -std::expm1(-s * M) / s * std::exp(-2.0 * s) * std::pow(detail::hamdi_D(s, delta), -2.0);
      };
      break;
    }
    default:
      throw DomainError("spectral_efficiency: analytic model covers JT, OPS and RPS only");
  }
  return detail::integrate_log_scale(f, o);
}

// ---------------------------------------------------------------------------
// Aggregate power of a Rayleigh-faded PPP at alpha = 4: a Levy law.

inline double levy_scale(double lambda) {
  const double pi = std::numbers::pi;
  return lambda * lambda * pi * pi * pi * pi / 16.0;
}

inline double levy_pdf(double lambda, double x) {
  if (!(lambda > 0.0)) throw DomainError("levy_pdf: lambda must be positive");
  if (x <= 0.0) return 0.0;
  const double pi = std::numbers::pi;
  return lambda / 4.0 * std::pow(pi / x, 1.5) * std::exp(-levy_scale(lambda) / x);
}

inline double levy_cdf(double lambda, double x) {
  if (x <= 0.0) return 0.0;
  return std::erfc(std::sqrt(levy_scale(lambda) / x));
}

// Root of d/dx ln f = -3/(2x) + c/x^2.
inline double levy_mode(double lambda) { return levy_scale(lambda) / 1.5; }

// ---------------------------------------------------------------------------
// MGF-based comparison between Delaunay JT (grouped interferers with gain mean mu)
// and three-nearest Poisson-Voronoi cooperation (three unit-mean gains per group).

struct PvComparison {
  double se_delaunay = 0.0;
  double se_pv = 0.0;
};

// 2 * integral over rho > 1 of (1 - K(y rho^-alpha)) rho, with the kernel supplied as
// its complement 1 - K to avoid cancellation at small arguments.
template <class K>
double group_exponent(double y, double alpha, K&& one_minus_kernel) {
  if (y == 0.0) return 0.0;
  quad::QuadOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 0.0;
  // x = y rho^-alpha, t = ln x: J = (2/alpha) y^delta * integral over t < ln y of (1 - K(e^t)) e^{-delta t}.
  const double delta = 2.0 / alpha;
  const double ly = std::log(y);
  auto f = [&](double t) { return one_minus_kernel(std::exp(t)) * std::exp(-delta * t); };
  const double lo = std::min(ly, 0.0) - 40.0 / (1.0 - delta);
  double v = 0.0;
  if (ly > 0.0) {
    v = quad::integrate(f, lo, 0.0, o).value + quad::integrate(f, 0.0, ly, o).value;
  } else {
    v = quad::integrate(f, lo, ly, o).value;
  }
  return 2.0 / alpha * std::pow(y, delta) * v;
}

// Per-group MGF kernels K(x) and their complements.
inline double mgf_kernel_delaunay(double x, double mu = 3.0) { return 1.0 / (1.0 + mu * x); }
inline double mgf_kernel_pv(double x) { return std::pow(1.0 + x, -3.0); }
inline double mgf_kernel_delaunay_c(double x, double mu = 3.0) { return mu * x / (1.0 + mu * x); }
inline double mgf_kernel_pv_c(double x) { return -std::expm1(-3.0 * std::log1p(x)); }

inline PvComparison pv_dyn3_se_comparison(const ModelParams& p) {
  p.validate();
  const MomentMatch mm = moment_match(p);
  const double r = p.lambda_prime() / p.lambda;
  auto se = [&](auto kernel) {
    // E_u[exp(-r u J)] = (1 + r J)^-2 for u ~ Gamma(2, 1).
    auto f = [&](double y) {
      const double one_minus_ms = -std::expm1(-mm.m * std::log1p(mm.omega * y / mm.m));
      const double J = group_exponent(y, p.alpha, kernel);
      return one_minus_ms / y * std::pow(1.0 + r * J, -2.0);
    };
    quad::QuadOptions o;
    o.rel_tol = 1e-8;
    o.abs_tol = 1e-10;
    return detail::integrate_log_scale(f, o);
  };
  PvComparison out;
  out.se_delaunay = se([&](double x) { return mgf_kernel_delaunay_c(x, p.mu); });
  out.se_pv = se([](double x) { return mgf_kernel_pv_c(x); });
  return out;
}

}  // namespace dcomp::analytic
