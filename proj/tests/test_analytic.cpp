#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dcomp/analytic.hpp"

using namespace dcomp;
using namespace dcomp::analytic;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr SchemeId kSchemes[] = {SchemeId::JT, SchemeId::OPS, SchemeId::RPS};

std::vector<double> db_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = std::pow(10.0, (lo + (hi - lo) * i / (n - 1)) / 10.0);
  return g;
}

// k-th derivative of f at x by central differences (k <= 3, sixth-order for k = 1, 2 and fourth-order for k = 3).
template <class F>
double central_derivative(F&& f, double x, int k, double h) {
  switch (k) {
    case 0: return f(x);
    case 1:
      return (-f(x - 3 * h) + 9 * f(x - 2 * h) - 45 * f(x - h) + 45 * f(x + h) - 9 * f(x + 2 * h) + f(x + 3 * h)) /
             (60 * h);
    case 2:
      return (2 * f(x - 3 * h) - 27 * f(x - 2 * h) + 270 * f(x - h) - 490 * f(x) + 270 * f(x + h) -
              27 * f(x + 2 * h) + 2 * f(x + 3 * h)) /
             (180 * h * h);
    case 3:
      return (f(x - 3 * h) - 8 * f(x - 2 * h) + 13 * f(x - h) - 13 * f(x + h) + 8 * f(x + 2 * h) - f(x + 3 * h)) /
             (8 * h * h * h);
  }
  return NAN;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST(Moments, NakagamiMoment) {
  EXPECT_DOUBLE_EQ(nakagami_moment(3, 0), 1.0);
  EXPECT_DOUBLE_EQ(nakagami_moment(1, 2), 1.0);
  EXPECT_NEAR(nakagami_moment(1, 1), std::sqrt(kPi) / 2.0, 1e-15);
  // Quadrature of x * 2x^{2M-1} e^{-x^2} / Gamma(M).
  for (int M : {1, 2, 4}) {
    const double q = quad::integrate(
                         [M](double x) { return x * 2.0 * std::pow(x, 2 * M - 1) * std::exp(-x * x) / std::tgamma(M); },
                         0.0, 20.0)
                         .value;
    EXPECT_NEAR(nakagami_moment(M, 1), q, 1e-10);
  }
}

TEST(Moments, SumMoment) {
  EXPECT_NEAR(sum_moment(1, 2), 3.0 + 6.0 * kPi / 4.0, 1e-12);
  EXPECT_NEAR(sum_moment(1, 1), 1.5 * std::sqrt(kPi), 1e-12);
  for (int M = 1; M <= 4; ++M) EXPECT_DOUBLE_EQ(sum_moment(M, 0), 1.0);
}

TEST(Moments, MomentMatchValues) {
  const auto m1 = moment_match(1);
  EXPECT_NEAR(m1.omega, 7.7, 0.05);
  EXPECT_EQ(m1.m, 3);
  const auto m2 = moment_match(2);
  EXPECT_NEAR(m2.m_raw, 5.79, 0.01);
  EXPECT_EQ(m2.m, 6);
  EXPECT_NEAR(m2.omega, 16.6, 0.05);
}

TEST(Moments, MomentMatchAgainstSampling) {
  std::mt19937_64 rng(31);
  std::exponential_distribution<double> e(1.0);
  const int n = 10'000'000;
  double s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double T = std::sqrt(e(rng)) + std::sqrt(e(rng)) + std::sqrt(e(rng));
    const double t2 = T * T;
    s2 += t2;
    s4 += t2 * t2;
  }
  const double om = s2 / n, m4 = s4 / n;
  EXPECT_NEAR(om * om / (m4 - om * om), moment_match(1).m_raw, 0.01 * moment_match(1).m_raw);
}

TEST(Moments, OmegaOverride) {
  ModelParams p;
  p.omega_override = 3.0;
  const auto mm = moment_match(p);
  EXPECT_EQ(mm.omega, 3.0);
  EXPECT_EQ(mm.m, 3);
}

// ---------------------------------------------------------------------------

TEST(Densities, SumPdfNormalised) {
  for (int M : {1, 2}) {
    const double a = quad::integrate([M](double x) { return sum_pdf(M, x, PdfMode::approx); }, 0.0, 40.0).value;
    EXPECT_NEAR(a, 1.0, 1e-8);
    const double e = quad::integrate([M](double x) { return sum_pdf(M, x, PdfMode::exact); }, 0.0, 15.0).value;
    EXPECT_NEAR(e, 1.0, 1e-8);
  }
}

TEST(Densities, ExactAndApproxCloseForM2) {
  double sup = 0.0, peak = 0.0;
  for (double x = 0.05; x < 9.0; x += 0.05) {
    sup = std::max(sup, std::abs(sum_pdf(2, x, PdfMode::exact) - sum_pdf(2, x, PdfMode::approx)));
    peak = std::max(peak, sum_pdf(2, x, PdfMode::exact));
  }
  EXPECT_LT(sup, 0.03 * peak);
}

TEST(Densities, ExactMatchesSampledSumM1) {
  std::mt19937_64 rng(41);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> t(1'000'000);
  for (auto& v : t) v = std::sqrt(e(rng)) + std::sqrt(e(rng)) + std::sqrt(e(rng));
  std::sort(t.begin(), t.end());
  double cdf = 0.0, ks = 0.0, x0 = 0.0;
  for (double x = 0.05; x <= 8.0; x += 0.05) {
    cdf += quad::integrate([](double y) { return sum_pdf(1, y, PdfMode::exact); }, x0, x).value;
    x0 = x;
    const double emp = static_cast<double>(std::upper_bound(t.begin(), t.end(), x) - t.begin()) / t.size();
    ks = std::max(ks, std::abs(emp - cdf));
  }
  EXPECT_LT(ks, 0.02);
}

TEST(Densities, DistancePdf) {
  const double lambda = 0.02;
  const double s = std::sqrt(1.0 / (lambda * kPi));
  const double area = quad::integrate([&](double x) { return distance_pdf(lambda, x); }, 0.0, 30 * s).value;
  EXPECT_NEAR(area, 1.0, 1e-10);
  const double m2 = quad::integrate([&](double x) { return x * x * distance_pdf(lambda, x); }, 0.0, 30 * s).value;
  EXPECT_NEAR(m2, 2.0 / (lambda * kPi), 1e-8 * m2);
}

TEST(Densities, CcdfU) {
  const auto mm = moment_match(2);
  EXPECT_EQ(ccdf_U(0.0, mm), 1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(ccdf_U(x, mm), 1.0 - specfun::gamma_p(mm.m, mm.m * x / mm.omega), 1e-12);
  }
  const double area = quad::integrate([&](double x) { return pdf_U(x, mm); }, 0.0, 200.0).value;
  EXPECT_NEAR(area, 1.0, 1e-9);
}

// ---------------------------------------------------------------------------

TEST(Laplace, OriginAndMonotone) {
  ModelParams p;
  for (auto s : kSchemes) {
    EXPECT_DOUBLE_EQ(laplace_interference(s, 0.0, 7.0, p), 1.0);
    double prev = 1.0;
    for (double x = 10.0; x < 1e6; x *= 1.7) {
      const double v = laplace_interference(s, x, 7.0, p);
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(Laplace, JointTransmissionMatchesClosedExponent) {
  ModelParams p;
  const auto mm = moment_match(p);
  const double d = 6.0, g = 1.3;
  const double s = mm.m * g * std::pow(d, p.alpha) / mm.omega;
  const double V1 = V4(p.mu * mm.m * g / mm.omega, p.alpha);
  EXPECT_NEAR(laplace_interference(SchemeId::JT, s, d, p), std::exp(-p.lambda_prime() * kPi * d * d * V1), 1e-14);
}

TEST(Laplace, V4ArctanReduction) {
  for (double g : {0.01, 0.5, 1.0, 3.0, 40.0, 1e4}) EXPECT_NEAR(V4(g, 4.0), std::sqrt(g) * std::atan(std::sqrt(g)), 1e-10 * V4(g, 4.0));
  EXPECT_NEAR(V4(1.0, 4.0), kPi / 4.0, 1e-14);
}

TEST(Laplace, RejectsSmallPathLoss) {
  ModelParams p;
  p.alpha = 2.0;
  EXPECT_THROW(laplace_interference(SchemeId::OPS, 1.0, 1.0, p), DomainError);
  EXPECT_THROW(coverage(SchemeId::JT, 1.0, p), DomainError);
}

TEST(Toeplitz, DerivativesMatchFiniteDifferences) {
  ModelParams p;
  for (auto scheme : kSchemes)
    for (double d : {4.0, 9.0})
      for (double s : {20.0, 700.0, 9000.0}) {
        const auto q = specfun::ltt_exp(laplace_log_column(scheme, s, d, p, 4));
        auto L = [&](double x) { return laplace_interference(scheme, x, d, p); };
        double fact = 1.0;
        for (int k = 0; k <= 3; ++k) {
          if (k > 0) fact *= k;
          const double fd = std::pow(-s, k) / fact * central_derivative(L, s, k, 0.02 * s);
          EXPECT_NEAR(q[k], fd, 1e-4 * std::abs(fd)) << to_string(scheme) << " d=" << d << " s=" << s << " k=" << k;
        }
      }
}

TEST(Toeplitz, SingleTermColumnIsLaplaceValue) {
  ModelParams p;
  MomentMatch mm = moment_match(p);
  mm.m = 1;
  const double d = 5.0, g = 2.0;
  const auto col = toeplitz_coverage_column(SchemeId::JT, g, d, p, mm);
  ASSERT_EQ(col.size(), 1u);
  const double s = g * std::pow(d, p.alpha) / mm.omega;
  EXPECT_NEAR(specfun::first_column_sum(specfun::ltt_exp(col)), laplace_interference(SchemeId::JT, s, d, p), 1e-14);
}

TEST(Toeplitz, VanishingThreshold) {
  ModelParams p;
  p.antennas = 2;
  const auto mm = moment_match(p);
  for (auto scheme : {SchemeId::JT, SchemeId::OPS}) {
    const auto col = toeplitz_coverage_column(scheme, 1e-12, 5.0, p, mm);
    for (std::size_t n = 0; n < col.size(); ++n) EXPECT_NEAR(col[n], 0.0, 1e-8);
    EXPECT_NEAR(specfun::first_column_sum(specfun::ltt_exp(col)), 1.0, 1e-8);
  }
}

// ---------------------------------------------------------------------------

TEST(Coverage, ClosedFormValues) {
  ModelParams p;
  EXPECT_NEAR(coverage(SchemeId::RPS, 1.0, p).value, std::pow(2.0 * (1.0 + kPi / 4.0), -2.0), 1e-12);
  EXPECT_NEAR(coverage(SchemeId::RPS, 1.0, p).value, 0.0784, 5e-5);
  EXPECT_NEAR(coverage(SchemeId::OPS, 1.0, p).value, 0.52, 0.01);
}

TEST(Coverage, ClosedFormAgreesWithGeneralPath) {
  ModelParams p;
  for (auto s : kSchemes)
    for (double g : db_grid(-10, 20, 31)) {
      const auto r = coverage(s, g, p, CoverageMethod::closed_form_m1);
      EXPECT_EQ(r.method, CoverageMethod::closed_form_m1);
      EXPECT_NEAR(r.value, coverage(s, g, p).value, 1e-6) << to_string(s) << " gamma=" << g;
    }
}

TEST(Coverage, IntensityFreeForSingleAntenna) {
  for (auto s : kSchemes)
    for (double g : db_grid(-10, 20, 7)) {
      ModelParams a, b, c;
      a.lambda = 0.005;
      c.lambda = 0.08;
      const double vb = coverage(s, g, b).value;
      EXPECT_NEAR(coverage(s, g, a).value, vb, 1e-6);
      EXPECT_NEAR(coverage(s, g, c).value, vb, 1e-6);
      EXPECT_NEAR(coverage_closed_form_m1(s, g, a), coverage_closed_form_m1(s, g, c), 1e-12);
    }
}

TEST(Coverage, ZeroThreshold) {
  ModelParams p;
  for (auto s : kSchemes) {
    EXPECT_EQ(coverage(s, 0.0, p).value, 1.0);
    EXPECT_NEAR(coverage(s, 1e-9, p).value, 1.0, 1e-6);
  }
}

TEST(Coverage, RangeMonotoneAndOrdered) {
  for (int M : {1, 2, 3}) {
    ModelParams p;
    p.antennas = M;
    std::array<double, 3> prev{1.0, 1.0, 1.0};
    for (double g : db_grid(-15, 25, 50)) {
      std::array<double, 3> v{};
      for (int k = 0; k < 3; ++k) {
        const auto r = coverage(kSchemes[k], g, p);
        v[k] = r.value;
        EXPECT_GE(v[k], 0.0);
        EXPECT_LE(v[k], 1.0);
        EXPECT_LE(v[k], prev[k] + 1e-12);
        EXPECT_GT(r.evaluations, 0u);
      }
      EXPECT_GE(v[0], v[1]) << "M=" << M << " gamma=" << g;
      EXPECT_GE(v[1], v[2]) << "M=" << M << " gamma=" << g;
      prev = v;
    }
  }
}

TEST(Coverage, AlzerBoundDominates) {
  for (int M : {2, 3, 4}) {
    ModelParams p;
    p.antennas = M;
    for (double g : db_grid(-10, 20, 16)) {
      const double bound = coverage(SchemeId::RPS, g, p, CoverageMethod::alzer_bound).value;
      EXPECT_GE(bound + 1e-12, coverage(SchemeId::RPS, g, p).value) << "M=" << M << " gamma=" << g;
    }
  }
  ModelParams p;
  EXPECT_NEAR(coverage(SchemeId::RPS, 2.0, p, CoverageMethod::alzer_bound).value, coverage(SchemeId::RPS, 2.0, p).value,
              1e-12);
}

TEST(Coverage, OpsMultiAntennaAgainstDirectExpectation) {
  // E over d of P(max of three Gamma(M) gains > gamma d^a I) with I from the PPP, computed by
  // conditioning on the Laplace argument: for M = 2, Q(2, x) = e^{-x}(1 + x).
  ModelParams p;
  p.antennas = 2;
  const double g = 1.5;
  // Reference from the closed forms of E[x^j e^{-n x}] via direct numerical differentiation of L.
  const double ref =
      quad::gamma2_expectation([&](double u) {
        const double d = std::sqrt(u / (p.lambda * kPi));
        const double da = std::pow(d, p.alpha);
        auto moment = [&](int n) {
          // E[Q^n] with Q = e^{-x}(1+x), x = g d^a I; expand (1+x)^n.
          double acc = 0.0;
          auto L = [&](double s) { return laplace_interference(SchemeId::OPS, s, d, p); };
          const double s0 = n * g * da;
          double fact = 1.0;
          for (int j = 0; j <= n; ++j) {
            if (j > 0) fact *= j;
            const double binom = std::tgamma(n + 1.0) / (fact * std::tgamma(n - j + 1.0));
            // E[x^j e^{-n x}] = (g d^a)^j (-1)^j L^(j)(n g d^a)
            const double dj = j == 0 ? L(s0) : central_derivative(L, s0, j, 0.02 * s0);
            acc += binom * std::pow(g * da, j) * std::pow(-1.0, j) * dj;
          }
          return acc;
        };
        return 3.0 * moment(1) - 3.0 * moment(2) + moment(3);
      }).value;
  EXPECT_NEAR(coverage(SchemeId::OPS, g, p).value, ref, 1e-5);
}

// ---------------------------------------------------------------------------

TEST(SpectralEfficiency, SingleAntennaTargets) {
  ModelParams p;
  EXPECT_NEAR(spectral_efficiency(SchemeId::JT, p, SeMode::exact), 2.24, 0.03);
  EXPECT_NEAR(spectral_efficiency(SchemeId::RPS, p, SeMode::exact), 0.27, 0.02);
}

TEST(SpectralEfficiency, ExactPathMatchesClosedFormIntegral) {
  ModelParams p;
  quad::QuadOptions o;
  o.rel_tol = 1e-9;
  o.abs_tol = 1e-10;
  for (auto s : kSchemes) {
    auto f = [&](double t) { return coverage_closed_form_m1(s, std::expm1(t), p); };
    double ref = 0.0;
    for (auto [a, b] : {std::pair{0.0, 4.0}, {4.0, 15.0}, {15.0, 40.0}, {40.0, 90.0}}) ref += quad::integrate(f, a, b, o).value;
    EXPECT_NEAR(spectral_efficiency(s, p, SeMode::exact), ref, 1e-7) << to_string(s);
  }
}

TEST(SpectralEfficiency, ApproximationWithinEightPercent) {
  for (int M = 1; M <= 4; ++M) {
    ModelParams p;
    p.antennas = M;
    std::array<double, 3> ex{};
    for (int k = 0; k < 3; ++k) {
      ex[k] = spectral_efficiency(kSchemes[k], p, SeMode::exact);
      const double ap = spectral_efficiency(kSchemes[k], p, SeMode::approx);
      EXPECT_LE(std::abs(ap - ex[k]) / ex[k], 0.08) << to_string(kSchemes[k]) << " M=" << M;
    }
    EXPECT_GE(ex[0], ex[1]);
    EXPECT_GE(ex[1], ex[2]);
  }
}

TEST(SpectralEfficiency, OmegaChoiceMatters) {
  ModelParams p;
  const double matched = spectral_efficiency(SchemeId::JT, p, SeMode::exact);
  p.omega_override = 3.0;
  const double three = spectral_efficiency(SchemeId::JT, p, SeMode::exact);
  EXPECT_GT(matched - three, 0.5);
}

// ---------------------------------------------------------------------------

TEST(Levy, Normalised) {
  for (double lambda : {0.005, 0.02}) {
    // x = 1/w^2 on the tail, which also absorbs the x^{-3/2} decay.
    const double head = quad::integrate([&](double x) { return levy_pdf(lambda, x); }, 0.0, 1.0).value;
    const double tail =
        quad::integrate([&](double w) { return w == 0.0 ? 0.0 : 2.0 * levy_pdf(lambda, 1.0 / (w * w)) / (w * w * w); },
                        0.0, 1.0)
            .value;
    EXPECT_NEAR(head + tail, 1.0, 1e-6);
    EXPECT_NEAR(levy_cdf(lambda, 1.0), head, 1e-9);
  }
}

TEST(Levy, ModeAgainstGridSearch) {
  const double lambda = 0.02;
  const double mode = levy_mode(lambda);
  double best = 0.0, arg = 0.0;
  for (double x = mode / 10; x < 10 * mode; x += mode * 1e-4) {
    const double v = levy_pdf(lambda, x);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  EXPECT_NEAR(arg, mode, 2e-4 * mode);
}

// ---------------------------------------------------------------------------

TEST(PvComparison, KernelOrdering) {
  for (double z = 0.01; z < 1e4; z *= 3.0)
    for (double v = 1.0; v < 200.0; v *= 2.0) {
      const double x = z * std::pow(v, -4.0);
      EXPECT_LE(mgf_kernel_delaunay_c(x), mgf_kernel_pv_c(x) * (1.0 + 1e-15));
      if (x > 1e-6) {
        EXPECT_GT(mgf_kernel_delaunay(x), mgf_kernel_pv(x));
        EXPECT_LT(mgf_kernel_delaunay_c(x), mgf_kernel_pv_c(x)) << "x=" << x;
      }
    }
  EXPECT_DOUBLE_EQ(mgf_kernel_delaunay(0.0), 1.0);
  EXPECT_DOUBLE_EQ(mgf_kernel_pv(0.0), 1.0);
}

TEST(PvComparison, GroupExponentClosedForms) {
  const double a = 4.0, delta = 0.5;
  for (double y : {1e-6, 0.1, 1.0, 30.0, 1e5}) {
    const double jd = group_exponent(y, a, [](double x) { return mgf_kernel_delaunay_c(x); });
    const double jp = group_exponent(y, a, [](double x) { return mgf_kernel_pv_c(x); });
    EXPECT_NEAR(jd, specfun::hyp_2f1(1.0, -delta, 1.0 - delta, -3.0 * y) - 1.0, 1e-8 * jd);
    EXPECT_NEAR(jp, specfun::hyp_2f1(3.0, -delta, 1.0 - delta, -y) - 1.0, 1e-8 * jp);
    EXPECT_LT(jd, jp);
  }
  EXPECT_EQ(group_exponent(0.0, a, [](double x) { return mgf_kernel_pv_c(x); }), 0.0);
}

TEST(PvComparison, DelaunayAhead) {
  ModelParams p;
  const auto r = pv_dyn3_se_comparison(p);
  EXPECT_GT(r.se_delaunay, r.se_pv);
  // The Delaunay side is the moment-matched JT model.
  EXPECT_NEAR(r.se_delaunay, spectral_efficiency(SchemeId::JT, p, SeMode::exact), 1e-5);
}
