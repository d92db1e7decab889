#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "dcomp/quadrature.hpp"
#include "dcomp/specfun.hpp"

using namespace dcomp;
using namespace dcomp::specfun;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Direct term-by-term Gauss series in long double, only for |z| < 1.
long double brute_2f1(long double a, long double b, long double c, long double z) {
  long double term = 1, sum = 1;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST(GammaFamily, ExponentialCase) {
  auto g = gamma_family(1.0, 2.0);
  EXPECT_NEAR(g.regularized_q, std::exp(-2.0), 1e-15);
  EXPECT_NEAR(g.gamma, 1.0, 1e-15);
}

TEST(GammaFamily, ZeroArgument) {
  auto g = gamma_family(3.0, 0.0);
  EXPECT_EQ(g.regularized_q, 1.0);
  EXPECT_EQ(g.lower, 0.0);
  EXPECT_NEAR(g.gamma, 2.0, 1e-14);
}

TEST(GammaFamily, MatchesQuadrature) {
  const double a = 1.5, x = 1.0;
  auto g = gamma_family(a, x);
  // t = s^2 removes the endpoint singularity.
  auto f = [a](double s) { return 2.0 * std::pow(s, 2.0 * a - 1.0) * std::exp(-s * s); };
  const double lower = quad::integrate(f, 0.0, std::sqrt(x)).value;
  const double upper = quad::integrate(f, std::sqrt(x), std::numeric_limits<double>::infinity()).value;
  EXPECT_LT(rel(g.lower, lower), 1e-9);
  EXPECT_LT(rel(g.upper, upper), 1e-9);
}

TEST(GammaFamily, Additivity) {
  for (double a : {0.5, 1.0, 2.0, 3.5}) {
    for (double x = 0.0; x <= 50.0; x += 0.5) {
      auto g = gamma_family(a, x);
      EXPECT_LT(rel(g.lower + g.upper, g.gamma), 1e-12) << a << " " << x;
      EXPECT_GE(g.regularized_q, 0.0);
      EXPECT_LE(g.regularized_q, 1.0);
    }
  }
}

TEST(GammaFamily, DomainErrors) {
  EXPECT_THROW(gamma_family(0.0, 1.0), DomainError);
  EXPECT_THROW(gamma_family(1.0, -1.0), DomainError);
  EXPECT_THROW(gamma_family(std::nan(""), 1.0), DomainError);
  EXPECT_THROW(gamma_family(1.0, INFINITY), DomainError);
}

TEST(GammaFamily, InverseRoundTrip) {
  for (double a : {1.0, 2.0, 4.0})
    for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) {
      const double x = gamma_p_inverse(a, p);
      EXPECT_NEAR(gamma_p(a, x), p, 1e-9);
    }
}

TEST(Hyp2F1, ZeroArgument) {
  EXPECT_EQ(hyp_2f1(1.3, -2.1, 0.7, 0.0), 1.0);
  EXPECT_EQ(hyp_2f1(4.0, 3.5, 4.5, 0.0), 1.0);
}

TEST(Hyp2F1, EqualParameterReduction) {
  for (double z : {-0.3, -0.9, -2.0, -7.5, -150.0})
    for (double a : {0.5, 1.0, 2.5})
      for (double b : {0.7, 2.0}) EXPECT_LT(rel(hyp_2f1(a, b, b, z), std::pow(1.0 - z, -a)), 1e-12);
}

TEST(Hyp2F1, ArctanIdentity) {
  EXPECT_NEAR(hyp_2f1(1.0, 0.5, 1.5, -1.0), std::numbers::pi / 4.0, 1e-12);
  for (double g : {0.01, 0.3, 2.0, 9.0, 50.0, 1e3, 1e5}) {
    const double s = std::sqrt(g);
    EXPECT_LT(rel(hyp_2f1(1.0, 0.5, 1.5, -g), std::atan(s) / s), 1e-11) << g;
  }
}

TEST(Hyp2F1, FrozenHighPrecisionValues) {
  struct Case {
    double a, b, c, z, expect;
  };
  const Case cases[] = {
      {1, -0.5, 0.5, -3.0, 2.8137993642342178506},
      {1, 0.5, 1.5, -10.0, 0.39987600505576613678},
      {4, 3.5, 4.5, -50.0, 2.7965181584602003489e-6},
      {2, 0.5, 1.5, -0.9, 0.66322302228072650571},
      {3, 1.5, 2.5, -200.0, 0.00020813625474222474533},
      {1, -0.5, 0.5, -1e4, 157.0796660108231381},
      {0.3, 1.7, 2.2, -2.5, 0.73160694723788249946},
      {5, 4.5, 5.5, -7.0, 0.00017412253915411310682},
  };
  for (const auto& c : cases) EXPECT_LT(rel(hyp_2f1(c.a, c.b, c.c, c.z), c.expect), 1e-10) << c.z;
}

TEST(Hyp2F1, DirectSeriesGrid) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pa(-2.0, 4.0), pc(0.3, 5.0), pz(-0.95, 0.9);
  for (int i = 0; i < 200; ++i) {
    const double a = pa(rng), b = pa(rng), c = pc(rng), z = pz(rng);
    const double ref = static_cast<double>(brute_2f1(a, b, c, z));
    EXPECT_LT(std::abs(hyp_2f1(a, b, c, z) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << a << " " << b << " " << c << " " << z;
  }
}

TEST(Hyp2F1, ContinuityAcrossBranchSwitches) {
  for (double z : {-0.5, -4.0}) {
    const double lo = hyp_2f1(1.0, -0.5, 0.5, z - 1e-9);
    const double hi = hyp_2f1(1.0, -0.5, 0.5, z + 1e-9);
    EXPECT_LT(rel(lo, hi), 1e-8);
  }
}

TEST(Hyp2F1, DomainErrors) {
  EXPECT_THROW(hyp_2f1(1.0, 1.0, -2.0, -0.5), DomainError);
  EXPECT_THROW(hyp_2f1(1.0, 1.0, 2.0, 1.5), DomainError);
}

TEST(HypPFQ, ExponentialCases) {
  for (double z : {-20.0, -1.0, 0.0, 0.5, 10.0}) {
    EXPECT_LT(rel(hyp_pfq({}, {}, z), std::exp(z)), 1e-14);
    EXPECT_LT(rel(hyp_pfq({2.5}, {2.5}, z), std::exp(z)), 1e-14);
  }
}

TEST(HypPFQ, TwoF2AgainstMultiprecisionSeries) {
  using mp = boost::multiprecision::cpp_bin_float_50;
  mp term = 1, sum = 1;
  for (int k = 0; k < 200; ++k) {
    term *= mp(2 + k) * mp(4 + k) / (mp(3.5 + k) * mp(3 + k) * mp(k + 1)) * mp(0.5);
    sum += term;
  }
  EXPECT_LT(rel(hyp_pfq({2.0, 4.0}, {3.5, 3.0}, 0.5), sum.convert_to<double>()), 1e-12);
}

TEST(HypPFQ, KummerBranch) {
  // 1F1(1; 2; z) = (e^z - 1)/z
  for (double z : {-0.5, -5.0, -30.0}) EXPECT_LT(rel(hyp_pfq({1.0}, {2.0}, z), std::expm1(z) / z), 1e-12);
}

TEST(HypPFQ, Delegation) {
  EXPECT_LT(rel(hyp_pfq({1.0, 0.5}, {1.5}, -10.0), 0.39987600505576613678), 1e-10);
  EXPECT_THROW(hyp_pfq({1.0, 1.0, 1.0}, {2.0, 2.0}, 1.5), DomainError);
  EXPECT_THROW(hyp_pfq({1.0}, {0.0}, 0.5), DomainError);
}

TEST(LttExp, SmallCases) {
  auto q1 = ltt_exp({0.7});
  EXPECT_NEAR(q1[0], std::exp(0.7), 1e-15);
  auto q2 = ltt_exp({-0.4, 1.3});
  EXPECT_NEAR(q2[0], std::exp(-0.4), 1e-15);
  EXPECT_NEAR(q2[1], 1.3 * std::exp(-0.4), 1e-15);
}

TEST(LttExp, ZeroColumnIsIdentity) {
  auto q = ltt_exp(ToeplitzFirstColumn::zeros(5));
  EXPECT_EQ(q[0], 1.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(q[i], 0.0);
}

TEST(LttExp, DenseMatrixExponentialOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(6);
    for (auto& x : v) x = u(rng);
    ToeplitzFirstColumn col(v);
    Eigen::MatrixXd a = Eigen::Map<const Eigen::Matrix<double, 6, 6, Eigen::RowMajor>>(col.dense().data());
    Eigen::MatrixXd e = a.exp();
    auto q = ltt_exp(col);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(q[i], e(i, 0), 1e-10 * std::max(1.0, std::abs(e(i, 0))));
  }
}

TEST(LttExp, Homomorphism) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> va(7), vb(7);
    for (auto& x : va) x = u(rng);
    for (auto& x : vb) x = u(rng);
    ToeplitzFirstColumn a(va), b(vb);
    auto lhs = ltt_exp(a + b);
    auto rhs = toeplitz_product(ltt_exp(a), ltt_exp(b));
    for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(lhs[i], rhs[i], 1e-9);
  }
}

TEST(LttExp, LogSpaceForLargeDiagonal) {
  auto q = ltt_exp({-720.0, 1e10, 10.0});
  EXPECT_GT(q[1], 0.0);
  EXPECT_NEAR(std::log(q[1]), -720.0 + std::log(1e10), 1e-12);
  EXPECT_EQ(ltt_exp({-800.0, 2.0})[1], 0.0);
  EXPECT_THROW(ltt_exp({800.0, 1.0}), NumericalError);
}

TEST(FirstColumnSum, Definition) {
  EXPECT_EQ(first_column_sum({1.0}), 1.0);
  auto q = ltt_exp({-0.3, 0.2});
  EXPECT_NEAR(first_column_sum(q), std::exp(-0.3) * 1.2, 1e-15);
}
