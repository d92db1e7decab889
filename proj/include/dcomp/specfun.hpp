#pragma once

// Special functions and lower-triangular Toeplitz kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "dcomp/errors.hpp"

namespace dcomp::specfun {

inline constexpr int kMaxSeriesTerms = 10000;
inline constexpr double kSeriesStop = 1e-16;
inline constexpr int kSeriesStableTerms = 3;
inline constexpr double kLogSpaceThreshold = 500.0;

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }
inline bool is_integer(double v) { return v == std::floor(v); }

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

inline std::string series_diag(const char* name, int terms, double sum, double last) {
  std::ostringstream os;
  os << name << ": series did not converge after " << terms << " terms (partial sum " << sum
     << ", last term " << last << ")";
  return os.str();
}

// Plain Gauss series, caller guarantees |z| < 1.
inline double gauss_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  int stable = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (!std::isfinite(sum)) throw NumericalError("hyp_2f1: series overflow");
    if (std::abs(term) < kSeriesStop * std::abs(sum)) {
      if (++stable == kSeriesStableTerms) return sum;
    } else {
      stable = 0;
    }
  }
  throw NumericalError(series_diag("hyp_2f1", kMaxSeriesTerms, sum, term));
}

}  // namespace detail

struct GammaValues {
  double gamma;
  double upper;
  double lower;
  double regularized_q;
};

inline GammaValues gamma_family(double a, double x) {
  detail::require_finite(a, "a");
  detail::require_finite(x, "x");
  if (a <= 0.0) throw DomainError("gamma_family: a must be positive");
  if (x < 0.0) throw DomainError("gamma_family: x must be nonnegative");
  const double g = std::tgamma(a);
  if (!std::isfinite(g)) throw NumericalError("gamma_family: Gamma(a) overflows");
  const double q = x == 0.0 ? 1.0 : boost::math::gamma_q(a, x);
  const double p = x == 0.0 ? 0.0 : boost::math::gamma_p(a, x);
  return {g, q * g, p * g, q};
}

// Lower regularized incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(a, x);
}

// Inverse of P(a, .) by bisection, absolute tolerance tol on x.
inline double gamma_p_inverse(double a, double p, double tol = 1e-10) {
  if (!(a > 0.0)) throw DomainError("gamma_p_inverse: a must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("gamma_p_inverse: p must lie in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = std::max(1.0, a);
  while (gamma_p(a, hi) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("gamma_p_inverse: bracket overflow");
  }
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_p(a, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Inverse of Q(a, .) by bisection; stable where 1 - q rounds to 1.
inline double gamma_q_inverse(double a, double q, double tol = 1e-10) {
  if (!(a > 0.0)) throw DomainError("gamma_q_inverse: a must be positive");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("gamma_q_inverse: q must lie in [0,1]");
  if (q == 1.0) return 0.0;
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = std::max(1.0, a);
  while (boost::math::gamma_q(a, hi) > q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("gamma_q_inverse: bracket overflow");
  }
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (boost::math::gamma_q(a, mid) > q)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1.
inline double hyp_2f1(double a, double b, double c, double z) {
  detail::require_finite(a, "a");
  detail::require_finite(b, "b");
  detail::require_finite(c, "c");
  detail::require_finite(z, "z");
  if (detail::is_nonpositive_integer(c)) throw DomainError("hyp_2f1: c is a nonpositive integer");
  if (z >= 1.0) throw DomainError("hyp_2f1: argument must be below 1");
  if (z == 0.0) return 1.0;
  if (z >= -0.5) return detail::gauss_series(a, b, c, z);

  constexpr double kReciprocalSwitch = -4.0;
  if (z >= kReciprocalSwitch || detail::is_integer(b - a)) {
    // Pfaff: maps z into (0, 1) via z/(z-1).
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * detail::gauss_series(a, c - b, c, w);
  }

  const double x = -z;
  const double gc = std::tgamma(c);
  const double c1 = gc * std::tgamma(b - a) * detail::rgamma(b) * detail::rgamma(c - a);
  const double c2 = gc * std::tgamma(a - b) * detail::rgamma(a) * detail::rgamma(c - b);
  double out = 0.0;
  if (c1 != 0.0) out += c1 * std::pow(x, -a) * detail::gauss_series(a, a - c + 1.0, a - b + 1.0, 1.0 / z);
  if (c2 != 0.0) out += c2 * std::pow(x, -b) * detail::gauss_series(b, b - c + 1.0, b - a + 1.0, 1.0 / z);
  if (!std::isfinite(out)) throw NumericalError("hyp_2f1: reciprocal transformation overflow");
  return out;
}

// Generalized hypergeometric pFq.
inline double hyp_pfq(std::span<const double> a_in, std::span<const double> b_in, double z) {
  detail::require_finite(z, "z");
  for (double v : a_in) detail::require_finite(v, "upper parameter");
  for (double v : b_in) {
    detail::require_finite(v, "lower parameter");
    if (detail::is_nonpositive_integer(v)) throw DomainError("hyp_pfq: lower parameter is a nonpositive integer");
  }

  std::vector<double> a(a_in.begin(), a_in.end());
  std::vector<double> b;
  for (double v : b_in) {
    auto it = std::find(a.begin(), a.end(), v);
    if (it != a.end())
      a.erase(it);
    else
      b.push_back(v);
  }
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  const bool polynomial =
      std::any_of(a.begin(), a.end(), [](double v) { return detail::is_nonpositive_integer(v); });

  if (p == 0 && q == 0) return std::exp(z);
  if (p == q + 1 && !polynomial) {
    if (p == 1) {
      if (z >= 1.0) throw DomainError("hyp_pfq: 1F0 needs z < 1");
      return std::pow(1.0 - z, -a[0]);
    }
    if (p == 2) return hyp_2f1(a[0], a[1], b[0], z);
    if (std::abs(z) >= 1.0) throw DomainError("hyp_pfq: p = q+1 needs |z| < 1");
  }
  if (p > q + 1 && !polynomial) throw DomainError("hyp_pfq: p > q+1 diverges");
  if (p == 1 && q == 1 && z < 0.0 && !polynomial) {
    // Kummer: avoids the alternating series.
    const double bv = b[0];
    const double av = a[0];
    const std::vector<double> ka{bv - av};
    const std::vector<double> kb{bv};
    return std::exp(z) * hyp_pfq(ka, kb, -z);
  }

  double term = 1.0;
  double sum = 1.0;
  double max_term = 1.0;
  int stable = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    double ratio = z / (k + 1.0);
    for (double v : a) ratio *= v + k;
    for (double v : b) ratio /= v + k;
    term *= ratio;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (!std::isfinite(sum)) throw NumericalError("hyp_pfq: series overflow");
    if (term == 0.0) break;
    if (std::abs(term) < kSeriesStop * std::abs(sum)) {
      if (++stable == kSeriesStableTerms) break;
    } else {
      stable = 0;
    }
    if (k + 1 == kMaxSeriesTerms) throw NumericalError(detail::series_diag("hyp_pfq", kMaxSeriesTerms, sum, term));
  }
  if (max_term > 1e6 * std::abs(sum))
    throw NumericalError("hyp_pfq: cancellation in alternating series exceeds precision budget");
  return sum;
}

inline double hyp_pfq(std::initializer_list<double> a, std::initializer_list<double> b, double z) {
  return hyp_pfq(std::span<const double>(a.begin(), a.size()), std::span<const double>(b.begin(), b.size()), z);
}

// First column of an m x m lower-triangular Toeplitz matrix.
class ToeplitzFirstColumn {
 public:
  explicit ToeplitzFirstColumn(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("ToeplitzFirstColumn: dimension must be >= 1");
  }
  ToeplitzFirstColumn(std::initializer_list<double> entries) : ToeplitzFirstColumn(std::vector<double>(entries)) {}
  static ToeplitzFirstColumn zeros(std::size_t m) { return ToeplitzFirstColumn(std::vector<double>(m, 0.0)); }

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  // Dense row-major matrix, mostly for tests.
  std::vector<double> dense() const {
    const std::size_t m = size();
    std::vector<double> out(m * m, 0.0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c <= r; ++c) out[r * m + c] = entries_[r - c];
    return out;
  }

 private:
  std::vector<double> entries_;
};

inline ToeplitzFirstColumn operator+(const ToeplitzFirstColumn& x, const ToeplitzFirstColumn& y) {
  if (x.size() != y.size()) throw DomainError("Toeplitz sum: dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return ToeplitzFirstColumn(std::move(out));
}

// Product of two lower-triangular Toeplitz matrices (again Toeplitz).
inline ToeplitzFirstColumn toeplitz_product(const ToeplitzFirstColumn& x, const ToeplitzFirstColumn& y) {
  if (x.size() != y.size()) throw DomainError("toeplitz_product: dimension mismatch");
  const std::size_t m = x.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t n = 0; n < m; ++n)
    for (std::size_t i = 0; i <= n; ++i) out[n] += x[i] * y[n - i];
  return ToeplitzFirstColumn(std::move(out));
}

// First column of exp(T), via q_n = sum_{i<n} ((n-i)/n) t_{n-i} q_i.
inline ToeplitzFirstColumn ltt_exp(const ToeplitzFirstColumn& col) {
  const std::size_t m = col.size();
  for (double v : col.entries()) detail::require_finite(v, "Toeplitz entry");
  // p is the column for exp(T - t0 I); the diagonal factor is applied afterwards.
  std::vector<double> p(m, 0.0);
  p[0] = 1.0;
  for (std::size_t n = 1; n < m; ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += static_cast<double>(n - i) / static_cast<double>(n) * col[n - i] * p[i];
    p[n] = acc;
  }
  const double t0 = col[0];
  std::vector<double> q(m);
  if (std::abs(t0) <= kLogSpaceThreshold) {
    const double e = std::exp(t0);
    for (std::size_t n = 0; n < m; ++n) q[n] = e * p[n];
  } else {
    for (std::size_t n = 0; n < m; ++n)
      q[n] = p[n] == 0.0 ? 0.0 : std::copysign(std::exp(t0 + std::log(std::abs(p[n]))), p[n]);
  }
  for (double v : q)
    if (!std::isfinite(v)) throw NumericalError("ltt_exp: overflow");
  return ToeplitzFirstColumn(std::move(q));
}

// Signed sum of the column entries.
inline double first_column_sum(const ToeplitzFirstColumn& col) {
  double s = 0.0;
  for (double v : col.entries()) s += v;
  return s;
}

}  // namespace dcomp::specfun
