#pragma once

// Thin wrapper over Boost's adaptive Gauss-Kronrod rule that also reports
// diagnostics and throws when the error estimate is unacceptable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dcomp/errors.hpp"

namespace dcomp::quad {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  unsigned max_depth = 18;
  // Failure threshold relative to the requested tolerance.
  double slack = 100.0;
};

// Adaptive integral of f over [a, b]; b may be +infinity.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  std::size_t evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(counted, a, b, opt.max_depth,
                                                                                  opt.rel_tol, &err, &l1);
  if (!std::isfinite(v) || err > opt.slack * std::max(opt.rel_tol * l1, opt.abs_tol)) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] did not converge: value " << v << ", error estimate " << err
       << ", L1 " << l1 << ", evaluations " << evals;
    throw NumericalError(os.str());
  }
  return {v, err, evals};
}

// E[g(U)] for U ~ Gamma(2, 1), i.e. integral of u e^{-u} g(u) over (0, inf).
// The substitution u = lambda*pi*d^2 turns every typical-distance average into this.
template <class G>
QuadResult gamma2_expectation(G&& g, const QuadOptions& opt = {}) {
  // u e^{-u} < 1e-18 past u = 50; the per-distance terms are bounded.
  constexpr double kUpper = 50.0;
  QuadResult lo = integrate([&](double u) { return u * std::exp(-u) * g(u); }, 0.0, 8.0, opt);
  QuadResult hi = integrate([&](double u) { return u * std::exp(-u) * g(u); }, 8.0, kUpper, opt);
  return {lo.value + hi.value, lo.error + hi.error, lo.evaluations + hi.evaluations};
}

}  // namespace dcomp::quad
