#pragma once

#include <cmath>

#include "oscprof/model.hpp"

namespace oscprof {

// Bias gain eta and first-harmonic gain xi of the scaled nonlinearity R^2 f(.)
// driven by x + y sin t:
//   eta = R^2/(2 pi x) * integral f(x + y sin t) dt
//   xi  = R^2/(pi y)   * integral f(x + y sin t) sin t dt
// xi carries the regulation sign; eta is positive for the Hill forms.
struct DescribingPair {
  double eta = 0.0;
  double xi = 0.0;
};

struct QuadratureOptions {
  int initial_panels = 2048;
  int max_panels = 1 << 20;
  double rel_tol = 1e-10;
};

// Quadrature path for y above the analytic-limit threshold; switches to
// describe_limit when y < 1e-9 * max(1, x).
DescribingPair describe(Regulation reg, double nu, double r_squared, double x,
                        double y, const QuadratureOptions& opt = {});

// Analytic y -> 0 limits: eta = R^2 f(x)/x, xi = R^2 f'(x).
DescribingPair describe_limit(Regulation reg, double nu, double r_squared, double x);

// Cosine component of the first harmonic, (R^2/pi y) * integral f cos t dt.
// Zero in exact arithmetic because f(x + y sin t) is even about t = pi/2;
// exposed so the symmetry can be asserted numerically.
double first_harmonic_cos(Regulation reg, double nu, double r_squared, double x,
                          double y, const QuadratureOptions& opt = {});

namespace detail {

// Kahan accumulator. The doubling scheme can sum millions of nodes, and the
// first-harmonic integral is a cancelling sum whose value may sit orders of
// magnitude below the individual terms; plain summation noise would then
// exceed the tolerance the convergence test applies to it.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Sums f(x + y sin t) and f(x + y sin t) sin t over `count` nodes placed at
// t = -pi + 2 pi (k + offset)/count. With offset 0 this is the periodic
// trapezoid node set; with offset 0.5 it adds the midpoints, so two calls
// accumulate the sums for the doubled node count.
template <class F>
void accumulate_harmonic_sums(F& f, double x, double y, int count, double offset,
                              CompensatedSum& sum_f, CompensatedSum& sum_fsin) {
  const double step = 2.0 * M_PI / count;
  for (int k = 0; k < count; ++k) {
    const double t = -M_PI + step * (k + offset);
    const double s = std::sin(t);
    const double v = f(x + y * s);
    if (!std::isfinite(v))
      throw ConvergenceError("describing: non-finite integrand value");
    sum_f.add(v);
    sum_fsin.add(v * s);
  }
}

inline bool rel_close(double u, double v, double tol) {
  const double scale = std::max(std::abs(u), std::abs(v));
  return scale == 0.0 || std::abs(u - v) <= tol * scale;
}

}  // namespace detail

// Core quadrature over an arbitrary scalar nonlinearity (the tests drive it
// with the identity function). Requires x > 0 and y > 0; the Hill-specific
// domain checks and the y -> 0 switch live in describe().
template <class F>
DescribingPair describe_fn(F&& f, double r_squared, double x, double y,
                           const QuadratureOptions& opt = {}) {
  if (!(x > 0.0))
    throw PreconditionError("describing: bias x must be > 0 (eta divides by x)");
  if (!(y > 0.0))
    throw PreconditionError("describing: describe_fn needs y > 0; describe() handles y = 0");

  int n = opt.initial_panels;
  detail::CompensatedSum sum_f, sum_fsin;
  detail::accumulate_harmonic_sums(f, x, y, n, 0.0, sum_f, sum_fsin);
  double int_f = (2.0 * M_PI / n) * sum_f.sum;
  double int_fsin = (2.0 * M_PI / n) * sum_fsin.sum;

  while (true) {
    if (n >= opt.max_panels)
      throw ConvergenceError("describing: quadrature still changing at the panel cap");
    detail::accumulate_harmonic_sums(f, x, y, n, 0.5, sum_f, sum_fsin);
    n *= 2;
    const double next_f = (2.0 * M_PI / n) * sum_f.sum;
    const double next_fsin = (2.0 * M_PI / n) * sum_fsin.sum;
    const bool done = detail::rel_close(int_f, next_f, opt.rel_tol) &&
                      detail::rel_close(int_fsin, next_fsin, opt.rel_tol);
    int_f = next_f;
    int_fsin = next_fsin;
    if (done) break;
  }

  DescribingPair out;
  out.eta = r_squared / (2.0 * M_PI * x) * int_f;
  out.xi = r_squared / (M_PI * y) * int_fsin;
  return out;
}

}  // namespace oscprof
