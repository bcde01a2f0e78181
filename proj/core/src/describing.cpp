#include "oscprof/describing.hpp"

#include <cmath>

namespace oscprof {

namespace {

bool is_integer(double v) { return v == std::nearbyint(v); }

void check_domain(double nu, double x, double y) {
  if (!(nu > 0.0)) throw PreconditionError("describing: nu must be > 0");
  if (x < 0.0 || y < 0.0)
    throw PreconditionError("describing: x and y must be non-negative");
  if (x == 0.0)
    throw PreconditionError("describing: undefined bias gain at x = 0");
  if (y > x && !is_integer(nu))
    throw PreconditionError(
        "describing: y > x drives the Hill argument negative, undefined for "
        "non-integer nu");
}

}  // namespace

DescribingPair describe_limit(Regulation reg, double nu, double r_squared, double x) {
  check_domain(nu, x, 0.0);
  const double q = std::pow(x, nu);
  const double f = reg == Regulation::Repression ? 1.0 / (1.0 + q) : q / (1.0 + q);
  double df = nu * std::pow(x, nu - 1.0) / ((1.0 + q) * (1.0 + q));
  if (reg == Regulation::Repression) df = -df;
  return {r_squared * f / x, r_squared * df};
}

DescribingPair describe(Regulation reg, double nu, double r_squared, double x,
                        double y, const QuadratureOptions& opt) {
  check_domain(nu, x, y);
  if (y < 1e-9 * std::max(1.0, x)) return describe_limit(reg, nu, r_squared, x);

  if (reg == Regulation::Repression) {
    if (nu == 2.0) {
      auto f = [](double p) { return 1.0 / (1.0 + p * p); };
      return describe_fn(f, r_squared, x, y, opt);
    }
    auto f = [nu](double p) { return hill_raw(p, nu, Regulation::Repression); };
    return describe_fn(f, r_squared, x, y, opt);
  }
  if (nu == 2.0) {
    auto f = [](double p) {
      const double q = p * p;
      return q / (1.0 + q);
    };
    return describe_fn(f, r_squared, x, y, opt);
  }
  auto f = [nu](double p) { return hill_raw(p, nu, Regulation::Activation); };
  return describe_fn(f, r_squared, x, y, opt);
}

double first_harmonic_cos(Regulation reg, double nu, double r_squared, double x,
                          double y, const QuadratureOptions& opt) {
  check_domain(nu, x, y);
  if (!(y > 0.0)) throw PreconditionError("describing: cosine component needs y > 0");

  auto accumulate = [&](int count, double offset, double& sum) {
    const double step = 2.0 * M_PI / count;
    for (int k = 0; k < count; ++k) {
      const double t = -M_PI + step * (k + offset);
      const double v = hill_raw(x + y * std::sin(t), nu, reg);
      sum += v * std::cos(t);
    }
  };

  int n = opt.initial_panels;
  double sum = 0.0;
  accumulate(n, 0.0, sum);
  double integral = (2.0 * M_PI / n) * sum;
  while (true) {
    if (n >= opt.max_panels)
      throw ConvergenceError("describing: cosine quadrature still changing at the panel cap");
    accumulate(n, 0.5, sum);
    n *= 2;
    const double next = (2.0 * M_PI / n) * sum;
    // The limit is zero by symmetry, so the convergence test needs an absolute
    // floor; |f| <= 1 bounds the integral by 2 pi, making 1.0 a safe scale.
    const bool done =
        std::abs(integral - next) <=
        opt.rel_tol * std::max({std::abs(integral), std::abs(next), 1.0});
    integral = next;
    if (done) break;
  }
  return r_squared / (M_PI * y) * integral;
}

}  // namespace oscprof
