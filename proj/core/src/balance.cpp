#include "oscprof/balance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace oscprof {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_params(const DimensionlessParams& p) {
  if (p.n_genes < 1) throw PreconditionError("frequency solver: n_genes must be >= 1");
  if (!(p.Q > 0.0 && p.Q <= 1.0))
    throw PreconditionError("frequency solver: Q must lie in (0, 1]");
  if (!(p.T_A > 0.0)) throw PreconditionError("frequency solver: T_A must be > 0");
  if (!(p.tau >= 0.0)) throw PreconditionError("frequency solver: tau must be >= 0");
}

// Fixed-point right-hand side in the cancellation-free form. The two branches
// are algebraically identical; picking by the sign of cot keeps the sum free
// of subtraction between nearly equal terms.
double fixed_point_rhs(double theta, double q) {
  const double c = std::cos(theta) / std::sin(theta);
  const double s = std::sqrt(c * c + q * q);
  if (c >= 0.0) return 1.0 / (s + c);
  return (s - c) / (q * q);
}

double wrap_pi(double x) {
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

CycleGeometry cycle_geometry(const Network& net) {
  net.validate();
  const int n = net.size();
  const double tau = net.mean_delay();
  CycleGeometry g;
  g.Z.resize(n);
  g.delta_tau.resize(n);
  for (int k = 0; k < n; ++k) {
    const GeneStage& downstream = net.stages[(k + 1) % n];
    g.Z[k] = downstream.regulation == Regulation::Repression ? 1 : 0;
    g.delta_tau[k] = downstream.tau_r + net.stages[k].tau_p - tau;
  }
  return g;
}

double solve_omega_tilde_no_delay(int n_genes, double q) {
  if (n_genes < 2)
    throw PreconditionError(
        "frequency solver: a single gene without delay has no oscillatory "
        "fixed point (cot(pi) diverges)");
  if (!(q > 0.0 && q <= 1.0))
    throw PreconditionError("frequency solver: Q must lie in (0, 1]");
  return fixed_point_rhs(kPi / n_genes, q);
}

double solve_omega_tilde(int n_genes, double q, double tau_tilde) {
  if (n_genes < 1) throw PreconditionError("frequency solver: n_genes must be >= 1");
  if (!(q > 0.0 && q <= 1.0))
    throw PreconditionError("frequency solver: Q must lie in (0, 1]");
  if (!(tau_tilde >= 0.0))
    throw PreconditionError("frequency solver: tau_tilde must be >= 0");
  if (tau_tilde == 0.0) return solve_omega_tilde_no_delay(n_genes, q);

  // g(w) = w - rhs(w) is strictly increasing on the bracket: rhs decreases as
  // theta = pi/N - w tau_tilde shrinks toward 0. The upper end stays a hair
  // below the cot singularity.
  auto g = [&](double w) {
    return w - fixed_point_rhs(kPi / n_genes - w * tau_tilde, q);
  };
  double lo = 0.0;
  double hi = kPi / (n_genes * tau_tilde) * (1.0 - 1e-12);
  if (!(g(hi) > 0.0))
    throw ConvergenceError("frequency solver: no sign change on the bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_frequency(const DimensionlessParams& params) {
  check_params(params);
  if (params.tau == 0.0) return solve_frequency_no_delay(params);
  return solve_omega_tilde(params.n_genes, params.Q, params.tau_tilde) / params.T_A;
}

double solve_frequency_no_delay(const DimensionlessParams& params) {
  check_params(params);
  return solve_omega_tilde_no_delay(params.n_genes, params.Q) / params.T_A;
}

double solve_frequency_heterogeneous(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     const std::vector<double>& tau_r,
                                     const std::vector<double>& tau_p) {
  const size_t n = a.size();
  if (n == 0 || b.size() != n || tau_r.size() != n || tau_p.size() != n)
    throw PreconditionError("heterogeneous frequency solver: inconsistent sizes");
  double total_delay = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!(a[i] > 0.0 && b[i] > 0.0))
      throw PreconditionError("heterogeneous frequency solver: rates must be > 0");
    if (!(tau_r[i] >= 0.0 && tau_p[i] >= 0.0))
      throw PreconditionError("heterogeneous frequency solver: delays must be >= 0");
    total_delay += tau_r[i] + tau_p[i];
  }
  if (n == 1 && total_delay == 0.0)
    throw PreconditionError(
        "heterogeneous frequency solver: one stage without delay never "
        "accumulates pi of phase lag");

  // Total phase lag around the loop; strictly increasing from 0.
  auto lag = [&](double w) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i)
      s += w * (tau_r[i] + tau_p[i]) + std::atan(w / a[i]) + std::atan(w / b[i]);
    return s - kPi;
  };

  double hi = 1.0;
  int doublings = 0;
  while (lag(hi) < 0.0) {
    hi *= 2.0;
    if (++doublings > 2000)
      throw ConvergenceError("heterogeneous frequency solver: bracket search failed");
  }
  double lo = hi > 1.0 ? 0.5 * hi : 0.0;
  for (int it = 0; it < 300 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lag(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_frequency_heterogeneous(const Network& net) {
  net.validate();
  if (net.classify() >= 0)
    throw PreconditionError(
        "frequency solver: delta >= 0, monotone regime without an oscillatory "
        "fixed point");
  const int n = net.size();
  std::vector<double> a(n), b(n), tr(n), tp(n);
  for (int i = 0; i < n; ++i) {
    a[i] = net.stages[i].a;
    b[i] = net.stages[i].b;
    tr[i] = net.stages[i].tau_r;
    tp[i] = net.stages[i].tau_p;
  }
  return solve_frequency_heterogeneous(a, b, tr, tp);
}

FrequencyBounds frequency_bounds(const ParameterIntervals& intervals,
                                 const std::vector<double>& tau_r,
                                 const std::vector<double>& tau_p) {
  const size_t n = tau_r.size();
  if (intervals.a.size() != n || intervals.b.size() != n || tau_p.size() != n)
    throw PreconditionError("frequency bounds: inconsistent sizes");
  auto check = [](const std::vector<Interval>& iv, const char* name) {
    for (const Interval& i : iv)
      if (!(i.lo > 0.0 && i.lo <= i.hi)) {
        throw PreconditionError(std::string("frequency bounds: bad interval for ") + name);
      }
  };
  check(intervals.a, "a");
  check(intervals.b, "b");
  check(intervals.c, "c");
  check(intervals.beta, "beta");

  std::vector<double> a_lo(n), a_hi(n), b_lo(n), b_hi(n);
  for (size_t i = 0; i < n; ++i) {
    a_lo[i] = intervals.a[i].lo;
    a_hi[i] = intervals.a[i].hi;
    b_lo[i] = intervals.b[i].lo;
    b_hi[i] = intervals.b[i].hi;
  }
  FrequencyBounds out;
  out.omega_low = solve_frequency_heterogeneous(a_lo, b_lo, tau_r, tau_p);
  out.omega_high = solve_frequency_heterogeneous(a_hi, b_hi, tau_r, tau_p);
  return out;
}

std::vector<double> phase_increments(const Network& net, double omega) {
  if (!(omega > 0.0)) throw PreconditionError("phase formula: omega must be > 0");
  const CycleGeometry g = cycle_geometry(net);
  const int n = net.size();
  std::vector<double> inc(n);
  for (int k = 0; k < n; ++k)
    inc[k] = (g.Z[k] - 1.0 / n) * kPi - omega * g.delta_tau[k];
  return inc;
}

std::vector<double> solve_phases(const Network& net, double omega) {
  const std::vector<double> inc = phase_increments(net, omega);
  std::vector<double> phases(net.size());
  phases[0] = 0.0;
  double acc = 0.0;
  for (size_t i = 1; i < phases.size(); ++i) {
    acc += inc[i - 1];
    phases[i] = wrap_pi(acc);
  }
  return phases;
}

double phi_magnitude(double t_a, double t_b, double omega) {
  const double u = t_a * omega;
  const double v = t_b * omega;
  return std::sqrt((1.0 + u * u) * (1.0 + v * v));
}

namespace {

struct CycleEdge {
  Regulation reg = Regulation::Repression;
  double nu = 0.0;
  double r2 = 0.0;
  double phi_abs = 0.0;
};

std::vector<CycleEdge> cycle_edges(const Network& net, double omega) {
  const int n = net.size();
  std::vector<CycleEdge> edges(n);
  for (int k = 0; k < n; ++k) {
    const GeneStage& s = net.stages[(k + 1) % n];
    edges[k] = {s.regulation, s.nu, s.production_ratio(),
                phi_magnitude(1.0 / s.a, 1.0 / s.b, omega)};
  }
  return edges;
}

struct Propagation {
  std::vector<double> xs, ys;  // xs[0] = x_1, ..., xs[n] = x_1 after closure
};

Propagation propagate_cycle(const std::vector<CycleEdge>& edges, double x1,
                            double y1, const QuadratureOptions& opt) {
  Propagation p;
  p.xs.reserve(edges.size() + 1);
  p.ys.reserve(edges.size() + 1);
  double x = x1, y = y1;
  p.xs.push_back(x);
  p.ys.push_back(y);
  for (const CycleEdge& e : edges) {
    const DescribingPair g = describe(e.reg, e.nu, e.r2, x, y, opt);
    x = g.eta * x;
    y = std::abs(g.xi) * y / e.phi_abs;
    p.xs.push_back(x);
    p.ys.push_back(y);
  }
  return p;
}

double norm2(const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); }

}  // namespace

BiasAmplitude solve_bias_amplitude(const Network& net, double omega) {
  net.validate();
  if (net.classify() >= 0)
    throw PreconditionError("amplitude solver: requires delta < 0");
  if (!(omega > 0.0)) throw PreconditionError("amplitude solver: omega must be > 0");
  for (const GeneStage& s : net.stages)
    if (!(s.beta > 0.0))
      throw PreconditionError("amplitude solver: beta must be > 0 for analysis");

  const std::vector<CycleEdge> edges = cycle_edges(net, omega);

  auto residual_at = [&](double x1, double y1,
                         const QuadratureOptions& opt) -> std::array<double, 2> {
    const Propagation p = propagate_cycle(edges, x1, y1, opt);
    return {p.xs.back() / x1 - 1.0, p.ys.back() / y1 - 1.0};
  };

  // Coarse grid: the closure residual is scored with reduced-accuracy
  // quadrature; sqrt(R) approximates the equilibrium concentration scale.
  const double scale = std::sqrt(net.stages.front().production_ratio());
  const QuadratureOptions coarse{1024, 4096, 1e-6};
  const double log_lo = std::log(1e-2 * scale);
  const double log_hi = std::log(1e2 * scale);
  double best_x = 0.0, best_y = 0.0;
  double best_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 64; ++i) {
    const double x1 = std::exp(log_lo + (log_hi - log_lo) * i / 63.0);
    for (int j = 0; j < 64; ++j) {
      const double y1 = x1 * (j + 1) / 64.0;
      try {
        const std::array<double, 2> r = residual_at(x1, y1, coarse);
        const double rn = norm2(r);
        if (std::isfinite(rn) && rn < best_r) {
          best_r = rn;
          best_x = x1;
          best_y = y1;
        }
      } catch (const Error&) {
        // outside the integrand's domain or non-convergent cell, skip
      }
    }
  }
  if (!std::isfinite(best_r))
    throw ConvergenceError("amplitude solver: no admissible starting cell on the grid");

  const QuadratureOptions fine{};
  std::array<double, 2> v{best_x, best_y};
  std::array<double, 2> r = residual_at(v[0], v[1], fine);

  // Damped Newton with forward-difference Jacobian. The internal target is
  // far below the 1e-6 contract so downstream marginal-stability checks see a
  // tight fixed point.
  for (int it = 0; it < 60; ++it) {
    if (std::max(std::abs(r[0]), std::abs(r[1])) < 1e-13) break;
    double J[2][2];
    bool jac_ok = true;
    for (int j = 0; j < 2; ++j) {
      std::array<double, 2> vp = v;
      const double dv = 1e-6 * std::abs(v[j]);
      vp[j] += dv;
      std::array<double, 2> rp;
      try {
        rp = residual_at(vp[0], vp[1], fine);
      } catch (const Error&) {
        jac_ok = false;
        break;
      }
      J[0][j] = (rp[0] - r[0]) / dv;
      J[1][j] = (rp[1] - r[1]) / dv;
    }
    if (!jac_ok) break;
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (det == 0.0 || !std::isfinite(det)) break;
    const std::array<double, 2> d{(-r[0] * J[1][1] + r[1] * J[0][1]) / det,
                                  (-r[1] * J[0][0] + r[0] * J[1][0]) / det};
    bool stepped = false;
    for (double al = 1.0; al > 1e-9; al *= 0.5) {
      const std::array<double, 2> vn{v[0] + al * d[0], v[1] + al * d[1]};
      if (!(vn[0] > 0.0 && vn[1] > 0.0)) continue;
      std::array<double, 2> rn;
      try {
        rn = residual_at(vn[0], vn[1], fine);
      } catch (const Error&) {
        continue;
      }
      if (norm2(rn) < norm2(r)) {
        v = vn;
        r = rn;
        stepped = true;
        break;
      }
    }
    if (!stepped) break;
  }

  // Nelder-Mead rescue if Newton stalled above the contract tolerance.
  if (norm2(r) > 1e-6) {
    auto objective = [&](const std::array<double, 2>& p) {
      if (!(p[0] > 0.0 && p[1] > 0.0)) return std::numeric_limits<double>::infinity();
      try {
        return norm2(residual_at(p[0], p[1], fine));
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    std::array<std::array<double, 2>, 3> simplex{
        v, {v[0] * 1.05, v[1]}, {v[0], v[1] * 1.05}};
    std::array<double, 3> f{objective(simplex[0]), objective(simplex[1]),
                            objective(simplex[2])};
    for (int it = 0; it < 400; ++it) {
      std::array<int, 3> order{0, 1, 2};
      std::sort(order.begin(), order.end(), [&](int u, int w) { return f[u] < f[w]; });
      const int lo = order[0], mi = order[1], hi = order[2];
      if (f[lo] < 1e-13) break;
      const std::array<double, 2> centroid{
          0.5 * (simplex[lo][0] + simplex[mi][0]),
          0.5 * (simplex[lo][1] + simplex[mi][1])};
      auto blend = [&](double t) {
        return std::array<double, 2>{centroid[0] + t * (centroid[0] - simplex[hi][0]),
                                     centroid[1] + t * (centroid[1] - simplex[hi][1])};
      };
      const std::array<double, 2> refl = blend(1.0);
      const double fr = objective(refl);
      if (fr < f[lo]) {
        const std::array<double, 2> expa = blend(2.0);
        const double fe = objective(expa);
        if (fe < fr) {
          simplex[hi] = expa;
          f[hi] = fe;
        } else {
          simplex[hi] = refl;
          f[hi] = fr;
        }
      } else if (fr < f[mi]) {
        simplex[hi] = refl;
        f[hi] = fr;
      } else {
        const std::array<double, 2> contr = blend(-0.5);
        const double fc = objective(contr);
        if (fc < f[hi]) {
          simplex[hi] = contr;
          f[hi] = fc;
        } else {
          for (int k : {mi, hi}) {
            simplex[k] = {0.5 * (simplex[k][0] + simplex[lo][0]),
                          0.5 * (simplex[k][1] + simplex[lo][1])};
            f[k] = objective(simplex[k]);
          }
        }
      }
    }
    int lo = 0;
    for (int k = 1; k < 3; ++k)
      if (f[k] < f[lo]) lo = k;
    if (std::isfinite(f[lo]) && f[lo] < norm2(r)) {
      v = simplex[lo];
      r = residual_at(v[0], v[1], fine);
    }
  }

  const double rn = norm2(r);
  if (!(rn <= 1e-6)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "amplitude solver: staged search stalled, best closure residual %.3e",
                  rn);
    throw ConvergenceError(msg);
  }
  if (v[1] <= 1e-9 * v[0])
    throw ConvergenceError("no oscillatory fixed point found (amplitude collapsed to zero)");

  const Propagation p = propagate_cycle(edges, v[0], v[1], fine);
  BiasAmplitude out;
  out.biases.assign(p.xs.begin(), p.xs.end() - 1);
  out.amplitudes.assign(p.ys.begin(), p.ys.end() - 1);
  out.residual = rn;
  return out;
}

double hirata_period(double tau_r, double tau_p, double a, double b) {
  if (!(a > 0.0 && b > 0.0))
    throw PreconditionError("hirata estimate: rates must be > 0");
  if (!(tau_r >= 0.0 && tau_p >= 0.0))
    throw PreconditionError("hirata estimate: delays must be >= 0");
  const double ln2 = std::log(2.0);
  return 2.0 * (tau_r + tau_p + ln2 / a + ln2 / b);
}

double approx_period_normalized(int n_genes, double tau_tilde) {
  if (n_genes < 1) throw PreconditionError("period approximation: n_genes must be >= 1");
  if (!(tau_tilde >= 0.0))
    throw PreconditionError("period approximation: tau_tilde must be >= 0");
  return 4.0 * n_genes + 2.0 * n_genes * tau_tilde;
}

}  // namespace oscprof
