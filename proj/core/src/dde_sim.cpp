#include "oscprof/dde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

namespace oscprof {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBlowUp = 1e12;

// State layout: y[0..n) = r, y[n..2n) = p.
struct Integrator {
  const Network& net;
  int n;
  double h;
  std::vector<std::vector<double>> y;   // committed states, y[k][ch]
  std::vector<std::vector<double>> dy;  // committed derivatives
  std::vector<double> y0;               // constant history for t <= 0

  // Cubic Hermite read of channel ch at time tq, valid for tq <= committed
  // step k's start plus the already committed slope there.
  double lookup(int ch, double tq, int k) const {
    if (tq <= 0.0) return y0[ch];
    const int j = std::min(static_cast<int>(tq / h), k - 1);
    const double u = (tq - j * h) / h;
    const double um = 1.0 - u;
    const double h00 = (1.0 + 2.0 * u) * um * um;
    const double h10 = u * um * um;
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    return h00 * y[j][ch] + h10 * h * dy[j][ch] + h01 * y[j + 1][ch] +
           h11 * h * dy[j + 1][ch];
  }

  void rhs(double t, const std::vector<double>& state, int k,
           std::vector<double>& out) const {
    for (int i = 0; i < n; ++i) {
      const GeneStage& s = net.stages[i];
      const int prev = (i - 1 + n) % n;
      const double tau_in = net.stages[prev].tau_p;
      const double p_in = tau_in == 0.0 ? state[n + prev]
                                        : lookup(n + prev, t - tau_in, k);
      const double r_del = s.tau_r == 0.0 ? state[i] : lookup(i, t - s.tau_r, k);
      out[i] = -s.a * state[i] +
               s.beta * hill_raw(std::max(p_in, 0.0), s.nu, s.regulation);
      out[n + i] = s.c * r_del - s.b * state[n + i];
    }
  }
};

[[noreturn]] void throw_blow_up(double t, double worst) {
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "simulation diverged at t = %.6g (|state| reached %.3e); the step "
                "may be too large for these rates",
                t, worst);
  throw SimulationError(msg);
}

double wrap_two_pi(double x) {
  double w = std::fmod(x, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

}  // namespace

TimeSeries simulate(const Network& net, const SimConfig& config) {
  net.validate();
  const int n = net.size();
  const double h = config.step;
  if (!(h > 0.0)) throw PreconditionError("simulate: step must be > 0");
  if (!(config.t_end >= h))
    throw PreconditionError("simulate: t_end must cover at least one step");
  const double min_delay = net.min_positive_delay();
  if (min_delay > 0.0 && h > min_delay) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "simulate: step %.6g exceeds the smallest positive delay %.6g; "
                  "delayed lookups would leave the committed history",
                  h, min_delay);
    throw PreconditionError(msg);
  }
  auto check_hist = [n](const std::vector<double>& v, const char* name) {
    if (!v.empty() && static_cast<int>(v.size()) != n)
      throw PreconditionError(std::string("simulate: ") + name +
                              " must be empty or one entry per gene");
    for (double x : v)
      if (!(x >= 0.0))
        throw PreconditionError(std::string("simulate: ") + name +
                                " entries must be >= 0");
  };
  check_hist(config.history_r, "history_r");
  check_hist(config.history_p, "history_p");

  const int steps = static_cast<int>(std::llround(config.t_end / h));

  Integrator integ{net, n, h, {}, {}, {}};
  integ.y.assign(steps + 1, std::vector<double>(2 * n, 0.0));
  integ.dy.assign(steps + 1, std::vector<double>(2 * n, 0.0));
  integ.y0.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    integ.y0[i] = config.history_r.empty() ? net.stages[i].history_r.value_or(1.0)
                                           : config.history_r[i];
    integ.y0[n + i] = config.history_p.empty()
                          ? net.stages[i].history_p.value_or(1.0)
                          : config.history_p[i];
  }
  integ.y[0] = integ.y0;

  std::vector<double> k2(2 * n), k3(2 * n), k4(2 * n), stage(2 * n);
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    // Commit the start-of-step slope first: Hermite reads on [t-h, t] need it.
    integ.rhs(t, integ.y[k], k, integ.dy[k]);
    const std::vector<double>& k1 = integ.dy[k];

    for (int ch = 0; ch < 2 * n; ++ch) stage[ch] = integ.y[k][ch] + 0.5 * h * k1[ch];
    integ.rhs(t + 0.5 * h, stage, k, k2);
    for (int ch = 0; ch < 2 * n; ++ch) stage[ch] = integ.y[k][ch] + 0.5 * h * k2[ch];
    integ.rhs(t + 0.5 * h, stage, k, k3);
    for (int ch = 0; ch < 2 * n; ++ch) stage[ch] = integ.y[k][ch] + h * k3[ch];
    integ.rhs(t + h, stage, k, k4);

    double worst = 0.0;
    for (int ch = 0; ch < 2 * n; ++ch) {
      const double v = integ.y[k][ch] +
                       h / 6.0 * (k1[ch] + 2.0 * k2[ch] + 2.0 * k3[ch] + k4[ch]);
      integ.y[k + 1][ch] = v;
      worst = std::max(worst, std::abs(v));
    }
    if (!(worst < kBlowUp)) throw_blow_up((k + 1) * h, worst);
  }

  TimeSeries out;
  out.times.resize(steps + 1);
  out.r.assign(n, std::vector<double>(steps + 1));
  out.p.assign(n, std::vector<double>(steps + 1));
  for (int k = 0; k <= steps; ++k) {
    out.times[k] = k * h;
    for (int i = 0; i < n; ++i) {
      out.r[i][k] = integ.y[k][i];
      out.p[i][k] = integ.y[k][n + i];
    }
  }
  return out;
}

ExtractedProfile extract_profile(const TimeSeries& series, double transient_fraction) {
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
    throw PreconditionError("extract: transient_fraction must lie in [0, 1)");
  const size_t len = series.times.size();
  const size_t n = series.p.size();
  if (n == 0 || len < 3)
    throw PreconditionError("extract: series is empty or too short");

  const std::vector<double>& t = series.times;
  const std::vector<double>& p1 = series.p[0];
  const size_t i0 = static_cast<size_t>(len * transient_fraction);

  double mean = 0.0;
  for (size_t k = i0; k < len; ++k) mean += p1[k];
  mean /= static_cast<double>(len - i0);

  std::vector<double> crossings;
  for (size_t k = i0; k + 1 < len; ++k) {
    if (p1[k] < mean && p1[k + 1] >= mean) {
      const double frac = (mean - p1[k]) / (p1[k + 1] - p1[k]);
      crossings.push_back(t[k] + frac * (t[k + 1] - t[k]));
    }
  }
  if (crossings.size() < 11) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "no oscillation detected: only %zu mean up-crossings after the "
                  "transient window",
                  crossings.size());
    throw SimulationError(msg);
  }

  // Walk forward in five-cycle blocks until two consecutive blocks agree on
  // the period; the remainder of the run is treated as settled.
  size_t settle = 0;
  bool settled = false;
  for (size_t j = 0; j + 10 < crossings.size(); j += 5) {
    const double per_a = crossings[j + 5] - crossings[j];
    const double per_b = crossings[j + 10] - crossings[j + 5];
    if (std::abs(per_b - per_a) <= 1e-3 * per_a) {
      settle = j;
      settled = true;
      break;
    }
  }
  if (!settled)
    throw SimulationError(
        "oscillation not settled: the cycle period is still drifting at the end "
        "of the run");

  const size_t cycles = crossings.size() - 1 - settle;
  const double span = crossings.back() - crossings[settle];
  const double period0 = span / static_cast<double>(cycles);
  const double w0 = 2.0 * kPi / period0;

  const double win_lo = crossings[settle];
  const double win_hi = crossings.back();
  const size_t lo_idx = static_cast<size_t>(
      std::lower_bound(t.begin(), t.end(), win_lo) - t.begin());
  size_t hi_idx = static_cast<size_t>(
      std::upper_bound(t.begin(), t.end(), win_hi) - t.begin());
  if (hi_idx > 0) --hi_idx;
  const size_t m = hi_idx - lo_idx + 1;

  // Total squared fit error of per-gene [1, sin, cos] least squares at a trial
  // frequency; solutions reuse one sin/cos sweep across all genes.
  auto fit_all = [&](double w, std::vector<Eigen::Vector3d>* coeffs,
                     std::vector<double>* ssr_per_gene) {
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    std::vector<Eigen::Vector3d> rhs(n, Eigen::Vector3d::Zero());
    std::vector<double> sb(m), cb(m);
    for (size_t k = 0; k < m; ++k) {
      const double tw = t[lo_idx + k] - win_lo;
      sb[k] = std::sin(w * tw);
      cb[k] = std::cos(w * tw);
      const double s = sb[k], c = cb[k];
      g(0, 0) += 1.0;
      g(0, 1) += s;
      g(0, 2) += c;
      g(1, 1) += s * s;
      g(1, 2) += s * c;
      g(2, 2) += c * c;
      for (size_t i = 0; i < n; ++i) {
        const double x = series.p[i][lo_idx + k];
        rhs[i](0) += x;
        rhs[i](1) += x * s;
        rhs[i](2) += x * c;
      }
    }
    g(1, 0) = g(0, 1);
    g(2, 0) = g(0, 2);
    g(2, 1) = g(1, 2);
    const Eigen::LDLT<Eigen::Matrix3d> solver(g);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const Eigen::Vector3d sol = solver.solve(rhs[i]);
      // Residual pass: the textbook ||x||^2 - sol.rhs form cancels to the
      // rounding floor for near-exact fits and flattens the minimum the
      // golden-section search needs.
      double ssr = 0.0;
      for (size_t k = 0; k < m; ++k) {
        const double r = series.p[i][lo_idx + k] -
                         (sol(0) + sol(1) * sb[k] + sol(2) * cb[k]);
        ssr += r * r;
      }
      total += ssr;
      if (coeffs) (*coeffs)[i] = sol;
      if (ssr_per_gene) (*ssr_per_gene)[i] = ssr;
    }
    return total;
  };

  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.98 * w0, b = 1.02 * w0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = fit_all(c, nullptr, nullptr);
  double fd = fit_all(d, nullptr, nullptr);
  while (b - a > 1e-12 * w0) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = fit_all(c, nullptr, nullptr);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = fit_all(d, nullptr, nullptr);
    }
  }
  const double w_star = 0.5 * (a + b);

  std::vector<Eigen::Vector3d> coeffs(n);
  std::vector<double> ssr(n);
  fit_all(w_star, &coeffs, &ssr);

  ExtractedProfile out;
  out.profile.omega = w_star;
  out.profile.biases.resize(n);
  out.profile.amplitudes.resize(n);
  out.profile.phases.resize(n);
  out.diagnostics.residual_rms_ratio.resize(n);

  std::vector<double> raw_phase(n);
  for (size_t i = 0; i < n; ++i) {
    out.profile.biases[i] = coeffs[i](0);
    out.profile.amplitudes[i] = std::hypot(coeffs[i](1), coeffs[i](2));
    raw_phase[i] = std::atan2(coeffs[i](2), coeffs[i](1));
    out.diagnostics.residual_rms_ratio[i] =
        std::sqrt(ssr[i] / static_cast<double>(m)) / out.profile.amplitudes[i];
  }
  out.profile.phases[0] = 0.0;
  for (size_t i = 1; i < n; ++i)
    out.profile.phases[i] = wrap_two_pi(raw_phase[i] - raw_phase[0]);

  out.diagnostics.omega_crossing = w0;
  out.diagnostics.omega_refit = w_star;
  out.diagnostics.cycles = static_cast<int>(cycles);
  out.diagnostics.window_start = win_lo;
  out.diagnostics.window_end = win_hi;
  return out;
}

}  // namespace oscprof
