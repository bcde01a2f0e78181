#include "oscprof/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <sstream>

#include "oscprof/describing.hpp"

namespace oscprof {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string full(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

std::string short4(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

// Empty cell for values a heterogeneous-rate analysis cannot provide.
std::string cell(double v) { return std::isfinite(v) ? full(v) : std::string(); }

// Same idea for human-facing tables, where a dash reads better.
std::string tcell(double v) { return std::isfinite(v) ? short4(v) : std::string("-"); }

double deg(double rad) { return rad * 180.0 / kPi; }

double wrap_deg_360(double d) {
  double w = std::fmod(d, 360.0);
  if (w < 0.0) w += 360.0;
  return w;
}

double wrap_deg_180(double d) {
  double w = std::fmod(d + 180.0, 360.0);
  if (w <= 0.0) w += 360.0;
  return w - 180.0;
}

double wrap_pi(double x) {
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

void stage_means(const Network& net, double& tau_r, double& tau_p, double& a,
                 double& b) {
  tau_r = tau_p = a = b = 0.0;
  for (const GeneStage& s : net.stages) {
    tau_r += s.tau_r;
    tau_p += s.tau_p;
    a += s.a;
    b += s.b;
  }
  const double n = static_cast<double>(net.size());
  tau_r /= n;
  tau_p /= n;
  a /= n;
  b /= n;
}

// Per-stage first-harmonic gains at the predicted operating point. Stage i's
// gains are evaluated at the bias/amplitude of its input, gene i-1.
void operating_gains(const Network& net, const AnalysisResult& res,
                     Eigen::VectorXd& eta, Eigen::VectorXd& xi) {
  const int n = net.size();
  eta.resize(n);
  xi.resize(n);
  for (int i = 0; i < n; ++i) {
    const int prev = (i - 1 + n) % n;
    const GeneStage& s = net.stages[i];
    const DescribingPair g = describe(s.regulation, s.nu, s.production_ratio(),
                                      res.biases[prev], res.amplitudes[prev]);
    eta(i) = g.eta;
    xi(i) = g.xi;
  }
}

}  // namespace

AnalysisResult analyze(const Network& net) {
  net.validate();
  if (net.classify() >= 0)
    throw PreconditionError(
        "monotone regime: the loop carries an even number of repressive stages "
        "(delta >= 0), so there is no oscillatory fixed point to analyze");

  AnalysisResult res;
  res.net = net;
  res.homogeneous = net.homogeneous_rates() && net.stages.front().beta > 0.0;

  if (res.homogeneous) {
    res.params = dimensionless(net);
    res.omega = solve_frequency(res.params);
    res.phases = solve_phases(net, res.omega);
    res.phase_increments = phase_increments(net, res.omega);
    const BiasAmplitude ba = solve_bias_amplitude(net, res.omega);
    res.biases = ba.biases;
    res.amplitudes = ba.amplitudes;
    res.closure_residual = ba.residual;
    res.approx_period =
        approx_period_normalized(res.params.n_genes, res.params.tau_tilde) *
        res.params.T_A;
  } else {
    res.omega = solve_frequency_heterogeneous(net);
  }
  res.period = 2.0 * kPi / res.omega;

  double mtr, mtp, ma, mb;
  stage_means(net, mtr, mtp, ma, mb);
  res.hirata = hirata_period(mtr, mtp, ma, mb);
  return res;
}

SimConfig resolve_sim_config(const Network& net, SimConfig config, double omega_hint) {
  if (!(omega_hint > 0.0))
    throw PreconditionError("simulation defaults need a positive frequency hint");
  const double period = 2.0 * kPi / omega_hint;
  if (config.step <= 0.0) {
    const double d = net.min_positive_delay();
    config.step = d > 0.0 ? d / 20.0 : period / 400.0;
  }
  if (config.t_end <= 0.0) config.t_end = 30.0 * period;
  return config;
}

ComparisonReport compare(const Network& net, const SimConfig& config) {
  ComparisonReport rep;
  rep.analysis = analyze(net);
  rep.sim_config = resolve_sim_config(net, config, rep.analysis.omega);

  ExtractedProfile ex;
  try {
    const TimeSeries ts = simulate(net, rep.sim_config);
    ex = extract_profile(ts, rep.sim_config.transient_fraction);
  } catch (const SimulationError& e) {
    rep.sim_failure = e.what();
    return rep;
  }
  rep.simulated = true;
  rep.diagnostics = ex.diagnostics;
  rep.omega_sim = ex.profile.omega;
  rep.period_sim = 2.0 * kPi / rep.omega_sim;
  rep.freq_rel_err_pct =
      (rep.analysis.omega - rep.omega_sim) / rep.omega_sim * 100.0;

  const int n = net.size();
  rep.genes.resize(n);
  bool phases_ok = true;
  for (int i = 0; i < n; ++i) {
    GeneComparison& g = rep.genes[i];
    g.phase_sim_deg = wrap_deg_360(deg(ex.profile.phases[i]));
    g.bias_sim = ex.profile.biases[i];
    g.amp_sim = ex.profile.amplitudes[i];
    if (rep.analysis.homogeneous) {
      g.phase_pred_deg = wrap_deg_360(deg(rep.analysis.phases[i]));
      g.phase_err_deg = wrap_deg_180(g.phase_pred_deg - g.phase_sim_deg);
      g.bias_pred = rep.analysis.biases[i];
      g.bias_err_pct = (g.bias_pred - g.bias_sim) / g.bias_sim * 100.0;
      g.amp_pred = rep.analysis.amplitudes[i];
      g.amp_err_pct = (g.amp_pred - g.amp_sim) / g.amp_sim * 100.0;
      if (std::abs(g.phase_err_deg) > 10.0) phases_ok = false;
    } else {
      g.phase_pred_deg = g.phase_err_deg = kNaN;
      g.bias_pred = g.bias_err_pct = kNaN;
      g.amp_pred = g.amp_err_pct = kNaN;
    }
  }
  rep.within_tolerance = std::abs(rep.freq_rel_err_pct) <= 10.0 && phases_ok;
  return rep;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Tau: return "tau";
    case SweepAxis::TauTilde: return "tau_tilde";
    case SweepAxis::Q: return "Q";
    case SweepAxis::NGenes: return "N";
    case SweepAxis::RateA: return "a";
    case SweepAxis::RateB: return "b";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "tau") return SweepAxis::Tau;
  if (name == "tau_tilde") return SweepAxis::TauTilde;
  if (name == "Q") return SweepAxis::Q;
  if (name == "N") return SweepAxis::NGenes;
  if (name == "a") return SweepAxis::RateA;
  if (name == "b") return SweepAxis::RateB;
  throw PreconditionError("unknown sweep axis '" + name +
                          "' (expected tau, tau_tilde, Q, N, a or b)");
}

namespace {

Network apply_axis(const Network& base, SweepAxis axis, double value) {
  Network net = base;
  switch (axis) {
    case SweepAxis::Tau:
    case SweepAxis::TauTilde: {
      double target = value;
      if (axis == SweepAxis::TauTilde) target = value * dimensionless(base).T_A;
      if (!(target >= 0.0))
        throw PreconditionError("sweep: target delay must be >= 0");
      const double cur = base.mean_delay();
      if (!(cur > 0.0))
        throw PreconditionError(
            "sweep: the base network has zero mean delay, nothing to rescale");
      const double f = target / cur;
      for (GeneStage& s : net.stages) {
        s.tau_r *= f;
        s.tau_p *= f;
      }
      break;
    }
    case SweepAxis::Q: {
      if (!(value > 0.0 && value <= 1.0))
        throw PreconditionError("sweep: Q must lie in (0, 1]");
      const DimensionlessParams p = dimensionless(base);
      const double root = std::sqrt(std::max(0.0, 1.0 - value * value));
      for (GeneStage& s : net.stages) {
        s.a = 1.0 / (p.T_A * (1.0 + root));
        s.b = 1.0 / (p.T_A * (1.0 - root));
      }
      break;
    }
    case SweepAxis::NGenes: {
      const int m = static_cast<int>(std::llround(value));
      if (m < 1) throw PreconditionError("sweep: N must be >= 1");
      GeneStage proto = base.stages.front();
      proto.regulation = Regulation::Repression;
      net.stages.assign(m, proto);
      // Keep the loop in the oscillatory class: an even ring needs one
      // activating stage to make the gain product negative.
      if (m % 2 == 0) net.stages[m - 1].regulation = Regulation::Activation;
      break;
    }
    case SweepAxis::RateA:
      if (!(value > 0.0)) throw PreconditionError("sweep: a must be > 0");
      for (GeneStage& s : net.stages) s.a = value;
      break;
    case SweepAxis::RateB:
      if (!(value > 0.0)) throw PreconditionError("sweep: b must be > 0");
      for (GeneStage& s : net.stages) s.b = value;
      break;
  }
  return net;
}

}  // namespace

std::vector<SweepRow> sweep(const Network& base, const SweepSpec& spec) {
  base.validate();
  if (spec.count < 1) throw PreconditionError("sweep: need at least one point");

  std::vector<SweepRow> rows;
  rows.reserve(spec.count);
  for (int k = 0; k < spec.count; ++k) {
    const double value =
        spec.count == 1
            ? spec.lo
            : spec.lo + (spec.hi - spec.lo) * k / (spec.count - 1.0);
    SweepRow row;
    row.value = spec.axis == SweepAxis::NGenes ? std::llround(value) : value;

    Network net;
    try {
      net = apply_axis(base, spec.axis, row.value);
      net.validate();
      if (net.classify() >= 0)
        throw PreconditionError("monotone regime (delta >= 0)");
      if (net.homogeneous_rates() && net.stages.front().beta > 0.0) {
        const DimensionlessParams p = dimensionless(net);
        row.omega_pred = solve_frequency(p);
        row.period_approx =
            approx_period_normalized(p.n_genes, p.tau_tilde) * p.T_A;
      } else {
        row.omega_pred = solve_frequency_heterogeneous(net);
      }
      row.period_pred = 2.0 * kPi / row.omega_pred;
      double mtr, mtp, ma, mb;
      stage_means(net, mtr, mtp, ma, mb);
      row.period_hirata = hirata_period(mtr, mtp, ma, mb);
      row.predicted = true;
    } catch (const Error& e) {
      row.error = e.what();
      rows.push_back(std::move(row));
      continue;
    }

    if (spec.with_sim) {
      try {
        const SimConfig cfg = resolve_sim_config(net, spec.sim, row.omega_pred);
        const TimeSeries ts = simulate(net, cfg);
        const ExtractedProfile ex = extract_profile(ts, cfg.transient_fraction);
        row.simulated = true;
        row.omega_sim = ex.profile.omega;
        row.period_sim = 2.0 * kPi / row.omega_sim;
        row.pred_err_pct =
            (row.period_pred - row.period_sim) / row.period_sim * 100.0;
        row.hirata_err_pct =
            (row.period_hirata - row.period_sim) / row.period_sim * 100.0;
      } catch (const Error& e) {
        row.error = e.what();
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

VerifyReport verify_profile(const Network& net) {
  const AnalysisResult res = analyze(net);
  if (!res.homogeneous)
    throw PreconditionError(
        "verify: the spectral consistency suite needs homogeneous a, b rates");

  const int n = net.size();
  Eigen::VectorXd eta, xi;
  operating_gains(net, res, eta, xi);
  Eigen::VectorXd tau_stage(n);
  for (int i = 0; i < n; ++i)
    tau_stage(i) = net.stages[i].tau_r + net.stages[i].tau_p;

  const LoopTransfer loop = loop_transfer(net);
  Eigen::VectorXd x(n);
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) {
    x(i) = res.biases[i];
    w(i) = res.amplitudes[i] *
           std::exp(std::complex<double>(
               0.0, res.phases[i] - res.omega * net.stages[i].tau_p));
  }

  VerifyReport rep;
  rep.omega = res.omega;
  rep.closure_residual = res.closure_residual;
  const ClosedLoopResiduals clr =
      closed_loop_residuals(eta, xi, tau_stage, res.omega, loop, x, w);
  rep.bias_residual = clr.bias;
  rep.harmonic_residual = clr.harmonic;

  const Eigen::VectorXcd lam = eigenvalues_K1(xi);
  rep.regions.resize(n);
  rep.lambda1_on_boundary = false;
  rep.others_inside = true;
  for (int i = 0; i < n; ++i) {
    rep.regions[i] = stability_region_check(lam(i), loop).region;
    if (i == 0)
      rep.lambda1_on_boundary = rep.regions[i] == Region::OnBoundary;
    else if (rep.regions[i] != Region::Inside)
      rep.others_inside = false;
  }

  const CirculantTransform ct = circulant_transform(xi, tau_stage, res.omega);
  double worst = 0.0;
  const double ref = std::arg(ct.y(0)) + res.omega * net.stages[0].tau_p;
  for (int i = 0; i < n; ++i) {
    const double got = std::arg(ct.y(i)) + res.omega * net.stages[i].tau_p - ref;
    worst = std::max(worst, std::abs(wrap_pi(got - res.phases[i])));
  }
  rep.phase_match_deg = deg(worst);

  rep.pass = rep.closure_residual <= 1e-6 && rep.bias_residual <= 1e-6 &&
             rep.harmonic_residual <= 1e-6 && rep.lambda1_on_boundary &&
             rep.others_inside && worst <= 1e-8;
  return rep;
}

std::string analyze_csv(const AnalysisResult& res) {
  std::ostringstream out;
  out << "gene,omega,period,T_a,T_b,T_A,T_G,Q,R,tau,tau_tilde,phase_rad,"
         "phase_deg,phase_increment_rad,bias,amplitude,hirata_period,"
         "approx_period\n";
  const int n = res.net.size();
  const bool hom = res.homogeneous;
  for (int i = 0; i < n; ++i) {
    out << (i + 1) << ',' << full(res.omega) << ',' << full(res.period) << ','
        << (hom ? full(res.params.T_a) : "") << ','
        << (hom ? full(res.params.T_b) : "") << ','
        << (hom ? full(res.params.T_A) : "") << ','
        << (hom ? full(res.params.T_G) : "") << ','
        << (hom ? full(res.params.Q) : "") << ','
        << (hom ? full(res.params.R) : "") << ','
        << full(res.net.mean_delay()) << ','
        << (hom ? full(res.params.tau_tilde) : "") << ','
        << (hom ? full(res.phases[i]) : "") << ','
        << (hom ? full(wrap_deg_360(deg(res.phases[i]))) : "") << ','
        << (hom ? full(res.phase_increments[i]) : "") << ','
        << (hom ? full(res.biases[i]) : "") << ','
        << (hom ? full(res.amplitudes[i]) : "") << ','
        << full(res.hirata) << ','
        << (hom ? full(res.approx_period) : "") << '\n';
  }
  return out.str();
}

std::string analyze_table(const AnalysisResult& res) {
  std::ostringstream out;
  const int n = res.net.size();
  out << "network: " << n << " gene" << (n > 1 ? "s" : "") << ", "
      << (res.homogeneous ? "homogeneous rates" : "heterogeneous rates") << "\n";
  out << "omega: " << short4(res.omega) << " rad/min   period: "
      << short4(res.period) << " min\n";
  if (res.homogeneous) {
    out << "T_a: " << short4(res.params.T_a) << "   T_b: "
        << short4(res.params.T_b) << "   T_A: " << short4(res.params.T_A)
        << "   Q: " << short4(res.params.Q) << "   R: " << short4(res.params.R)
        << "\n";
    out << "tau: " << short4(res.params.tau) << "   tau/T_A: "
        << short4(res.params.tau_tilde) << "\n";
  } else {
    out << "tau: " << short4(res.net.mean_delay())
        << "   (phase and amplitude formulas need homogeneous rates)\n";
  }
  out << "period estimates: hirata " << short4(res.hirata);
  if (res.homogeneous) out << "   linear-in-delay " << short4(res.approx_period);
  out << "\n";
  if (res.homogeneous) {
    out << "closure residual: " << short4(res.closure_residual) << "\n\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %12s %12s %12s %12s\n", "gene",
                  "phase[rad]", "phase[deg]", "bias", "amplitude");
    out << line;
    for (int i = 0; i < n; ++i) {
      std::snprintf(line, sizeof line, "%-6d %12.4g %12.4g %12.4g %12.4g\n",
                    i + 1, res.phases[i], wrap_deg_360(deg(res.phases[i])),
                    res.biases[i], res.amplitudes[i]);
      out << line;
    }
  }
  return out.str();
}

std::string series_csv(const TimeSeries& series) {
  std::ostringstream out;
  const size_t n = series.r.size();
  out << "time";
  for (size_t i = 1; i <= n; ++i) out << ",r_" << i;
  for (size_t i = 1; i <= n; ++i) out << ",p_" << i;
  out << '\n';
  for (size_t k = 0; k < series.times.size(); ++k) {
    out << full(series.times[k]);
    for (size_t i = 0; i < n; ++i) out << ',' << full(series.r[i][k]);
    for (size_t i = 0; i < n; ++i) out << ',' << full(series.p[i][k]);
    out << '\n';
  }
  return out.str();
}

std::string sim_summary(const ExtractedProfile& extracted) {
  const OscillationProfile& p = extracted.profile;
  const FitDiagnostics& d = extracted.diagnostics;
  std::ostringstream out;
  out << "extracted omega: " << short4(p.omega) << " rad/min   period: "
      << short4(2.0 * kPi / p.omega) << " min\n";
  out << "crossing estimate: " << short4(d.omega_crossing) << "   cycles fitted: "
      << d.cycles << "   window: [" << short4(d.window_start) << ", "
      << short4(d.window_end) << "]\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-6s %12s %12s %12s %14s\n", "gene",
                "phase[deg]", "bias", "amplitude", "fit rms/amp");
  out << line;
  for (size_t i = 0; i < p.phases.size(); ++i) {
    std::snprintf(line, sizeof line, "%-6zu %12.4g %12.4g %12.4g %14.3e\n",
                  i + 1, wrap_deg_360(deg(p.phases[i])), p.biases[i],
                  p.amplitudes[i], d.residual_rms_ratio[i]);
    out << line;
  }
  return out.str();
}

std::string compare_csv(const ComparisonReport& rep) {
  std::ostringstream out;
  out << "gene,omega_pred,omega_sim,freq_rel_err_pct,period_pred,period_sim,"
         "hirata_period,approx_period,phase_pred_deg,phase_sim_deg,"
         "phase_err_deg,bias_pred,bias_sim,bias_err_pct,amp_pred,amp_sim,"
         "amp_err_pct\n";
  const AnalysisResult& a = rep.analysis;
  const int n = a.net.size();
  for (int i = 0; i < n; ++i) {
    out << (i + 1) << ',' << full(a.omega) << ','
        << (rep.simulated ? full(rep.omega_sim) : "") << ','
        << (rep.simulated ? full(rep.freq_rel_err_pct) : "") << ','
        << full(a.period) << ','
        << (rep.simulated ? full(rep.period_sim) : "") << ','
        << full(a.hirata) << ','
        << (a.homogeneous ? full(a.approx_period) : "");
    if (rep.simulated) {
      const GeneComparison& g = rep.genes[i];
      out << ',' << cell(g.phase_pred_deg) << ',' << full(g.phase_sim_deg)
          << ',' << cell(g.phase_err_deg) << ',' << cell(g.bias_pred) << ','
          << full(g.bias_sim) << ',' << cell(g.bias_err_pct) << ','
          << cell(g.amp_pred) << ',' << full(g.amp_sim) << ','
          << cell(g.amp_err_pct);
    } else {
      const bool hom = a.homogeneous;
      out << ',' << (hom ? full(wrap_deg_360(deg(a.phases[i]))) : "") << ",,"
          << ',' << (hom ? full(a.biases[i]) : "") << ",,"
          << ',' << (hom ? full(a.amplitudes[i]) : "") << ",,";
    }
    out << '\n';
  }
  return out.str();
}

std::string compare_table(const ComparisonReport& rep) {
  std::ostringstream out;
  const AnalysisResult& a = rep.analysis;
  out << "predicted omega: " << short4(a.omega) << " rad/min   period: "
      << short4(a.period) << " min\n";
  if (!rep.simulated) {
    out << "simulation produced no usable cycle: " << rep.sim_failure << "\n";
    out << "predicted profile only.\n\n" << analyze_table(a);
    return out.str();
  }
  out << "simulated omega: " << short4(rep.omega_sim) << " rad/min   period: "
      << short4(rep.period_sim) << " min\n";
  out << "frequency error (pred - sim): " << short4(rep.freq_rel_err_pct)
      << "%\n";
  out << "period estimates: hirata " << short4(a.hirata);
  if (a.homogeneous) out << "   linear-in-delay " << short4(a.approx_period);
  out << "\n\n";
  char line[200];
  std::snprintf(line, sizeof line, "%-5s %11s %11s %9s %11s %11s %9s %11s %11s %9s\n",
                "gene", "ph.pred", "ph.sim", "d[deg]", "bias.pred", "bias.sim",
                "d[%]", "amp.pred", "amp.sim", "d[%]");
  out << line;
  for (size_t i = 0; i < rep.genes.size(); ++i) {
    const GeneComparison& g = rep.genes[i];
    std::snprintf(line, sizeof line,
                  "%-5zu %11s %11s %9s %11s %11s %9s %11s %11s %9s\n", i + 1,
                  tcell(g.phase_pred_deg).c_str(), tcell(g.phase_sim_deg).c_str(),
                  tcell(g.phase_err_deg).c_str(), tcell(g.bias_pred).c_str(),
                  tcell(g.bias_sim).c_str(), tcell(g.bias_err_pct).c_str(),
                  tcell(g.amp_pred).c_str(), tcell(g.amp_sim).c_str(),
                  tcell(g.amp_err_pct).c_str());
    out << line;
  }
  out << "\nfit window: [" << short4(rep.diagnostics.window_start) << ", "
      << short4(rep.diagnostics.window_end) << "]   cycles: "
      << rep.diagnostics.cycles << "\n";
  out << (rep.within_tolerance
              ? "within tolerance (|freq err| <= 10%, |phase err| <= 10 deg)\n"
              : "outside tolerance (|freq err| <= 10%, |phase err| <= 10 deg)\n");
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows, SweepAxis axis) {
  std::ostringstream out;
  out << "param,value,omega_pred,period_pred,period_hirata,period_approx,"
         "omega_sim,period_sim,pred_err_pct,hirata_err_pct,error\n";
  for (const SweepRow& r : rows) {
    out << to_string(axis) << ',' << full(r.value) << ','
        << (r.predicted ? full(r.omega_pred) : "") << ','
        << (r.predicted ? full(r.period_pred) : "") << ','
        << (r.predicted ? full(r.period_hirata) : "") << ','
        << (r.predicted && r.period_approx > 0.0 ? full(r.period_approx) : "")
        << ',' << (r.simulated ? full(r.omega_sim) : "") << ','
        << (r.simulated ? full(r.period_sim) : "") << ','
        << (r.simulated ? full(r.pred_err_pct) : "") << ','
        << (r.simulated ? full(r.hirata_err_pct) : "") << ','
        << (r.error.empty() ? std::string() : csv_quote(r.error)) << '\n';
  }
  return out.str();
}

std::string sweep_table(const std::vector<SweepRow>& rows, SweepAxis axis) {
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof line, "%-10s %12s %12s %12s %12s %12s %9s %9s\n",
                to_string(axis), "omega", "period", "hirata", "approx",
                "period.sim", "err[%]", "hir[%]");
  out << line;
  for (const SweepRow& r : rows) {
    if (!r.predicted) {
      std::snprintf(line, sizeof line, "%-10.4g prediction failed: %s\n", r.value,
                    r.error.c_str());
      out << line;
      continue;
    }
    std::string approx = r.period_approx > 0.0 ? short4(r.period_approx) : "-";
    std::string sim_p = r.simulated ? short4(r.period_sim) : "-";
    std::string err_p = r.simulated ? short4(r.pred_err_pct) : "-";
    std::string err_h = r.simulated ? short4(r.hirata_err_pct) : "-";
    std::snprintf(line, sizeof line,
                  "%-10.4g %12.4g %12.4g %12.4g %12s %12s %9s %9s\n", r.value,
                  r.omega_pred, r.period_pred, r.period_hirata, approx.c_str(),
                  sim_p.c_str(), err_p.c_str(), err_h.c_str());
    out << line;
    if (!r.error.empty()) out << "    note: " << r.error << "\n";
  }
  return out.str();
}

std::string describe_csv(const std::vector<DescribeRow>& rows) {
  std::ostringstream out;
  out << "x,y,eta,xi\n";
  for (const DescribeRow& r : rows)
    out << full(r.x) << ',' << full(r.y) << ',' << full(r.eta) << ','
        << full(r.xi) << '\n';
  return out.str();
}

std::string verify_table(const VerifyReport& rep) {
  std::ostringstream out;
  out << "omega: " << short4(rep.omega) << " rad/min\n";
  char line[160];
  std::snprintf(line, sizeof line, "closure residual:   %.3e\n",
                rep.closure_residual);
  out << line;
  std::snprintf(line, sizeof line, "bias residual:      %.3e\n",
                rep.bias_residual);
  out << line;
  std::snprintf(line, sizeof line, "harmonic residual:  %.3e\n",
                rep.harmonic_residual);
  out << line;
  std::snprintf(line, sizeof line, "phase match:        %.3e deg\n",
                rep.phase_match_deg);
  out << line;
  out << "eigenvalue regions:";
  for (size_t i = 0; i < rep.regions.size(); ++i)
    out << " " << to_string(rep.regions[i]);
  out << "\n";
  out << "leading eigenvalue on boundary: "
      << (rep.lambda1_on_boundary ? "yes" : "NO") << "\n";
  out << "remaining eigenvalues inside:   " << (rep.others_inside ? "yes" : "NO")
      << "\n";
  out << (rep.pass ? "verify: PASS\n" : "verify: FAIL\n");
  return out.str();
}

}  // namespace oscprof
