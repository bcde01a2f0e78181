#pragma once

#include <string>
#include <vector>

#include "oscprof/balance.hpp"
#include "oscprof/dde_sim.hpp"
#include "oscprof/model.hpp"
#include "oscprof/spectral.hpp"

namespace oscprof {

// Full analytic profile of a network. Networks with heterogeneous rates get
// the frequency only; the phase and amplitude formulas need shared a, b.
struct AnalysisResult {
  Network net;
  bool homogeneous = false;
  DimensionlessParams params;  // valid only when homogeneous
  double omega = 0.0;
  double period = 0.0;
  std::vector<double> phases;            // radians in (-pi, pi], first entry 0
  std::vector<double> phase_increments;  // radians, unwrapped per edge
  std::vector<double> biases;
  std::vector<double> amplitudes;
  double closure_residual = 0.0;
  double hirata = 0.0;         // single-loop estimate from mean delays
  double approx_period = 0.0;  // linear-in-delay approximation, time units
};

// Throws PreconditionError when delta >= 0 (monotone regime, nothing to
// predict) and propagates solver failures.
AnalysisResult analyze(const Network& net);

// Fills zero fields of a simulation config: step = smallest positive delay / 20
// (or a fine fraction of the predicted period when the network has no delays)
// and t_end = 30 predicted periods.
SimConfig resolve_sim_config(const Network& net, SimConfig config, double omega_hint);

struct GeneComparison {
  double phase_pred_deg = 0.0;
  double phase_sim_deg = 0.0;
  double phase_err_deg = 0.0;  // pred - sim, wrapped to (-180, 180]
  double bias_pred = 0.0, bias_sim = 0.0, bias_err_pct = 0.0;
  double amp_pred = 0.0, amp_sim = 0.0, amp_err_pct = 0.0;
};

struct ComparisonReport {
  AnalysisResult analysis;
  SimConfig sim_config;  // resolved controls actually used
  bool simulated = false;
  std::string sim_failure;  // set when the simulation found no usable cycle
  double omega_sim = 0.0;
  double period_sim = 0.0;
  double freq_rel_err_pct = 0.0;  // (pred - sim) / sim * 100
  std::vector<GeneComparison> genes;
  FitDiagnostics diagnostics;
  bool within_tolerance = false;  // |freq err| <= 10% and |phase err| <= 10 deg
};

// Predicts, simulates, extracts and tabulates signed prediction errors.
// Simulation failures are captured in the report, not thrown.
ComparisonReport compare(const Network& net, const SimConfig& config);

enum class SweepAxis { Tau, TauTilde, Q, NGenes, RateA, RateB };

const char* to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Tau;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  bool with_sim = false;
  SimConfig sim;  // base controls for per-point simulations
};

struct SweepRow {
  double value = 0.0;
  bool predicted = false;
  double omega_pred = 0.0;
  double period_pred = 0.0;
  double period_hirata = 0.0;
  double period_approx = 0.0;  // 0 when unavailable (heterogeneous rates)
  bool simulated = false;
  double omega_sim = 0.0;
  double period_sim = 0.0;
  double pred_err_pct = 0.0;    // (period_pred - period_sim) / period_sim * 100
  double hirata_err_pct = 0.0;  // same sign convention
  std::string error;            // per-row failure note; the sweep keeps going
};

// Sweep conventions: tau scales every delay so the mean total delay hits the
// value (tau_tilde likewise via T_A); Q reshapes a and b at fixed T_A; n_genes
// rebuilds the ring from stage 1 with all-repressive stages for odd counts and
// one activating stage for even counts; a and b overwrite the rate on every
// stage. Rows that fail to predict or simulate carry an error note.
std::vector<SweepRow> sweep(const Network& base, const SweepSpec& spec);

struct VerifyReport {
  double omega = 0.0;
  double closure_residual = 0.0;   // amplitude propagation around the ring
  double bias_residual = 0.0;      // ||(I - K0) x|| / ||x||
  double harmonic_residual = 0.0;  // ||(I - M) w|| / ||w||
  double phase_match_deg = 0.0;    // circulant mode shape vs phase formula
  std::vector<Region> regions;     // one per closed-form eigenvalue of K1
  bool lambda1_on_boundary = false;
  bool others_inside = false;
  bool pass = false;
};

// Self-consistency suite: the predicted operating point must close the loop
// (residuals <= 1e-6), the leading eigenvalue must sit on the stability
// boundary with all others inside, and the circulant mode shape must
// reproduce the phase formula.
VerifyReport verify_profile(const Network& net);

struct DescribeRow {
  double x = 0.0, y = 0.0, eta = 0.0, xi = 0.0;
};

// Rendering. CSV carries full double precision and stable headers; tables are
// human-facing with 4 significant digits.
std::string analyze_csv(const AnalysisResult& res);
std::string analyze_table(const AnalysisResult& res);
std::string series_csv(const TimeSeries& series);
std::string sim_summary(const ExtractedProfile& extracted);
std::string compare_csv(const ComparisonReport& rep);
std::string compare_table(const ComparisonReport& rep);
std::string sweep_csv(const std::vector<SweepRow>& rows, SweepAxis axis);
std::string sweep_table(const std::vector<SweepRow>& rows, SweepAxis axis);
std::string describe_csv(const std::vector<DescribeRow>& rows);
std::string verify_table(const VerifyReport& rep);

}  // namespace oscprof
