#pragma once

#include <vector>

#include "oscprof/balance.hpp"
#include "oscprof/errors.hpp"
#include "oscprof/model.hpp"

namespace oscprof {

// Integration controls. Zero step/t_end mean "not resolved yet": simulate()
// requires positive values, and the workflow layer fills defaults from the
// network (step = smallest positive delay / 20, t_end = 30 predicted periods).
struct SimConfig {
  double step = 0.0;
  double t_end = 0.0;
  double transient_fraction = 0.5;
  // Constant pre-zero history per gene; when empty, each stage's history_r /
  // history_p (default 1.0) is used.
  std::vector<double> history_r;
  std::vector<double> history_p;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> r;  // r[i][k]: mRNA of gene i at times[k]
  std::vector<std::vector<double>> p;  // p[i][k]: protein of gene i at times[k]
};

// Integrates the delayed rate equations with classical RK4 on a fixed grid.
// Delayed terms are read from the committed trajectory through cubic Hermite
// interpolation, so the step must not exceed the smallest positive delay
// (stage lookups then never reach past the current step's start). Channels
// with exactly zero delay read the running stage state instead. Hill inputs
// are clamped at zero so roundoff excursions below zero stay harmless.
//
// Throws PreconditionError for invalid controls and SimulationError when the
// state diverges.
TimeSeries simulate(const Network& net, const SimConfig& config);

struct FitDiagnostics {
  double omega_crossing = 0.0;  // frequency from the mean-crossing span
  double omega_refit = 0.0;     // frequency from the least-squares refit
  int cycles = 0;               // whole cycles inside the fit window
  double window_start = 0.0;
  double window_end = 0.0;
  // Per-gene RMS of the sinusoid fit residual divided by the fitted amplitude.
  std::vector<double> residual_rms_ratio;
};

struct ExtractedProfile {
  OscillationProfile profile;
  FitDiagnostics diagnostics;
};

// Measures frequency, phases, biases and amplitudes from a simulated protein
// trajectory. Mean up-crossings of p_1 after the transient window locate the
// cycles; the last stretch whose consecutive five-cycle periods agree within
// 0.1% is treated as settled and fitted. A golden-section search over a 2%
// band around the crossing frequency minimizes the total least-squares error
// of per-gene sinusoid fits; the refit frequency is authoritative. Phases are
// reported in [0, 2pi) with gene 1 shifted to zero.
//
// Throws SimulationError with "no oscillation detected" when fewer than 11
// crossings exist, and "not settled" when the period keeps drifting.
ExtractedProfile extract_profile(const TimeSeries& series, double transient_fraction);

}  // namespace oscprof
