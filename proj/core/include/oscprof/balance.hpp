#pragma once

#include <vector>

#include "oscprof/describing.hpp"
#include "oscprof/model.hpp"

namespace oscprof {

// First-harmonic description of the limit cycle:
//   p_i(t) = x_i + y_i sin(omega t + phi_i), phi_1 = 0.
struct OscillationProfile {
  double omega = 0.0;              // rad/min
  std::vector<double> phases;      // rad, wrapped to (-pi, pi], phases[0] == 0
  std::vector<double> biases;      // x_i
  std::vector<double> amplitudes;  // y_i
};

// Per-edge data of the phase formula. Edge k runs from gene k to gene k+1
// (wrapping), so it is governed by the downstream stage k+1: Z[k] is 1 when
// that stage is repressive, and delta_tau[k] = tau_r[k+1] + tau_p[k] - tau.
// The delta_tau entries sum to zero by construction.
struct CycleGeometry {
  std::vector<int> Z;
  std::vector<double> delta_tau;
};
CycleGeometry cycle_geometry(const Network& net);

// Normalized frequency fixed point omega_tilde = omega * T_A, i.e. the minimum
// positive solution of
//   omega_tilde = 1 / (sqrt(cot^2 th + Q^2) + cot th), th = pi/N - omega_tilde * tau_tilde,
// found by bisection on [0, pi/(N tau_tilde)). The algebraic form above avoids
// the cancellation in the textbook expression when Q is small; for cot th < 0
// the equivalent (sqrt(cot^2 th + Q^2) - cot th)/Q^2 is used instead.
double solve_omega_tilde(int n_genes, double q, double tau_tilde);

// Zero-delay closed form; N = 1 is rejected (cot(pi) diverges, a single gene
// needs delay to oscillate).
double solve_omega_tilde_no_delay(int n_genes, double q);

// Physical-frequency wrappers, rad/min. solve_frequency delegates to the
// no-delay form at tau = 0.
double solve_frequency(const DimensionlessParams& params);
double solve_frequency_no_delay(const DimensionlessParams& params);

// Minimum positive root of
//   sum_i [ omega (tau_r_i + tau_p_i) + atan(omega/a_i) + atan(omega/b_i) ] = pi.
// Heterogeneity is allowed in every parameter; c and beta do not enter.
double solve_frequency_heterogeneous(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     const std::vector<double>& tau_r,
                                     const std::vector<double>& tau_p);
double solve_frequency_heterogeneous(const Network& net);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
struct ParameterIntervals {
  std::vector<Interval> a, b, c, beta;
};
struct FrequencyBounds {
  double omega_low = 0.0;
  double omega_high = 0.0;
};

// The heterogeneous solution is monotone increasing in every a_i and b_i and
// independent of c_i, beta_i, so the interval endpoints bound it.
FrequencyBounds frequency_bounds(const ParameterIntervals& intervals,
                                 const std::vector<double>& tau_r,
                                 const std::vector<double>& tau_p);

// Raw per-edge phase increments (Z_k - 1/N) pi - omega delta_tau_k, and the
// cumulative phases wrapped to (-pi, pi] with phases[0] = 0.
std::vector<double> phase_increments(const Network& net, double omega);
std::vector<double> solve_phases(const Network& net, double omega);

// |phi(j omega)| for phi(s) = (T_a s + 1)(T_b s + 1): the attenuation the
// first harmonic suffers per stage.
double phi_magnitude(double t_a, double t_b, double omega);

struct BiasAmplitude {
  std::vector<double> biases;
  std::vector<double> amplitudes;
  double residual = 0.0;  // closure residual norm at the returned point
};

// Solves the amplitude fixed point: propagating
//   x_{k+1} = eta_{k+1}(x_k, y_k) x_k,   y_{k+1} = |xi_{k+1}(x_k, y_k)| y_k / |phi(j omega)|
// once around the cycle must return (x_1, y_1). Staged search: coarse 64x64
// log grid over x_1 in [1e-2 sqrt(R), 1e2 sqrt(R)], y_1 in (0, x_1]; damped
// Newton with finite-difference Jacobian from the best cell; Nelder-Mead
// fallback if Newton stalls.
BiasAmplitude solve_bias_amplitude(const Network& net, double omega);

// Closed-form single-gene period estimate 2 (tau_r + tau_p + ln2/a + ln2/b).
double hirata_period(double tau_r, double tau_p, double a, double b);

// Large-delay normalized period approximation 4N + 2N tau_tilde.
double approx_period_normalized(int n_genes, double tau_tilde);

}  // namespace oscprof
