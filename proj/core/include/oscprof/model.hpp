#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscprof/errors.hpp"

namespace oscprof {

enum class Regulation { Activation, Repression };

const char* to_string(Regulation reg);

// Hill regulation with the dissociation constant normalized to 1:
// repression 1/(1+p^nu), activation p^nu/(1+p^nu). The checked form rejects
// negative concentrations; the raw form leaves definedness to the caller
// (integer nu integrands may probe slightly negative arguments).
double hill(double p, double nu, Regulation reg);
double hill_raw(double p, double nu, Regulation reg);
double hill_deriv(double p, double nu, Regulation reg);

// One gene of the delayed transcription/translation loop
//   r_i'(t) = -a_i r_i(t) + beta_i f_i(p_{i-1}(t - tau_p_{i-1}))
//   p_i'(t) =  c_i r_i(t - tau_r_i) - b_i p_i(t)
// with f_i the stage's Hill nonlinearity. Concentrations are pre-normalized by
// the half-maximal effective concentration.
struct GeneStage {
  double a = 0.0;      // mRNA degradation rate, 1/min
  double b = 0.0;      // protein degradation rate, 1/min
  double c = 0.0;      // translation rate, 1/min
  double beta = 0.0;   // transcription rate, 1/min
  double tau_r = 0.0;  // transcription delay, min
  double tau_p = 0.0;  // translation delay, min
  double nu = 0.0;     // Hill coefficient
  Regulation regulation = Regulation::Repression;

  // Optional constant simulation history for t <= 0; unset means 1.0.
  std::optional<double> history_r;
  std::optional<double> history_p;

  int delta() const { return regulation == Regulation::Activation ? +1 : -1; }
  double tau_total() const { return tau_r + tau_p; }

  // R = c beta / (a b): production-to-degradation ratio; the describing
  // functions take it as the nonlinearity gain and sqrt(R) sets the
  // equilibrium concentration scale.
  double production_ratio() const { return c * beta / (a * b); }

  double hill(double p) const { return oscprof::hill(p, nu, regulation); }

  // beta = 0 is allowed at the type level so decay-only simulations are
  // expressible; analysis operations insist on beta > 0 separately.
  void validate() const;
};

struct Network {
  std::vector<GeneStage> stages;

  int size() const { return static_cast<int>(stages.size()); }

  // Product of the regulation signs; the oscillation analysis requires -1
  // (an odd number of repressive stages).
  int classify() const;

  double mean_delay() const;          // mean of tau_r + tau_p over stages
  double min_positive_delay() const;  // 0 when every delay vanishes
  bool homogeneous_rates(double rel_tol = 1e-12) const;
  void validate() const;
};

struct DimensionlessParams {
  int n_genes = 0;
  double T_a = 0.0;       // 1/a, min
  double T_b = 0.0;       // 1/b, min
  double T_A = 0.0;       // (T_a + T_b)/2
  double T_G = 0.0;       // sqrt(T_a T_b)
  double Q = 0.0;         // T_G / T_A, in (0, 1]
  double R = 0.0;         // c beta / (a b)
  double tau = 0.0;       // mean total delay, min
  double tau_tilde = 0.0; // tau / T_A
};

// Requires rates (a, b, c, beta) homogeneous across stages; delays may differ
// and enter only through their mean.
DimensionlessParams dimensionless(const Network& net);

}  // namespace oscprof
