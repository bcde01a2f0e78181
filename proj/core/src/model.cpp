#include "oscprof/model.hpp"

#include <cmath>
#include <limits>

namespace oscprof {

const char* to_string(Regulation reg) {
  return reg == Regulation::Activation ? "activation" : "repression";
}

double hill_raw(double p, double nu, Regulation reg) {
  const double q = std::pow(p, nu);
  if (reg == Regulation::Repression) return 1.0 / (1.0 + q);
  return q / (1.0 + q);
}

double hill(double p, double nu, Regulation reg) {
  if (p < 0.0) throw PreconditionError("hill: negative concentration");
  if (!(nu > 0.0)) throw PreconditionError("hill: Hill coefficient must be > 0");
  return hill_raw(p, nu, reg);
}

double hill_deriv(double p, double nu, Regulation reg) {
  if (p < 0.0) throw PreconditionError("hill_deriv: negative concentration");
  if (!(nu > 0.0)) throw PreconditionError("hill_deriv: Hill coefficient must be > 0");
  const double q = std::pow(p, nu);
  const double d = nu * std::pow(p, nu - 1.0) / ((1.0 + q) * (1.0 + q));
  return reg == Regulation::Repression ? -d : d;
}

void GeneStage::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(a)) throw PreconditionError("gene stage: a must be > 0");
  if (!positive(b)) throw PreconditionError("gene stage: b must be > 0");
  if (!positive(c)) throw PreconditionError("gene stage: c must be > 0");
  if (!(std::isfinite(beta) && beta >= 0.0))
    throw PreconditionError("gene stage: beta must be >= 0");
  if (!(std::isfinite(tau_r) && tau_r >= 0.0))
    throw PreconditionError("gene stage: tau_r must be >= 0");
  if (!(std::isfinite(tau_p) && tau_p >= 0.0))
    throw PreconditionError("gene stage: tau_p must be >= 0");
  if (!positive(nu)) throw PreconditionError("gene stage: nu must be > 0");
  if (history_r && !(std::isfinite(*history_r) && *history_r >= 0.0))
    throw PreconditionError("gene stage: history_r must be >= 0");
  if (history_p && !(std::isfinite(*history_p) && *history_p >= 0.0))
    throw PreconditionError("gene stage: history_p must be >= 0");
}

int Network::classify() const {
  int delta = 1;
  for (const auto& s : stages) delta *= s.delta();
  return delta;
}

double Network::mean_delay() const {
  double sum = 0.0;
  for (const auto& s : stages) sum += s.tau_total();
  return sum / static_cast<double>(stages.size());
}

double Network::min_positive_delay() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : stages) {
    if (s.tau_r > 0.0) m = std::min(m, s.tau_r);
    if (s.tau_p > 0.0) m = std::min(m, s.tau_p);
  }
  return std::isfinite(m) ? m : 0.0;
}

bool Network::homogeneous_rates(double rel_tol) const {
  auto close = [rel_tol](double u, double v) {
    return std::abs(u - v) <= rel_tol * std::max(std::abs(u), std::abs(v));
  };
  const auto& first = stages.front();
  for (const auto& s : stages) {
    if (!close(s.a, first.a) || !close(s.b, first.b) || !close(s.c, first.c) ||
        !close(s.beta, first.beta))
      return false;
  }
  return true;
}

void Network::validate() const {
  if (stages.empty()) throw PreconditionError("network: needs at least one gene");
  for (const auto& s : stages) s.validate();
}

DimensionlessParams dimensionless(const Network& net) {
  net.validate();
  if (!net.homogeneous_rates())
    throw PreconditionError(
        "dimensionless: rates are heterogeneous; use the frequency solver's "
        "heterogeneous path instead");
  const auto& g = net.stages.front();
  if (!(g.beta > 0.0))
    throw PreconditionError("dimensionless: beta must be > 0 for analysis");

  DimensionlessParams d;
  d.n_genes = net.size();
  d.T_a = 1.0 / g.a;
  d.T_b = 1.0 / g.b;
  d.T_A = 0.5 * (d.T_a + d.T_b);
  d.T_G = std::sqrt(d.T_a * d.T_b);
  d.Q = d.T_G / d.T_A;
  d.R = g.production_ratio();
  d.tau = net.mean_delay();
  d.tau_tilde = d.tau / d.T_A;
  return d;
}

}  // namespace oscprof
