#pragma once

#include <complex>

#include <Eigen/Dense>

#include "oscprof/errors.hpp"
#include "oscprof/model.hpp"

namespace oscprof {

// Scalar transfer block shared by every stage pair, phi(s) = (1 + t_a s)(1 + t_b s),
// plus the delay term that enters the loop phase. gain/phase are evaluated on the
// imaginary axis where the stability boundary lives.
struct LoopTransfer {
  double t_a = 0.0;
  double t_b = 0.0;
  double tau = 0.0;

  std::complex<double> phi(std::complex<double> s) const;
  double gain(double omega) const;   // |phi(j omega)|
  double phase(double omega) const;  // atan(t_a w) + atan(t_b w) + w tau, strictly increasing
};

// Mean-delay loop transfer of a network with homogeneous rates.
LoopTransfer loop_transfer(const Network& net);

// Cyclic shift matrix: g(i) sits at row i, column (i - 1 + N) % N. This is the
// only sparsity pattern a single feedback ring produces.
Eigen::MatrixXd cyc(const Eigen::VectorXd& g);
Eigen::MatrixXcd cyc(const Eigen::VectorXcd& g);

// Gain matrices of the harmonic-balanced loop at a given frequency. K0 acts on
// the bias vector, K1 on the first-harmonic phasors. U redistributes the stage
// delays around their mean so that K1's spectrum depends only on the total.
struct CyclicGainMatrices {
  Eigen::MatrixXd K0;   // cyc(eta)
  Eigen::MatrixXcd U;   // diag(exp(j omega (tau - tau_i)))
  Eigen::MatrixXcd K1;  // U * cyc(xi)
};

CyclicGainMatrices gain_matrices(const Eigen::VectorXd& eta, const Eigen::VectorXd& xi,
                                 const Eigen::VectorXd& tau_stage, double omega);

// Closed-form spectrum of K1: the N solutions of lambda^N = prod(xi). Requires
// prod(xi) < 0, the sign a functioning negative feedback ring must have.
Eigen::VectorXcd eigenvalues_K1(const Eigen::VectorXd& xi);

struct K0Eigen {
  Eigen::VectorXcd eigenvalues;  // roots of lambda^N = prod(eta)
  Eigen::VectorXd eigenvector;   // eigenvector of the real positive root, last entry 1
};

// Requires prod(eta) > 0.
K0Eigen eigen_K0(const Eigen::VectorXd& eta);

// Diagonal similarity taking K1 to a circulant with constant generator, plus the
// eigenvector of the least-damped mode mapped back through the similarity. The
// entries of y carry the predicted first-harmonic phase pattern.
struct CirculantTransform {
  Eigen::MatrixXcd D;  // diagonal, D(0,0) = 1
  Eigen::MatrixXcd V;  // circulant equivalent of K1
  Eigen::VectorXcd q;  // eigenvector of V for the least-damped eigenvalue
  Eigen::VectorXcd y;  // D q
};

// Requires prod(xi) < 0 and every xi_i nonzero.
CirculantTransform circulant_transform(const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& tau_stage, double omega);

enum class Region { Inside, OnBoundary, Outside };

const char* to_string(Region r);

struct RegionCheck {
  Region region = Region::Inside;
  // Smallest omega >= 0 where the loop phase matches arg(gamma); +inf when the
  // phase never accumulates that far (then the point is trivially inside).
  double omega = 0.0;
};

// Locates gamma relative to the stability boundary traced by the loop transfer:
// on the boundary the loop gain exactly offsets |phi(j omega)| at the matching
// phase. Classification uses a 1e-9 relative band around the boundary.
RegionCheck stability_region_check(std::complex<double> gamma, const LoopTransfer& loop);

struct ClosedLoopResiduals {
  double bias = 0.0;      // ||(I - K0) x|| / ||x||
  double harmonic = 0.0;  // ||(I - M) w|| / ||w||, M the per-stage harmonic loop map
};

// Verifies that a predicted operating point closes the loop. x holds the bias
// vector, w the first-harmonic phasors of the delayed proteins.
ClosedLoopResiduals closed_loop_residuals(const Eigen::VectorXd& eta,
                                          const Eigen::VectorXd& xi,
                                          const Eigen::VectorXd& tau_stage, double omega,
                                          const LoopTransfer& loop, const Eigen::VectorXd& x,
                                          const Eigen::VectorXcd& w);

}  // namespace oscprof
