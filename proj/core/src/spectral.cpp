#include "oscprof/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oscprof {

namespace {

constexpr double kPi = 3.14159265358979323846;
const std::complex<double> kJ{0.0, 1.0};

void check_loop(const LoopTransfer& loop) {
  if (!(loop.t_a > 0.0 && loop.t_b > 0.0))
    throw PreconditionError("loop transfer: time constants must be > 0");
  if (!(loop.tau >= 0.0)) throw PreconditionError("loop transfer: tau must be >= 0");
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cyc_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& g) {
  const Eigen::Index n = g.size();
  if (n < 1) throw PreconditionError("cyc: empty generator");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, (i - 1 + n) % n) = g(i);
  return m;
}

double product(const Eigen::VectorXd& v) {
  double p = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) p *= v(i);
  return p;
}

}  // namespace

std::complex<double> LoopTransfer::phi(std::complex<double> s) const {
  return (1.0 + t_a * s) * (1.0 + t_b * s);
}

double LoopTransfer::gain(double omega) const {
  const double u = t_a * omega;
  const double v = t_b * omega;
  return std::sqrt((1.0 + u * u) * (1.0 + v * v));
}

double LoopTransfer::phase(double omega) const {
  return std::atan(t_a * omega) + std::atan(t_b * omega) + omega * tau;
}

LoopTransfer loop_transfer(const Network& net) {
  net.validate();
  if (!net.homogeneous_rates())
    throw PreconditionError("loop transfer: stages do not share a, b rates");
  return {1.0 / net.stages.front().a, 1.0 / net.stages.front().b, net.mean_delay()};
}

Eigen::MatrixXd cyc(const Eigen::VectorXd& g) { return cyc_impl<double>(g); }

Eigen::MatrixXcd cyc(const Eigen::VectorXcd& g) {
  return cyc_impl<std::complex<double>>(g);
}

CyclicGainMatrices gain_matrices(const Eigen::VectorXd& eta, const Eigen::VectorXd& xi,
                                 const Eigen::VectorXd& tau_stage, double omega) {
  const Eigen::Index n = eta.size();
  if (n < 1 || xi.size() != n || tau_stage.size() != n)
    throw PreconditionError("gain matrices: inconsistent sizes");
  if (!(omega >= 0.0)) throw PreconditionError("gain matrices: omega must be >= 0");
  const double tau = tau_stage.mean();

  CyclicGainMatrices out;
  out.K0 = cyc(eta);
  out.U = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.U(i, i) = std::exp(kJ * (omega * (tau - tau_stage(i))));
  out.K1 = out.U * cyc(xi.cast<std::complex<double>>().eval());
  return out;
}

Eigen::VectorXcd eigenvalues_K1(const Eigen::VectorXd& xi) {
  const Eigen::Index n = xi.size();
  if (n < 1) throw PreconditionError("first-harmonic spectrum: empty gain vector");
  const double prod = product(xi);
  if (!(prod < 0.0))
    throw PreconditionError(
        "first-harmonic spectrum: loop gain product must be negative (odd "
        "number of repressive stages)");
  const double rho = std::pow(-prod, 1.0 / n);
  Eigen::VectorXcd lam(n);
  for (Eigen::Index i = 0; i < n; ++i)
    lam(i) = rho * std::exp(kJ * ((2.0 * i + 1.0) * kPi / n));
  return lam;
}

K0Eigen eigen_K0(const Eigen::VectorXd& eta) {
  const Eigen::Index n = eta.size();
  if (n < 1) throw PreconditionError("bias spectrum: empty gain vector");
  const double prod = product(eta);
  if (!(prod > 0.0))
    throw PreconditionError("bias spectrum: loop gain product must be positive");
  const double rho = std::pow(prod, 1.0 / n);

  K0Eigen out;
  out.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.eigenvalues(i) = rho * std::exp(kJ * (2.0 * i * kPi / n));
  out.eigenvector.resize(n);
  double partial = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    partial *= eta(i) / rho;
    out.eigenvector(i) = partial;
  }
  return out;
}

CirculantTransform circulant_transform(const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& tau_stage, double omega) {
  const Eigen::Index n = xi.size();
  if (n < 1 || tau_stage.size() != n)
    throw PreconditionError("circulant transform: inconsistent sizes");
  if (!(omega >= 0.0))
    throw PreconditionError("circulant transform: omega must be >= 0");
  for (Eigen::Index i = 0; i < n; ++i)
    if (xi(i) == 0.0)
      throw PreconditionError("circulant transform: xi entries must be nonzero");
  const double prod = product(xi);
  if (!(prod < 0.0))
    throw PreconditionError("circulant transform: loop gain product must be negative");

  const double tau = tau_stage.mean();
  Eigen::VectorXcd a(n);
  for (Eigen::Index i = 0; i < n; ++i)
    a(i) = xi(i) * std::exp(kJ * (omega * (tau - tau_stage(i))));

  const double rho = std::pow(-prod, 1.0 / n);
  const bool even = n % 2 == 0;
  const std::complex<double> v =
      even ? rho * std::exp(kJ * (kPi / n)) : std::complex<double>(-rho, 0.0);

  CirculantTransform out;
  out.D = Eigen::MatrixXcd::Zero(n, n);
  std::complex<double> d = 1.0;
  out.D(0, 0) = d;
  for (Eigen::Index i = 1; i < n; ++i) {
    d *= a(i) / v;
    out.D(i, i) = d;
  }
  out.V = cyc(Eigen::VectorXcd::Constant(n, v).eval());

  const Eigen::MatrixXcd k1 = gain_matrices(Eigen::VectorXd::Ones(n), xi, tau_stage, omega).K1;
  const double err = (out.D.inverse() * k1 * out.D - out.V).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10 * rho))
    throw std::logic_error("circulant transform: similarity identity violated");

  out.q.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.q(i) = even ? std::complex<double>(1.0, 0.0)
                    : std::exp(-kJ * ((kPi + kPi / n) * static_cast<double>(i)));
  out.y = out.D.diagonal().cwiseProduct(out.q);
  return out;
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Inside: return "inside";
    case Region::OnBoundary: return "on-boundary";
    case Region::Outside: return "outside";
  }
  return "?";
}

RegionCheck stability_region_check(std::complex<double> gamma, const LoopTransfer& loop) {
  check_loop(loop);
  if (gamma == 0.0)
    throw PreconditionError("stability check: gamma must be nonzero");

  double target = std::arg(gamma);
  if (target < 0.0) target += 2.0 * kPi;

  RegionCheck out;
  if (target == 0.0) {
    out.omega = 0.0;
  } else if (loop.tau == 0.0 && target >= kPi) {
    // Without delay the loop phase saturates strictly below pi, so no boundary
    // point exists in this direction and the gain there is unbounded.
    out.region = Region::Inside;
    out.omega = std::numeric_limits<double>::infinity();
    return out;
  } else {
    double hi = 1.0;
    while (loop.phase(hi) < target) {
      hi *= 2.0;
      if (hi > 1e150) {
        // The loop phase saturates below the target; no boundary point exists
        // in this direction and the gain there is unbounded.
        out.region = Region::Inside;
        out.omega = std::numeric_limits<double>::infinity();
        return out;
      }
    }
    double lo = hi > 1.0 ? 0.5 * hi : 0.0;
    for (int it = 0; it < 300 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (loop.phase(mid) < target ? lo : hi) = mid;
    }
    out.omega = 0.5 * (lo + hi);
  }

  const double boundary_gain = loop.gain(out.omega);
  const double rel = (std::abs(gamma) - boundary_gain) / boundary_gain;
  if (std::abs(rel) <= 1e-9)
    out.region = Region::OnBoundary;
  else
    out.region = rel < 0.0 ? Region::Inside : Region::Outside;
  return out;
}

ClosedLoopResiduals closed_loop_residuals(const Eigen::VectorXd& eta,
                                          const Eigen::VectorXd& xi,
                                          const Eigen::VectorXd& tau_stage, double omega,
                                          const LoopTransfer& loop, const Eigen::VectorXd& x,
                                          const Eigen::VectorXcd& w) {
  const Eigen::Index n = eta.size();
  if (n < 1 || xi.size() != n || tau_stage.size() != n || x.size() != n || w.size() != n)
    throw PreconditionError("closed-loop residuals: inconsistent sizes");
  if (!(omega > 0.0))
    throw PreconditionError("closed-loop residuals: omega must be > 0");
  if (!(x.norm() > 0.0 && w.norm() > 0.0))
    throw PreconditionError("closed-loop residuals: zero operating point");
  check_loop(loop);

  ClosedLoopResiduals out;
  out.bias = (x - cyc(eta) * x).norm() / x.norm();

  const std::complex<double> phi = loop.phi(kJ * omega);
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i)
    b(i) = xi(i) * std::exp(-kJ * (omega * tau_stage(i))) / phi;
  out.harmonic = (w - cyc(b) * w).norm() / w.norm();
  return out;
}

}  // namespace oscprof
