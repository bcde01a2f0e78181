#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oscprof/balance.hpp"
#include "oscprof/model.hpp"
#include "support.hpp"

using namespace oscprof;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Oracle values from an extended-precision bisection of the fixed-point
// equation at Q = 0.574959574576069 (the five-gene benchmark's Q), rows
// tau_tilde in {0, 0.5, 1, 2, 5}.
const double kTauTildeGrid[5] = {0.0, 0.5, 1.0, 2.0, 5.0};
const int kNGrid[4] = {3, 5, 7, 9};
const double kOmegaTildeGrid[4][5] = {
    {0.71830920665531996, 0.48152184333338242, 0.37735658996955658, 0.27049302498822808,
     0.15053531609302157},
    {0.34867172549255812, 0.26438697587012378, 0.21558104593558262, 0.15899969904105841,
     0.089965123780578015},
    {0.23634113150303851, 0.18422265983087734, 0.15183841356268597, 0.11290362908434487,
     0.064189296118756852},
    {0.18003515961583428, 0.14182783690306158, 0.11740859980597392, 0.08759844795380652,
     0.049901977866458475},
};
constexpr double kBenchmarkQ = 0.574959574576069;

Network homogeneous_ring(int n, double a, double b, double c, double beta,
                         const std::vector<double>& tau_r, const std::vector<double>& tau_p) {
  Network net;
  for (int i = 0; i < n; ++i) {
    GeneStage g;
    g.a = a;
    g.b = b;
    g.c = c;
    g.beta = beta;
    g.nu = 2.0;
    g.tau_r = tau_r[i];
    g.tau_p = tau_p[i];
    g.regulation = Regulation::Repression;
    net.stages.push_back(g);
  }
  if (n % 2 == 0) net.stages.back().regulation = Regulation::Activation;
  return net;
}

}  // namespace

TEST_CASE("zero-delay normalized frequency closed form") {
  // Q = 1 collapses the fixed point to tan(pi/2N).
  CHECK(solve_omega_tilde_no_delay(3, 1.0) ==
        doctest::Approx(std::tan(kPi / 6.0)).epsilon(1e-14));
  CHECK(solve_omega_tilde_no_delay(3, 0.5) ==
        doctest::Approx(0.7456493865453901).epsilon(1e-14));

  // A single gene without delay has no oscillatory fixed point.
  CHECK_THROWS_AS(solve_omega_tilde_no_delay(1, 0.7), PreconditionError);
  CHECK_THROWS_AS(solve_omega_tilde(1, 0.7, 0.0), PreconditionError);

  SUBCASE("Q domain") {
    CHECK_THROWS_AS(solve_omega_tilde_no_delay(3, 0.0), PreconditionError);
    CHECK_THROWS_AS(solve_omega_tilde_no_delay(3, 1.0 + 1e-9), PreconditionError);
    CHECK_THROWS_AS(solve_omega_tilde(0, 0.5, 1.0), PreconditionError);
    CHECK_THROWS_AS(solve_omega_tilde(3, 0.5, -1.0), PreconditionError);
  }
}

TEST_CASE("normalized frequency grid matches the extended-precision oracle") {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 5; ++c) {
      const double got = solve_omega_tilde(kNGrid[r], kBenchmarkQ, kTauTildeGrid[c]);
      CHECK(got == doctest::Approx(kOmegaTildeGrid[r][c]).epsilon(5e-12));
      if (kTauTildeGrid[c] > 0.0) {
        CHECK(got > 0.0);
        CHECK(got < kPi / (kNGrid[r] * kTauTildeGrid[c]));
      }
    }
  }

  SUBCASE("frequency decreases strictly in tau_tilde and in N") {
    for (int r = 0; r < 4; ++r)
      for (int c = 1; c < 5; ++c)
        CHECK(kOmegaTildeGrid[r][c] < kOmegaTildeGrid[r][c - 1]);
    for (int c = 0; c < 5; ++c)
      for (int r = 1; r < 4; ++r)
        CHECK(kOmegaTildeGrid[r][c] < kOmegaTildeGrid[r - 1][c]);
  }
}

TEST_CASE("five-gene benchmark frequency") {
  const DimensionlessParams d = dimensionless(testsup::pentilator());
  const double omega = solve_frequency(d);
  CHECK(omega == doctest::Approx(0.08976697602790655).epsilon(1e-10));
  CHECK(2.0 * kPi / omega == doctest::Approx(69.99439643846624).epsilon(1e-10));
}

TEST_CASE("heterogeneous solver agrees with the homogeneous reduction") {
  const Network pent = testsup::pentilator();
  const double hom = solve_frequency(dimensionless(pent));
  const double het = solve_frequency_heterogeneous(pent);
  CHECK(testsup::rel_close(hom, het, 1e-9));
  CHECK(het == doctest::Approx(0.08976697602790648).epsilon(1e-9));

  SUBCASE("100 random homogeneous draws") {
    std::mt19937 rng(7041u);
    std::uniform_real_distribution<double> log_rate(std::log(0.05), std::log(5.0));
    std::uniform_real_distribution<double> delay(0.05, 10.0);
    std::uniform_int_distribution<int> genes(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = genes(rng);
      const double a = std::exp(log_rate(rng));
      const double b = std::exp(log_rate(rng));
      std::vector<double> tau_r(n), tau_p(n);
      for (int i = 0; i < n; ++i) {
        tau_r[i] = delay(rng);
        tau_p[i] = delay(rng);
      }
      const Network net = homogeneous_ring(n, a, b, 0.3, 10.0, tau_r, tau_p);
      const double w_hom = solve_frequency(dimensionless(net));
      const double w_het = solve_frequency_heterogeneous(net);
      CHECK(testsup::rel_close(w_hom, w_het, 1e-9));
    }
  }

  SUBCASE("the frequency never depends on c or beta") {
    Network scaled = pent;
    for (auto& s : scaled.stages) {
      s.c *= 321.0;
      s.beta *= 0.017;
    }
    CHECK(solve_frequency(dimensionless(scaled)) == hom);
    CHECK(solve_frequency_heterogeneous(scaled) == het);
  }

  SUBCASE("single gene requires a positive total delay") {
    CHECK_THROWS_AS(solve_frequency_heterogeneous({1.0}, {1.0}, {0.0}, {0.0}),
                    PreconditionError);
    CHECK(solve_frequency_heterogeneous({1.0}, {1.0}, {1.0}, {0.5}) > 0.0);
  }
}

TEST_CASE("interval endpoints bound the frequency") {
  std::mt19937 rng(90125u);
  std::uniform_real_distribution<double> log_rate(std::log(0.1), std::log(5.0));
  std::uniform_real_distribution<double> delay(0.05, 5.0);
  std::uniform_real_distribution<double> widen(0.0, 0.5);
  std::uniform_int_distribution<int> genes(1, 6);

  for (int trial = 0; trial < 100; ++trial) {
    const int n = genes(rng);
    std::vector<double> a(n), b(n), tau_r(n), tau_p(n);
    ParameterIntervals box;
    for (int i = 0; i < n; ++i) {
      a[i] = std::exp(log_rate(rng));
      b[i] = std::exp(log_rate(rng));
      tau_r[i] = delay(rng);
      tau_p[i] = delay(rng);
      box.a.push_back({a[i] * (1.0 - widen(rng) * 0.9), a[i] * (1.0 + widen(rng))});
      box.b.push_back({b[i] * (1.0 - widen(rng) * 0.9), b[i] * (1.0 + widen(rng))});
      box.c.push_back({0.1, 10.0});
      box.beta.push_back({0.1, 10.0});
    }
    const FrequencyBounds bounds = frequency_bounds(box, tau_r, tau_p);
    const double omega = solve_frequency_heterogeneous(a, b, tau_r, tau_p);
    CHECK(bounds.omega_low <= omega * (1.0 + 1e-12));
    CHECK(bounds.omega_high >= omega * (1.0 - 1e-12));
    CHECK(bounds.omega_low <= bounds.omega_high);
  }

  SUBCASE("interval validation") {
    ParameterIntervals bad;
    bad.a.push_back({2.0, 1.0});  // inverted
    bad.b.push_back({1.0, 1.0});
    bad.c.push_back({1.0, 1.0});
    bad.beta.push_back({1.0, 1.0});
    CHECK_THROWS_AS(frequency_bounds(bad, {1.0}, {0.5}), PreconditionError);
    bad.a[0] = {0.0, 1.0};  // nonpositive lower endpoint
    CHECK_THROWS_AS(frequency_bounds(bad, {1.0}, {0.5}), PreconditionError);
  }
}

TEST_CASE("cycle geometry of the five-gene benchmark") {
  const CycleGeometry geo = cycle_geometry(testsup::pentilator());
  REQUIRE(geo.Z.size() == 5);
  // Edge k is governed by the downstream stage k+1; pattern R,R,A,R,A.
  CHECK(geo.Z == std::vector<int>{1, 0, 1, 0, 1});

  const std::vector<double> want_dtau = {0.6, 0.1, -0.7, -0.4, 0.4};
  double sum = 0.0;
  for (size_t k = 0; k < 5; ++k) {
    CHECK(geo.delta_tau[k] == doctest::Approx(want_dtau[k]).epsilon(1e-12));
    sum += geo.delta_tau[k];
  }
  CHECK(std::abs(sum) <= 1e-12);
}

TEST_CASE("phase formula on the five-gene benchmark") {
  const Network pent = testsup::pentilator();
  const DimensionlessParams d = dimensionless(pent);
  const double omega = solve_frequency(d);
  const std::vector<double> phases = solve_phases(pent, omega);

  REQUIRE(phases.size() == 5);
  CHECK(phases[0] == 0.0);
  const double deg[5] = {0.0, 140.914, 104.3997, 252.0, 218.0573};
  for (int i = 1; i < 5; ++i) {
    double got = phases[i] * 180.0 / kPi;
    if (got < 0.0) got += 360.0;
    CHECK(got == doctest::Approx(deg[i]).epsilon(5e-6));
  }
  for (double ph : phases) {
    CHECK(ph > -kPi);
    CHECK(ph <= kPi);
  }

  SUBCASE("increments telescope to (sum Z - 1) pi") {
    const std::vector<double> inc = phase_increments(pent, omega);
    double total = 0.0;
    for (double v : inc) total += v;
    // Three repressive edges: (3 - 1) pi, and the delta_tau terms cancel.
    CHECK(total == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  }
}

TEST_CASE("homogeneous all-repression ring phases are an exact 120 degree ladder") {
  const Network tri = testsup::repressilator();
  const double omega = solve_frequency(dimensionless(tri));
  CHECK(omega == doctest::Approx(0.13227514933225049).epsilon(1e-10));

  const std::vector<double> phases = solve_phases(tri, omega);
  REQUIRE(phases.size() == 3);
  CHECK(phases[0] == 0.0);
  // Identical delays make every delta_tau exactly zero, so the increments are
  // exactly (1 - 1/3) pi each.
  CHECK(phases[1] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  CHECK(phases[2] == doctest::Approx(-2.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("first-harmonic attenuation magnitude") {
  const DimensionlessParams d = dimensionless(testsup::pentilator());
  const double omega = solve_frequency(d);
  CHECK(phi_magnitude(d.T_a, d.T_b, omega) ==
        doctest::Approx(1.0972115152647195).epsilon(1e-12));

  // |phi(jw)|^2 = (1 + (T_a w)^2)(1 + (T_b w)^2)
  for (double w : {0.01, 0.1, 1.0, 10.0}) {
    const double m = phi_magnitude(0.5, 5.0, w);
    const double sq = (1.0 + 0.25 * w * w) * (1.0 + 25.0 * w * w);
    CHECK(m * m == doctest::Approx(sq).epsilon(1e-13));
  }
  CHECK(phi_magnitude(0.5, 5.0, 0.0) == 1.0);
}

TEST_CASE("bias and amplitude fixed point of the five-gene benchmark") {
  const Network pent = testsup::pentilator();
  const DimensionlessParams d = dimensionless(pent);
  const double omega = solve_frequency(d);
  const BiasAmplitude ba = solve_bias_amplitude(pent, omega);

  REQUIRE(ba.biases.size() == 5);
  CHECK(ba.residual <= 1e-10);

  // Cross-solver oracle values (independent grid+Newton implementation).
  const double x_want[5] = {3.0859003907216227, 2.426133, 4.900007, 0.54995, 1.897278};
  const double y_want[5] = {3.389111546877804, 3.205739, 3.019362, 0.580149, 2.069653};
  CHECK(testsup::rel_close(ba.biases[0], x_want[0], 1e-9));
  CHECK(testsup::rel_close(ba.amplitudes[0], y_want[0], 1e-9));
  for (int i = 1; i < 5; ++i) {
    CHECK(testsup::rel_close(ba.biases[i], x_want[i], 1e-5));
    CHECK(testsup::rel_close(ba.amplitudes[i], y_want[i], 1e-5));
  }

  SUBCASE("the solved point closes both gain products") {
    // Stage i's describing gains are evaluated at its input gene's bias and
    // amplitude; around the ring the bias gains multiply to one and the
    // harmonic gains to |phi(j omega)|^N.
    double prod_eta = 1.0;
    double prod_xi = 1.0;
    const int n = pent.size();
    for (int i = 0; i < n; ++i) {
      const GeneStage& s = pent.stages[i];
      const int up = (i - 1 + n) % n;
      const DescribingPair g = describe(s.regulation, s.nu, s.production_ratio(),
                                        ba.biases[up], ba.amplitudes[up]);
      prod_eta *= g.eta;
      prod_xi *= g.xi;
    }
    CHECK(std::abs(prod_eta - 1.0) <= 1e-8);
    CHECK(prod_xi < 0.0);
    const double phi = phi_magnitude(d.T_a, d.T_b, omega);
    CHECK(std::pow(std::abs(prod_xi), 1.0 / n) == doctest::Approx(phi).epsilon(1e-8));
  }
}

TEST_CASE("single-gene fixed point at somitogenesis-clock scale") {
  const Network net = testsup::hes7();
  const double omega = solve_frequency(dimensionless(net));
  CHECK(2.0 * kPi / omega == doctest::Approx(120.21493071413158).epsilon(1e-10));

  const BiasAmplitude ba = solve_bias_amplitude(net, omega);
  CHECK(ba.biases[0] == doctest::Approx(38.671194767228727).epsilon(1e-6));
  CHECK(ba.amplitudes[0] == doctest::Approx(39.979279013944691).epsilon(1e-6));
  CHECK(ba.residual <= 1e-10);
}

TEST_CASE("amplitude solver failure modes") {
  const Network pent = testsup::pentilator();
  CHECK_THROWS_AS(solve_bias_amplitude(pent, 0.0), PreconditionError);

  SUBCASE("a loop too weak to oscillate collapses to zero amplitude") {
    Network weak = pent;
    for (auto& s : weak.stages) s.beta = 0.5;
    const double omega = solve_frequency(dimensionless(weak));
    CHECK_THROWS_AS(solve_bias_amplitude(weak, omega), ConvergenceError);
  }
}

TEST_CASE("closed-form period estimates") {
  const Network single = testsup::hes7();
  const GeneStage& g = single.stages[0];
  CHECK(hirata_period(g.tau_r, g.tau_p, g.a, g.b) ==
        doctest::Approx(120.0).epsilon(1e-12));
  CHECK(hirata_period(2.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(6.0 + 4.0 * std::log(2.0)).epsilon(1e-14));

  SUBCASE("linear-in-delay approximation") {
    CHECK(approx_period_normalized(3, 0.0) == 12.0);
    CHECK(approx_period_normalized(3, 2.0) == doctest::Approx(24.0).epsilon(1e-15));
    // Slope in tau_tilde is exactly 2N.
    const double slope =
        (approx_period_normalized(5, 4.0) - approx_period_normalized(5, 1.0)) / 3.0;
    CHECK(slope == doctest::Approx(10.0).epsilon(1e-14));

    const DimensionlessParams d = dimensionless(single);
    CHECK(approx_period_normalized(1, d.tau_tilde) * d.T_A ==
          doctest::Approx(140.36397188089231).epsilon(1e-9));
  }
}
