#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "floquet/decomposition.hpp"
#include "floquet/errors.hpp"
#include "floquet/propagator.hpp"
#include "test_support.hpp"

using namespace floquet;
using testsupport::reference_potential;

namespace {

constexpr Complex kI(0.0, 1.0);
const double kTwoPi = 2.0 * M_PI;

IntegratorConfig splitstep_config(double dt = 0.0) {
  IntegratorConfig cfg;
  cfg.method = Method::SplitStep;
  cfg.dt = dt;
  return cfg;
}

}  // namespace

TEST_CASE("free particle: monodromy is the exact phase diagonal") {
  FourierPotential none({}, {});
  ModeGrid grid(8, 2);
  OperatorMatrix exact = build_m0(grid, 2.7);
  for (auto cfg : {IntegratorConfig{}, splitstep_config()}) {
    OperatorMatrix m = monodromy(none, 2.7, grid, cfg);
    CHECK(max_abs_diff(m, exact) < 1e-12);
  }
}

TEST_CASE("frame maps are mutually inverse") {
  double h = 1.3, t = 2.2;
  StateVector s;
  s.K = 5;
  s.frame = Frame::Lab;
  s.amps = CVector::Random(11);

  StateVector rot = to_rotating(s, h, t);
  CHECK(rot.frame == Frame::Rotating);
  // phi_k = e^{+i t k^2/h} psi_k; the phase t k^2/h reaches ~42 rad, so
  // allow for argument-reduction rounding
  for (int k = -5; k <= 5; ++k) {
    Complex expect = s.amps(k + 5) * std::exp(kI * (t * double(k) * k / h));
    CHECK(std::abs(rot.amps(k + 5) - expect) < 1e-13);
  }

  StateVector back = to_lab(rot, h, t);
  CHECK((back.amps - s.amps).cwiseAbs().maxCoeff() < 1e-15);
  // converting to the frame a state is already in is the identity
  StateVector again = to_lab(back, h, t);
  CHECK((again.amps - back.amps).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotating-frame right-hand side matches the hand formula") {
  FourierPotential p = reference_potential();
  double h = 2.0, t = 0.7;
  int K = 3;

  StateVector phi;
  phi.K = K;
  phi.frame = Frame::Rotating;
  phi.amps = CVector::Zero(7);
  for (int k = -K; k <= K; ++k) phi.amps(k + K) = Complex(0.3 * k + 1.0, 0.1 * k);

  StateVector out = rotating_rhs(p, h, t, phi);
  for (int k = -K; k <= K; ++k) {
    // phi_k' = (1/(ih)) sum_j v_{k-j}(t) e^{(t/(ih))(j^2 - k^2)} phi_j
    Complex acc(0.0, 0.0);
    for (int j = -K; j <= K; ++j) {
      Complex osc = std::exp(kI * (t * double(k * k - j * j) / h));
      acc += p.coefficient(k - j, t) * osc * phi.amps(j + K);
    }
    acc /= kI * h;
    CHECK(std::abs(out.amps(k + K) - acc) < 1e-14);
  }

  StateVector lab = to_lab(phi, h, t);
  CHECK_THROWS_AS(rotating_rhs(p, h, t, lab), std::invalid_argument);
}

TEST_CASE("step planning honours the phase-resolution safety bound") {
  IntegratorConfig cfg;  // dt = 0 requests the automatic step
  double h = 2.0 * M_PI;
  int K = 32;
  double safety = cfg.eta * h / (K * double(K));

  StepPlan plan = plan_steps(kTwoPi, h, K, cfg);
  CHECK(plan.steps == 2048);  // 2 pi / (0.5 h / K^2) exactly
  CHECK(plan.dt == doctest::Approx(safety).epsilon(1e-12));
  CHECK(plan.steps * plan.dt == doctest::Approx(kTwoPi).epsilon(1e-15));

  // an explicit admissible dt is rounded up to a whole number of steps
  cfg.dt = safety / 3.1;
  plan = plan_steps(kTwoPi, h, K, cfg);
  CHECK(plan.dt <= cfg.dt * (1.0 + 1e-12));
  CHECK(plan.steps * plan.dt == doctest::Approx(kTwoPi).epsilon(1e-15));

  // backward spans plan negative steps of the same magnitude
  cfg.dt = 0.0;
  plan = plan_steps(-kTwoPi, h, K, cfg);
  CHECK(plan.dt < 0.0);
  CHECK(std::abs(plan.dt) <= safety * (1.0 + 1e-9));

  cfg.dt = 2.0 * safety;
  CHECK_THROWS_AS(plan_steps(kTwoPi, h, K, cfg), StepSizeTooLarge);

  CHECK(plan_steps(0.0, h, K, IntegratorConfig{}).steps == 0);
}

TEST_CASE("fundamental matrices compose like a flow") {
  FourierPotential p = reference_potential();
  double h = 2.0;
  ModeGrid grid(6, 2);
  // an explicit small step keeps the scheme error well below the check
  // tolerance: the three spans realize slightly different steps, so their
  // integration errors do not cancel
  IntegratorConfig cfg;
  cfg.dt = 0.002;

  OperatorMatrix whole = fundamental_matrix(p, h, grid, cfg, 0.0, kTwoPi);
  OperatorMatrix first = fundamental_matrix(p, h, grid, cfg, 0.0, M_PI);
  OperatorMatrix second = fundamental_matrix(p, h, grid, cfg, M_PI, kTwoPi);
  CMatrix composed = second.m * first.m;
  CHECK((whole.m - composed).cwiseAbs().maxCoeff() < 1e-8);

  // running backward undoes the forward run
  OperatorMatrix back = fundamental_matrix(p, h, grid, cfg, kTwoPi, 0.0);
  CMatrix round = back.m * whole.m;
  round.diagonal().array() -= 1.0;
  CHECK(round.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("integrator convergence orders: 4 for RK4, 2 for split-step") {
  FourierPotential p = reference_potential();
  double h = 2.0;
  ModeGrid grid(6, 2);
  double dt = 0.02;  // safety bound is eta h / K^2 = 1/36

  auto run = [&](Method method, double step) {
    IntegratorConfig cfg;
    cfg.method = method;
    cfg.dt = step;
    return fundamental_matrix(p, h, grid, cfg, 0.0, kTwoPi);
  };

  for (auto [method, order] : {std::pair{Method::RK4, 4.0},
                               std::pair{Method::SplitStep, 2.0}}) {
    OperatorMatrix coarse = run(method, dt);
    OperatorMatrix fine = run(method, dt / 2.0);
    OperatorMatrix ref = run(method, dt / 8.0);
    double e1 = max_abs_diff(coarse, ref);
    double e2 = max_abs_diff(fine, ref);
    double rate = std::log2(e1 / e2);
    CAPTURE(order);
    CHECK(rate > order - 0.5);
    CHECK(rate < order + 0.7);
  }
}

TEST_CASE("both integrators agree with an independent dense lab-frame solver") {
  FourierPotential p = reference_potential();
  double h = 2.0;
  int K = 6;
  ModeGrid grid(K, 2);
  // fine enough that the reference's lab-frame stiffness (phases up to
  // K^2/h per unit time) contributes well under the comparison tolerance
  long steps = 16384;
  double dt = kTwoPi / steps;

  for (int k0 : {0, 2, -3}) {
    CAPTURE(k0);
    auto ref = testsupport::reference_column(p, h, K, k0, kTwoPi, steps);

    IntegratorConfig rk;
    rk.dt = dt;
    StateVector lib = propagate_column(p, h, grid, k0, kTwoPi, rk);
    double worst = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(lib.amps(i) - ref[i]));
    CHECK(worst < 1e-9);

    StateVector split = propagate_column(p, h, grid, k0, kTwoPi, splitstep_config(dt / 4.0));
    worst = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(split.amps(i) - ref[i]));
    CHECK(worst < 1e-5);
  }

  CHECK_THROWS_AS(propagate_column(p, h, grid, K + 1, 1.0, IntegratorConfig{}),
                  std::invalid_argument);
}

TEST_CASE("truncated flow stays unitary for both integrators") {
  FourierPotential p = reference_potential();
  double h = 2.0;
  ModeGrid grid(8, 2);

  // the split composition is a product of exact unitaries at every step
  OperatorMatrix split = monodromy(p, h, grid, splitstep_config());
  CHECK(unitarity_defect(split, 0) < 1e-12);

  // the classical scheme is unitary only to its order: the defect is small
  // at the default step and shrinks ~16x when the step is halved
  OperatorMatrix rk = monodromy(p, h, grid, IntegratorConfig{});
  double d0 = unitarity_defect(rk, 0);
  CHECK(d0 < 1e-6);
  IntegratorConfig half;
  half.dt = 0.25 * h / (8.0 * 8.0);
  double d1 = unitarity_defect(monodromy(p, h, grid, half), 0);
  CHECK(d0 / d1 > 8.0);

  CHECK_THROWS_AS(unitarity_defect(rk, 8), std::invalid_argument);
}

TEST_CASE("monodromy requires a gauge-normalized potential") {
  ModeHarmonics zero;
  zero.k = 0;
  zero.harmonics = {{0, Complex(0.5, 0.0)}};
  PotentialClass klass;
  klass.c_v = 10.0;
  FourierPotential p({zero}, klass);
  ModeGrid grid(4, 1);
  CHECK_THROWS_AS(monodromy(p, 2.0, grid, IntegratorConfig{}), std::invalid_argument);
}

TEST_CASE("resonance gap vanishes exactly on fully resonant h") {
  // h = 1 and h = 4 make all phase differences full turns: j^2 - k^2 is an
  // integer, and for h = 4 the odd/even split still leaves multiples of 4
  // (j = 2, k = 0).
  CHECK(resonance_gap(1.0, 8) == 0.0);
  CHECK(resonance_gap(4.0, 8) == 0.0);
  // h = 2 pi leaves a finite gap on any finite window
  double gap = resonance_gap(2.0 * M_PI, 32);
  CHECK(gap > 1e-12);
  CHECK(gap <= 2.0 * M_PI);
  CHECK_THROWS_AS(resonance_gap(-1.0, 8), std::invalid_argument);
}
