#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "floquet/errors.hpp"
#include "floquet/grid.hpp"
#include "floquet/potential.hpp"
#include "floquet/propagator.hpp"
#include "test_support.hpp"

using namespace floquet;
using testsupport::reference_potential;

namespace {

constexpr Complex kI(0.0, 1.0);

// Composite Simpson rule for complex integrands on [0, t].
template <typename F>
Complex simpson(F f, double t, int n) {
  Complex sum = f(0.0) + f(t);
  double dx = t / n;
  for (int i = 1; i < n; ++i) sum += f(i * dx) * (i % 2 ? 4.0 : 2.0);
  return sum * (dx / 3.0);
}

}  // namespace

TEST_CASE("harmonic series: values and derivatives match the closed forms") {
  // f(t) = 2 e^{it} + (1 - i) e^{-3it}
  HarmonicSeries f;
  f.set(1, Complex(2.0, 0.0));
  f.set(-3, Complex(1.0, -1.0));

  double t = 0.7;
  Complex expected = 2.0 * std::exp(kI * t) + Complex(1.0, -1.0) * std::exp(-3.0 * kI * t);
  CHECK(std::abs(f.value(t) - expected) < 1e-15);

  // f'' multiplies each harmonic by (im)^2
  Complex expected2 =
      -2.0 * std::exp(kI * t) - 9.0 * Complex(1.0, -1.0) * std::exp(-3.0 * kI * t);
  CHECK(std::abs(f.derivative(2, t) - expected2) < 1e-14);

  CHECK(f.max_harmonic() == 3);
  CHECK(f.get(2) == Complex(0.0, 0.0));
}

TEST_CASE("harmonic series: oscillatory integrals agree with quadrature") {
  HarmonicSeries f;
  f.set(0, Complex(0.3, 0.1));
  f.set(1, Complex(2.0, 0.0));
  f.set(-2, Complex(0.0, 1.5));

  // 2 - 3e-10 drives the m = -2 harmonic into the near-resonant series branch
  double t = 5.1;
  for (double omega : {0.0, 0.37, 2.0 - 3e-10, 13.6}) {
    CAPTURE(omega);
    Complex closed = f.oscillatory_integral(omega, t);
    Complex quad = simpson(
        [&](double tau) { return f.value(tau) * std::exp(kI * (omega * tau)); }, t,
        20000);
    CHECK(std::abs(closed - quad) < 1e-9);

    Complex closed_d = f.oscillatory_integral_derivative(omega, t);
    Complex quad_d = simpson(
        [&](double tau) { return f.derivative(1, tau) * std::exp(kI * (omega * tau)); },
        t, 20000);
    CHECK(std::abs(closed_d - quad_d) < 1e-9);
  }
}

TEST_CASE("potential reality: negative modes are the conjugate mirror") {
  FourierPotential p = reference_potential();

  // v_{-k}(t) = conj(v_k(t)) pointwise keeps V real
  for (double t : {0.0, 0.9, 2.4, 5.8}) {
    CHECK(std::abs(p.coefficient(-2, t) - std::conj(p.coefficient(2, t))) < 1e-15);
  }
  // and per harmonic v_{-k,-m} = conj(v_{k,m})
  CHECK(p.harmonic(-2, -1) == std::conj(p.harmonic(2, 1)));
  CHECK(p.harmonic(-2, 0) == std::conj(p.harmonic(2, 0)));

  // absent modes read as zero
  CHECK(p.coefficient(5, 1.0) == Complex(0.0, 0.0));
  CHECK(p.mode(7) == nullptr);
  CHECK(p.max_spatial_mode() == 2);
  CHECK(p.gauge_normalized());
}

TEST_CASE("potential constructor rejects malformed tables") {
  PotentialClass klass;

  ModeHarmonics neg;
  neg.k = -1;
  neg.harmonics = {{0, Complex(1.0, 0.0)}};
  CHECK_THROWS_AS(FourierPotential({neg}, klass), std::invalid_argument);

  ModeHarmonics a, b;
  a.k = 2;
  a.harmonics = {{0, Complex(1.0, 0.0)}};
  b.k = 2;
  b.harmonics = {{1, Complex(0.5, 0.0)}};
  CHECK_THROWS_AS(FourierPotential({a, b}, klass), std::invalid_argument);

  ModeHarmonics dup;
  dup.k = 1;
  dup.harmonics = {{0, Complex(1.0, 0.0)}, {0, Complex(2.0, 0.0)}};
  CHECK_THROWS_AS(FourierPotential({dup}, klass), std::invalid_argument);

  // k = 0 harmonics must satisfy v_{0,-m} = conj(v_{0,m})
  ModeHarmonics bad0;
  bad0.k = 0;
  bad0.harmonics = {{1, Complex(1.0, 0.0)}, {-1, Complex(0.0, 1.0)}};
  CHECK_THROWS_AS(FourierPotential({bad0}, klass), std::invalid_argument);

  // a complex v_{0,0} cannot be part of a real potential
  ModeHarmonics cplx0;
  cplx0.k = 0;
  cplx0.harmonics = {{0, Complex(1.0, 0.5)}};
  CHECK_THROWS_AS(FourierPotential({cplx0}, klass), std::invalid_argument);
}

TEST_CASE("gauge normalization strips the spatial average") {
  // v_0(t) = 0.3 + 0.4 cos t on top of the reference potential
  ModeHarmonics zero;
  zero.k = 0;
  zero.harmonics = {{0, Complex(0.3, 0.0)}, {1, Complex(0.2, 0.0)}};
  ModeHarmonics two;
  two.k = 2;
  two.harmonics = {{0, Complex(1.0, 0.0)}, {1, Complex(0.5, 0.0)}, {-1, Complex(0.5, 0.0)}};
  PotentialClass klass;
  klass.c_v = 54.0;
  FourierPotential p({zero, two}, klass);
  CHECK_FALSE(p.gauge_normalized());

  auto [gauged, phase] = gauge_normalize(p);
  CHECK(gauged.gauge_normalized());
  CHECK(phase.average == doctest::Approx(0.3).epsilon(1e-15));
  // other modes are untouched
  CHECK(gauged.harmonic(2, 1) == p.harmonic(2, 1));

  // A(0) = 0 and A'(t) = v_0(t) - average
  CHECK(std::abs(phase.antiderivative.value(0.0)) < 1e-15);
  for (double t : {0.4, 1.9, 4.4}) {
    Complex lhs = phase.antiderivative.derivative(1, t);
    Complex rhs = p.coefficient(0, t) - phase.average;
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }

  // the reconstruction factor is a pure phase, trivial at t = 0
  double h = 2.0;
  CHECK(std::abs(phase.total_factor(0.0, h) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(std::abs(phase.total_factor(1.7, h)) - 1.0) < 1e-15);
}

TEST_CASE("gauge factor reconstructs solutions of the ungauged equation") {
  // The spatial average only multiplies the state by a scalar phase, so
  // propagating with the original potential must equal the gauged
  // propagation times that phase.
  ModeHarmonics zero;
  zero.k = 0;
  zero.harmonics = {{0, Complex(0.5, 0.0)}, {2, Complex(0.0, 0.3)}};
  ModeHarmonics one;
  one.k = 1;
  one.harmonics = {{0, Complex(0.4, 0.0)}, {1, Complex(0.2, 0.1)}};
  PotentialClass klass;
  klass.c_v = 30.0;
  FourierPotential p({zero, one}, klass);
  auto [gauged, phase] = gauge_normalize(p);

  double h = 2.0, t1 = 1.7;
  ModeGrid grid(4, 1);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  StateVector full = propagate_column(p, h, grid, 1, t1, cfg);
  StateVector part = propagate_column(gauged, h, grid, 1, t1, cfg);
  Complex factor = phase.total_factor(t1, h);
  double worst = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(full.amps(i) - factor * part.amps(i)));
  CHECK(worst < 1e-10);
}

TEST_CASE("classify measures the reference potential exactly") {
  FourierPotential p = reference_potential();
  ClassReport rep = classify(p);

  CHECK(rep.pass);
  // sup_t |1 + cos t| = 2 against the budget c_v / <2>^3 = 54 / 27 = 2
  CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.min_admissible_c_v == doctest::Approx(54.0).epsilon(1e-12));

  bool found = false;
  for (const auto& e : rep.modes) {
    if (e.k != 2) continue;
    found = true;
    CHECK(e.norm == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.bound == doctest::Approx(2.0).epsilon(1e-15));
  }
  CHECK(found);
}

TEST_CASE("verify_class throws when the declared constant is too small") {
  FourierPotential p = reference_potential(53.0);  // needs c_v >= 54
  ClassReport rep = classify(p);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_ratio > 1.0);
  CHECK_THROWS_AS(verify_class(p), ClassViolation);

  // random admissible potentials stay inside their declared class
  for (unsigned seed : {1u, 2u, 3u}) {
    CAPTURE(seed);
    CHECK_NOTHROW(verify_class(testsupport::random_potential(seed)));
  }
}
