#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "floquet/errors.hpp"
#include "floquet/grid.hpp"

namespace floquet {

using Complex = std::complex<double>;

// Finite table of time harmonics, f(t) = sum_m c_m e^{imt} with t-period 2pi.
class HarmonicSeries {
 public:
  HarmonicSeries() = default;

  void set(int m, Complex c);
  Complex get(int m) const;
  bool empty() const { return coeffs_.empty(); }
  int max_harmonic() const;
  const std::map<int, Complex>& coefficients() const { return coeffs_; }

  Complex value(double t) const;
  Complex derivative(int order, double t) const;

  // int_0^t f(tau) e^{i omega tau} dtau, per harmonic in closed form.
  // The near-resonant branch |m + omega| < 1e-9 switches to the series
  // t + i mu t^2 / 2 to avoid cancellation.
  Complex oscillatory_integral(double omega, double t) const;

  // Same integral with f replaced by its time derivative.
  Complex oscillatory_integral_derivative(double omega, double t) const;

 private:
  std::map<int, Complex> coeffs_;
};

// Decay class declaration for the spatial coefficients:
// ||v_k||_{C^gamma} <= c_v e^{-beta |k|} / <k>^alpha.
struct PotentialClass {
  double alpha = 3.0;
  double beta = 0.0;
  int gamma = 2;
  double c_v = 1.0;
};

struct ModeHarmonics {
  int k = 0;
  std::vector<std::pair<int, Complex>> harmonics;  // (m, v_{k,m})
};

// Real 2pi-periodic potential V(x,t) = sum_k v_k(t) e^{ikx} stored as the
// harmonic tables of its spatial coefficients. Only k >= 0 entries are
// supplied; v_{-k,m} = conj(v_{k,m*(-1)}) is derived so V stays real.
class FourierPotential {
 public:
  FourierPotential() = default;
  FourierPotential(const std::vector<ModeHarmonics>& entries, PotentialClass klass);

  const PotentialClass& klass() const { return klass_; }

  // v_k(t); zero when the mode is absent.
  Complex coefficient(int k, double t) const;
  Complex coefficient_derivative(int k, int order, double t) const;
  // v_{k,m}
  Complex harmonic(int k, int m) const;

  const HarmonicSeries* mode(int k) const;
  const std::map<int, HarmonicSeries>& modes() const { return modes_; }
  std::vector<int> stored_modes() const;
  int max_spatial_mode() const;

  bool gauge_normalized() const { return modes_.find(0) == modes_.end(); }

 private:
  std::map<int, HarmonicSeries> modes_;
  PotentialClass klass_;
};

// Record of the scalar gauge change that removes the spatial average v_0(t):
// psi = exp((1/(ih)) * (average * t + antiderivative(t))) * psi_gauged.
struct GaugePhase {
  double average = 0.0;          // v_{0,0}, the time average of v_0
  HarmonicSeries antiderivative; // A(t) = int_0^t (v_0 - average), periodic

  // exp(average * t / (i h)), the secular part of the gauge factor.
  Complex scalar_multiplier(double t, double h) const;
  // exp(A(t) / (i h)), the 2pi-periodic part.
  Complex periodic_factor(double t, double h) const;
  Complex total_factor(double t, double h) const {
    return scalar_multiplier(t, h) * periodic_factor(t, h);
  }
};

// Strip the k = 0 coefficient and return the scalar phase that reconstructs
// solutions of the original equation from the gauged one.
std::pair<FourierPotential, GaugePhase> gauge_normalize(const FourierPotential& p);

struct ModeClassEntry {
  int k = 0;
  double norm = 0.0;   // ||v_k||_{C^gamma} on the sample grid
  double bound = 0.0;  // c_v e^{-beta|k|} / <k>^alpha
  double ratio = 0.0;
};

struct ClassReport {
  std::vector<ModeClassEntry> modes;
  double max_ratio = 0.0;
  double min_admissible_c_v = 0.0;
  int grid_points = 0;
  bool pass = true;
};

// C^gamma norms sampled on a uniform grid over one period (size configurable).
ClassReport classify(const FourierPotential& p, int grid_points = 1024);

// classify() plus enforcement: throws ClassViolation if any ratio exceeds 1.
ClassReport verify_class(const FourierPotential& p, int grid_points = 1024);

}  // namespace floquet
