#pragma once

#include <complex>

#include "floquet/operator_matrix.hpp"
#include "floquet/potential.hpp"

namespace floquet {

enum class Frame { Lab, Rotating };

// Mode amplitudes of a wave function, either in the lab frame (psi_k) or in
// the rotating frame phi_k = e^{+i t k^2 / h} psi_k that removes the free
// phases.
struct StateVector {
  CVector amps;
  int K = 0;
  Frame frame = Frame::Lab;
};

StateVector to_rotating(const StateVector& s, double h, double t);
StateVector to_lab(const StateVector& s, double h, double t);

enum class Method { RK4, SplitStep };

// dt <= 0 requests the automatic step eta * h / K^2; an explicit dt must
// still respect that safety bound.
struct IntegratorConfig {
  Method method = Method::RK4;
  double dt = 0.0;
  double eta = 0.5;
};

// Right-hand side of the rotating-frame system
//   phi_k' = (1/(ih)) sum_j v_{k-j}(t) e^{(t/(ih))(j^2-k^2)} phi_j.
StateVector rotating_rhs(const FourierPotential& p, double h, double t,
                         const StateVector& phi);

// Lab-frame solution at t1 of the truncated equation with initial data
// delta_{k,k0} at t = 0.
StateVector propagate_column(const FourierPotential& p, double h,
                             const ModeGrid& grid, int k0, double t1,
                             const IntegratorConfig& cfg);

// Lab-frame fundamental matrix W(t0 -> t1) of the truncated system (columns
// are solutions with identity initial data at t0). Used for the monodromy,
// backward runs and flow-property checks.
OperatorMatrix fundamental_matrix(const FourierPotential& p, double h,
                                  const ModeGrid& grid, const IntegratorConfig& cfg,
                                  double t0, double t1);

// W(2pi) for a gauge-normalized potential.
OperatorMatrix monodromy(const FourierPotential& p, double h, const ModeGrid& grid,
                         const IntegratorConfig& cfg);

// max |(M* M - I)_{jk}| over |j|,|k| <= K - margin.
double unitarity_defect(const OperatorMatrix& m, int margin);

// Smallest circular distance between free phases e^{-2pi i j^2/h} and
// e^{-2pi i k^2/h} over j^2 != k^2 within |j|,|k| <= K. A vanishing gap means
// the free monodromy has extra degeneracies (full resonance).
double resonance_gap(double h, int K);

// Number of steps and the realized step for a span; exposed for reporting.
struct StepPlan {
  long steps = 1;
  double dt = 0.0;
};
StepPlan plan_steps(double span, double h, int K, const IntegratorConfig& cfg);

}  // namespace floquet
