#pragma once

#include "floquet/decay_bound.hpp"
#include "floquet/operator_matrix.hpp"
#include "floquet/potential.hpp"
#include "floquet/propagator.hpp"

namespace floquet {

// Near-diagonal splitting M = M0 + Md + M1 + M2 of a monodromy matrix:
// free phases, the resonant anti-diagonal, the explicit first-order part,
// and the residual that carries the decay estimate.
struct Decomposition {
  OperatorMatrix m0;
  OperatorMatrix md;
  OperatorMatrix m1;
  OperatorMatrix m2;
  double h = 1.0;
};

// diag(e^{-2pi i k^2 / h}).
OperatorMatrix build_m0(const ModeGrid& grid, double h);

// Anti-diagonal entries (-k, k) = e^{-2pi i k^2/h}/(ih) * int_0^{2pi} v_{-2k};
// only the zeroth time harmonic of v_{-2k} survives the integral.
OperatorMatrix build_md(const FourierPotential& p, const ModeGrid& grid, double h);

// Entries v_{j-k}(0) (e^{-2pi i k^2/h} - e^{-2pi i j^2/h}) / (k^2 - j^2),
// zero when j^2 = k^2.
OperatorMatrix build_m1(const FourierPotential& p, const ModeGrid& grid, double h);

// Closed-form first-order solution of the column problem with initial data
// delta_{k,k0}: exact free phase at k0, plain time integral at -k0, and the
// oscillatory integral (e^{-i t k^2/h}/(ih)) int_0^t v_{k-k0} e^{i omega tau}
// at generic k, omega = (k^2 - k0^2)/h.
StateVector first_order_column(const FourierPotential& p, const ModeGrid& grid,
                               double h, int k0, double t);

// The integration-by-parts remainder of the generic-k branch:
// -e^{-i t k^2/h} int_0^t (dv_{k-k0}/dtau) e^{i omega tau} / (k0^2 - k^2);
// zero on k^2 = k0^2. first_order_column(k) equals
// [v_{k-k0}(t) e^{-i t k0^2/h} - v_{k-k0}(0) e^{-i t k^2/h}]/(k0^2 - k^2)
// plus this remainder.
StateVector first_order_tail(const FourierPotential& p, const ModeGrid& grid,
                             double h, int k0, double t);

// Split a computed monodromy into the four parts; m2 is the exact entrywise
// remainder, so the parts always re-sum to the input.
Decomposition residual_m2(const OperatorMatrix& monodromy, const FourierPotential& p,
                          const ModeGrid& grid, double h);

// Entrywise comparison of a matrix against a decay template over a region.
struct BoundCheckReport {
  DecayBound bound;       // the template that was checked
  double c_min = 0.0;     // minimal constant making every ratio <= 1
  double max_ratio = 0.0; // worst |entry| / bound with the template's own c
  int worst_j = 0;
  int worst_k = 0;
  long cells = 0;         // region size
  long used = 0;          // entries above the noise floor, used for slopes
  // Decay diagnostics: common-slope regressions of log|entry| with one
  // intercept per group, resonant pairs j^2 = k^2 excluded. Rows regress
  // against log<j-k>; fixed offsets against (log<j> + log<k>)/2, the
  // abscissa that makes the 1/(<j><k>) template a pure slope of -2.
  double row_slope = 0.0;
  double diag_slope = 0.0;
  long rows_used = 0;     // groups with enough spread to contribute
  long diags_used = 0;
};

BoundCheckReport check_bound(const OperatorMatrix& m, const DecayBound& bound,
                             const Region& region);

}  // namespace floquet
