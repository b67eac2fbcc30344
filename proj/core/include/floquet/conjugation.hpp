#pragma once

#include <vector>

#include "floquet/operator_matrix.hpp"
#include "floquet/potential.hpp"

namespace floquet {

// Skew-Hermitian generator with entries v_{j-k}(0)/(j^2 - k^2), zero on
// j^2 = k^2. Its exponential undoes the first-order part of the monodromy.
struct Generator {
  OperatorMatrix G;
};

Generator build_generator(const FourierPotential& p, const ModeGrid& grid);

// max |(A + A*)_{jk}|; zero for a perfectly skew-Hermitian matrix.
double skew_defect(const OperatorMatrix& a);

// Unitary e^{sign * G} through the Hermitian eigendecomposition of iG, so the
// result is unitary to rounding. sign is +1 or -1.
OperatorMatrix exp_skew(const Generator& g, int sign);

// S* M S.
OperatorMatrix conjugate(const OperatorMatrix& m, const OperatorMatrix& s);

// Minimal constants of the weighted bounds on powers G^n: the n = 1 weight is
// (<j> + <k>) <j-k>^alpha e^{beta|j-k|}, higher powers use
// <j> <k> <j-k>^alpha e^{beta|j-k|}. The growth of c_n over n decides the
// geometric-growth verdict against the supplied ratio bound.
struct PowerDecayReport {
  int n_max = 0;
  std::vector<double> constants; // constants[i] belongs to G^(i+1)
  std::vector<double> ratios;    // ratios[i] = constants[i+1] / constants[i]
  double max_ratio = 0.0;        // worst ratio between consecutive pure product-weight powers (n >= 2)
  double ratio_bound = 0.0;
  bool geometric = false;        // max_ratio <= ratio_bound
};

PowerDecayReport power_decay_check(const Generator& g, const PotentialClass& klass,
                                   int n_max, double ratio_bound);

}  // namespace floquet
