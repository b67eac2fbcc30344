#pragma once

#include <string>

#include "floquet/decay_bound.hpp"
#include "floquet/operator_matrix.hpp"

namespace floquet {

// Exhaustive finite-range scan of one of the elementary index inequalities;
// max_ratio <= 1 means the inequality held everywhere in the range.
struct LemmaReport {
  std::string id;
  int range = 0;
  double max_ratio = 0.0;
  int witness_k0 = 0;  // unused by the two-index inequality
  int witness_k = 0;
  int witness_l = 0;
  bool pass = false;
};

// 1/|k^2 - l^2| <= 3/(<k> + <l>) over |k|,|l| <= range, k != +-l.
LemmaReport check_ineq1(int range);

// 1/(|k0^2 - j^2| |k^2 - j^2|) <= 12/<k0>^2 over |k0|,|k|,|j| <= range,
// j != +-k0, j != +-k.
LemmaReport check_ineq2(int range);

// Empirical constant of the convolution inequality
//   sum_k e^{-beta(|s-k|+|k-m|)} / (<s-k>^nu <k-m>^nu)
//     <= c_nu e^{-beta|s-m|} / <s-m>^nu :
// max over |s|,|m| <= range of the ratio, with the k-sum truncated at
// 4*range. The value is recomputed at twice the range; a drift >= 1% means
// the truncation cannot be trusted and raises DivergentTail.
struct CnuResult {
  double nu = 0.0;
  double beta = 0.0;
  int range = 0;
  double value = 0.0;
  double value_doubled = 0.0;
  double drift = 0.0;  // relative change under range doubling
  bool stable = false;
};

CnuResult empirical_cnu(double nu, double beta, int range);

// Least-squares read-back of a decay template from matrix entries: c_min is
// the smallest constant making the template an upper bound on the region;
// the exponents come from an ordinary least-squares fit of log|entry|
// against (1, log<j>, log<k>, log<j-k>, |j-k|), entries below 1e-14 excluded.
struct FitResult {
  double c_min = 0.0;
  double log_c = 0.0;
  double p = 0.0;  // power of <j>
  double q = 0.0;  // power of <k>
  double r = 0.0;  // power of <j-k>
  double b = 0.0;  // exponential rate in |j-k|
  long points = 0;
  double max_log_residual = 0.0;
};

FitResult fit_bound(const OperatorMatrix& m, const Region& region,
                    const DecayBound& shape);

}  // namespace floquet
