#include "floquet/bounds.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "floquet/errors.hpp"

namespace floquet {

namespace {

constexpr double kNoiseFloor = 1e-14;

// max over |s|,|m| <= range of the weighted convolution sum, k truncated at
// 4 * range.
double cnu_scan(double nu, double beta, int range) {
  double worst = 0.0;
  const int ktop = 4 * range;
  for (int s = -range; s <= range; ++s) {
    for (int m = -range; m <= range; ++m) {
      double sum = 0.0;
      for (int k = -ktop; k <= ktop; ++k) {
        sum += std::exp(-beta * (std::abs(s - k) + std::abs(k - m))) /
               (std::pow(bracket(s - k), nu) * std::pow(bracket(k - m), nu));
      }
      double ratio = sum * std::pow(bracket(s - m), nu) * std::exp(beta * std::abs(s - m));
      if (ratio > worst) worst = ratio;
    }
  }
  return worst;
}

}  // namespace

LemmaReport check_ineq1(int range) {
  if (range < 2) throw std::invalid_argument("check_ineq1: range must be >= 2");
  LemmaReport rep;
  rep.id = "index-inequality-1";
  rep.range = range;
  for (int k = -range; k <= range; ++k) {
    for (int l = -range; l <= range; ++l) {
      if (k == l || k == -l) continue;
      double lhs = 1.0 / std::abs(static_cast<double>(k) * k - static_cast<double>(l) * l);
      double rhs = 3.0 / (bracket(k) + bracket(l));
      double ratio = lhs / rhs;
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.witness_k = k;
        rep.witness_l = l;
      }
    }
  }
  rep.pass = rep.max_ratio <= 1.0;
  return rep;
}

LemmaReport check_ineq2(int range) {
  if (range < 2) throw std::invalid_argument("check_ineq2: range must be >= 2");
  LemmaReport rep;
  rep.id = "index-inequality-2";
  rep.range = range;
  for (int k0 = -range; k0 <= range; ++k0) {
    for (int k = -range; k <= range; ++k) {
      for (int j = -range; j <= range; ++j) {
        if (j == k0 || j == -k0 || j == k || j == -k) continue;
        double d1 = std::abs(static_cast<double>(k0) * k0 - static_cast<double>(j) * j);
        double d2 = std::abs(static_cast<double>(k) * k - static_cast<double>(j) * j);
        double lhs = 1.0 / (d1 * d2);
        double rhs = 12.0 / (bracket(k0) * bracket(k0));
        double ratio = lhs / rhs;
        if (ratio > rep.max_ratio) {
          rep.max_ratio = ratio;
          rep.witness_k0 = k0;
          rep.witness_k = k;
          rep.witness_l = j;
        }
      }
    }
  }
  rep.pass = rep.max_ratio <= 1.0;
  return rep;
}

CnuResult empirical_cnu(double nu, double beta, int range) {
  if (!(nu > 1.0)) throw std::invalid_argument("empirical_cnu: nu must exceed 1");
  if (beta < 0.0) throw std::invalid_argument("empirical_cnu: beta must be >= 0");
  if (range < 2) throw std::invalid_argument("empirical_cnu: range must be >= 2");

  CnuResult res;
  res.nu = nu;
  res.beta = beta;
  res.range = range;
  res.value = cnu_scan(nu, beta, range);
  res.value_doubled = cnu_scan(nu, beta, 2 * range);
  res.drift = std::abs(res.value_doubled - res.value) / res.value;
  res.stable = res.drift < 0.01;
  if (!res.stable)
    throw DivergentTail("empirical_cnu: value drifts " + std::to_string(res.drift * 100.0) +
                        "% when the range doubles (nu = " + std::to_string(nu) + ")");
  return res;
}

FitResult fit_bound(const OperatorMatrix& m, const Region& region,
                    const DecayBound& shape) {
  FitResult res;
  long cells = 0;
  std::vector<double> lj, lk, ljk, djk, ly;
  for (int j = -m.K; j <= m.K; ++j) {
    for (int k = -m.K; k <= m.K; ++k) {
      if (!region.contains(j, k)) continue;
      ++cells;
      double a = std::abs(m.at(j, k));
      res.c_min = std::max(res.c_min, a * shape.weight(j, k));
      if (a < kNoiseFloor) continue;
      lj.push_back(std::log(bracket(j)));
      lk.push_back(std::log(bracket(k)));
      ljk.push_back(std::log(bracket(j - k)));
      djk.push_back(static_cast<double>(std::abs(j - k)));
      ly.push_back(std::log(a));
    }
  }
  if (cells == 0) throw EmptyRegion("fit_bound: region selects no entries");

  res.points = static_cast<long>(ly.size());
  if (res.points < 5) return res;  // not enough data to identify 5 parameters

  Eigen::MatrixXd design(res.points, 5);
  Eigen::VectorXd rhs(res.points);
  for (long i = 0; i < res.points; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = lj[static_cast<std::size_t>(i)];
    design(i, 2) = lk[static_cast<std::size_t>(i)];
    design(i, 3) = ljk[static_cast<std::size_t>(i)];
    design(i, 4) = djk[static_cast<std::size_t>(i)];
    rhs(i) = ly[static_cast<std::size_t>(i)];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd coef = svd.solve(rhs);
  res.log_c = coef(0);
  res.p = -coef(1);
  res.q = -coef(2);
  res.r = -coef(3);
  res.b = -coef(4);
  res.max_log_residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  return res;
}

}  // namespace floquet
