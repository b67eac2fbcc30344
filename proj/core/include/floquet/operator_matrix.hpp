#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>

#include "floquet/grid.hpp"

namespace floquet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense operator on the truncated mode space, addressed by modes j,k in
// [-K, K] (row j = image mode, column k = source mode).
struct OperatorMatrix {
  CMatrix m;
  int K = 0;
  std::string label;

  OperatorMatrix() = default;
  OperatorMatrix(int K_, std::string label_ = {})
      : m(CMatrix::Zero(2 * K_ + 1, 2 * K_ + 1)), K(K_), label(std::move(label_)) {}
  OperatorMatrix(CMatrix data, int K_, std::string label_ = {})
      : m(std::move(data)), K(K_), label(std::move(label_)) {}

  int size() const { return 2 * K + 1; }

  Complex& at(int j, int k) { return m(j + K, k + K); }
  const Complex& at(int j, int k) const { return m(j + K, k + K); }

  double max_abs() const { return m.cwiseAbs().maxCoeff(); }

  // Largest |entry| over the square |j|,|k| <= radius.
  double max_abs_interior(int radius) const {
    int lo = K - radius, n = 2 * radius + 1;
    return m.block(lo, lo, n, n).cwiseAbs().maxCoeff();
  }

  OperatorMatrix adjoint(std::string new_label = {}) const {
    return OperatorMatrix(m.adjoint(), K, std::move(new_label));
  }
};

// max |(A - B)_{jk}| over the square |j|,|k| <= radius (radius < 0: full grid).
inline double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b,
                           int radius = -1) {
  if (radius < 0) return (a.m - b.m).cwiseAbs().maxCoeff();
  int lo = a.K - radius, n = 2 * radius + 1;
  return (a.m.block(lo, lo, n, n) - b.m.block(lo, lo, n, n)).cwiseAbs().maxCoeff();
}

}  // namespace floquet
