#pragma once

#include <cmath>
#include <vector>

#include "floquet/grid.hpp"

namespace floquet {

// Weighted off-diagonal decay template
//   c * e^{-b|j-k|} / ( <j>^p <k>^q <j-k>^r ),   <k> = |k| + 1.
struct DecayBound {
  double c = 0.0;
  double b = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  // Inverse of the envelope at c = 1; the minimal admissible constant for a
  // matrix is max |entry| * weight.
  double weight(int j, int k) const {
    return std::exp(b * std::abs(j - k)) * std::pow(bracket(j), p) *
           std::pow(bracket(k), q) * std::pow(bracket(j - k), r);
  }

  double evaluate(int j, int k) const { return c / weight(j, k); }
};

// Union of closed rectangles in mode coordinates, used to select which
// entries a bound check or fit runs over.
struct Region {
  struct Rect {
    int jlo, jhi, klo, khi;
  };
  std::vector<Rect> rects;

  bool contains(int j, int k) const {
    for (const auto& r : rects)
      if (j >= r.jlo && j <= r.jhi && k >= r.klo && k <= r.khi) return true;
    return false;
  }

  Region& add(int jlo, int jhi, int klo, int khi) {
    rects.push_back({jlo, jhi, klo, khi});
    return *this;
  }

  // |j|,|k| <= radius.
  static Region square(int radius) {
    Region r;
    r.add(-radius, radius, -radius, radius);
    return r;
  }

  static Region rect(int jlo, int jhi, int klo, int khi) {
    Region r;
    r.add(jlo, jhi, klo, khi);
    return r;
  }
};

}  // namespace floquet
