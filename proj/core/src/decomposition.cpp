#include "floquet/decomposition.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <vector>

#include "floquet/errors.hpp"

namespace floquet {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kNoiseFloor = 1e-14;

Complex free_phase(double h, int k, double t) {
  double kk = static_cast<double>(k) * k;
  return std::exp(-kI * (t * kk / h));
}

// Common-slope estimator over many groups (rows or diagonals): each group
// keeps its own intercept, the slope is shared, so groups with no abscissa
// spread contribute nothing instead of polluting a plain per-group average.
struct WithinSlope {
  double sxx = 0.0;
  double sxy = 0.0;
  long groups = 0;

  void add_group(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = x.size();
    if (n < 3) return;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double gxx = 0.0, gxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gxx += (x[i] - mx) * (x[i] - mx);
      gxy += (x[i] - mx) * (y[i] - my);
    }
    if (gxx < 1e-12) return;
    sxx += gxx;
    sxy += gxy;
    ++groups;
  }

  double slope() const { return sxx > 0.0 ? sxy / sxx : 0.0; }
};

}  // namespace

OperatorMatrix build_m0(const ModeGrid& grid, double h) {
  OperatorMatrix out(grid.K, "M0");
  for (int k = -grid.K; k <= grid.K; ++k) out.at(k, k) = free_phase(h, k, 2.0 * M_PI);
  return out;
}

OperatorMatrix build_md(const FourierPotential& p, const ModeGrid& grid, double h) {
  if (!p.gauge_normalized())
    throw std::invalid_argument("build_md: potential must be gauge-normalized");
  OperatorMatrix out(grid.K, "Md");
  for (int k = -grid.K; k <= grid.K; ++k) {
    Complex mean = p.harmonic(-2 * k, 0);
    if (mean == Complex{0.0, 0.0}) continue;
    out.at(-k, k) = free_phase(h, k, 2.0 * M_PI) / (kI * h) * 2.0 * M_PI * mean;
  }
  return out;
}

OperatorMatrix build_m1(const FourierPotential& p, const ModeGrid& grid, double h) {
  OperatorMatrix out(grid.K, "M1");
  for (int j = -grid.K; j <= grid.K; ++j) {
    for (int k = -grid.K; k <= grid.K; ++k) {
      if (j * j == k * k) continue;
      Complex v0 = p.coefficient(j - k, 0.0);
      if (v0 == Complex{0.0, 0.0}) continue;
      double denom = static_cast<double>(k) * k - static_cast<double>(j) * j;
      out.at(j, k) = v0 * (free_phase(h, k, 2.0 * M_PI) - free_phase(h, j, 2.0 * M_PI)) / denom;
    }
  }
  return out;
}

StateVector first_order_column(const FourierPotential& p, const ModeGrid& grid,
                               double h, int k0, double t) {
  if (!grid.contains(k0))
    throw std::invalid_argument("first_order_column: k0 outside the grid");
  if (!p.gauge_normalized())
    throw std::invalid_argument("first_order_column: potential must be gauge-normalized");
  StateVector out;
  out.K = grid.K;
  out.frame = Frame::Lab;
  out.amps = CVector::Zero(grid.size());
  for (int k = -grid.K; k <= grid.K; ++k) {
    if (k == k0) {
      out.amps(grid.index(k)) = free_phase(h, k0, t);
      continue;
    }
    const HarmonicSeries* vk = p.mode(k - k0);
    if (vk == nullptr) continue;
    double omega = (static_cast<double>(k) * k - static_cast<double>(k0) * k0) / h;
    Complex integral = vk->oscillatory_integral(omega, t);
    out.amps(grid.index(k)) = free_phase(h, k, t) / (kI * h) * integral;
  }
  return out;
}

StateVector first_order_tail(const FourierPotential& p, const ModeGrid& grid,
                             double h, int k0, double t) {
  if (!grid.contains(k0))
    throw std::invalid_argument("first_order_tail: k0 outside the grid");
  StateVector out;
  out.K = grid.K;
  out.frame = Frame::Lab;
  out.amps = CVector::Zero(grid.size());
  for (int k = -grid.K; k <= grid.K; ++k) {
    if (k * k == k0 * k0) continue;
    const HarmonicSeries* vk = p.mode(k - k0);
    if (vk == nullptr) continue;
    double omega = (static_cast<double>(k) * k - static_cast<double>(k0) * k0) / h;
    Complex integral = vk->oscillatory_integral_derivative(omega, t);
    double denom = static_cast<double>(k0) * k0 - static_cast<double>(k) * k;
    out.amps(grid.index(k)) = -free_phase(h, k, t) * integral / denom;
  }
  return out;
}

Decomposition residual_m2(const OperatorMatrix& monodromy, const FourierPotential& p,
                          const ModeGrid& grid, double h) {
  if (monodromy.K != grid.K)
    throw std::invalid_argument("residual_m2: matrix and grid sizes differ");
  Decomposition d{build_m0(grid, h), build_md(p, grid, h), build_m1(p, grid, h),
                  OperatorMatrix(grid.K, "M2"), h};
  d.m2.m = monodromy.m - d.m0.m - d.md.m - d.m1.m;
  return d;
}

BoundCheckReport check_bound(const OperatorMatrix& m, const DecayBound& bound,
                             const Region& region) {
  BoundCheckReport rep;
  rep.bound = bound;

  // Per-row samples keyed by j, per-offset samples keyed by j - k.
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> rows;
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> diags;

  for (int j = -m.K; j <= m.K; ++j) {
    for (int k = -m.K; k <= m.K; ++k) {
      if (!region.contains(j, k)) continue;
      ++rep.cells;
      double a = std::abs(m.at(j, k));
      double cm = a * bound.weight(j, k);
      if (cm > rep.c_min) rep.c_min = cm;
      double env = bound.evaluate(j, k);
      double ratio = a == 0.0 ? 0.0 : (env > 0.0 ? a / env : std::numeric_limits<double>::infinity());
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.worst_j = j;
        rep.worst_k = k;
      }
      if (a < kNoiseFloor) continue;
      ++rep.used;
      // Resonant pairs j^2 = k^2 carry the secular dynamics the splitting
      // isolates into its explicit parts; they obey the bound but not the
      // off-resonant decay profile, so they stay out of the regressions.
      if (j * j == k * k) continue;
      double ly = std::log(a);
      rows[j].first.push_back(std::log(bracket(j - k)));
      rows[j].second.push_back(ly);
      // Along a fixed offset the template decays like 1/(<j><k>); the
      // symmetrized abscissa turns that into a pure slope of -2.
      diags[j - k].first.push_back(0.5 * (std::log(bracket(j)) + std::log(bracket(k))));
      diags[j - k].second.push_back(ly);
    }
  }
  if (rep.cells == 0) throw EmptyRegion("check_bound: region selects no entries");

  WithinSlope row_fit;
  for (const auto& [j, xy] : rows) {
    (void)j;
    row_fit.add_group(xy.first, xy.second);
  }
  rep.rows_used = row_fit.groups;
  rep.row_slope = row_fit.slope();

  WithinSlope diag_fit;
  for (const auto& [d, xy] : diags) {
    (void)d;
    diag_fit.add_group(xy.first, xy.second);
  }
  rep.diags_used = diag_fit.groups;
  rep.diag_slope = diag_fit.slope();

  return rep;
}

}  // namespace floquet
